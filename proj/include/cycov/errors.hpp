#ifndef CYCOV_ERRORS_HPP
#define CYCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cycov {

/// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// field / arithmetic
struct CharDividesDegree : Error { using Error::Error; };
struct NoRootOfUnity : Error {
    unsigned minimal_extension_degree;
    NoRootOfUnity(const std::string& msg, unsigned min_ext)
        : Error(msg), minimal_extension_degree(min_ext) {}
};
struct InfiniteField : Error { using Error::Error; };

// polynomial
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos) : Error(msg), position(pos) {}
};
struct NotHomogeneous : Error { using Error::Error; };
struct VariableOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct NotLinear : Error { using Error::Error; };
struct SelfReference : Error { using Error::Error; };
struct ZeroPolynomial : Error { using Error::Error; };

// projective machinery
struct IndexOutOfRange : Error { using Error::Error; };
struct DependentPoints : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct EnumerationCapExceeded : Error { using Error::Error; };

// galois / recovery
struct PointOnHypersurface : Error { using Error::Error; };
struct ShapeVerificationFailed : Error {
    /// True when the shape is fine but a required d-th root does not exist
    /// over this field; false for a genuine structural violation.
    bool rationality_obstruction = false;
    explicit ShapeVerificationFailed(const std::string& msg, bool obstruction = false)
        : Error(msg), rationality_obstruction(obstruction) {}
};
struct NoGaloisPointFound : Error { using Error::Error; };
struct NotACoverShape : Error { using Error::Error; };
struct NotAnEquivalence : Error { using Error::Error; };
struct BlockStructureViolation : Error { using Error::Error; };

/// Raised when a run contradicts one of the structure theorems
/// (delta bound, block structure, round-trip identity).  Carries a
/// reproduction bundle so the event can be replayed.
struct FalsificationError : Error {
    std::string bundle_json;
    FalsificationError(const std::string& msg, std::string bundle)
        : Error(msg), bundle_json(std::move(bundle)) {}
};

/// A cover round trip that closed only up to a d-th-power twist of the
/// branch: the recovered branch is provably related to the original by
/// scaling the tail with a non-d-th-power constant.  Equivalence genuinely
/// fails over the working finite field while holding over its closure.
/// Carries the exact twist scalar and certificate.
struct RoundTripTwist : Error {
    std::string twist_scalar;
    std::string certificate_json;
    RoundTripTwist(const std::string& msg, std::string scalar, std::string cert)
        : Error(msg), twist_scalar(std::move(scalar)), certificate_json(std::move(cert)) {}
};

}  // namespace cycov

#endif
