#ifndef CYCOV_RECOVERY_HPP
#define CYCOV_RECOVERY_HPP

#include <cstdint>
#include <optional>

#include "cycov/cover.hpp"
#include "cycov/galois.hpp"

namespace cycov {

/// Branch-locus recovery: locate an outer Galois point of H, move it to
/// [0:...:0:1], shear away the subleading coefficient, and read off the base.
/// The witness satisfies exactly
///   canonical_scalar(apply_linear(H.equation, witness)) ==
///   canonical_scalar(x_{m+1}^d - F')
/// for the recovered base polynomial F', so every claim is checkable by
/// substitution.
struct RecoveryResult {
    Hypersurface base;             // Y = V(F') in P^m
    ProjectiveTransform witness;
    ProjectivePoint galois_point;  // the point used (canonical-first if several)
};

RecoveryResult recover_branch(const Hypersurface& h,
                              const std::optional<ProjectivePoint>& hint = std::nullopt,
                              unsigned ext_max = 1,
                              std::uint64_t point_cap = kDefaultPointCap);

/// Converts a cover equivalence into a base equivalence: given g carrying
/// cyclic_cover(F2) to cyclic_cover(F1) (checked by substitution, up to the
/// scalar ambiguity of the base representative), returns T on P^m with
/// F1 composed with T a scalar multiple of F2.  Mirrors the transposition /
/// fixed-point / block-extraction steps; any failed step raises
/// BlockStructureViolation with the failing condition spelled out.
ProjectiveTransform base_equivalence(const Hypersurface& f1, const Hypersurface& f2,
                                     const ProjectiveTransform& g);

/// Closes a cover round trip: y was covered, the cover transformed by g, and
/// rec recovered a branch from the transformed cover.  Returns a verified
/// base equivalence from y to rec.base.  When the recovery pivoted on the
/// image of the standard Galois point this is the direct block extraction;
/// when it pivoted on a base Galois point embedded in the branch hyperplane,
/// the closure re-presents the cover at that point and searches the residual
/// stabilizer for the remaining twist.  Throws on failure; never returns an
/// unverified witness.
ProjectiveTransform close_round_trip(const Hypersurface& y, const Matrix& g,
                                     const RecoveryResult& rec,
                                     std::uint64_t gl_cap = 1ull << 25,
                                     std::uint64_t point_cap = kDefaultPointCap);

}  // namespace cycov

#endif
