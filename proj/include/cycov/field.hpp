#ifndef CYCOV_FIELD_HPP
#define CYCOV_FIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "cycov/errors.hpp"

namespace cycov {

class Field;
class FieldElement;

/// Handle to an interned, immutable field description.  Fields live for the
/// whole process, so raw pointers are stable and pointer equality is field
/// equality.
using FieldRef = const Field*;

enum class FieldKind { Prime, Extension, Rational };

/// Exact field: F_p, F_{p^k} with the lexicographically smallest monic
/// irreducible modulus, or the rationals.  Construct through the interning
/// factories; identical parameters always return the same pointer.
class Field {
public:
    static FieldRef prime(std::uint64_t p);
    static FieldRef extension(std::uint64_t p, unsigned k);
    static FieldRef rationals();

    /// CLI syntax: "p:7", "ext:7^2", "Q".
    static FieldRef parse_spec(std::string_view text);

    FieldKind kind() const { return kind_; }
    bool finite() const { return kind_ != FieldKind::Rational; }
    std::uint64_t characteristic() const { return p_; }  // 0 for rationals
    unsigned ext_degree() const { return k_; }
    /// Number of elements, finite fields only.
    mpz_class order() const;
    /// Modulus coefficients c_0..c_k (monic, c_k = 1), extension fields only.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    std::string spec_text() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(std::int64_t v) const;
    FieldElement from_mpq(const mpq_class& q) const;
    /// Inverse of FieldElement::to_string.
    FieldElement from_string(std::string_view s) const;

    /// Canonical enumeration of a finite field: index 0 is 0, indices follow
    /// the canonical element order.
    FieldElement element_at(std::uint64_t index) const;
    std::uint64_t element_index(const FieldElement& e) const;

    // element arithmetic (used by FieldElement operators)
    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement inv(const FieldElement& a) const;  // throws Error on zero
    int compare(const FieldElement& a, const FieldElement& b) const;

private:
    Field() = default;
    FieldKind kind_ = FieldKind::Rational;
    std::uint64_t p_ = 0;
    unsigned k_ = 1;
    std::vector<std::uint64_t> modulus_;   // extension only, degree k, monic
    std::vector<std::uint64_t> red_row_;   // t^k reduced: -(m_0..m_{k-1}) mod p

    friend class FieldElement;
};

/// Immutable field element in canonical representation: reduced residue,
/// reduced coefficient vector, or reduced fraction with positive denominator.
class FieldElement {
public:
    FieldElement() : field_(nullptr), rep_(std::uint64_t{0}) {}

    FieldRef field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const { return field_->add(*this, o); }
    FieldElement operator-(const FieldElement& o) const { return field_->sub(*this, o); }
    FieldElement operator*(const FieldElement& o) const { return field_->mul(*this, o); }
    FieldElement operator-() const { return field_->neg(*this); }
    FieldElement inverse() const { return field_->inv(*this); }
    FieldElement operator/(const FieldElement& o) const { return field_->mul(*this, o.inverse()); }

    FieldElement pow(std::uint64_t e) const;

    bool operator==(const FieldElement& o) const { return field_->compare(*this, o) == 0; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    /// Canonical element order: integer value / lex on coefficients /
    /// (denominator, numerator).
    bool operator<(const FieldElement& o) const { return field_->compare(*this, o) < 0; }

    std::string to_string() const;

    // representation accessors (valid for the matching field kind)
    std::uint64_t prime_value() const { return std::get<std::uint64_t>(rep_); }
    const std::vector<std::uint64_t>& ext_coeffs() const {
        return std::get<std::vector<std::uint64_t>>(rep_);
    }
    const mpq_class& rational_value() const { return std::get<mpq_class>(rep_); }

private:
    friend class Field;
    FieldElement(FieldRef f, std::uint64_t v) : field_(f), rep_(v) {}
    FieldElement(FieldRef f, std::vector<std::uint64_t> v) : field_(f), rep_(std::move(v)) {}
    FieldElement(FieldRef f, mpq_class q) : field_(f), rep_(std::move(q)) {}

    FieldRef field_;
    std::variant<std::uint64_t, std::vector<std::uint64_t>, mpq_class> rep_;
};

/// Smallest primitive d-th root of unity in the canonical element order, or
/// nullopt when the field has none.  Throws CharDividesDegree when
/// gcd(char, d) != 1.
std::optional<FieldElement> root_of_unity(FieldRef field, unsigned d);

/// Smallest t >= 1 with d | q^t - 1, i.e. the extension degree over which a
/// primitive d-th root of unity becomes rational.  Finite fields only.
unsigned root_of_unity_extension_degree(FieldRef field, unsigned d);

/// All solutions x of x^d = a, in canonical order.  Finite fields only.
std::vector<FieldElement> dth_roots(const FieldElement& a, unsigned d);

/// Embed an element of F_p into F_{p^k}.
FieldElement embed(const FieldElement& e, FieldRef bigger);

}  // namespace cycov

#endif
