#ifndef CYCOV_POLY_HPP
#define CYCOV_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cycov/field.hpp"
#include "cycov/matrix.hpp"

namespace cycov {

/// Exponent vector.  Bounded inline storage keeps map keys cheap; the
/// families in play never exceed a handful of variables.
struct Monomial {
    static constexpr int kMaxVars = 12;

    std::array<std::uint8_t, kMaxVars> e{};
    std::uint8_t nvars = 0;

    Monomial() = default;
    Monomial(int n, std::initializer_list<int> exps);
    static Monomial unit(int nvars);  // constant monomial

    unsigned degree() const {
        unsigned d = 0;
        for (int i = 0; i < nvars; ++i) d += e[i];
        return d;
    }
    Monomial operator*(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return nvars == o.nvars && e == o.e; }
    std::string to_text() const;  // "x0^2*x1"
};

/// Graded-lexicographic order, fixed globally: higher total degree first,
/// ties broken by exponents from x0 down.  Map iteration therefore starts
/// at the leading monomial.
struct GrlexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        for (int i = 0; i < a.nvars; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
        return false;
    }
};

/// Sparse homogeneous multivariate polynomial with exact coefficients.
/// Invariants: every stored coefficient is nonzero; every monomial has total
/// degree equal to degree(); iteration follows the global monomial order.
class Polynomial {
public:
    using TermMap = std::map<Monomial, FieldElement, GrlexDescending>;

    Polynomial(FieldRef field, int nvars, int degree);  // zero polynomial

    /// Builds from raw terms, dropping zero coefficients and validating
    /// homogeneity at the declared degree.
    static Polynomial from_terms(FieldRef field, int nvars, int degree, TermMap terms);

    /// Grammar: expr := ['+'|'-']? term (('+'|'-') term)*;
    ///          term := [coeff '*']? factor ('*' factor)* | coeff;
    ///          factor := 'x' index ['^' exponent].
    /// Integers are field-reduced; whitespace ignored; "0" is the zero
    /// polynomial.  Rational coefficients ("3/2") accepted over Q.
    static Polynomial parse(std::string_view text, int nvars, FieldRef field);
    std::string to_text() const;

    FieldRef field() const { return field_; }
    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    FieldElement coeff(const Monomial& m) const;
    const Monomial& leading_monomial() const;  // throws ZeroPolynomial
    FieldElement leading_coeff() const;

    FieldElement evaluate(std::span<const FieldElement> point) const;
    Polynomial partial_derivative(int var) const;

    /// F(Mx): substitutes each variable by the linear form from the matching
    /// matrix row.  Throws SingularMatrix / DimensionMismatch.
    Polynomial apply_linear(const Matrix& m) const;

    /// x_var <- x_var + L for a linear form L free of x_var.  Implemented by
    /// direct binomial expansion, independently of apply_linear.
    Polynomial shear_substitute(int var, const Polynomial& l) const;

    /// Scales so the graded-lex-leading coefficient is 1.
    Polynomial canonical_scalar() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const FieldElement& c) const;
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Coefficient polynomials of x_var^t for t = 0..degree; entry t lives in
    /// the same variable space with x_var struck out.
    std::vector<Polynomial> coefficients_in(int var) const;
    /// Constant value of a degree-0 polynomial.
    FieldElement constant_value() const;
    bool involves(int var) const;

    /// Same terms, more variables (new ones unused).
    Polynomial extend_vars(int new_nvars) const;
    /// Same terms, fewer variables; throws if a struck variable occurs.
    Polynomial restrict_vars(int new_nvars) const;

    Polynomial map_coeffs(FieldRef target) const;  // embed F_p -> F_{p^k}
    Polynomial reduce_mod(FieldRef fp) const;      // Q -> F_p (good primes only)

private:
    FieldRef field_;
    int nvars_;
    int degree_;
    TermMap terms_;
};

/// All monomials of the given total degree, descending graded-lex order.
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

}  // namespace cycov

#endif
