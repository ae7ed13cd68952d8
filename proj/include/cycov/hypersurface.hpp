#ifndef CYCOV_HYPERSURFACE_HPP
#define CYCOV_HYPERSURFACE_HPP

#include <cstdint>
#include <vector>

#include "cycov/poly.hpp"
#include "cycov/projlin.hpp"

namespace cycov {

constexpr std::uint64_t kDefaultPointCap = 1ull << 24;

/// Validated hypersurface V(F) in P^m: F nonzero, homogeneous, stored in
/// scalar-canonical form.  Over finite fields the characteristic must not
/// divide the degree.
class Hypersurface {
public:
    explicit Hypersurface(const Polynomial& equation);

    const Polynomial& equation() const { return eq_; }
    FieldRef field() const { return eq_.field(); }
    int nvars() const { return eq_.nvars(); }
    int ambient_dim() const { return eq_.nvars() - 1; }  // lives in P^m
    int degree() const { return eq_.degree(); }

    bool contains(const ProjectivePoint& p) const;

    bool operator==(const Hypersurface& o) const { return eq_ == o.eq_; }

private:
    Polynomial eq_;
};

/// Bounded-search smoothness record: an empty list means no singular point
/// rational over F_{p^k} for any k <= k_max, which is not a proof of
/// smoothness over the closure.
struct SmoothnessCertificate {
    unsigned k_max = 0;
    std::vector<std::pair<unsigned, ProjectivePoint>> singular;  // (extension degree, point)
    bool clean() const { return singular.empty(); }
};

/// All points of P^m(F_{p^k}) where every partial derivative vanishes, in
/// canonical point order.  The degree condition gcd(char, d) = 1 makes the
/// Euler relation cover the equation itself.
std::vector<ProjectivePoint> singular_points(const Hypersurface& x, unsigned ext_degree,
                                             std::uint64_t point_cap = kDefaultPointCap);

/// Aggregates singular_points for k = 1..k_max, recording each point at its
/// minimal field of definition.
SmoothnessCertificate smoothness_certificate(const Hypersurface& x, unsigned k_max = 2,
                                             std::uint64_t point_cap = kDefaultPointCap);

/// Rational-coefficient hypersurfaces: reduces modulo the first `count` good
/// primes (p coprime to d, coefficients reducible, reduction nonzero) and
/// certifies each reduction.  Returns (prime, certificate) pairs.
std::vector<std::pair<std::uint64_t, SmoothnessCertificate>> smoothness_mod_primes(
    const Hypersurface& x, unsigned k_max = 1, unsigned count = 3,
    std::uint64_t point_cap = kDefaultPointCap);

/// Zeros of the equation over P^m(F_{p^k}); an equivalence invariant.
std::uint64_t rational_point_count(const Hypersurface& x, unsigned ext_degree,
                                   std::uint64_t point_cap = kDefaultPointCap);

}  // namespace cycov

#endif
