#include "cycov/hypersurface.hpp"

#include <numeric>

#include "cycov/errors.hpp"

namespace cycov {

Hypersurface::Hypersurface(const Polynomial& equation) : eq_(equation.field(), 1, 0) {
    if (equation.is_zero()) throw ZeroPolynomial("hypersurface equation is zero");
    if (equation.degree() < 1) throw Error("hypersurface degree must be >= 1");
    FieldRef f = equation.field();
    if (f->finite() &&
        std::gcd(f->characteristic(), (std::uint64_t)equation.degree()) != 1)
        throw CharDividesDegree("characteristic " + std::to_string(f->characteristic()) +
                                " divides degree " + std::to_string(equation.degree()));
    eq_ = equation.canonical_scalar();
}

bool Hypersurface::contains(const ProjectivePoint& p) const {
    if (p.ambient_size() != nvars()) throw DimensionMismatch("point space mismatch");
    return eq_.evaluate(p.coords()).is_zero();
}

namespace {

FieldRef extension_of(FieldRef base, unsigned k) {
    if (k == 1) return base;
    if (base->kind() == FieldKind::Prime) return Field::extension(base->characteristic(), k);
    throw Error("extension towers over " + base->spec_text() + " are not supported");
}

// minimal field of definition: all canonical coordinates fixed by Frobenius^j
bool rational_over_subextension(const ProjectivePoint& p, std::uint64_t charac, unsigned k) {
    for (unsigned j = 1; j < k; ++j) {
        if (k % j != 0) continue;
        mpz_class pj;
        mpz_ui_pow_ui(pj.get_mpz_t(), charac, j);
        bool all_fixed = true;
        for (const auto& c : p.coords()) {
            if (c.pow(pj.get_ui()) != c) {
                all_fixed = false;
                break;
            }
        }
        if (all_fixed) return true;
    }
    return false;
}

}  // namespace

std::vector<ProjectivePoint> singular_points(const Hypersurface& x, unsigned ext_degree,
                                             std::uint64_t point_cap) {
    FieldRef base = x.field();
    if (!base->finite()) throw InfiniteField("singular point search needs a finite field");
    if (ext_degree < 1) throw Error("extension degree must be >= 1");
    FieldRef f = extension_of(base, ext_degree);
    Polynomial eq = x.equation().map_coeffs(f);

    std::vector<Polynomial> partials;
    partials.reserve(x.nvars());
    for (int i = 0; i < x.nvars(); ++i) partials.push_back(eq.partial_derivative(i));

    std::vector<ProjectivePoint> out;
    for_each_projective_point(f, x.ambient_dim(), point_cap, [&](const ProjectivePoint& p) {
        for (const auto& d : partials) {
            if (!d.evaluate(p.coords()).is_zero()) return true;
        }
        out.push_back(p);
        return true;
    });
    return out;  // enumeration order is the canonical point order
}

SmoothnessCertificate smoothness_certificate(const Hypersurface& x, unsigned k_max,
                                             std::uint64_t point_cap) {
    SmoothnessCertificate cert;
    cert.k_max = k_max;
    for (unsigned k = 1; k <= k_max; ++k) {
        for (auto& p : singular_points(x, k, point_cap)) {
            if (k > 1 && rational_over_subextension(p, x.field()->characteristic(), k))
                continue;  // already reported at its minimal field of definition
            cert.singular.emplace_back(k, std::move(p));
        }
    }
    return cert;
}

std::vector<std::pair<std::uint64_t, SmoothnessCertificate>> smoothness_mod_primes(
    const Hypersurface& x, unsigned k_max, unsigned count, std::uint64_t point_cap) {
    if (x.field()->kind() != FieldKind::Rational)
        throw Error("smoothness_mod_primes applies to rational hypersurfaces");
    std::vector<std::pair<std::uint64_t, SmoothnessCertificate>> out;
    std::uint64_t p = 2;
    auto next_prime = [&]() {
        mpz_class z((unsigned long)p);
        mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
        p = z.get_ui();
    };
    while (out.size() < count) {
        next_prime();
        if ((std::uint64_t)x.degree() % p == 0) continue;
        bool good = true;
        for (const auto& [m, c] : x.equation().terms()) {
            if (mpz_divisible_ui_p(c.rational_value().get_den().get_mpz_t(), p)) {
                good = false;  // denominator not invertible mod p
                break;
            }
        }
        if (!good) continue;
        FieldRef fp = Field::prime(p);
        Polynomial red = x.equation().reduce_mod(fp);
        if (red.is_zero() || red.degree() != x.degree()) continue;
        try {
            Hypersurface xr(red);
            out.emplace_back(p, smoothness_certificate(xr, k_max, point_cap));
        } catch (const Error&) {
            continue;  // bad reduction, try the next prime
        }
    }
    return out;
}

std::uint64_t rational_point_count(const Hypersurface& x, unsigned ext_degree,
                                   std::uint64_t point_cap) {
    FieldRef f = extension_of(x.field(), ext_degree);
    Polynomial eq = x.equation().map_coeffs(f);
    std::uint64_t count = 0;
    for_each_projective_point(f, x.ambient_dim(), point_cap, [&](const ProjectivePoint& p) {
        if (eq.evaluate(p.coords()).is_zero()) ++count;
        return true;
    });
    return count;
}

}  // namespace cycov
