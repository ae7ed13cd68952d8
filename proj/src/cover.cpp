#include "cycov/cover.hpp"

#include <numeric>

#include "cycov/errors.hpp"

namespace cycov {

Polynomial cover_equation(const Polynomial& f) {
    int nv = f.nvars() + 1;
    Polynomial lifted = f.extend_vars(nv);
    Polynomial::TermMap t;
    Monomial m = Monomial::unit(nv);
    m.e[nv - 1] = (std::uint8_t)f.degree();
    t.emplace(m, f.field()->one());
    Polynomial xd = Polynomial::from_terms(f.field(), nv, f.degree(), std::move(t));
    return xd - lifted;
}

Hypersurface cyclic_cover(const Hypersurface& y) {
    // gcd(char, d) = 1 re-checked by the Hypersurface constructor
    return Hypersurface(cover_equation(y.equation()));
}

ProjectiveTransform deck_transform(const Hypersurface& cover, unsigned d) {
    if ((int)d != cover.degree())
        throw Error("deck degree " + std::to_string(d) + " does not match cover degree " +
                    std::to_string(cover.degree()));
    FieldRef f = cover.field();
    auto rho = root_of_unity(f, d);
    if (!rho) {
        unsigned ext = root_of_unity_extension_degree(f, d);
        throw NoRootOfUnity("no primitive " + std::to_string(d) + "-th root of unity in " +
                                f->spec_text() + "; minimal extension degree " +
                                std::to_string(ext),
                            ext);
    }
    int n = cover.nvars();
    Matrix m = Matrix::identity(f, n);
    m.at(n - 1, n - 1) = *rho;
    return ProjectiveTransform(std::move(m));
}

std::optional<std::pair<Hypersurface, FieldElement>> as_cover(const Hypersurface& h) {
    const Polynomial& eq = h.equation();
    int last = h.nvars() - 1;
    int d = h.degree();
    FieldElement c = h.field()->zero();
    Polynomial::TermMap rest;
    for (const auto& [m, coeff] : eq.terms()) {
        if (m.e[last] == 0) {
            rest.emplace(m, coeff);
            continue;
        }
        if ((int)m.e[last] == d) {
            c = coeff;  // pure power x_last^d
            continue;
        }
        return std::nullopt;  // mixed term involving x_last
    }
    if (c.is_zero()) return std::nullopt;     // no x_last^d term
    if (rest.empty()) return std::nullopt;    // pure power, no branch data
    Polynomial r = Polynomial::from_terms(h.field(), h.nvars(), d, std::move(rest));
    // (1/c)*E = x_last^d + R/c = x_last^d - F  =>  F = -R/c
    Polynomial f = (-r).scaled(c.inverse()).restrict_vars(h.nvars() - 1);
    return std::make_pair(Hypersurface(f), -c);
}

}  // namespace cycov
