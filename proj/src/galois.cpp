#include "cycov/galois.hpp"

#include <algorithm>
#include <numeric>

#include "cycov/errors.hpp"

namespace cycov {

namespace {

FieldRef extension_of(FieldRef base, unsigned k) {
    if (k == 1) return base;
    if (base->kind() == FieldKind::Prime) return Field::extension(base->characteristic(), k);
    throw Error("extension towers over " + base->spec_text() + " are not supported");
}

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

// unipotent matrix for x_var <- x_var + L
Matrix shear_matrix(FieldRef field, int n, int var, const Polynomial& l) {
    Matrix u = Matrix::identity(field, n);
    for (const auto& [m, c] : l.terms()) {
        for (int j = 0; j < n; ++j) {
            if (m.e[j] == 1) {
                u.at(var, j) = c;
                break;
            }
        }
    }
    return u;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tschirnhaus normalization
// ---------------------------------------------------------------------------

TschirnhausResult tschirnhaus(const Hypersurface& x, const ProjectivePoint& p) {
    const Polynomial& f = x.equation();
    int n = x.nvars();
    int d = x.degree();
    int last = n - 1;
    if (p.ambient_size() != n) throw DimensionMismatch("point space mismatch");
    if (d < 2) throw Error("normalization needs degree >= 2");
    if (f.field()->finite() &&
        std::gcd(f.field()->characteristic(), (std::uint64_t)d) != 1)
        throw CharDividesDegree("characteristic divides degree");
    if (f.evaluate(p.coords()).is_zero())
        throw PointOnHypersurface("point " + p.to_string() + " lies on the hypersurface");

    Matrix b_mat = [&] {
        ProjectiveTransform t = basis_completion({p}, n);
        return *t.matrix().inverse();
    }();
    Polynomial f1 = f.apply_linear(b_mat);
    auto cs = f1.coefficients_in(last);
    FieldElement c0 = cs[(std::size_t)d].constant_value();
    Polynomial f1s = f1.scaled(c0.inverse());

    Polynomial c1 = f1s.coefficients_in(last)[(std::size_t)d - 1];
    FieldElement dinv = f.field()->from_int(d).inverse();
    Polynomial shear = (-c1).scaled(dinv);  // x_last <- x_last - c_1/d
    Polynomial f2 = f1s.shear_substitute(last, shear);
    Matrix u = shear_matrix(f.field(), n, last, shear);

    TschirnhausResult out{ProjectiveTransform(b_mat * u), {}, Polynomial(f.field(), n, d)};
    auto cs2 = f2.coefficients_in(last);
    out.coefficients.reserve((std::size_t)d - 1);
    for (int i = 1; i <= d - 1; ++i) out.coefficients.push_back(cs2[(std::size_t)(d - i)]);
    out.tail = cs2[0];
    if (!out.coefficients[0].is_zero())
        throw Error("internal: shear failed to kill the subleading coefficient");
    return out;
}

bool is_outer_galois(const Hypersurface& x, const ProjectivePoint& p) {
    return tschirnhaus(x, p).middle_vanishes();
}

// ---------------------------------------------------------------------------
// Line filter
// ---------------------------------------------------------------------------

bool galois_line_filter(const Polynomial& eq, const ProjectivePoint& p) {
    int n = eq.nvars();
    int d = eq.degree();
    if (d > 40) return true;  // filter disabled for outsized degrees
    FieldRef field = eq.field();
    FieldElement dinv = field->from_int(d).inverse();

    // binomial rows as field elements
    std::vector<std::vector<FieldElement>> binom((std::size_t)d + 1);
    {
        std::vector<std::vector<mpz_class>> rows((std::size_t)d + 1);
        for (int i = 0; i <= d; ++i) {
            rows[(std::size_t)i].resize((std::size_t)i + 1);
            rows[(std::size_t)i][0] = rows[(std::size_t)i][(std::size_t)i] = 1;
            for (int t = 1; t < i; ++t)
                rows[(std::size_t)i][(std::size_t)t] =
                    rows[(std::size_t)i - 1][(std::size_t)t - 1] +
                    rows[(std::size_t)i - 1][(std::size_t)t];
            for (int t = 0; t <= i; ++t)
                binom[(std::size_t)i].push_back(
                    field->from_mpq(mpq_class(rows[(std::size_t)i][(std::size_t)t])));
        }
    }

    // two deterministic base points not in the class of p
    int tried = 0;
    for (int axis = 0; axis < n && tried < 2; ++axis) {
        ProjectivePoint q = ProjectivePoint::standard(field, n, axis);
        if (q == p) continue;
        ++tried;

        // univariate coefficients of F(q + t p)
        std::vector<FieldElement> a((std::size_t)d + 1, field->zero());
        std::vector<FieldElement> prod, next;
        for (const auto& [m, c] : eq.terms()) {
            prod.assign(1, c);
            for (int i = 0; i < n; ++i) {
                for (unsigned e = 0; e < m.e[i]; ++e) {
                    // multiply by (q_i + t p_i)
                    next.assign(prod.size() + 1, field->zero());
                    for (std::size_t t = 0; t < prod.size(); ++t) {
                        if (prod[t].is_zero()) continue;
                        next[t] = next[t] + prod[t] * q.coords()[(std::size_t)i];
                        next[t + 1] = next[t + 1] + prod[t] * p.coords()[(std::size_t)i];
                    }
                    prod.swap(next);
                }
            }
            for (std::size_t t = 0; t < prod.size(); ++t) a[t] = a[t] + prod[t];
        }
        // shift t <- t - s with s = a_{d-1} / (d a_d); middle must vanish
        FieldElement s = a[(std::size_t)d - 1] * dinv * a[(std::size_t)d].inverse();
        std::vector<FieldElement> shifted((std::size_t)d + 1, field->zero());
        for (int i = 0; i <= d; ++i) {
            if (a[(std::size_t)i].is_zero()) continue;
            // (t - s)^i expansion
            FieldElement spow = field->one();
            for (int t = i; t >= 0; --t) {
                FieldElement term = a[(std::size_t)i] * binom[(std::size_t)i][(std::size_t)t] * spow;
                if ((i - t) % 2 == 1) term = -term;
                shifted[(std::size_t)t] = shifted[(std::size_t)t] + term;
                if (t > 0) spow = spow * s;
            }
        }
        for (int t = 1; t <= d - 1; ++t)
            if (!shifted[(std::size_t)t].is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

std::vector<ProjectivePoint> GaloisReport::rational_points() const {
    std::vector<ProjectivePoint> out;
    for (const auto& [k, p] : points)
        if (k == 1) out.push_back(p);
    return out;
}

GaloisReport enumerate_galois(const Hypersurface& x, unsigned ext_max,
                              std::uint64_t point_cap) {
    FieldRef base = x.field();
    if (!base->finite()) throw InfiniteField("galois enumeration needs a finite field");
    GaloisReport report;
    report.search_extension_max = ext_max;
    report.degree = x.degree();
    report.bound = x.ambient_dim() + 1;  // n+2 where X lives in P^{n+1}
    report.structure_theorem_applies = x.degree() >= 3;
    report.group_structure_note = "cyclic of order " + std::to_string(x.degree());

    for (unsigned k = 1; k <= ext_max; ++k) {
        FieldRef f = extension_of(base, k);
        Polynomial eq = x.equation().map_coeffs(f);
        Hypersurface xk(eq);
        for_each_projective_point(f, x.ambient_dim(), point_cap, [&](const ProjectivePoint& p) {
            if (k > 1 && rational_over_subextension(p, base->characteristic(), k)) return true;
            if (eq.evaluate(p.coords()).is_zero()) return true;  // on X
            if (!galois_line_filter(eq, p)) return true;
            if (is_outer_galois(xk, p)) report.points.emplace_back(k, p);
            return true;
        });
    }
    report.search_complete_over_searched_fields = true;
    report.delta_lower_bound = (int)report.points.size();
    if (report.structure_theorem_applies && report.delta_lower_bound > report.bound) {
        // the bound is a theorem for smooth hypersurfaces only; a singular
        // input exceeding it is unremarkable
        bool singular = false;
        for (unsigned k = 1; k <= 2 && !singular; ++k) {
            try {
                singular = !singular_points(x, k, point_cap).empty();
            } catch (const Error&) {
                break;
            }
        }
        report.bound_violated = !singular;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Structure normal form
// ---------------------------------------------------------------------------

StructureNormalForm structure_normalize(const Hypersurface& x,
                                        const std::vector<ProjectivePoint>& points_in) {
    const Polynomial& f = x.equation();
    FieldRef field = f.field();
    int n_plus_1 = x.ambient_dim();  // X lives in P^{n+1}
    int nv = x.nvars();
    int d = x.degree();
    int last = nv - 1;
    if (d < 3) throw Error("structure normal form requires degree >= 3");
    if (points_in.empty()) throw Error("at least one outer Galois point required");

    std::vector<ProjectivePoint> points = points_in;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    int r = (int)points.size() - 1;
    for (const auto& p : points) {
        if (!is_outer_galois(x, p))
            throw Error("supplied point " + p.to_string() + " is not an outer Galois point");
    }

    // align: points[i] -> e_{last-i}
    Matrix w = [&] {
        ProjectiveTransform t = basis_completion(points, nv);
        return *t.matrix().inverse();
    }();
    Polynomial cur = f.apply_linear(w);

    FieldElement dinv = field->from_int(d).inverse();
    for (int i = 0; i <= r; ++i) {
        int j = last - i;
        auto cs = cur.coefficients_in(j);
        FieldElement cj = cs[(std::size_t)d].constant_value();
        if (cj.is_zero())
            throw ShapeVerificationFailed("aligned point e_" + std::to_string(j) +
                                          " landed on the hypersurface");
        Polynomial shear = (-cs[(std::size_t)d - 1]).scaled(dinv * cj.inverse());
        cur = cur.shear_substitute(j, shear);
        w = w * shear_matrix(field, nv, j, shear);
    }

    // block coefficients a_j; the leading block power is scaled to 1, the
    // others to the canonical representatives of their d-th-power classes
    // (the unit form itself may be out of reach over a non-closed field)
    std::vector<FieldElement> a;
    for (int i = 0; i <= r; ++i) {
        Monomial m = Monomial::unit(nv);
        m.e[last - i] = (std::uint8_t)d;
        a.push_back(cur.coeff(m));
        if (a.back().is_zero())
            throw ShapeVerificationFailed("missing pure power x" + std::to_string(last - i) +
                                          "^" + std::to_string(d) + " after shearing");
    }
    Matrix diag = Matrix::identity(field, nv);
    std::vector<FieldElement> block_coeffs{field->one()};
    std::uint64_t q = field->order().get_ui();
    for (int i = 1; i <= r; ++i) {
        FieldElement ratio = a[(std::size_t)i] * a[0].inverse();
        FieldElement best_coeff = ratio;
        FieldElement best_lambda = field->one();
        for (std::uint64_t t = 1; t < q; ++t) {
            FieldElement lambda = field->element_at(t);
            FieldElement cand = lambda.pow((std::uint64_t)d) * ratio;
            if (cand < best_coeff || (cand == best_coeff && lambda < best_lambda)) {
                best_coeff = cand;
                best_lambda = lambda;
            }
        }
        diag.at(last - i, last - i) = best_lambda;
        block_coeffs.push_back(best_coeff);
    }
    cur = cur.apply_linear(diag).scaled(a[0].inverse());
    w = w * diag;

    // verify the exact shape
    Polynomial::TermMap tail_terms;
    int block_lo = last - r;
    int found_block = 0;
    for (const auto& [m, c] : cur.terms()) {
        int pure_j = -1;
        for (int j = block_lo; j <= last; ++j) {
            if ((int)m.e[j] == d) {  // homogeneity makes this a pure power
                pure_j = j;
                break;
            }
        }
        if (pure_j >= 0) {
            const FieldElement& expect = block_coeffs[(std::size_t)(last - pure_j)];
            if (c != expect)
                throw ShapeVerificationFailed("block coefficient of x" + std::to_string(pure_j) +
                                              "^" + std::to_string(d) + " is " + c.to_string() +
                                              ", expected " + expect.to_string());
            ++found_block;
            continue;
        }
        for (int j = block_lo; j <= last; ++j) {
            if (m.e[j] != 0)
                throw ShapeVerificationFailed("mixed term " + m.to_text() +
                                              " involves a Fermat-block variable");
        }
        tail_terms.emplace(m, c);
    }
    if (found_block != r + 1)
        throw ShapeVerificationFailed("expected " + std::to_string(r + 1) +
                                      " Fermat-block powers, found " +
                                      std::to_string(found_block));

    StructureNormalForm out{ProjectiveTransform(w), r, Polynomial(field, 1, 0), cur,
                            std::move(block_coeffs)};
    int g_vars = n_plus_1 + 1 - (r + 1);  // n - r + 1
    if (tail_terms.empty()) {
        out.tail = Polynomial(field, std::max(1, g_vars), 0);
    } else {
        Polynomial g_full = Polynomial::from_terms(field, nv, d, std::move(tail_terms));
        out.tail = g_full.restrict_vars(std::max(1, g_vars));
    }
    return out;
}

}  // namespace cycov
