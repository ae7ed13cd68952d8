#include "cycov/equiv.hpp"

#include <algorithm>

#include "cycov/errors.hpp"

namespace cycov {

bool verify_equivalence(const Hypersurface& f1, const Hypersurface& f2,
                        const ProjectiveTransform& t) {
    if (f1.nvars() != f2.nvars() || f1.field() != f2.field())
        throw DimensionMismatch("hypersurfaces live in different spaces");
    if (t.size() != f1.nvars()) throw DimensionMismatch("transform size mismatch");
    if (f1.degree() != f2.degree()) return false;
    Polynomial moved = f1.equation().apply_linear(t.matrix());
    return moved.canonical_scalar() == f2.equation();
}

std::optional<ProjectiveTransform> equivalent_bruteforce(const Hypersurface& f1,
                                                         const Hypersurface& f2,
                                                         std::uint64_t cap) {
    if (f1.nvars() != f2.nvars() || f1.field() != f2.field())
        throw DimensionMismatch("hypersurfaces live in different spaces");
    if (f1.degree() != f2.degree()) return std::nullopt;
    InvertibleEnumerator en(f1.field(), f1.nvars(), cap);
    while (auto m = en.next()) {
        Polynomial moved = f1.equation().apply_linear(*m);
        if (moved.canonical_scalar() == f2.equation()) return ProjectiveTransform(*m);
    }
    return std::nullopt;
}

namespace {

// extension sizes worth counting points over; beyond this the invariant is skipped
constexpr std::uint64_t kInvariantPointBudget = 300000;

bool count_feasible(FieldRef field, int m, unsigned k) {
    if (field->kind() != FieldKind::Prime && k > 1) return false;
    mpz_class q = field->order();
    mpz_class qk;
    mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), k);
    mpz_class total = 0, qi = 1;
    for (int i = 0; i <= m; ++i) {
        total += qi;
        qi *= qk;
    }
    return total <= mpz_class((unsigned long)kInvariantPointBudget);
}

}  // namespace

EquivalenceVerdict equivalent_structured(const Hypersurface& f1, const Hypersurface& f2,
                                         std::uint64_t gl_cap, std::uint64_t point_cap) {
    if (f1.field() != f2.field()) throw DimensionMismatch("different fields");
    if (!f1.field()->finite()) throw InfiniteField("structured comparison needs a finite field");
    if (f1.nvars() != f2.nvars()) throw DimensionMismatch("different ambient spaces");
    if (f1.degree() < 3) throw Error("structured comparison requires degree >= 3");
    FieldRef field = f1.field();
    int nv = f1.nvars();
    EquivalenceVerdict v;

    if (f1.degree() != f2.degree()) {
        v.outcome = EquivalenceOutcome::Inequivalent;
        v.reason = "degrees differ";
        v.invariants.emplace_back("degree", std::to_string(f1.degree()) + " vs " +
                                                std::to_string(f2.degree()));
        return v;
    }

    // equivariant invariants
    bool saw_singular = false;
    for (unsigned k = 1; k <= 2; ++k) {
        if (!count_feasible(field, f1.ambient_dim(), k)) break;
        std::uint64_t c1 = rational_point_count(f1, k, point_cap);
        std::uint64_t c2 = rational_point_count(f2, k, point_cap);
        std::string tag = "points_k" + std::to_string(k);
        v.invariants.emplace_back(tag, std::to_string(c1) + " vs " + std::to_string(c2));
        if (c1 != c2) {
            v.outcome = EquivalenceOutcome::Inequivalent;
            v.reason = "rational point counts differ at extension " + std::to_string(k);
            return v;
        }
        std::size_t s1 = singular_points(f1, k, point_cap).size();
        std::size_t s2 = singular_points(f2, k, point_cap).size();
        saw_singular = saw_singular || s1 > 0 || s2 > 0;
        v.invariants.emplace_back("singular_k" + std::to_string(k),
                                  std::to_string(s1) + " vs " + std::to_string(s2));
        if (s1 != s2) {
            v.outcome = EquivalenceOutcome::Inequivalent;
            v.reason = "singular point counts differ at extension " + std::to_string(k);
            return v;
        }
    }
    GaloisReport g1 = enumerate_galois(f1, 1, point_cap);
    GaloisReport g2 = enumerate_galois(f2, 1, point_cap);
    v.invariants.emplace_back("galois_rational", std::to_string(g1.delta_lower_bound) + " vs " +
                                                     std::to_string(g2.delta_lower_bound));
    if (g1.delta_lower_bound != g2.delta_lower_bound) {
        v.outcome = EquivalenceOutcome::Inequivalent;
        v.reason = "rational outer Galois point counts differ";
        return v;
    }
    if (g1.bound_violated || g2.bound_violated) {
        // the count already contradicts the structure bound over this field,
        // so the normal-form machinery has no theorem behind it here
        v.outcome = EquivalenceOutcome::Inconclusive;
        v.reason = "Galois count exceeds the structure bound over this field; "
                   "normal-form comparison not supported";
        return v;
    }

    if (g1.delta_lower_bound == 0) {
        v.outcome = EquivalenceOutcome::Inconclusive;
        v.reason = "no rational outer Galois points to structure the comparison";
        return v;
    }
    if (saw_singular) {
        // the normal-form machinery is theorem-backed for smooth inputs only
        v.outcome = EquivalenceOutcome::Inconclusive;
        v.reason = "singular inputs: structure comparison not applicable";
        return v;
    }

    StructureNormalForm n1{ProjectiveTransform(Matrix::identity(field, nv)), 0,
                           Polynomial(field, 1, 0), Polynomial(field, nv, 0), {}};
    StructureNormalForm n2 = n1;
    try {
        n1 = structure_normalize(f1, g1.rational_points());
        n2 = structure_normalize(f2, g2.rational_points());
    } catch (const ShapeVerificationFailed& e) {
        if (!e.rationality_obstruction) throw;  // genuine falsification channel
        v.outcome = EquivalenceOutcome::Inconclusive;
        v.reason = std::string("normal form blocked by a rationality obstruction: ") +
                   e.what();
        return v;
    } catch (const DependentPoints& e) {
        v.outcome = EquivalenceOutcome::Inconclusive;
        v.reason = std::string("Galois points not simultaneously standardizable: ") + e.what();
        return v;
    }
    int r = n1.r;

    auto finish = [&](const Matrix& candidate) -> EquivalenceVerdict {
        Matrix w = n1.transform.matrix() * candidate * *n2.transform.matrix().inverse();
        ProjectiveTransform witness(std::move(w));
        if (!verify_equivalence(f1, f2, witness))
            throw Error("internal: residual witness failed the exact substitution check");
        v.outcome = EquivalenceOutcome::Equivalent;
        v.witness = witness;
        v.reason = "normal forms matched through the residual stabilizer";
        return v;
    };

    if (n1.normal_form == n2.normal_form) return finish(Matrix::identity(field, nv));

    // Residual search over Fermat-block permutations and GL on the tail
    // block.  Diagonal d-th-root-of-unity block scalings fix the normal form
    // pointwise and uniform block scalings are absorbed by the scalar
    // comparison together with a rescaled tail matrix, so permutations x
    // GL(tail) already cover every block-diagonal candidate.
    int block_lo = nv - 1 - r;
    int g_vars = block_lo;
    std::vector<int> perm(r + 1);
    for (int i = 0; i <= r; ++i) perm[(std::size_t)i] = i;

    bool tail_capped =
        g_vars > 0 && gl_order(field, g_vars) > mpz_class((unsigned long)gl_cap);

    Polynomial target = n2.normal_form.canonical_scalar();
    do {
        Matrix base(field, nv);
        for (int i = 0; i <= r; ++i)
            base.at(block_lo + i, block_lo + perm[(std::size_t)i]) = field->one();
        if (g_vars == 0) {
            ++v.scanned;
            if (n1.normal_form.apply_linear(base).canonical_scalar() == target)
                return finish(base);
        } else if (!tail_capped) {
            InvertibleEnumerator en(field, g_vars, gl_cap);
            while (auto b = en.next()) {
                Matrix cand = base;
                for (int i = 0; i < g_vars; ++i)
                    for (int j = 0; j < g_vars; ++j) cand.at(i, j) = b->at(i, j);
                ++v.scanned;
                if (n1.normal_form.apply_linear(cand).canonical_scalar() == target)
                    return finish(cand);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    v.outcome = EquivalenceOutcome::Inconclusive;
    v.reason = tail_capped
                   ? "tail block GL_" + std::to_string(g_vars) + "(" + field->spec_text() +
                         ") order " + gl_order(field, g_vars).get_str() + " exceeds cap " +
                         std::to_string(gl_cap)
                   : "residual stabilizer search exhausted without a witness; the search space "
                     "is a partial cover of the stabilizer";
    return v;
}

}  // namespace cycov
