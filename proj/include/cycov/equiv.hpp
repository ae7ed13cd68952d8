#ifndef CYCOV_EQUIV_HPP
#define CYCOV_EQUIV_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cycov/galois.hpp"
#include "cycov/hypersurface.hpp"

namespace cycov {

constexpr std::uint64_t kDefaultGlCap = 1ull << 25;

/// Exact witness check: T carries F1 to a scalar multiple of F2.
bool verify_equivalence(const Hypersurface& f1, const Hypersurface& f2,
                        const ProjectiveTransform& t);

/// Exhaustive scan of GL in row-major enumeration order; the first witness
/// found, or nullopt after a complete scan (which proves inequivalence over
/// this field).  Throws CapExceeded when the group is larger than cap.
std::optional<ProjectiveTransform> equivalent_bruteforce(const Hypersurface& f1,
                                                         const Hypersurface& f2,
                                                         std::uint64_t cap = kDefaultGlCap);

enum class EquivalenceOutcome { Equivalent, Inequivalent, Inconclusive };

struct EquivalenceVerdict {
    EquivalenceOutcome outcome = EquivalenceOutcome::Inconclusive;
    std::optional<ProjectiveTransform> witness;  // present iff Equivalent, verified
    std::string reason;
    std::vector<std::pair<std::string, std::string>> invariants;  // name -> "lhs vs rhs"
    std::uint64_t scanned = 0;
};

/// Structure-aware comparison: equivariant invariants first (point counts,
/// singular counts, rational Galois counts), then normal forms plus a
/// residual search over Fermat-block permutations, d-th root-of-unity
/// scalings, and GL on the tail block.  Every Equivalent verdict carries a
/// verified witness; Inequivalent is only issued on invariant mismatch;
/// anything else is Inconclusive.
EquivalenceVerdict equivalent_structured(const Hypersurface& f1, const Hypersurface& f2,
                                         std::uint64_t gl_cap = kDefaultGlCap,
                                         std::uint64_t point_cap = kDefaultPointCap);

}  // namespace cycov

#endif
