#ifndef CYCOV_GALOIS_HPP
#define CYCOV_GALOIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cycov/hypersurface.hpp"
#include "cycov/projlin.hpp"

namespace cycov {

/// Normal form of a hypersurface at a point P off it: coordinates moving P to
/// [0:...:0:1], the leading coefficient rescaled to 1, and the shear
/// x_last <- x_last - c_1/d applied.  The reconstruction identity holds
/// exactly: applying `transform` to the original equation and scaling the
/// x_last^d coefficient to 1 gives x_last^d + sum c_i x_last^{d-i} + tail.
struct TschirnhausResult {
    ProjectiveTransform transform;
    std::vector<Polynomial> coefficients;  // c_1..c_{d-1}; c_1 is always zero
    Polynomial tail;                       // G, free of x_last

    /// True when every c_i vanishes, i.e. the form is exactly x_last^d + G.
    bool middle_vanishes() const {
        for (const auto& c : coefficients)
            if (!c.is_zero()) return false;
        return true;
    }
};

TschirnhausResult tschirnhaus(const Hypersurface& x, const ProjectivePoint& p);

/// Normal-form test for an outer Galois point: P not on X and the sheared
/// form is exactly x_last^d + G.
bool is_outer_galois(const Hypersurface& x, const ProjectivePoint& p);

/// Cheap necessary test along the pencil of lines through P: restricting the
/// equation to a line through P must give a shifted pure power plus constant.
/// Used to reject before the full normalization; never accepts on its own.
bool galois_line_filter(const Polynomial& eq, const ProjectivePoint& p);

struct GaloisReport {
    std::vector<std::pair<unsigned, ProjectivePoint>> points;  // (min def. field ext, point)
    unsigned search_extension_max = 1;
    bool search_complete_over_searched_fields = false;
    int delta_lower_bound = 0;
    int bound = 0;  // n+2
    int degree = 0;
    bool structure_theorem_applies = false;  // d >= 3
    /// Set when the count exceeds the bound on an instance whose smoothness
    /// certificate is clean.  Small characteristics can genuinely trip this
    /// (char 2, d = 3 already does); the census treats it as a reportable
    /// falsification event.
    bool bound_violated = false;
    std::string group_structure_note;

    std::vector<ProjectivePoint> rational_points() const;  // extension degree 1 only
};

/// Tests every rational point of P^m(F_{p^k}) \ X for k <= ext_max in
/// canonical order.  The count is a lower bound for the number of outer
/// Galois points over the closure.
GaloisReport enumerate_galois(const Hypersurface& x, unsigned ext_max = 1,
                              std::uint64_t point_cap = kDefaultPointCap);

/// Fermat-block normal form: with r+1 outer Galois points supplied, produces
/// T with the transformed, scalar-normalized equation equal to
///   c_{n+1} x_{n+1}^d + ... + c_{n+1-r} x_{n+1-r}^d + G(x_0..x_{n-r}),
/// where c_{n+1} = 1 and each further block coefficient is the canonical
/// representative of its d-th-power class.  Over an algebraically closed
/// field every class is trivial and the shape is the pure Fermat block; over
/// F_q a non-d-th-power ratio survives as an explicit non-unit coefficient.
struct StructureNormalForm {
    ProjectiveTransform transform;
    int r = 0;
    Polynomial tail;         // G in the first n-r+1 variables (zero poly when r = n+1)
    Polynomial normal_form;  // full-space shape: block sum + G
    std::vector<FieldElement> block_coefficients;  // index i for x_{n+1-i}^d; [0] is 1
    bool unit_block() const {
        for (const auto& c : block_coefficients)
            if (!c.is_one()) return false;
        return true;
    }
};

StructureNormalForm structure_normalize(const Hypersurface& x,
                                        const std::vector<ProjectivePoint>& points);

}  // namespace cycov

#endif
