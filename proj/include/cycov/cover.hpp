#ifndef CYCOV_COVER_HPP
#define CYCOV_COVER_HPP

#include <optional>
#include <utility>

#include "cycov/hypersurface.hpp"
#include "cycov/projlin.hpp"

namespace cycov {

/// The cyclic d-fold cover of P^m branched along Y = V(F): the hypersurface
/// V(x_{m+1}^d - F) in P^{m+1}.  Degree is preserved; the new variable has
/// index m+1.
Hypersurface cyclic_cover(const Hypersurface& y);

/// Raw cover equation x_{m+1}^d - F, before scalar canonicalization.  Useful
/// when exact scalars matter.
Polynomial cover_equation(const Polynomial& f);

/// Deck transformation of a cover of degree d: fixes x_0..x_m and scales
/// x_{m+1} by a primitive d-th root of unity.  Order exactly d in PGL; leaves
/// the cover equation invariant.  Throws NoRootOfUnity with the minimal
/// extension degree that would contain the root.
ProjectiveTransform deck_transform(const Hypersurface& cover, unsigned d);

/// Recognizes cover shape: when the canonical equation is
/// c*x_{m+1}^d + R(x_0..x_m) with no mixed x_{m+1} terms, returns the base
/// hypersurface Y = V(F) with x_{m+1}^d - F matching the equation up to
/// scalar, together with the sign s relating the stored equation E to the
/// minus convention: E = -s * (x_{m+1}^d - F).  Returns nullopt otherwise.
std::optional<std::pair<Hypersurface, FieldElement>> as_cover(const Hypersurface& h);

}  // namespace cycov

#endif
