#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tl/markov.hpp"
#include "tl/pwords.hpp"

namespace tl {

// An arrow from the trivial object into the r-fold tensor power, held in
// tower coordinates: an element of TL_r (level 0 arrows are scalars, i.e.
// multiples of the empty diagram).
struct Arrow {
  int level = 0;
  TLElement value;

  Arrow() = default;
  Arrow(int lvl, TLElement v);

  const DomainPtr& domain() const { return value.domain(); }
  bool operator==(const Arrow& other) const {
    return level == other.level && value == other.value;
  }
  std::string str() const;
};

// The identity-valued arrow at a level, and a scalar as a level-0 arrow.
Arrow arrow_unit(const DomainPtr& dom, int level);
Arrow arrow_scalar(const Scalar& c);

// Tensor product of arrows: value = S p_{r,s} T on r+s strands, with both
// factors embedded on the low strands (the p word interleaves them).
Arrow tensor_arrows(const Arrow& S, const Arrow& T);

// Left tensoring by the canonical solution R placed between the first r and
// last s tensor factors: level r+s -> r+s+2.
//   r > s: lambda * z p^{(2s)}_{r-s,2}
//   r = s: lambda * z
//   r < s: lambda * p^{(2r)}_{2,s-r} z
Arrow insert_R(int r, int s, const Arrow& z);

// Left tensoring by R* in the same position: level r+s+2 -> r+s; the
// trace-form adjoint of insert_R. E E denotes two conditional expectation
// steps.
//   r > s: lambda * EE(z (p^{(2s)}_{r-s,2})*)
//   r = s: lambda * EE(z)
//   r < s: lambda * EE((p^{(2r)}_{2,s-r})* z)
Arrow insert_R_star(int r, int s, const Arrow& z);

// The conjugation J: antiunitary involution, in coordinates the element
// involution.
Arrow conjugate_arrow(const Arrow& T);

// Trace inner product of two arrows at the same level.
Scalar arrow_inner(const Arrow& a, const Arrow& b);

// Orthogonal basis of the level-r arrow space (all of TL_r, modulo the
// Gram kernel at degenerate index values) with the squared norms of its
// members. Exact domains only unless force = true.
struct ArrowBasis {
  int level = 0;
  std::vector<TLElement> elements;
  std::vector<Scalar> norms2;
};
ArrowBasis invariant_arrow_basis(const DomainPtr& dom, int r, bool force = false);

// Noncrossing perfect matchings of r points on a line, as sorted arc lists
// (a, b) with a < b, 0-based. Empty matching for r = 0; none for odd r.
std::vector<std::vector<std::pair<int, int>>> noncrossing_matchings(int r);

// Bottom-up insertion plan realizing a noncrossing matching: entries
// (pos, target_level) mean "insert at offsets (pos, target_level - pos - 2)
// into the previous arrow", starting from level 0 and ending at level r.
// Validates the matching (perfect, noncrossing on 0..r-1).
std::vector<std::pair<int, int>> matching_insertion_plan(
    const std::vector<std::pair<int, int>>& matching, int r);

// The arrow obtained by building the matching arc by arc with insert_R,
// starting from the level-0 unit (innermost-leftmost arc first).
Arrow planar_arrow(const DomainPtr& dom,
                   const std::vector<std::pair<int, int>>& matching, int r);

// All planar arrows at level r (C_{r/2} of them; empty list for odd r > 0).
std::vector<Arrow> planar_r_span(const DomainPtr& dom, int r);

// Verifies, for every level l <= max_level, that inserting R at either end
// and then removing it with R* on the opposite side is the identity map on
// the level-l space, and that the level-0 composition gives the index
// (the norm-squared of R).
LemmaCertificate verify_conjugate_equations(const DomainPtr& dom, int max_level);

}  // namespace tl
