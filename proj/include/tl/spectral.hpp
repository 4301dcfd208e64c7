#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tl/aof.hpp"
#include "tl/arrows.hpp"
#include "tl/pwords.hpp"

namespace tl {

// Graded element of the dense spectral *-algebra of the concrete model.
// A term at level r is a pair (commutant element, vector in H^{(x)r});
// the canonical storage is sparse: per level, a map from (index of the
// word-basis element, multi-index of the H-basis vector) to the
// coefficient. The leftmost tensor factor of H^{(x)r} is the most
// significant digit of the multi-index. Zero coefficients are pruned.
struct SpectralElement {
  DomainPtr dom;
  int n = 0;  // dimension of the role space H
  std::map<int, std::map<std::pair<int, long>, Scalar>> terms;

  bool is_zero() const { return terms.empty(); }
};

// Zero and scalar (level-0) elements.
SpectralElement sp_zero(const DomainPtr& dom, int n);
SpectralElement sp_scalar(const DomainPtr& dom, int n, const Scalar& c);

// Generator T-bar (x) v: T a level-r element, v a vector (src = 0,
// tgt = r) over the same domain with matching n.
SpectralElement sp_generator(int n, const TLElement& T, const ConcreteOp& v);

// Generator with a single H-basis vector given by its digits (each in
// [0, n)), leftmost digit = leftmost tensor factor.
SpectralElement sp_generator_idx(int n, const TLElement& T,
                                 const std::vector<int>& digits);

SpectralElement sp_add(const SpectralElement& a, const SpectralElement& b);
SpectralElement sp_scaled(const SpectralElement& a, const Scalar& c);
bool sp_equal(const SpectralElement& a, const SpectralElement& b);

// Graded product: (T-bar (x) xi)(T'-bar (x) xi') has commutant
// tensor_arrows(T, T') and vector xi xi' (concatenated multi-indices).
// Throws std::length_error if a resulting level would exceed the cutoff;
// nothing is ever truncated silently.
SpectralElement sp_product(const SpectralElement& a, const SpectralElement& b,
                           int level_cutoff = 6);

// Star: (T-bar (x) xi_1...xi_r)* = (T*)-bar (x) j xi_r ... j xi_1, where
// j applies F slotwise (real entries) and the slots are reversed. Applied
// twice this gives sigma^r per level, so it is an involution when
// sigma = +1.
SpectralElement sp_star(const FMatrix& F, const SpectralElement& a);

// The two rewrite directions of the insertion relations, both mapping
// level r+s+2 terms to level r+s terms.
//
//  - R: the vector part must lie in the image of 1^{(x)r} (x) R (x)
//    1^{(x)s} (checked; std::invalid_argument otherwise). The factored
//    vector is recovered exactly and the commutant is transformed by
//    insert_R_star(r, s, .). The output represents the same element of
//    the algebra as the input.
//  - Rstar: the commutant part must lie in the image of
//    insert_R(r, s, .) (checked). The factored commutant is recovered
//    exactly and the contraction 1^{(x)r} (x) R* (x) 1^{(x)s} is applied
//    to the vector part directly. The output represents lambda times the
//    input.
//
// Only levels equal to r+s+2 are rewritten; the element must be
// homogeneous of that level (std::invalid_argument otherwise).
enum class RDirection { R, Rstar };
SpectralElement apply_R_relation(const FMatrix& F, int r, int s,
                                 const SpectralElement& a, RDirection dir);

// The invariant state: h(T-bar (x) eta) at level r pairs T against the
// planar arrows and eta against the planar fixed vectors through the
// inverse of their (shared) Gram matrix; odd levels contribute zero.
// h(unit) = 1. Requires subfactor compatibility.
Scalar invariant_state(const FMatrix& F, const SpectralElement& a);

// Formal coaction expansion: the image of a level-r term is a sum of
// (monomial word in the generator symbols) (x) (spectral element), where
// a word of degree r is a list of (row, column) pairs, one per slot.
struct CoactionExpansion {
  DomainPtr dom;
  int n = 0;
  std::map<std::vector<std::pair<int, int>>, SpectralElement> terms;
};

CoactionExpansion coaction_expand(const SpectralElement& a);

// Substitute the identity pattern (row == column -> 1, else 0) into the
// words; recovers the original element.
SpectralElement counit_collapse(const CoactionExpansion& e);

// Formal product of two expansions: spectral parts multiply, words
// concatenate. Used to check multiplicativity of the coaction.
CoactionExpansion coaction_product(const CoactionExpansion& a,
                                   const CoactionExpansion& b,
                                   int level_cutoff = 6);

bool coaction_equal(const CoactionExpansion& a, const CoactionExpansion& b);

// Traciality sweep of the invariant state: checks h(ab) = h(ba) for all
// generator pairs (word basis x H basis at each level) with levels
// <= r_max. Requires subfactor compatibility. The certificate reports
// one case per level pair; violations are recorded, not thrown.
LemmaCertificate verify_traciality(const FMatrix& F, int r_max);

}  // namespace tl
