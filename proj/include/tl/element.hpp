#pragma once

#include <map>
#include <string>
#include <vector>

#include "tl/diagram.hpp"
#include "tl/scalar.hpp"

namespace tl {

// A product of projection generators e_{i_1} ... e_{i_k} times a scalar.
struct JonesWord {
  Scalar prefactor;
  std::vector<int> letters;  // 1-based indices, 1 <= i <= n-1
};

// Finite linear combination of planar diagrams on n strands.
class TLElement {
 public:
  TLElement() = default;
  TLElement(DomainPtr dom, int n) : dom_(std::move(dom)), n_(n) {}

  static TLElement unit(DomainPtr dom, int n);
  static TLElement from_diagram(DomainPtr dom, const Diagram& d, const Scalar& c);
  // The cup-cap diagram U_i (loop value lambda).
  static TLElement cupcap(DomainPtr dom, int n, int i);
  // The Jones projection e_i = lambda^{-1} U_i.
  static TLElement gen_e(DomainPtr dom, int n, int i);

  const DomainPtr& domain() const { return dom_; }
  int strands() const { return n_; }
  const std::map<Diagram, Scalar>& terms() const { return terms_; }
  bool valid() const { return dom_ != nullptr; }

  void add_term(const Diagram& d, const Scalar& c);

  TLElement operator-() const;
  TLElement& operator+=(const TLElement& o);
  TLElement& operator-=(const TLElement& o);
  friend TLElement operator+(TLElement a, const TLElement& b) { return a += b; }
  friend TLElement operator-(TLElement a, const TLElement& b) { return a -= b; }
  friend TLElement operator*(const TLElement& a, const TLElement& b);
  TLElement& operator*=(const TLElement& o) { return *this = *this * o; }
  TLElement scaled(const Scalar& c) const;

  // Vertical flip of every diagram with conjugated coefficients: x -> x*.
  TLElement star() const;

  bool is_zero() const;
  bool operator==(const TLElement& o) const;
  bool operator!=(const TLElement& o) const { return !(*this == o); }

  // Largest coefficient magnitude (float mode scale hint; 0 for empty).
  double coeff_scale() const;

  std::string str() const;

 private:
  DomainPtr dom_;
  int n_ = 0;
  std::map<Diagram, Scalar> terms_;  // zero coefficients pruned
};

// Product e_{w[0]} e_{w[1]} ... times prefactor as a TLElement on n strands.
TLElement word_to_element(const DomainPtr& dom, int n, const std::vector<int>& letters,
                          const Scalar& prefactor);
TLElement word_to_element(const DomainPtr& dom, int n, const JonesWord& w);

// Expansion of x in the Jones reduced-word basis. Each diagram on n strands
// is the value of exactly one reduced word (runs e_{j_k}..e_{i_k} with the
// j's and i's strictly increasing); the round trip through word_to_element
// is exact.
std::vector<JonesWord> element_to_reduced_words(const TLElement& x);

// All reduced words on n strands (letters only), paired with their diagrams;
// the table is a bijection of size Catalan(n). Cached per n.
const std::map<Diagram, std::vector<int>>& reduced_word_table(int n);

// Letters of the reduced word for one diagram.
const std::vector<int>& diagram_reduced_word(const Diagram& d);

// Embeddings: x acting on the first (resp. last) strands of a larger algebra.
TLElement embed_low(const TLElement& x, int n);
TLElement embed_shifted(const TLElement& x, int n, int shift);

// Independent word rewriting (no diagrams): normalizes a generator word to
// Jones reduced form using only the defining relations
//   e_i e_i = e_i,   e_i e_j = e_j e_i (|i-j| >= 2),
//   e_i e_{i+-1} e_i = lambda^{-2} e_i,
// returning the exponent a and letters w with  e-word = lambda^a * w.
std::pair<int, std::vector<int>> rewrite_normal_form(const std::vector<int>& letters);

// True iff letters factor into descending runs with strictly increasing
// starts and ends (the Jones reduced-form shape).
bool is_reduced_form(const std::vector<int>& letters);

}  // namespace tl
