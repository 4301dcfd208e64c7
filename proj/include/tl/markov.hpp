#pragma once

#include <string>
#include <vector>

#include "tl/element.hpp"
#include "tl/linalg.hpp"

namespace tl {

// Normalized Markov trace: tr(D) = lambda^{c(D) - n} on diagrams (c = loops
// of the full closure), extended linearly. tr(1) = 1, tr(e_i) = lambda^{-2}.
Scalar markov_trace(const TLElement& x);

// Trace-preserving conditional expectation onto one strand fewer:
// lambda^{-1} times the partial closure of the last strand.
TLElement cond_expectation(const TLElement& x);

// k-fold conditional expectation.
TLElement composite_expectation(const TLElement& x, int steps);

// Trace inner product <a, b> = tr(a* b).
Scalar trace_inner(const TLElement& a, const TLElement& b);

// Canonical basis order for TL_n: diagrams keyed by their reduced words,
// sorted shortest word first, then lexicographically. Unit comes first.
std::vector<std::pair<Diagram, std::vector<int>>> word_basis_order(int n);

struct GramReport {
  int n = 0;
  // Basis: for each diagram (canonical word order) the normalized generator
  // word whose value is lambda^{-len} times the diagram.
  std::vector<Diagram> basis_diagrams;
  std::vector<std::vector<int>> basis_words;
  Mat matrix;  // <S,T> = tr(S* T)
  int rank = 0;
  bool positive_semidefinite = false;
};

GramReport gram_matrix(const DomainPtr& dom, int n);

// The normalized word basis elements themselves, in the report's order.
std::vector<TLElement> word_basis(const DomainPtr& dom, int n);

// Greedy (lexicographic) selection of word-basis elements spanning a
// complement of the Gram kernel; size = rank. Exact modes only unless
// force = true.
std::vector<TLElement> radical_quotient_basis(const DomainPtr& dom, int n, bool force = false);

}  // namespace tl
