#include "tl/markov.hpp"

#include <algorithm>

#include <stdexcept>

namespace tl {

Scalar markov_trace(const TLElement& x) {
  const DomainPtr& dom = x.domain();
  Scalar s = dom->zero();
  for (const auto& [d, c] : x.terms())
    s += c * dom->lambda_pow(d.closure_loops() - x.strands());
  return s;
}

TLElement cond_expectation(const TLElement& x) {
  if (x.strands() < 1) throw std::invalid_argument("conditional expectation needs n >= 1");
  const DomainPtr& dom = x.domain();
  TLElement out(dom, x.strands() - 1);
  for (const auto& [d, c] : x.terms()) {
    auto [nd, loops] = d.close_last();
    out.add_term(nd, c * dom->lambda_pow(loops - 1));
  }
  return out;
}

TLElement composite_expectation(const TLElement& x, int steps) {
  if (steps < 0 || steps > x.strands())
    throw std::invalid_argument("expectation step count out of range");
  TLElement y = x;
  for (int i = 0; i < steps; ++i) y = cond_expectation(y);
  return y;
}

Scalar trace_inner(const TLElement& a, const TLElement& b) {
  return markov_trace(a.star() * b);
}

// Canonical basis order: by reduced word, shortest first, then
// lexicographic.  The unit (empty word) always comes first.
std::vector<std::pair<Diagram, std::vector<int>>> word_basis_order(int n) {
  std::vector<std::pair<Diagram, std::vector<int>>> items(
      reduced_word_table(n).begin(), reduced_word_table(n).end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size())
      return a.second.size() < b.second.size();
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  return items;
}

std::vector<TLElement> word_basis(const DomainPtr& dom, int n) {
  std::vector<TLElement> basis;
  for (const auto& [d, w] : word_basis_order(n)) {
    TLElement x(dom, n);
    x.add_term(d, dom->lambda_pow(-static_cast<int>(w.size())));
    basis.push_back(std::move(x));
  }
  return basis;
}

GramReport gram_matrix(const DomainPtr& dom, int n) {
  GramReport rep;
  rep.n = n;
  for (const auto& [d, w] : word_basis_order(n)) {
    rep.basis_diagrams.push_back(d);
    rep.basis_words.push_back(w);
  }
  const int k = static_cast<int>(rep.basis_diagrams.size());
  rep.matrix = mat_zero(dom, k, k);
  for (int i = 0; i < k; ++i) {
    const Diagram di = rep.basis_diagrams[i].flip();
    const int li = static_cast<int>(rep.basis_words[i].size());
    for (int j = 0; j < k; ++j) {
      const int lj = static_cast<int>(rep.basis_words[j].size());
      auto [prod, loops] = Diagram::compose(di, rep.basis_diagrams[j]);
      rep.matrix[i][j] = dom->lambda_pow(loops + prod.closure_loops() - n - li - lj);
    }
  }
  rep.positive_semidefinite = mat_psd(rep.matrix, dom, &rep.rank);
  return rep;
}

std::vector<TLElement> radical_quotient_basis(const DomainPtr& dom, int n, bool force) {
  if (!dom->is_exact() && !force)
    throw std::domain_error("radical quotient requires an exact domain (pass force to override)");
  GramReport rep = gram_matrix(dom, n);
  const int k = static_cast<int>(rep.basis_diagrams.size());
  // Greedy in lexicographic diagram order: keep a column if it enlarges the
  // rank of the Gram restricted to the kept set.
  std::vector<int> kept;
  for (int v = 0; v < k && static_cast<int>(kept.size()) < rep.rank; ++v) {
    std::vector<int> trial = kept;
    trial.push_back(v);
    Mat sub = mat_zero(dom, trial.size(), trial.size());
    for (size_t i = 0; i < trial.size(); ++i)
      for (size_t j = 0; j < trial.size(); ++j) sub[i][j] = rep.matrix[trial[i]][trial[j]];
    if (mat_rank(sub, dom) == static_cast<int>(trial.size())) kept = std::move(trial);
  }
  if (static_cast<int>(kept.size()) != rep.rank)
    throw std::logic_error("greedy basis selection missed the Gram rank");
  std::vector<TLElement> basis = word_basis(dom, n);
  std::vector<TLElement> out;
  out.reserve(kept.size());
  for (int v : kept) out.push_back(basis[v]);
  return out;
}

}  // namespace tl
