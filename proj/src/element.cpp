#include "tl/element.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace tl {

TLElement TLElement::unit(DomainPtr dom, int n) {
  TLElement x(std::move(dom), n);
  x.add_term(Diagram::identity(n), x.dom_->one());
  return x;
}

TLElement TLElement::from_diagram(DomainPtr dom, const Diagram& d, const Scalar& c) {
  TLElement x(std::move(dom), d.strands());
  x.add_term(d, c);
  return x;
}

TLElement TLElement::cupcap(DomainPtr dom, int n, int i) {
  TLElement x(std::move(dom), n);
  x.add_term(Diagram::cup(n, i), x.dom_->one());
  return x;
}

TLElement TLElement::gen_e(DomainPtr dom, int n, int i) {
  TLElement x(std::move(dom), n);
  x.add_term(Diagram::cup(n, i), x.dom_->lambda_pow(-1));
  return x;
}

void TLElement::add_term(const Diagram& d, const Scalar& c) {
  if (d.strands() != n_) throw std::invalid_argument("diagram strand count mismatch");
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(d, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TLElement TLElement::operator-() const {
  TLElement x(dom_, n_);
  for (const auto& [d, c] : terms_) x.terms_.emplace(d, -c);
  return x;
}

TLElement& TLElement::operator+=(const TLElement& o) {
  if (n_ != o.n_) throw std::invalid_argument("strand-count mismatch");
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

TLElement& TLElement::operator-=(const TLElement& o) {
  if (n_ != o.n_) throw std::invalid_argument("strand-count mismatch");
  for (const auto& [d, c] : o.terms_) add_term(d, -c);
  return *this;
}

TLElement operator*(const TLElement& a, const TLElement& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("strand-count mismatch");
  TLElement x(a.dom_, a.n_);
  for (const auto& [da, ca] : a.terms_) {
    for (const auto& [db, cb] : b.terms_) {
      auto [d, loops] = Diagram::compose(da, db);
      x.add_term(d, ca * cb * a.dom_->lambda_pow(loops));
    }
  }
  return x;
}

TLElement TLElement::scaled(const Scalar& c) const {
  TLElement x(dom_, n_);
  if (c.is_zero()) return x;
  for (const auto& [d, v] : terms_) x.terms_.emplace(d, v * c);
  return x;
}

TLElement TLElement::star() const {
  TLElement x(dom_, n_);
  for (const auto& [d, c] : terms_) x.terms_.emplace(d.flip(), c.conj());
  return x;
}

bool TLElement::is_zero() const {
  if (dom_ && !dom_->is_exact()) {
    double scale = coeff_scale();
    for (const auto& [d, c] : terms_)
      if (!c.is_zero(scale)) return false;
    return true;
  }
  return terms_.empty();
}

bool TLElement::operator==(const TLElement& o) const {
  if (n_ != o.n_) return false;
  if (dom_ && !dom_->is_exact()) return (*this - o).is_zero();
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [d, c] : terms_) {
    if (!(it->first == d) || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

double TLElement::coeff_scale() const {
  if (dom_ && dom_->is_exact()) return 1.0;
  double s = 0;
  for (const auto& [d, c] : terms_) s = std::max(s, std::abs(c.to_double()));
  return s;
}

std::string TLElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [d, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*" + d.str();
  }
  return out;
}

TLElement word_to_element(const DomainPtr& dom, int n, const std::vector<int>& letters,
                          const Scalar& prefactor) {
  for (int i : letters)
    if (i < 1 || i > n - 1) throw std::invalid_argument("generator index out of range");
  Diagram d = Diagram::identity(n);
  int loops = 0;
  for (int i : letters) {
    auto [nd, nl] = Diagram::compose(d, Diagram::cup(n, i));
    d = nd;
    loops += nl;
  }
  TLElement x(dom, n);
  x.add_term(d, prefactor * dom->lambda_pow(loops - static_cast<int>(letters.size())));
  return x;
}

TLElement word_to_element(const DomainPtr& dom, int n, const JonesWord& w) {
  return word_to_element(dom, n, w.letters, w.prefactor);
}

namespace {

// Enumerate all Jones reduced words on n strands: concatenations of
// descending runs (e_{j_k} ... e_{i_k}) with j_1 < j_2 < ... and
// i_1 < i_2 < ... and i_k <= j_k. There are Catalan(n) of them.
void enumerate_reduced_words(int n, std::vector<std::vector<int>>& out) {
  std::vector<int> word;
  std::function<void(int, int)> rec = [&](int min_j, int min_i) {
    out.push_back(word);
    for (int j = min_j; j <= n - 1; ++j) {
      for (int i = min_i; i <= j; ++i) {
        size_t base = word.size();
        for (int t = j; t >= i; --t) word.push_back(t);
        rec(j + 1, i + 1);
        word.resize(base);
      }
    }
  };
  rec(1, 1);
}

struct WordTable {
  std::map<Diagram, std::vector<int>> by_diagram;
};

const WordTable& word_table(int n) {
  static std::map<int, WordTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  WordTable t;
  std::vector<std::vector<int>> words;
  enumerate_reduced_words(n, words);
  for (auto& w : words) {
    Diagram d = Diagram::identity(n);
    int loops = 0;
    for (int i : w) {
      auto [nd, nl] = Diagram::compose(d, Diagram::cup(n, i));
      d = nd;
      loops += nl;
    }
    if (loops != 0) throw std::logic_error("reduced word closed a loop");
    if (!t.by_diagram.emplace(d, std::move(w)).second)
      throw std::logic_error("two reduced words map to one diagram");
  }
  if (t.by_diagram.size() != catalan(n))
    throw std::logic_error("reduced-word table is not a bijection");
  return cache.emplace(n, std::move(t)).first->second;
}

}  // namespace

const std::map<Diagram, std::vector<int>>& reduced_word_table(int n) {
  return word_table(n).by_diagram;
}

const std::vector<int>& diagram_reduced_word(const Diagram& d) {
  const auto& tbl = word_table(d.strands()).by_diagram;
  auto it = tbl.find(d);
  if (it == tbl.end()) throw std::logic_error("diagram missing from reduced-word table");
  return it->second;
}

std::vector<JonesWord> element_to_reduced_words(const TLElement& x) {
  std::vector<JonesWord> out;
  for (const auto& [d, c] : x.terms()) {
    const std::vector<int>& letters = diagram_reduced_word(d);
    // The word's element is lambda^{-len} times the diagram, so the diagram
    // contributes the word with prefactor c * lambda^{len}.
    JonesWord w{c * x.domain()->lambda_pow(static_cast<int>(letters.size())), letters};
    out.push_back(std::move(w));
  }
  return out;
}

TLElement embed_low(const TLElement& x, int n) {
  if (n < x.strands()) throw std::invalid_argument("embedding target too small");
  TLElement y(x.domain(), n);
  for (const auto& [d, c] : x.terms()) y.add_term(d.pad_right(n - x.strands()), c);
  return y;
}

TLElement embed_shifted(const TLElement& x, int n, int shift) {
  if (n < x.strands() + shift) throw std::invalid_argument("embedding target too small");
  TLElement y(x.domain(), n);
  for (const auto& [d, c] : x.terms())
    y.add_term(d.pad_left(shift).pad_right(n - x.strands() - shift), c);
  return y;
}

namespace {

// A descending run e_j e_{j-1} ... e_i (i <= j).
struct Run {
  int j;
  int i;
};

// Appends the run rr (whose start rr.j exceeds every start already present)
// and restores reduced form.  If the previous run's endpoint collides with
// rr's (prev.i >= rr.i), one braid reduction merges them:
//   (e_P ... e_p)(e_R ... e_r) = lambda^-2 (e_P ... e_r)(e_R ... e_{p+2})
// for r <= p <= P < R, where the second factor is empty when R < p+2.  The
// merge lowers the previous run's endpoint, so collisions can cascade; every
// merge removes two letters, which bounds the recursion.
int push_run(std::vector<Run>& runs, Run rr) {
  if (runs.empty() || runs.back().i < rr.i) {
    runs.push_back(rr);
    return 0;
  }
  Run prev = runs.back();
  runs.pop_back();
  int delta = -2;
  delta += push_run(runs, {prev.j, rr.i});
  if (rr.j >= prev.i + 2) delta += push_run(runs, {rr.j, prev.i + 2});
  return delta;
}

// Right-multiplies the reduced run list by e_g, keeping it reduced.
// Returns the lambda exponent contributed by the rewriting.
int mult_by_generator(std::vector<Run>& runs, int g) {
  if (runs.empty() || g > runs.back().j) return push_run(runs, {g, g});
  Run last = runs.back();
  if (g == last.i) return 0;  // e_i e_i = e_i
  if (g == last.i - 1) {
    // Extend the last run downward (merging if its new endpoint collides
    // with the previous run's endpoint).
    runs.pop_back();
    return push_run(runs, {last.j, g});
  }
  if (g < last.i - 1) {
    // e_g commutes with the entire last run; push it into the prefix.
    runs.pop_back();
    int d = mult_by_generator(runs, g);
    return d + push_run(runs, last);
  }
  // last.i < g <= last.j: e_g meets the run at e_{g+1} e_g e_{g-1}, giving a
  // braid reduction that splits the run.  The low part (e_{g-2} ... e_i)
  // commutes past the high part (e_j ... e_g) and folds into the prefix.
  runs.pop_back();
  int delta = -2;
  for (int x = g - 2; x >= last.i; --x) delta += mult_by_generator(runs, x);
  return delta + push_run(runs, {last.j, g});
}

}  // namespace

std::pair<int, std::vector<int>> rewrite_normal_form(const std::vector<int>& letters) {
  std::vector<Run> runs;
  int exponent = 0;
  for (int g : letters) {
    if (g < 1) throw std::invalid_argument("generator index must be >= 1");
    exponent += mult_by_generator(runs, g);
  }
  std::vector<int> out;
  for (const Run& r : runs)
    for (int a = r.j; a >= r.i; --a) out.push_back(a);
  return {exponent, out};
}

bool is_reduced_form(const std::vector<int>& letters) {
  std::vector<Run> runs;
  std::size_t pos = 0;
  while (pos < letters.size()) {
    int j = letters[pos];
    int i = j;
    ++pos;
    while (pos < letters.size() && letters[pos] == i - 1) {
      i = letters[pos];
      ++pos;
    }
    runs.push_back({j, i});
  }
  for (std::size_t k = 0; k + 1 < runs.size(); ++k)
    if (runs[k].j >= runs[k + 1].j || runs[k].i >= runs[k + 1].i) return false;
  return true;
}

}  // namespace tl
