#include "tl/spectral.hpp"

#include <algorithm>
#include <iterator>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tl/linalg.hpp"
#include "tl/markov.hpp"

namespace tl {

namespace {

struct LevelBasis {
  std::vector<Diagram> diagrams;
  std::vector<int> wordlen;
  std::map<Diagram, int> index;
};

const LevelBasis& level_basis(int r) {
  static std::map<int, LevelBasis> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(r);
  if (it != cache.end()) return it->second;
  LevelBasis b;
  for (const auto& [d, w] : word_basis_order(r)) {
    b.index.emplace(d, static_cast<int>(b.diagrams.size()));
    b.diagrams.push_back(d);
    b.wordlen.push_back(static_cast<int>(w.size()));
  }
  return cache.emplace(r, std::move(b)).first->second;
}

TLElement basis_element(const DomainPtr& dom, int r, int i) {
  const LevelBasis& b = level_basis(r);
  TLElement x(dom, r);
  x.add_term(b.diagrams[i], dom->lambda_pow(-b.wordlen[i]));
  return x;
}

long pow_long(int n, int r) {
  long v = 1;
  for (int t = 0; t < r; ++t) v *= n;
  return v;
}

void require_element(const SpectralElement& a, const char* who) {
  if (!a.dom || a.n < 1)
    throw std::invalid_argument(std::string(who) + ": uninitialized element");
}

void require_same(const SpectralElement& a, const SpectralElement& b,
                  const char* who) {
  require_element(a, who);
  require_element(b, who);
  if (a.n != b.n || !a.dom->compatible(*b.dom))
    throw std::invalid_argument(std::string(who) +
                                ": mixed domains or role spaces");
}

void add_entry(SpectralElement& a, int level, int i, long col,
               const Scalar& c) {
  if (c.is_zero()) return;
  auto& lvl = a.terms[level];
  const std::pair<int, long> key{i, col};
  auto it = lvl.find(key);
  if (it == lvl.end()) {
    lvl.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) lvl.erase(it);
  }
  if (lvl.empty()) a.terms.erase(level);
}

// Adds scale * x (x)- basis column col into the element at x's level.
void add_commutant(SpectralElement& a, const TLElement& x, long col,
                   const Scalar& scale) {
  if (scale.is_zero()) return;
  const int r = x.strands();
  const LevelBasis& b = level_basis(r);
  const DomainPtr& dom = x.domain();
  for (const auto& [d, c] : x.terms()) {
    auto it = b.index.find(d);
    if (it == b.index.end())
      throw std::logic_error("add_commutant: diagram missing from basis");
    add_entry(a, r, it->second, col,
              c * scale * dom->lambda_pow(b.wordlen[it->second]));
  }
}

// Collects the commutant element carried by one vector column of a level.
TLElement column_element(const SpectralElement& a, int level, long col) {
  TLElement x(a.dom, level);
  auto it = a.terms.find(level);
  if (it == a.terms.end()) return x;
  const LevelBasis& b = level_basis(level);
  for (const auto& [key, c] : it->second) {
    if (key.second != col) continue;
    x.add_term(b.diagrams[key.first], c * a.dom->lambda_pow(-b.wordlen[key.first]));
  }
  return x;
}

// Per-level data of the invariant state: planar arrows, planar fixed
// vectors, and the inverse of their shared Gram matrix. Cached per
// (domain instance, deformation entries, level); the stored DomainPtr
// keeps the domain alive for the cache's lifetime.
struct StateLevel {
  DomainPtr dom;
  std::vector<TLElement> planar;
  std::vector<ConcreteOp> vectors;
  Mat ginv;
  int m = 0;
};

const StateLevel& state_level(const FMatrix& F, int r) {
  static std::map<std::string, StateLevel> cache;
  static std::mutex mu;
  std::ostringstream key;
  key << static_cast<const void*>(F.dom.get()) << '|' << F.n;
  for (int i = 0; i < F.n; ++i)
    for (int k = 0; k < F.n; ++k) key << '|' << F.entries[i][k].str();
  key << '#' << r;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key.str());
  if (it != cache.end()) return it->second;
  StateLevel sl;
  sl.dom = F.dom;
  for (const Arrow& p : planar_r_span(F.dom, r)) sl.planar.push_back(p.value);
  InvariantVectors inv = invariant_vectors(F, r);
  sl.vectors = std::move(inv.planar);
  sl.ginv = mat_inverse(inv.gram, F.dom);
  sl.m = static_cast<int>(sl.planar.size());
  return cache.emplace(key.str(), std::move(sl)).first->second;
}

// Collects the vector carried by one commutant index of a level.
ConcreteOp row_vector(const SpectralElement& a, int level, int i) {
  ConcreteOp v;
  v.dom = a.dom;
  v.n = a.n;
  v.src = 0;
  v.tgt = level;
  const long dim = pow_long(a.n, level);
  v.m = mat_zero(a.dom, static_cast<int>(dim), 1);
  auto it = a.terms.find(level);
  if (it == a.terms.end()) return v;
  for (const auto& [key, c] : it->second)
    if (key.first == i) v.m[key.second][0] = c;
  return v;
}

}  // namespace

SpectralElement sp_zero(const DomainPtr& dom, int n) {
  if (!dom || n < 1) throw std::invalid_argument("sp_zero: bad arguments");
  SpectralElement a;
  a.dom = dom;
  a.n = n;
  return a;
}

SpectralElement sp_scalar(const DomainPtr& dom, int n, const Scalar& c) {
  SpectralElement a = sp_zero(dom, n);
  add_entry(a, 0, 0, 0, c);
  return a;
}

SpectralElement sp_generator(int n, const TLElement& T, const ConcreteOp& v) {
  if (!T.valid()) throw std::invalid_argument("sp_generator: invalid element");
  if (v.src != 0 || v.tgt != T.strands() || v.n != n ||
      !T.domain()->compatible(*v.dom))
    throw std::invalid_argument(
        "sp_generator: vector shape does not match the element level");
  SpectralElement a = sp_zero(T.domain(), n);
  const long dim = pow_long(n, T.strands());
  for (long k = 0; k < dim; ++k)
    add_commutant(a, T, k, v.m[k][0]);
  return a;
}

SpectralElement sp_generator_idx(int n, const TLElement& T,
                                 const std::vector<int>& digits) {
  if (!T.valid()) throw std::invalid_argument("sp_generator_idx: invalid element");
  if (static_cast<int>(digits.size()) != T.strands())
    throw std::invalid_argument(
        "sp_generator_idx: digit count does not match the element level");
  long col = 0;
  for (int d : digits) {
    if (d < 0 || d >= n)
      throw std::invalid_argument("sp_generator_idx: digit out of range");
    col = col * n + d;
  }
  SpectralElement a = sp_zero(T.domain(), n);
  add_commutant(a, T, col, T.domain()->one());
  return a;
}

SpectralElement sp_add(const SpectralElement& a, const SpectralElement& b) {
  require_same(a, b, "sp_add");
  SpectralElement out = a;
  for (const auto& [level, lvl] : b.terms)
    for (const auto& [key, c] : lvl)
      add_entry(out, level, key.first, key.second, c);
  return out;
}

SpectralElement sp_scaled(const SpectralElement& a, const Scalar& c) {
  require_element(a, "sp_scaled");
  SpectralElement out = sp_zero(a.dom, a.n);
  if (c.is_zero()) return out;
  for (const auto& [level, lvl] : a.terms)
    for (const auto& [key, coeff] : lvl)
      add_entry(out, level, key.first, key.second, coeff * c);
  return out;
}

bool sp_equal(const SpectralElement& a, const SpectralElement& b) {
  require_same(a, b, "sp_equal");
  if (a.terms.size() != b.terms.size()) return false;
  for (const auto& [level, lvl] : a.terms) {
    auto it = b.terms.find(level);
    if (it == b.terms.end() || it->second.size() != lvl.size()) return false;
    for (const auto& [key, c] : lvl) {
      auto jt = it->second.find(key);
      if (jt == it->second.end() || !(jt->second == c)) return false;
    }
  }
  return true;
}

SpectralElement sp_product(const SpectralElement& a, const SpectralElement& b,
                           int level_cutoff) {
  require_same(a, b, "sp_product");
  SpectralElement out = sp_zero(a.dom, a.n);
  for (const auto& [r, lvl_a] : a.terms) {
    for (const auto& [s, lvl_b] : b.terms) {
      if (r + s > level_cutoff)
        throw std::length_error(
            "sp_product: level " + std::to_string(r + s) +
            " exceeds the cutoff " + std::to_string(level_cutoff));
      const long cols_b = pow_long(a.n, s);
      for (const auto& [ka, ca] : lvl_a) {
        const Arrow left(r, basis_element(a.dom, r, ka.first));
        for (const auto& [kb, cb] : lvl_b) {
          const Arrow right(s, basis_element(a.dom, s, kb.first));
          const TLElement prod = tensor_arrows(left, right).value;
          add_commutant(out, prod, ka.second * cols_b + kb.second, ca * cb);
        }
      }
    }
  }
  return out;
}

SpectralElement sp_star(const FMatrix& F, const SpectralElement& a) {
  require_element(a, "sp_star");
  if (F.n != a.n || !F.dom->compatible(*a.dom))
    throw std::invalid_argument("sp_star: deformation does not match the element");
  SpectralElement out = sp_zero(a.dom, a.n);
  // Nonzero entries of each column of F, for the slotwise action of j.
  std::vector<std::vector<std::pair<int, Scalar>>> cols(F.n);
  for (int k = 0; k < F.n; ++k)
    for (int i = 0; i < F.n; ++i)
      if (!F.entries[i][k].is_zero()) cols[k].push_back({i, F.entries[i][k]});
  for (const auto& [r, lvl] : a.terms) {
    for (const auto& [key, c] : lvl) {
      const TLElement tstar = basis_element(a.dom, r, key.first).star();
      // Digits of the input multi-index, most significant first.
      std::vector<int> digits(r);
      long rem = key.second;
      for (int t = r - 1; t >= 0; --t) {
        digits[t] = static_cast<int>(rem % a.n);
        rem /= a.n;
      }
      // Output slot t carries j applied to input slot r-1-t.
      std::vector<long> out_cols{0};
      std::vector<Scalar> out_coeffs{c.conj()};
      for (int t = 0; t < r; ++t) {
        const auto& choices = cols[digits[r - 1 - t]];
        std::vector<long> next_cols;
        std::vector<Scalar> next_coeffs;
        next_cols.reserve(out_cols.size() * choices.size());
        next_coeffs.reserve(out_cols.size() * choices.size());
        for (size_t u = 0; u < out_cols.size(); ++u) {
          for (const auto& [row, f] : choices) {
            next_cols.push_back(out_cols[u] * a.n + row);
            next_coeffs.push_back(out_coeffs[u] * f);
          }
        }
        out_cols = std::move(next_cols);
        out_coeffs = std::move(next_coeffs);
      }
      for (size_t u = 0; u < out_cols.size(); ++u)
        add_commutant(out, tstar, out_cols[u], out_coeffs[u]);
    }
  }
  return out;
}

SpectralElement apply_R_relation(const FMatrix& F, int r, int s,
                                 const SpectralElement& a, RDirection dir) {
  require_element(a, "apply_R_relation");
  if (F.n != a.n || !F.dom->compatible(*a.dom))
    throw std::invalid_argument(
        "apply_R_relation: deformation does not match the element");
  if (r < 0 || s < 0)
    throw std::invalid_argument("apply_R_relation: negative split");
  const int top = r + s + 2;
  for (const auto& [level, lvl] : a.terms)
    if (level != top)
      throw std::invalid_argument(
          "apply_R_relation: element is not homogeneous at level " +
          std::to_string(top));
  SpectralElement out = sp_zero(a.dom, a.n);
  if (a.terms.empty()) return out;
  const Scalar lambda = a.dom->lambda_pow(1);
  const LevelBasis& b = level_basis(top);

  if (dir == RDirection::R) {
    // Group by commutant index: T (x) v with v = (1 (x) R (x) 1) eta'.
    const Scalar dinv = F.dimension.inv();
    for (int i = 0; i < static_cast<int>(b.diagrams.size()); ++i) {
      ConcreteOp v = row_vector(a, top, i);
      bool nonzero = false;
      for (const auto& row : v.m)
        if (!row[0].is_zero()) {
          nonzero = true;
          break;
        }
      if (!nonzero) continue;
      ConcreteOp eta = remove_R_vector(F, r, s, v);
      for (auto& row : eta.m) row[0] *= dinv;
      if (!op_equal(insert_R_vector(F, r, s, eta), v))
        throw std::invalid_argument(
            "apply_R_relation: vector part is not an insertion image at this "
            "split");
      const Arrow moved =
          insert_R_star(r, s, Arrow(top, basis_element(a.dom, top, i)));
      const long dim = pow_long(a.n, r + s);
      for (long k = 0; k < dim; ++k)
        add_commutant(out, moved.value, k, eta.m[k][0]);
    }
    return out;
  }

  // Rstar: group by vector column: T_K (x) psi_K with T_K an insertion image.
  const long dim = pow_long(a.n, top);
  for (long col = 0; col < dim; ++col) {
    TLElement t = column_element(a, top, col);
    if (t.is_zero()) continue;
    const Arrow factored = insert_R_star(r, s, Arrow(top, t));
    const TLElement zeta = factored.value.scaled(lambda.inv());
    if (insert_R(r, s, Arrow(r + s, zeta)).value != t.scaled(lambda))
      throw std::invalid_argument(
          "apply_R_relation: commutant part is not an insertion image at this "
          "split");
    ConcreteOp psi;
    psi.dom = a.dom;
    psi.n = a.n;
    psi.src = 0;
    psi.tgt = top;
    psi.m = mat_zero(a.dom, static_cast<int>(dim), 1);
    psi.m[col][0] = a.dom->one();
    ConcreteOp contracted = remove_R_vector(F, r, s, psi);
    const long low = pow_long(a.n, r + s);
    for (long k = 0; k < low; ++k)
      add_commutant(out, zeta, k, contracted.m[k][0]);
  }
  return out;
}

Scalar invariant_state(const FMatrix& F, const SpectralElement& a) {
  require_element(a, "invariant_state");
  if (F.n != a.n || !F.dom->compatible(*a.dom))
    throw std::invalid_argument(
        "invariant_state: deformation does not match the element");
  if (!subfactor_compatible(F))
    throw std::domain_error(
        "invariant_state: requires the subfactor pairing (sigma = +1 and "
        "dimension = index)");
  Scalar h = a.dom->zero();
  for (const auto& [r, lvl] : a.terms) {
    if (r % 2 != 0) continue;  // odd levels carry no fixed vectors
    const StateLevel& sl = state_level(F, r);
    // Pairings of the planar arrows against the word basis, lazily per index.
    std::map<int, std::vector<Scalar>> weight;  // i -> row over matchings
    for (const auto& [key, c] : lvl) {
      auto it = weight.find(key.first);
      if (it == weight.end()) {
        const TLElement t = basis_element(a.dom, r, key.first);
        std::vector<Scalar> p(sl.m, a.dom->zero());
        for (int M = 0; M < sl.m; ++M) p[M] = trace_inner(sl.planar[M], t);
        std::vector<Scalar> row(sl.m, a.dom->zero());
        for (int M2 = 0; M2 < sl.m; ++M2)
          for (int M = 0; M < sl.m; ++M) row[M2] += p[M] * sl.ginv[M][M2];
        it = weight.emplace(key.first, std::move(row)).first;
      }
      for (int M2 = 0; M2 < sl.m; ++M2)
        h += c * it->second[M2] * sl.vectors[M2].m[key.second][0];
    }
  }
  return h;
}

CoactionExpansion coaction_expand(const SpectralElement& a) {
  require_element(a, "coaction_expand");
  CoactionExpansion e;
  e.dom = a.dom;
  e.n = a.n;
  for (const auto& [r, lvl] : a.terms) {
    const long dim = pow_long(a.n, r);
    for (const auto& [key, c] : lvl) {
      std::vector<int> digits(r);
      long rem = key.second;
      for (int t = r - 1; t >= 0; --t) {
        digits[t] = static_cast<int>(rem % a.n);
        rem /= a.n;
      }
      for (long j = 0; j < dim; ++j) {
        std::vector<int> rows(r);
        long jr = j;
        for (int t = r - 1; t >= 0; --t) {
          rows[t] = static_cast<int>(jr % a.n);
          jr /= a.n;
        }
        std::vector<std::pair<int, int>> word(r);
        for (int t = 0; t < r; ++t) word[t] = {rows[t], digits[t]};
        auto it = e.terms.find(word);
        if (it == e.terms.end())
          it = e.terms.emplace(word, sp_zero(a.dom, a.n)).first;
        add_entry(it->second, r, key.first, j, c);
      }
    }
  }
  for (auto it = e.terms.begin(); it != e.terms.end();)
    it = it->second.is_zero() ? e.terms.erase(it) : std::next(it);
  return e;
}

SpectralElement counit_collapse(const CoactionExpansion& e) {
  if (!e.dom || e.n < 1)
    throw std::invalid_argument("counit_collapse: uninitialized expansion");
  SpectralElement out = sp_zero(e.dom, e.n);
  for (const auto& [word, elem] : e.terms) {
    bool diagonal = true;
    for (const auto& [row, col] : word)
      if (row != col) {
        diagonal = false;
        break;
      }
    if (diagonal) out = sp_add(out, elem);
  }
  return out;
}

CoactionExpansion coaction_product(const CoactionExpansion& a,
                                   const CoactionExpansion& b,
                                   int level_cutoff) {
  if (!a.dom || !b.dom || a.n != b.n || !a.dom->compatible(*b.dom))
    throw std::invalid_argument("coaction_product: mixed expansions");
  CoactionExpansion e;
  e.dom = a.dom;
  e.n = a.n;
  for (const auto& [wa, xa] : a.terms) {
    for (const auto& [wb, xb] : b.terms) {
      std::vector<std::pair<int, int>> word = wa;
      word.insert(word.end(), wb.begin(), wb.end());
      SpectralElement prod = sp_product(xa, xb, level_cutoff);
      if (prod.is_zero()) continue;
      auto it = e.terms.find(word);
      if (it == e.terms.end())
        e.terms.emplace(word, std::move(prod));
      else
        it->second = sp_add(it->second, prod);
    }
  }
  for (auto it = e.terms.begin(); it != e.terms.end();)
    it = it->second.is_zero() ? e.terms.erase(it) : std::next(it);
  return e;
}

bool coaction_equal(const CoactionExpansion& a, const CoactionExpansion& b) {
  if (!a.dom || !b.dom || a.n != b.n || !a.dom->compatible(*b.dom))
    throw std::invalid_argument("coaction_equal: mixed expansions");
  for (const auto& [word, elem] : a.terms) {
    auto it = b.terms.find(word);
    if (it == b.terms.end()) {
      if (!elem.is_zero()) return false;
    } else if (!sp_equal(elem, it->second)) {
      return false;
    }
  }
  for (const auto& [word, elem] : b.terms)
    if (a.terms.find(word) == a.terms.end() && !elem.is_zero()) return false;
  return true;
}

LemmaCertificate verify_traciality(const FMatrix& F, int r_max) {
  if (!subfactor_compatible(F))
    throw std::domain_error(
        "verify_traciality: requires the subfactor pairing (sigma = +1 and "
        "dimension = index)");
  LemmaCertificate cert;
  cert.suite = "traciality";
  const DomainPtr& dom = F.dom;
  const int cutoff = 2 * r_max;
  for (int r = 0; r <= r_max; ++r) {
    const int dim_r = static_cast<int>(level_basis(r).diagrams.size());
    const long cols_r = pow_long(F.n, r);
    for (int s = r; s <= r_max; ++s) {
      const int dim_s = static_cast<int>(level_basis(s).diagrams.size());
      const long cols_s = pow_long(F.n, s);
      long checked = 0;
      long mismatched = 0;
      for (int i = 0; i < dim_r; ++i) {
        for (long k = 0; k < cols_r; ++k) {
          SpectralElement x = sp_zero(dom, F.n);
          add_entry(x, r, i, k, dom->one());
          for (int j = 0; j < dim_s; ++j) {
            for (long l = 0; l < cols_s; ++l) {
              SpectralElement y = sp_zero(dom, F.n);
              add_entry(y, s, j, l, dom->one());
              const Scalar ab = invariant_state(F, sp_product(x, y, cutoff));
              const Scalar ba = invariant_state(F, sp_product(y, x, cutoff));
              ++checked;
              if (!(ab == ba)) ++mismatched;
            }
          }
        }
      }
      LemmaCase c;
      c.label = "state symmetry at levels (" + std::to_string(r) + ", " +
                std::to_string(s) + ")";
      c.lhs = "h(ab) over " + std::to_string(checked) + " generator pairs";
      c.rhs = mismatched == 0
                  ? "h(ba) on all pairs"
                  : std::to_string(mismatched) + " pairs differ";
      c.equal = mismatched == 0;
      if (!c.equal) cert.all_equal = false;
      cert.cases.push_back(std::move(c));
    }
  }
  return cert;
}

}  // namespace tl
