#include "tl/arrows.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tl {

Arrow::Arrow(int lvl, TLElement v) : level(lvl), value(std::move(v)) {
  if (level < 0) throw std::invalid_argument("arrow level must be >= 0");
  if (value.strands() != level)
    throw std::invalid_argument("arrow value strand count must equal level");
}

std::string Arrow::str() const {
  std::ostringstream os;
  os << "level " << level << ": " << value.str();
  return os.str();
}

Arrow arrow_unit(const DomainPtr& dom, int level) {
  return Arrow(level, TLElement::unit(dom, level));
}

Arrow arrow_scalar(const Scalar& c) {
  TLElement v(c.domain(), 0);
  v.add_term(Diagram::identity(0), c);
  return Arrow(0, std::move(v));
}

Arrow tensor_arrows(const Arrow& S, const Arrow& T) {
  if (!S.domain()->compatible(*T.domain()))
    throw std::invalid_argument("tensor_arrows: domain mismatch");
  const int r = S.level, s = T.level;
  const int n = r + s;
  TLElement v = embed_low(S.value, n) * build_p0(S.domain(), r, s, n) *
                embed_low(T.value, n);
  return Arrow(n, std::move(v));
}

Arrow insert_R(int r, int s, const Arrow& z) {
  if (r < 0 || s < 0) throw std::invalid_argument("insert_R: r, s must be >= 0");
  if (z.level != r + s)
    throw std::invalid_argument("insert_R: arrow level must be r+s");
  const DomainPtr& dom = z.domain();
  const int n = r + s + 2;
  TLElement zl = embed_low(z.value, n);
  TLElement v(dom, n);
  if (r > s)
    v = zl * build_p(dom, 2 * s, r - s, 2, n);
  else if (r == s)
    v = zl;
  else
    v = build_p(dom, 2 * r, 2, s - r, n) * zl;
  return Arrow(n, v.scaled(dom->lambda_pow(1)));
}

Arrow insert_R_star(int r, int s, const Arrow& z) {
  if (r < 0 || s < 0)
    throw std::invalid_argument("insert_R_star: r, s must be >= 0");
  if (z.level != r + s + 2)
    throw std::invalid_argument("insert_R_star: arrow level must be r+s+2");
  const DomainPtr& dom = z.domain();
  const int n = r + s + 2;
  TLElement prod(dom, n);
  if (r > s)
    prod = z.value * build_p(dom, 2 * s, r - s, 2, n).star();
  else if (r == s)
    prod = z.value;
  else
    prod = build_p(dom, 2 * r, 2, s - r, n).star() * z.value;
  TLElement v = composite_expectation(prod, 2).scaled(dom->lambda_pow(1));
  return Arrow(r + s, std::move(v));
}

Arrow conjugate_arrow(const Arrow& T) { return Arrow(T.level, T.value.star()); }

Scalar arrow_inner(const Arrow& a, const Arrow& b) {
  if (a.level != b.level)
    throw std::invalid_argument("arrow_inner: level mismatch");
  return trace_inner(a.value, b.value);
}

ArrowBasis invariant_arrow_basis(const DomainPtr& dom, int r, bool force) {
  if (r < 0 || r > 8) throw std::invalid_argument("arrow basis level out of budget");
  ArrowBasis out;
  out.level = r;
  std::vector<TLElement> basis = radical_quotient_basis(dom, r, force);
  const int k = static_cast<int>(basis.size());
  Mat gram = mat_zero(dom, k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram[i][j] = trace_inner(basis[i], basis[j]);
  std::vector<Scalar> norms;
  std::vector<std::vector<Scalar>> rows = orthogonalize_by_gram(gram, dom, &norms);
  for (std::size_t m = 0; m < rows.size(); ++m) {
    TLElement x(dom, r);
    for (int i = 0; i < k; ++i)
      if (!rows[m][i].is_zero()) x += basis[i].scaled(rows[m][i]);
    out.elements.push_back(std::move(x));
    out.norms2.push_back(norms[m]);
  }
  return out;
}

namespace {

void rec_matchings(std::vector<int> points, std::vector<std::pair<int, int>>& acc,
                   std::vector<std::vector<std::pair<int, int>>>& out) {
  if (points.empty()) {
    auto m = acc;
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
    return;
  }
  int a = points.front();
  // a matches points[k] for odd k (so the inside has even size).
  for (std::size_t k = 1; k < points.size(); k += 2) {
    int b = points[k];
    acc.push_back({a, b});
    std::vector<int> inside(points.begin() + 1, points.begin() + k);
    std::vector<int> outside(points.begin() + k + 1, points.end());
    // Noncrossing: inside and outside are matched independently.
    // Recurse on inside first, then outside, by concatenating the two
    // independent enumerations.
    std::vector<std::vector<std::pair<int, int>>> inner_list;
    std::vector<std::pair<int, int>> inner_acc;
    rec_matchings(inside, inner_acc, inner_list);
    for (const auto& inner : inner_list) {
      for (const auto& arc : inner) acc.push_back(arc);
      rec_matchings(outside, acc, out);
      acc.resize(acc.size() - inner.size());
    }
    acc.pop_back();
  }
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> noncrossing_matchings(int r) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (r < 0 || r % 2 != 0) return out;
  std::vector<int> points(r);
  for (int i = 0; i < r; ++i) points[i] = i;
  std::vector<std::pair<int, int>> acc;
  rec_matchings(points, acc, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> matching_insertion_plan(
    const std::vector<std::pair<int, int>>& matching, int r) {
  // Validate: a perfect noncrossing matching of 0..r-1.
  std::vector<int> partner(r, -1);
  for (const auto& [a, b] : matching) {
    if (a < 0 || b >= r || a >= b || partner[a] != -1 || partner[b] != -1)
      throw std::invalid_argument("matching_insertion_plan: bad matching");
    partner[a] = b;
    partner[b] = a;
  }
  for (int i = 0; i < r; ++i)
    if (partner[i] < 0)
      throw std::invalid_argument("matching_insertion_plan: not perfect");
  for (const auto& [a, b] : matching)
    for (const auto& [c, d] : matching)
      if (a < c && c < b && b < d)
        throw std::invalid_argument("matching_insertion_plan: crossing arcs");

  // Peel arcs that are adjacent in the current point list; record where the
  // corresponding insertion happens and how many points remain after it.
  std::vector<int> labels(r);
  for (int i = 0; i < r; ++i) labels[i] = i;
  std::vector<std::pair<int, int>> arcs = matching;
  std::vector<std::pair<int, int>> peeled;  // (position, size before peel)
  while (!arcs.empty()) {
    std::size_t pick = arcs.size();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      int a = -1, b = -1;
      for (std::size_t p = 0; p < labels.size(); ++p) {
        if (labels[p] == arcs[i].first) a = static_cast<int>(p);
        if (labels[p] == arcs[i].second) b = static_cast<int>(p);
      }
      if (b == a + 1) {
        pick = i;
        peeled.push_back({a, static_cast<int>(labels.size())});
        labels.erase(labels.begin() + a, labels.begin() + a + 2);
        break;
      }
    }
    if (pick == arcs.size())
      throw std::logic_error("matching_insertion_plan: no adjacent arc found");
    arcs.erase(arcs.begin() + pick);
  }
  // Bottom-up order: the last peeled arc is the first inserted.
  std::vector<std::pair<int, int>> plan(peeled.rbegin(), peeled.rend());
  return plan;
}

Arrow planar_arrow(const DomainPtr& dom,
                   const std::vector<std::pair<int, int>>& matching, int r) {
  Arrow z = arrow_unit(dom, 0);
  for (const auto& [pos, target] : matching_insertion_plan(matching, r))
    z = insert_R(pos, target - pos - 2, z);
  return z;
}

std::vector<Arrow> planar_r_span(const DomainPtr& dom, int r) {
  std::vector<Arrow> out;
  if (r == 0) {
    out.push_back(arrow_unit(dom, 0));
    return out;
  }
  for (const auto& m : noncrossing_matchings(r)) out.push_back(planar_arrow(dom, m, r));
  return out;
}

LemmaCertificate verify_conjugate_equations(const DomainPtr& dom, int max_level) {
  LemmaCertificate cert;
  cert.suite = "conjugate-equations";
  auto add_case = [&cert](const std::string& label, const std::string& lhs,
                          const std::string& rhs, bool equal) {
    cert.cases.push_back({label, lhs, rhs, equal});
    if (!equal) cert.all_equal = false;
  };

  // Level 0: removing R from its own insertion gives the index.
  {
    Arrow rr = insert_R_star(0, 0, insert_R(0, 0, arrow_unit(dom, 0)));
    Arrow expect = arrow_scalar(dom->beta());
    add_case("level 0: R*R = index", rr.str(), expect.str(), rr == expect);
  }

  // At level l the defining identity acts on any one of the l strands:
  // inserting R just right of strand a and removing it from the left (or the
  // mirror order) must return every arrow unchanged.
  for (int l = 1; l <= max_level; ++l) {
    const auto basis = word_basis(dom, l);
    bool right_ok = true, left_ok = true;
    for (int a = 0; a < l; ++a) {
      const int b = l - 1 - a;
      for (const auto& t : basis) {
        Arrow T(l, t);
        Arrow right = insert_R_star(a, b + 1, insert_R(a + 1, b, T));
        if (!(right == T)) right_ok = false;
        Arrow left = insert_R_star(a + 1, b, insert_R(a, b + 1, T));
        if (!(left == T)) left_ok = false;
      }
    }
    add_case("level " + std::to_string(l) + ": remove-left of insert-right",
             right_ok ? "identity map" : "mismatch", "identity map", right_ok);
    add_case("level " + std::to_string(l) + ": remove-right of insert-left",
             left_ok ? "identity map" : "mismatch", "identity map", left_ok);
  }
  return cert;
}

}  // namespace tl
