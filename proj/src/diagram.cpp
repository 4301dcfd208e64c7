#include "tl/diagram.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace tl {

namespace {

// Cyclic boundary position of a point id (counterclockwise from top-left).
inline int cyc_pos(int n, int id) { return id < n ? id : 2 * n - 1 - (id - n); }
inline int id_at_pos(int n, int p) { return p < n ? p : n + (2 * n - 1 - p); }

void validate(int n, const std::vector<int>& match) {
  if (static_cast<int>(match.size()) != 2 * n) throw std::invalid_argument("matching size != 2n");
  for (int i = 0; i < 2 * n; ++i) {
    if (match[i] < 0 || match[i] >= 2 * n || match[i] == i || match[match[i]] != i)
      throw std::invalid_argument("matching is not a fixed-point-free involution");
  }
  if (!Diagram::is_planar_matching(n, match)) throw std::invalid_argument("matching is not planar");
}

}  // namespace

bool Diagram::is_planar_matching(int n, const std::vector<int>& match) {
  std::vector<int> stack;
  for (int p = 0; p < 2 * n; ++p) {
    int id = id_at_pos(n, p);
    int q = cyc_pos(n, match[id]);
    if (q > p) {
      stack.push_back(id);
    } else {
      if (stack.empty() || stack.back() != match[id]) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

Diagram Diagram::identity(int n) {
  Diagram d;
  d.n_ = n;
  d.match_.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    d.match_[i] = n + i;
    d.match_[n + i] = i;
  }
  return d;
}

Diagram Diagram::cup(int n, int i) {
  if (i < 1 || i > n - 1) throw std::invalid_argument("cup index out of range");
  Diagram d = identity(n);
  d.match_[i - 1] = i;
  d.match_[i] = i - 1;
  d.match_[n + i - 1] = n + i;
  d.match_[n + i] = n + i - 1;
  return d;
}

Diagram Diagram::from_matching(int n, std::vector<int> match) {
  validate(n, match);
  Diagram d;
  d.n_ = n;
  d.match_ = std::move(match);
  return d;
}

Diagram Diagram::flip() const {
  Diagram d;
  d.n_ = n_;
  d.match_.resize(2 * n_);
  auto sw = [this](int id) { return id < n_ ? id + n_ : id - n_; };
  for (int i = 0; i < 2 * n_; ++i) d.match_[sw(i)] = sw(match_[i]);
  return d;
}

std::pair<Diagram, int> Diagram::compose(const Diagram& a, const Diagram& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("strand-count mismatch in composition");
  const int n = a.n_;
  Diagram out;
  out.n_ = n;
  out.match_.assign(2 * n, -1);
  std::vector<char> glue_used(n, 0);

  // Walk a strand from one boundary port of the stacked picture to the other.
  // Side true = upper diagram a, false = lower diagram b.
  auto walk = [&](bool in_a, int id) -> std::pair<bool, int> {
    while (true) {
      id = in_a ? a.match_[id] : b.match_[id];
      if (in_a && id < n) return {true, id};    // emerged on the top boundary
      if (!in_a && id >= n) return {false, id};  // emerged on the bottom boundary
      if (in_a) {  // a's bottom point id-n is glued to b's top point id-n
        int g = id - n;
        glue_used[g] = 1;
        in_a = false;
        id = g;
      } else {  // b's top point id is glued to a's bottom point n+id
        int g = id;
        glue_used[g] = 1;
        in_a = true;
        id = n + g;
      }
    }
  };

  for (int i = 0; i < 2 * n; ++i) {
    if (out.match_[i] != -1) continue;
    // Result top ports live in a, result bottom ports in b; in both cases the
    // port's id inside its diagram equals its id in the result.
    auto [end_a, end_id] = walk(i < n, i);
    (void)end_a;
    out.match_[i] = end_id;
    out.match_[end_id] = i;
  }

  int loops = 0;
  for (int k = 0; k < n; ++k) {
    if (glue_used[k]) continue;
    ++loops;
    int g = k;
    bool via_b = true;
    do {
      glue_used[g] = 1;
      if (via_b)
        g = b.match_[g];  // arc of b between two interface points
      else
        g = a.match_[n + g] - n;  // arc of a between two interface points
      via_b = !via_b;
    } while (!(g == k && via_b));
  }
  return {out, loops};
}

int Diagram::closure_loops() const {
  std::vector<char> seen(2 * n_, 0);
  int loops = 0;
  for (int i = 0; i < 2 * n_; ++i) {
    if (seen[i]) continue;
    ++loops;
    int cur = i;
    while (!seen[cur]) {
      seen[cur] = 1;
      int p = match_[cur];
      seen[p] = 1;
      cur = p < n_ ? p + n_ : p - n_;  // closure arc joins top i to bottom i
    }
  }
  return loops;
}

std::pair<Diagram, int> Diagram::close_last() const {
  if (n_ < 1) throw std::invalid_argument("no strand to close");
  const int t = n_ - 1, bqid = 2 * n_ - 1;
  std::vector<int> m = match_;
  int loops = 0;
  if (m[t] == bqid) {
    loops = 1;
  } else {
    int x = m[t], y = m[bqid];
    m[x] = y;
    m[y] = x;
  }
  // Reindex to n-1 strands: drop ids t and 2n-1; bottom ids shift down by 1.
  std::vector<int> out(2 * (n_ - 1));
  auto newid = [this](int id) { return id < n_ ? id : id - 1; };
  for (int i = 0; i < 2 * n_; ++i) {
    if (i == t || i == bqid) continue;
    out[newid(i)] = newid(m[i]);
  }
  Diagram d;
  d.n_ = n_ - 1;
  d.match_ = std::move(out);
  return {d, loops};
}

Diagram Diagram::pad_right(int k) const {
  const int m = n_ + k;
  Diagram d = identity(m);
  auto newid = [this, m](int id) { return id < n_ ? id : id - n_ + m; };
  for (int i = 0; i < 2 * n_; ++i) d.match_[newid(i)] = newid(match_[i]);
  return d;
}

Diagram Diagram::pad_left(int k) const {
  const int m = n_ + k;
  Diagram d = identity(m);
  auto newid = [this, m, k](int id) { return id < n_ ? id + k : id - n_ + m + k; };
  for (int i = 0; i < 2 * n_; ++i) d.match_[newid(i)] = newid(match_[i]);
  return d;
}

std::vector<Diagram> Diagram::all(int n) {
  // Noncrossing matchings in cyclic-position space correspond to balanced
  // bracket sequences: each closer pairs with the most recent opener.
  std::vector<Diagram> out;
  if (n == 0) {
    out.push_back(Diagram());
    return out;
  }
  std::vector<int> pos_match(2 * n, -1);
  std::vector<int> stack;
  std::function<void(int)> gen = [&](int p) {
    if (p == 2 * n) {
      std::vector<int> m(2 * n);
      for (int q = 0; q < 2 * n; ++q) m[id_at_pos(n, q)] = id_at_pos(n, pos_match[q]);
      out.push_back(from_matching(n, std::move(m)));
      return;
    }
    if (static_cast<int>(stack.size()) < 2 * n - p - 1) {  // room to close later
      stack.push_back(p);
      gen(p + 1);
      stack.pop_back();
    }
    if (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      pos_match[p] = q;
      pos_match[q] = p;
      gen(p + 1);
      stack.push_back(q);
    }
  };
  gen(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Diagram::str() const {
  std::string s = "[";
  for (int i = 0; i < 2 * n_; ++i) {
    if (i) s += ",";
    s += std::to_string(match_[i]);
  }
  return s + "]";
}

unsigned long catalan(int n) {
  // C_n = binom(2n, n)/(n+1), exact in unsigned long for n <= 32.
  unsigned long c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace tl
