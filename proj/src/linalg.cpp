#include "tl/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace tl {

namespace {

bool pivot_ok(const Scalar& s, const DomainPtr& dom, double scale) {
  if (dom->is_exact()) return !s.is_zero();
  return std::abs(s.to_double()) > dom->eps() * std::max(1.0, scale);
}

// Plain Gaussian elimination rank with full pivoting.
int rank_eliminate(Mat& a, const DomainPtr& dom, double scale) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  for (int col = 0, row = 0; col < cols && row < rows; ++col) {
    int pr = -1;
    double best = 0;
    for (int r = row; r < rows; ++r) {
      if (!pivot_ok(a[r][col], dom, scale)) continue;
      if (dom->is_exact()) {
        pr = r;
        break;
      }
      double mag = std::abs(a[r][col].to_double());
      if (mag > best) {
        best = mag;
        pr = r;
      }
    }
    if (pr < 0) continue;
    std::swap(a[row], a[pr]);
    Scalar inv = a[row][col].inv();
    for (int r = row + 1; r < rows; ++r) {
      if (a[r][col].is_zero()) continue;
      Scalar f = a[r][col] * inv;
      for (int c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

Mat mat_zero(const DomainPtr& dom, int rows, int cols) {
  return Mat(rows, std::vector<Scalar>(cols, dom->zero()));
}

Mat mat_identity(const DomainPtr& dom, int n) {
  Mat a = mat_zero(dom, n, n);
  for (int i = 0; i < n; ++i) a[i][i] = dom->one();
  return a;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  const int k = n ? static_cast<int>(a[0].size()) : 0;
  const int m = b.empty() ? 0 : static_cast<int>(b[0].size());
  if (k != static_cast<int>(b.size())) throw std::invalid_argument("matrix shape mismatch");
  if (!n || !m) return {};
  Mat c(n, std::vector<Scalar>(m, a[0][0].domain()->zero()));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (int j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

Mat mat_transpose(const Mat& a) {
  if (a.empty()) return {};
  Mat t(a[0].size(), std::vector<Scalar>(a.size(), a[0][0].domain()->zero()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Mat mat_kron(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return {};
  const size_t ar = a.size(), ac = a[0].size();
  const size_t br = b.size(), bc = b[0].size();
  Mat k(ar * br, std::vector<Scalar>(ac * bc, a[0][0].domain()->zero()));
  for (size_t i = 0; i < ar; ++i)
    for (size_t j = 0; j < ac; ++j)
      for (size_t p = 0; p < br; ++p)
        for (size_t q = 0; q < bc; ++q) k[i * br + p][j * bc + q] = a[i][j] * b[p][q];
  return k;
}

bool mat_equal(const Mat& a, const Mat& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j]) return false;
  }
  return true;
}

double mat_scale(const Mat& a) {
  if (a.empty()) return 1.0;
  if (a[0][0].domain()->is_exact()) return 1.0;
  double s = 0;
  for (const auto& row : a)
    for (const auto& x : row) s = std::max(s, std::abs(x.to_double()));
  return s;
}

int mat_rank(Mat a, const DomainPtr& dom) {
  if (a.empty()) return 0;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  double scale = mat_scale(a);
  if (dom->mode() == Domain::Mode::Symbolic) {
    // A rational specialization never increases rank, so a full-rank
    // specialization proves full symbolic rank.
    try {
      auto q_dom = Domain::rational_index(mpq_class(1369, 169));  // lambda = 37/13
      Mat spec = mat_zero(q_dom, rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
          spec[i][j] = q_dom->from_rational(a[i][j].eval_at(mpq_class(37, 13)));
      int r = rank_eliminate(spec, q_dom, 1.0);
      if (r == std::min(rows, cols)) return r;
    } catch (const std::domain_error&) {
      // Denominator vanished at the sample point; use the exact path.
    }
  }
  return rank_eliminate(a, dom, scale);
}

bool mat_psd(Mat a, const DomainPtr& dom, int* rank_out) {
  const int n = static_cast<int>(a.size());
  double scale = mat_scale(a);
  auto entry_zero = [&](const Scalar& s) {
    return dom->is_exact() ? s.is_zero() : s.is_zero(scale);
  };
  int rank = 0;
  std::vector<char> done(n, 0);
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i) {
      if (done[i] || entry_zero(a[i][i])) continue;
      if (a[i][i].sign() < 0) {
        if (rank_out) *rank_out = rank;
        return false;
      }
      p = i;
      break;
    }
    if (p < 0) break;
    done[p] = 1;
    ++rank;
    Scalar inv = a[p][p].inv();
    for (int i = 0; i < n; ++i) {
      if (done[i] || entry_zero(a[i][p])) continue;
      Scalar f = a[i][p] * inv;
      for (int j = 0; j < n; ++j)
        if (!done[j]) a[i][j] -= f * a[p][j];
    }
    for (int j = 0; j < n; ++j) {
      a[p][j] = dom->zero();
      a[j][p] = dom->zero();
    }
  }
  // All remaining diagonal entries are zero; PSD forces the rest to vanish.
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (done[j]) continue;
      if (!entry_zero(a[i][j])) {
        if (rank_out) *rank_out = rank;
        return false;
      }
    }
  }
  if (rank_out) *rank_out = rank;
  return true;
}

Mat mat_inverse(Mat a, const DomainPtr& dom) {
  const int n = static_cast<int>(a.size());
  double scale = mat_scale(a);
  Mat inv = mat_identity(dom, n);
  for (int col = 0; col < n; ++col) {
    int pr = -1;
    double best = 0;
    for (int r = col; r < n; ++r) {
      if (!pivot_ok(a[r][col], dom, scale)) continue;
      if (dom->is_exact()) {
        pr = r;
        break;
      }
      double mag = std::abs(a[r][col].to_double());
      if (mag > best) {
        best = mag;
        pr = r;
      }
    }
    if (pr < 0) throw std::domain_error("matrix is singular");
    std::swap(a[col], a[pr]);
    std::swap(inv[col], inv[pr]);
    Scalar piv = a[col][col].inv();
    for (int j = 0; j < n; ++j) {
      a[col][j] *= piv;
      inv[col][j] *= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar f = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<std::vector<Scalar>> orthogonalize_by_gram(const Mat& gram, const DomainPtr& dom,
                                                       std::vector<Scalar>* norms2) {
  const int k = static_cast<int>(gram.size());
  double scale = mat_scale(gram);
  std::vector<std::vector<Scalar>> rows;  // coefficient rows of kept u_j
  std::vector<Scalar> norms;
  auto form = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    Scalar s = dom->zero();
    for (int i = 0; i < k; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < k; ++j) {
        if (y[j].is_zero()) continue;
        s += x[i].conj() * gram[i][j] * y[j];
      }
    }
    return s;
  };
  for (int v = 0; v < k; ++v) {
    std::vector<Scalar> c(k, dom->zero());
    c[v] = dom->one();
    for (size_t j = 0; j < rows.size(); ++j) {
      Scalar coef = form(rows[j], c) / norms[j];
      if (coef.is_zero()) continue;
      for (int i = 0; i < k; ++i) c[i] -= coef * rows[j][i];
    }
    Scalar n2 = form(c, c);
    bool zero = dom->is_exact() ? n2.is_zero() : n2.is_zero(scale);
    if (zero) continue;  // dependent under a PSD form
    rows.push_back(std::move(c));
    norms.push_back(std::move(n2));
  }
  if (norms2) *norms2 = norms;
  return rows;
}

}  // namespace tl
