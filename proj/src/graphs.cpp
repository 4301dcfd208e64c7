#include "tl/graphs.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tl {

namespace {

void validate(const PrincipalGraph& g) {
  const int m = static_cast<int>(g.adjacency.size());
  if (m < 1) throw std::invalid_argument("graph: empty vertex set");
  for (const auto& row : g.adjacency)
    if (static_cast<int>(row.size()) != m)
      throw std::invalid_argument("graph: adjacency is not square");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (g.adjacency[i][j] < 0)
        throw std::invalid_argument("graph: negative multiplicity");
      if (g.adjacency[i][j] != g.adjacency[j][i])
        throw std::invalid_argument("graph: adjacency is not symmetric");
    }
  if (g.star < 0 || g.star >= m)
    throw std::invalid_argument("graph: distinguished vertex out of range");
  // Connected and bipartite via breadth-first two-coloring.
  std::vector<int> color(m, -1);
  std::queue<int> q;
  color[g.star] = 0;
  q.push(g.star);
  int seen = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w = 0; w < m; ++w) {
      if (g.adjacency[v][w] == 0) continue;
      if (color[w] == -1) {
        color[w] = 1 - color[v];
        ++seen;
        q.push(w);
      } else if (color[w] == color[v]) {
        throw std::invalid_argument("graph: not bipartite");
      }
    }
  }
  if (seen != m) throw std::invalid_argument("graph: not connected");
}

// Squared Perron-Frobenius eigenvalue by power iteration (the matrices
// here are small and primitive on the even/odd double step).
double squared_pf(const PrincipalGraph& g) {
  const int m = static_cast<int>(g.adjacency.size());
  if (m == 1) return 0.0;
  const auto apply = [&](const std::vector<double>& x) {
    std::vector<double> y(m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) y[i] += g.adjacency[i][j] * x[j];
    return y;
  };
  // Iterate the double step A^2, which is primitive on the side of the
  // distinguished vertex; a single-step iteration would oscillate between
  // the two sides of the bipartition.
  std::vector<double> v(m, 0.0);
  v[g.star] = 1.0;
  double mu2 = 0.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> w = apply(apply(v));
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    mu2 = norm;  // v is unit length, so |A^2 v| estimates the top eigenvalue
    for (double& x : w) x /= norm;
    v = std::move(w);
  }
  return mu2;
}

}  // namespace

PrincipalGraph graph_A(int m) {
  if (m < 2) throw std::invalid_argument("graph_A: need at least two vertices");
  PrincipalGraph g;
  g.name = "A" + std::to_string(m);
  g.adjacency.assign(m, std::vector<int>(m, 0));
  for (int i = 0; i + 1 < m; ++i) {
    g.adjacency[i][i + 1] = 1;
    g.adjacency[i + 1][i] = 1;
  }
  g.star = 0;
  validate(g);
  return g;
}

PrincipalGraph make_graph(std::string name,
                          std::vector<std::vector<int>> adjacency, int star) {
  PrincipalGraph g;
  g.name = std::move(name);
  g.adjacency = std::move(adjacency);
  g.star = star;
  validate(g);
  return g;
}

DimSequence path_dims(const PrincipalGraph& g, int R) {
  validate(g);
  if (R < 0 || R > 256)
    throw std::invalid_argument("path_dims: level budget out of range");
  const int m = static_cast<int>(g.adjacency.size());
  DimSequence out;
  out.beta = squared_pf(g);
  std::vector<mpz_class> v(m, 0);
  v[g.star] = 1;
  out.values.push_back(1);
  for (int r = 1; r <= R; ++r) {
    for (int step = 0; step < 2; ++step) {
      std::vector<mpz_class> w(m, 0);
      for (int i = 0; i < m; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < m; ++j)
          if (g.adjacency[i][j] != 0) w[j] += g.adjacency[i][j] * v[i];
      }
      v = std::move(w);
    }
    out.values.push_back(v[g.star]);
  }
  return out;
}

GrowthReport growth_rate(const DimSequence& d) {
  if (d.values.size() < 5)
    throw std::invalid_argument(
        "growth_rate: need the sequence up to level four at least");
  GrowthReport rep;
  for (size_t r = 1; r < d.values.size(); ++r) {
    const double val = d.values[r].get_d();
    rep.roots.push_back(std::pow(val, 1.0 / static_cast<double>(r)));
  }
  rep.estimate = rep.roots.back();
  return rep;
}

EmbedReport embedability_check(const DimSequence& d, int n) {
  if (n < 1) throw std::invalid_argument("embedability_check: dimension < 1");
  EmbedReport rep;
  rep.candidate = n;
  mpz_class np = 1;
  for (size_t r = 0; r < d.values.size(); ++r) {
    std::ostringstream row;
    row << r << ": " << d.values[r].get_str() << " vs " << np.get_str();
    rep.table.push_back(row.str());
    if (rep.first_violation < 0 && d.values[r] > np)
      rep.first_violation = static_cast<int>(r);
    np *= n;
  }
  if (rep.first_violation >= 0) {
    rep.verdict = "level " + std::to_string(rep.first_violation) +
                  " exceeds the tensor power: no embedding into dimension " +
                  std::to_string(n);
  } else {
    rep.verdict = "no obstruction up to level " +
                  std::to_string(d.values.size() - 1);
  }
  return rep;
}

std::string bratteli_export(const PrincipalGraph& g, int R) {
  validate(g);
  if (R < 0 || R > 256)
    throw std::invalid_argument("bratteli_export: level budget out of range");
  const int m = static_cast<int>(g.adjacency.size());
  std::ostringstream dot;
  dot << "digraph bratteli {\n  rankdir=TB;\n  node [shape=box];\n";
  std::vector<mpz_class> v(m, 0);
  v[g.star] = 1;
  std::vector<std::vector<mpz_class>> floors{v};
  for (int r = 1; r <= R; ++r) {
    std::vector<mpz_class> w(m, 0);
    for (int i = 0; i < m; ++i) {
      if (v[i] == 0) continue;
      for (int j = 0; j < m; ++j)
        if (g.adjacency[i][j] != 0) w[j] += g.adjacency[i][j] * v[i];
    }
    v = std::move(w);
    floors.push_back(v);
  }
  for (int r = 0; r <= R; ++r) {
    dot << "  { rank=same;";
    for (int i = 0; i < m; ++i)
      if (floors[r][i] != 0)
        dot << " f" << r << "v" << i << " [label=\"" << i << ":"
            << floors[r][i].get_str() << "\"];";
    dot << " }\n";
  }
  for (int r = 0; r + 1 <= R; ++r)
    for (int i = 0; i < m; ++i) {
      if (floors[r][i] == 0) continue;
      for (int j = 0; j < m; ++j)
        if (g.adjacency[i][j] != 0 && floors[r + 1][j] != 0)
          dot << "  f" << r << "v" << i << " -> f" << r + 1 << "v" << j
              << (g.adjacency[i][j] > 1
                      ? " [label=\"" + std::to_string(g.adjacency[i][j]) + "\"]"
                      : "")
              << ";\n";
    }
  dot << "}\n";
  return dot.str();
}

}  // namespace tl
