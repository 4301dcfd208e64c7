#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tl {

// Bipartite principal graph with a distinguished starting vertex. The
// adjacency matrix is symmetric with nonnegative integer entries; the
// graph must be connected and two-colorable, with the distinguished
// vertex on the even side by convention.
struct PrincipalGraph {
  std::string name;
  std::vector<std::vector<int>> adjacency;
  int star = 0;
};

// The path graph with m vertices (m >= 2), distinguished end vertex 0.
PrincipalGraph graph_A(int m);

// Validates an arbitrary adjacency matrix (square, symmetric, nonnegative,
// connected, bipartite, star in range); throws std::invalid_argument.
PrincipalGraph make_graph(std::string name,
                          std::vector<std::vector<int>> adjacency, int star);

// Loop counts of the path model and the squared growth base.
struct DimSequence {
  std::vector<mpz_class> values;  // values[r] = closed walks of length 2r at *
  double beta = 0;                // squared Perron-Frobenius eigenvalue
};

// values[r] = (A^{2r})_{*,*} for r = 0..R, exact integer arithmetic.
// R is capped at 256 to keep the walk counts sane.
DimSequence path_dims(const PrincipalGraph& g, int R);

// r-th roots d_r^{1/r} and the final-root estimate of the growth rate;
// requires at least five entries (R >= 4).
struct GrowthReport {
  std::vector<double> roots;  // index r-1 holds d_r^{1/r}, r = 1..R
  double estimate = 0;
};
GrowthReport growth_rate(const DimSequence& d);

// Comparison of the dimension sequence against the powers of a candidate
// Hilbert-space dimension: the least r with d_r > n^r certifies that the
// level-r space cannot sit inside the r-fold tensor power.
struct EmbedReport {
  int candidate = 0;
  int first_violation = -1;  // -1: no obstruction up to R
  std::vector<std::string> table;
  std::string verdict;
};
EmbedReport embedability_check(const DimSequence& d, int n);

// Layered DOT rendering of the path-model floors 0..R: one node per
// (floor, vertex) with a positive path count, labelled by that count.
std::string bratteli_export(const PrincipalGraph& g, int R);

}  // namespace tl
