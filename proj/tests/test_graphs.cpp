#include "tl/graphs.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tl/diagram.hpp"
#include "tl/markov.hpp"

using namespace tl;

TEST_CASE("path graphs build and arbitrary graphs validate") {
  PrincipalGraph a3 = graph_A(3);
  CHECK(a3.adjacency.size() == 3);
  CHECK(a3.adjacency[0][1] == 1);
  CHECK(a3.adjacency[0][2] == 0);
  CHECK(a3.star == 0);
  CHECK_THROWS_AS(graph_A(1), std::invalid_argument);

  // Rejections: asymmetric, non-bipartite (triangle), disconnected,
  // star out of range, negative multiplicity.
  CHECK_THROWS_AS(make_graph("bad", {{0, 1}, {0, 0}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_graph("tri", {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_graph("disc", {{0, 1, 0, 0},
                                      {1, 0, 0, 0},
                                      {0, 0, 0, 1},
                                      {0, 0, 1, 0}},
                             0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_graph("star", {{0, 1}, {1, 0}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_graph("neg", {{0, -1}, {-1, 0}}, 0),
                  std::invalid_argument);

  // Multi-edges are allowed when bipartite.
  PrincipalGraph multi = make_graph("double-bond", {{0, 2}, {2, 0}}, 0);
  CHECK(path_dims(multi, 2).values[1] == 4);  // two choices out, two back
}

TEST_CASE("path dimensions count closed walks exactly") {
  // Length-2r walk counts at the end of the three-vertex path double.
  DimSequence a3 = path_dims(graph_A(3), 4);
  REQUIRE(a3.values.size() == 5);
  CHECK(a3.values[0] == 1);
  CHECK(a3.values[1] == 1);
  CHECK(a3.values[2] == 2);
  CHECK(a3.values[3] == 4);
  CHECK(a3.values[4] == 8);
  CHECK(a3.beta == doctest::Approx(2.0));

  // The four-vertex path gives the odd-indexed Fibonacci bisection:
  // Dyck paths of bounded height three.
  DimSequence a4 = path_dims(graph_A(4), 5);
  CHECK(a4.values[1] == 1);
  CHECK(a4.values[2] == 2);
  CHECK(a4.values[3] == 5);
  CHECK(a4.values[4] == 13);
  CHECK(a4.values[5] == 34);
  CHECK(a4.beta == doctest::Approx(4.0 * std::pow(std::cos(M_PI / 5), 2)));

  // A two-vertex path bounces: every level has exactly one loop.
  DimSequence a2 = path_dims(graph_A(2), 6);
  for (const auto& v : a2.values) CHECK(v == 1);

  // Far from the boundary the walk counts are the Catalan numbers.
  DimSequence wide = path_dims(graph_A(18), 8);
  for (int r = 0; r <= 8; ++r)
    CHECK(wide.values[r] == catalan(r));

  // Growth bound: d_r <= beta^r throughout.
  for (size_t r = 0; r < a4.values.size(); ++r)
    CHECK(a4.values[r].get_d() <=
          std::pow(a4.beta, static_cast<double>(r)) * (1 + 1e-9));

  CHECK_THROWS_AS(path_dims(graph_A(3), 300), std::invalid_argument);
}

TEST_CASE("walk counts match the degenerate form ranks") {
  // Cross-oracle at the root-of-unity indices: the level-n walk count on
  // the path with m-1 vertices equals the rank of the level-n trace form
  // at beta = 4cos^2(pi/m). Small sweep here; the acceptance suite runs
  // the full one.
  for (int m : {4, 5}) {
    DomainPtr dom = Domain::cos_field(m);
    DimSequence dims = path_dims(graph_A(m - 1), 5);
    for (int n = 1; n <= 5; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(mpz_class(gram_matrix(dom, n).rank) == dims.values[n]);
    }
  }
  // The sharpest small case: three strands at index two lose one dimension.
  CHECK(gram_matrix(Domain::cos_field(4), 3).rank == 4);
  CHECK(path_dims(graph_A(3), 3).values[3] == 4);
}

TEST_CASE("growth estimates approach the index") {
  DimSequence a4 = path_dims(graph_A(4), 32);
  GrowthReport rep = growth_rate(a4);
  REQUIRE(rep.roots.size() == 32);
  const double target = 4.0 * std::pow(std::cos(M_PI / 5), 2);
  CHECK(std::fabs(rep.estimate - target) / target < 0.10);
  // Monotone trend from level two on.
  for (size_t i = 2; i < rep.roots.size(); ++i)
    CHECK(rep.roots[i] >= rep.roots[i - 1] - 1e-12);

  GrowthReport a3 = growth_rate(path_dims(graph_A(3), 32));
  CHECK(std::fabs(a3.estimate - 2.0) < 0.1);

  GrowthReport flat = growth_rate(path_dims(graph_A(2), 8));
  CHECK(flat.estimate == doctest::Approx(1.0));

  CHECK_THROWS_AS(growth_rate(path_dims(graph_A(3), 3)), std::invalid_argument);
}

TEST_CASE("embedability comparisons find the forced violations") {
  // Against dimension one, the first level with two paths is the witness.
  EmbedReport r1 = embedability_check(path_dims(graph_A(3), 6), 1);
  CHECK(r1.first_violation == 2);
  EmbedReport r2 = embedability_check(path_dims(graph_A(4), 6), 1);
  CHECK(r2.first_violation == 2);

  // Non-integer growth above the candidate dimension must eventually win:
  // 34 > 2^5 on the four-vertex path.
  EmbedReport r3 = embedability_check(path_dims(graph_A(4), 8), 2);
  CHECK(r3.first_violation == 5);
  CHECK(r3.verdict.find("no embedding") != std::string::npos);

  // Integer growth equal to the candidate never violates: the three-vertex
  // path against dimension two stays at d_r = 2^{r-1} <= 2^r.
  EmbedReport r4 = embedability_check(path_dims(graph_A(3), 12), 2);
  CHECK(r4.first_violation == -1);
  CHECK(r4.verdict.find("no obstruction") != std::string::npos);
  CHECK(r4.table.size() == 13);

  CHECK_THROWS_AS(embedability_check(path_dims(graph_A(3), 4), 0),
                  std::invalid_argument);
}

TEST_CASE("bratteli export lays out the floors") {
  // Three floors with path counts 1, 1, 2.
  std::string dot = bratteli_export(graph_A(3), 2);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("f0v0 [label=\"0:1\"]") != std::string::npos);
  CHECK(dot.find("f1v1 [label=\"1:1\"]") != std::string::npos);
  CHECK(dot.find("f2v0 [label=\"0:1\"]") != std::string::npos);
  CHECK(dot.find("f2v2 [label=\"2:1\"]") != std::string::npos);
  CHECK(dot.find("f0v0 -> f1v1") != std::string::npos);

  // Node statements equal the number of (floor, vertex) pairs reached.
  size_t labels = 0;
  for (size_t pos = dot.find("label=\""); pos != std::string::npos;
       pos = dot.find("label=\"", pos + 1))
    ++labels;
  CHECK(labels == 4);  // 1 + 1 + 2

  // A single floor is a single node.
  std::string root = bratteli_export(graph_A(3), 0);
  CHECK(root.find("f0v0") != std::string::npos);
  CHECK(root.find("f1") == std::string::npos);
}
