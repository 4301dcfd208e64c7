#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "tl/diagram.hpp"

using namespace tl;

TEST_CASE("catalan numbers") {
  // Frozen oracle: first Catalan numbers.
  const unsigned long expected[] = {1,  1,   2,   5,    14,   42,
                                    132, 429, 1430, 4862, 16796};
  for (int n = 0; n <= 10; ++n) CHECK(catalan(n) == expected[n]);
}

TEST_CASE("identity and cup construction") {
  Diagram id3 = Diagram::identity(3);
  CHECK(id3.strands() == 3);
  // Identity joins top i with bottom i (id n+i).
  for (int i = 0; i < 3; ++i) CHECK(id3.partner(i) == 3 + i);

  Diagram u1 = Diagram::cup(2, 1);
  // Cup at position 1 on 2 strands: top 0-1 joined, bottom 0-1 joined.
  CHECK(u1.partner(0) == 1);
  CHECK(u1.partner(2) == 3);

  Diagram u2 = Diagram::cup(3, 2);
  // Through strand 0, cup on top 1-2, cap on bottom 1-2.
  CHECK(u2.partner(0) == 3);
  CHECK(u2.partner(1) == 2);
  CHECK(u2.partner(4) == 5);

  CHECK_THROWS_AS(Diagram::cup(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(Diagram::cup(2, 2), std::invalid_argument);
}

TEST_CASE("planarity validation") {
  // The crossing pairing on 2 strands (top0-bottom1, top1-bottom0):
  // ids 0<->3, 1<->2 with cyclic positions 0<->2, 1<->3 interleave.
  std::vector<int> crossing = {3, 2, 1, 0};
  CHECK_THROWS_AS(Diagram::from_matching(2, crossing), std::invalid_argument);

  // Non-involution rejected.
  std::vector<int> bad = {1, 2, 0, 3};
  CHECK_THROWS_AS(Diagram::from_matching(2, bad), std::invalid_argument);

  // Fixed point rejected.
  std::vector<int> fixed = {0, 1, 3, 2};
  CHECK_THROWS_AS(Diagram::from_matching(2, fixed), std::invalid_argument);

  // Identity accepted.
  std::vector<int> ok = {2, 3, 0, 1};
  CHECK_NOTHROW(Diagram::from_matching(2, ok));
}

TEST_CASE("enumeration counts match Catalan numbers") {
  for (int n = 0; n <= 8; ++n) {
    auto ds = Diagram::all(n);
    CHECK(ds.size() == catalan(n));
    // All distinct and sorted.
    CHECK(std::is_sorted(ds.begin(), ds.end()));
    std::set<Diagram> s(ds.begin(), ds.end());
    CHECK(s.size() == ds.size());
  }
  // n = 10 count only (size check).
  CHECK(Diagram::all(10).size() == 16796u);
}

TEST_CASE("enumeration contains identity and cups") {
  auto ds = Diagram::all(3);
  auto has = [&](const Diagram& d) {
    return std::find(ds.begin(), ds.end(), d) != ds.end();
  };
  CHECK(has(Diagram::identity(3)));
  CHECK(has(Diagram::cup(3, 1)));
  CHECK(has(Diagram::cup(3, 2)));
}

TEST_CASE("composition: identity is neutral, no loops") {
  for (int n = 1; n <= 5; ++n) {
    Diagram id = Diagram::identity(n);
    for (const Diagram& d : Diagram::all(n)) {
      auto [r1, l1] = Diagram::compose(id, d);
      CHECK(r1 == d);
      CHECK(l1 == 0);
      auto [r2, l2] = Diagram::compose(d, id);
      CHECK(r2 == d);
      CHECK(l2 == 0);
    }
  }
}

TEST_CASE("composition: cup stacked on itself closes one loop") {
  Diagram u = Diagram::cup(2, 1);
  auto [r, loops] = Diagram::compose(u, u);
  CHECK(r == u);
  CHECK(loops == 1);

  // Same with a through strand present.
  Diagram u2 = Diagram::cup(3, 2);
  auto [r2, loops2] = Diagram::compose(u2, u2);
  CHECK(r2 == u2);
  CHECK(loops2 == 1);
}

TEST_CASE("composition: adjacent cups make the zigzag, no loop") {
  // U_1 U_2 on 3 strands: top pair 0-1, bottom pair 1-2, strand top2 -> bottom0.
  Diagram u1 = Diagram::cup(3, 1);
  Diagram u2 = Diagram::cup(3, 2);
  auto [r, loops] = Diagram::compose(u1, u2);
  CHECK(loops == 0);
  CHECK(r.partner(0) == 1);      // top cup 0-1
  CHECK(r.partner(2) == 3 + 0);  // through strand top2 - bottom0
  CHECK(r.partner(3 + 1) == 3 + 2);

  // And U_2 U_1: top pair 1-2, bottom pair 0-1, strand top0 -> bottom2.
  auto [r2, loops2] = Diagram::compose(u2, u1);
  CHECK(loops2 == 0);
  CHECK(r2.partner(1) == 2);
  CHECK(r2.partner(0) == 3 + 2);
  CHECK(r2.partner(3 + 0) == 3 + 1);
}

TEST_CASE("composition: zigzag products of adjacent and equal cups") {
  // Diagrammatically U_1 U_2 U_1 = U_1 with no closed loop.
  Diagram u1 = Diagram::cup(3, 1);
  Diagram u2 = Diagram::cup(3, 2);
  auto [a, l1] = Diagram::compose(u1, u2);
  auto [b, l2] = Diagram::compose(a, u1);
  CHECK(l1 + l2 == 0);
  CHECK(b == u1);
  // While U_1 U_1 U_1 = U_1 with two loops.
  auto [c, m1] = Diagram::compose(u1, u1);
  auto [d, m2] = Diagram::compose(c, u1);
  CHECK(d == u1);
  CHECK(m1 + m2 == 2);
}

TEST_CASE("composition is associative including loop counts") {
  auto ds = Diagram::all(3);
  for (const Diagram& a : ds)
    for (const Diagram& b : ds)
      for (const Diagram& c : ds) {
        auto [ab, l_ab] = Diagram::compose(a, b);
        auto [ab_c, l_ab_c] = Diagram::compose(ab, c);
        auto [bc, l_bc] = Diagram::compose(b, c);
        auto [a_bc, l_a_bc] = Diagram::compose(a, bc);
        CHECK(ab_c == a_bc);
        CHECK(l_ab + l_ab_c == l_bc + l_a_bc);
      }
}

TEST_CASE("flip is an involution and reverses composition") {
  auto ds = Diagram::all(4);
  for (const Diagram& d : ds) CHECK(d.flip().flip() == d);
  // flip(ab) == flip(b) flip(a), same loops.
  for (std::size_t i = 0; i < ds.size(); i += 3)
    for (std::size_t j = 0; j < ds.size(); j += 3) {
      auto [ab, l] = Diagram::compose(ds[i], ds[j]);
      auto [ba, l2] = Diagram::compose(ds[j].flip(), ds[i].flip());
      CHECK(ab.flip() == ba);
      CHECK(l == l2);
    }
  // Cups are flip-invariant.
  CHECK(Diagram::cup(3, 1).flip() == Diagram::cup(3, 1));
}

TEST_CASE("closure loop counts") {
  // Closing the identity on n strands gives n loops.
  for (int n = 0; n <= 5; ++n)
    CHECK(Diagram::identity(n).closure_loops() == n);
  // Closing U_i gives n-1 loops.
  for (int n = 2; n <= 5; ++n)
    for (int i = 1; i < n; ++i)
      CHECK(Diagram::cup(n, i).closure_loops() == n - 1);
  // U_1 U_3 in TL_4 closes to 2 loops.
  auto [u13, l] = Diagram::compose(Diagram::cup(4, 1), Diagram::cup(4, 3));
  CHECK(l == 0);
  CHECK(u13.closure_loops() == 2);
}

TEST_CASE("close_last: partial closure of the last strand") {
  // Identity: last strand closes to a loop, leaving identity.
  for (int n = 1; n <= 4; ++n) {
    auto [d, loops] = Diagram::identity(n).close_last();
    CHECK(loops == 1);
    CHECK(d == Diagram::identity(n - 1));
  }
  // U_{n-1}: closing the last strand yields the identity, no loop.
  for (int n = 2; n <= 5; ++n) {
    auto [d, loops] = Diagram::cup(n, n - 1).close_last();
    CHECK(loops == 0);
    CHECK(d == Diagram::identity(n - 1));
  }
  // U_1 in TL_3: last strand is a through strand; result is U_1 in TL_2.
  auto [d, loops] = Diagram::cup(3, 1).close_last();
  CHECK(loops == 1);
  CHECK(d == Diagram::cup(2, 1));
}

TEST_CASE("padding embeds diagrams") {
  Diagram u = Diagram::cup(2, 1);
  CHECK(u.pad_right(1) == Diagram::cup(3, 1));
  CHECK(u.pad_left(1) == Diagram::cup(3, 2));
  CHECK(u.pad_right(0) == u);
  CHECK(Diagram::identity(2).pad_right(2) == Diagram::identity(4));
  // Padding then closing the added strand undoes the embedding (one loop).
  auto [d, loops] = u.pad_right(1).close_last();
  CHECK(loops == 1);
  CHECK(d == u);
}
