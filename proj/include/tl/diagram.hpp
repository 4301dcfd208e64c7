#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tl {

// Planar (noncrossing) perfect matching of the 2n boundary points of a
// rectangle: n points on the top edge, n on the bottom edge.
//
// Point ids: top points are 0..n-1 left to right; bottom point p (left to
// right) has id n+p. Walking the boundary counterclockwise from the top-left
// corner visits top 0..n-1, then bottom n-1..0; planarity is the
// balanced-bracket condition in that cyclic order.
class Diagram {
 public:
  Diagram() = default;  // n = 0: the empty diagram (unit of TL_0)

  // Identity: top i joined to bottom i.
  static Diagram identity(int n);
  // Cup-cap U_i, 1 <= i <= n-1: top pair (i-1,i), bottom pair (i-1,i),
  // all other strands vertical.
  static Diagram cup(int n, int i);
  // From an explicit involution array (validated).
  static Diagram from_matching(int n, std::vector<int> match);

  int strands() const { return n_; }
  int partner(int id) const { return match_[id]; }
  const std::vector<int>& matching() const { return match_; }

  // Vertical reflection: the involution diagram D*.
  Diagram flip() const;

  // Stack a on top of b, gluing a's bottom row to b's top row. Returns the
  // resulting diagram and the number of closed loops removed.
  static std::pair<Diagram, int> compose(const Diagram& a, const Diagram& b);

  // Number of closed loops when top i is joined to bottom i for every i.
  int closure_loops() const;

  // Close only the last strand (top n-1 joined to bottom n-1), giving a
  // diagram on n-1 strands and the number of loops formed (0 or 1).
  std::pair<Diagram, int> close_last() const;

  // Tensor with k vertical strands on the right (embeds TL_n into TL_{n+k}).
  Diagram pad_right(int k) const;
  // Tensor with k vertical strands on the left; strand i becomes i+k.
  Diagram pad_left(int k) const;

  bool operator==(const Diagram& o) const { return n_ == o.n_ && match_ == o.match_; }
  bool operator!=(const Diagram& o) const { return !(*this == o); }
  bool operator<(const Diagram& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return match_ < o.match_;
  }

  // All noncrossing perfect matchings on n strands, sorted; size = Catalan(n).
  static std::vector<Diagram> all(int n);

  static bool is_planar_matching(int n, const std::vector<int>& match);

  std::string str() const;

 private:
  int n_ = 0;
  std::vector<int> match_;
};

// Catalan number C_n as unsigned long (valid well past n = 30).
unsigned long catalan(int n);

}  // namespace tl
