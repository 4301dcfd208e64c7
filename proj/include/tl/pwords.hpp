#pragma once

#include <string>
#include <vector>

#include "tl/element.hpp"

namespace tl {

// Letters of the distinguished word: s descending runs of length r, run t
// running from e_{r+k+t} down to e_{k+1+t}.
std::vector<int> p_letters(int k, int r, int s);

// The element lambda^{rs} (e_{r+k} ... e_{k+1})(e_{r+k+1} ... e_{k+2}) ...
// on n ambient strands; the identity when r = 0 or s = 0.
TLElement build_p(const DomainPtr& dom, int k, int r, int s, int n);

// Convenience: k = 0 and minimal ambient r+s.
TLElement build_p0(const DomainPtr& dom, int r, int s, int n);

// The Jones projection onto the first 2r strands:
// lambda^{r(r-1)} (e_r ... e_1)(e_{r+1} ... e_2) ... (e_{2r-1} ... e_r),
// equal to lambda^{-r} p_{r,r}. Idempotent, self-adjoint, trace lambda^{-2r}.
TLElement build_f(const DomainPtr& dom, int r, int n);

// Product of two descending runs (e_r ... e_j)(e_s ... e_p) rewritten:
//   lambda^{-2} (e_r ... e_p)(e_s ... e_{j+2})   if s > j+1
//   lambda^{-2} (e_r ... e_p)                    if s = j+1
// Preconditions: p <= j <= r < s <= n-1. The returned element is verified
// against the direct product of the two runs; mismatch throws.
TLElement reduce_pair_run_merge(const DomainPtr& dom, int r, int j, int s, int p, int n);

struct LemmaCase {
  std::string label;
  std::string lhs;
  std::string rhs;
  bool equal = false;
};

struct LemmaCertificate {
  std::string suite;
  std::vector<LemmaCase> cases;
  bool all_equal = true;
};

// Verifies p_{r,2} p_{r+2,s} = p_{r,s} p^{(2s)}_{r-s,2} on r+s+2 strands,
// both sides computed independently in the diagram basis. Requires s <= r.
LemmaCase verify_pword_exchange(const DomainPtr& dom, int r, int s);

// Sweeps: all admissible cases up to the given bounds.
LemmaCertificate verify_run_merge_sweep(const DomainPtr& dom, int max_s);
LemmaCertificate verify_pword_exchange_sweep(const DomainPtr& dom, int max_r);

}  // namespace tl
