#include "tl/pwords.hpp"

#include <stdexcept>

namespace tl {

std::vector<int> p_letters(int k, int r, int s) {
  std::vector<int> w;
  for (int t = 0; t < s; ++t)
    for (int a = r + k + t; a >= k + 1 + t; --a) w.push_back(a);
  return w;
}

TLElement build_p(const DomainPtr& dom, int k, int r, int s, int n) {
  if (k < 0 || r < 0 || s < 0) throw std::invalid_argument("negative p-word parameter");
  if (n < k + r + s) throw std::invalid_argument("ambient strand count too small for p-word");
  if (r == 0 || s == 0) return TLElement::unit(dom, n);
  return word_to_element(dom, n, p_letters(k, r, s), dom->lambda_pow(r * s));
}

TLElement build_p0(const DomainPtr& dom, int r, int s, int n) { return build_p(dom, 0, r, s, n); }

TLElement build_f(const DomainPtr& dom, int r, int n) {
  if (r < 0) throw std::invalid_argument("negative projection parameter");
  if (n < 2 * r) throw std::invalid_argument("ambient strand count too small");
  if (r == 0) return TLElement::unit(dom, n);
  return word_to_element(dom, n, p_letters(0, r, r), dom->lambda_pow(r * (r - 1)));
}

namespace {
std::vector<int> run_desc(int hi, int lo) {
  std::vector<int> w;
  for (int a = hi; a >= lo; --a) w.push_back(a);
  return w;
}
std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}
}  // namespace

TLElement reduce_pair_run_merge(const DomainPtr& dom, int r, int j, int s, int p, int n) {
  if (!(p <= j && j <= r && r < s && s <= n - 1))
    throw std::invalid_argument("run-merge indices must satisfy p <= j <= r < s <= n-1");
  TLElement lhs = word_to_element(dom, n, concat(run_desc(r, j), run_desc(s, p)), dom->one());
  std::vector<int> letters = run_desc(r, p);
  if (s > j + 1) letters = concat(std::move(letters), run_desc(s, j + 2));
  TLElement rhs = word_to_element(dom, n, letters, dom->lambda_pow(-2));
  if (lhs != rhs) throw std::logic_error("run-merge rewriting failed verification");
  return rhs;
}

LemmaCase verify_pword_exchange(const DomainPtr& dom, int r, int s) {
  if (s < 0 || s > r) throw std::invalid_argument("exchange identity requires 0 <= s <= r");
  const int n = r + s + 2;
  TLElement lhs = build_p(dom, 0, r, 2, n) * build_p(dom, 0, r + 2, s, n);
  TLElement rhs = build_p(dom, 0, r, s, n) * build_p(dom, 2 * s, r - s, 2, n);
  LemmaCase c;
  c.label = "r=" + std::to_string(r) + ",s=" + std::to_string(s);
  c.lhs = lhs.str();
  c.rhs = rhs.str();
  c.equal = (lhs == rhs);
  return c;
}

LemmaCertificate verify_run_merge_sweep(const DomainPtr& dom, int max_s) {
  LemmaCertificate cert;
  cert.suite = "run-merge";
  for (int s = 2; s <= max_s; ++s) {
    const int n = s + 1;
    for (int r = 1; r < s; ++r)
      for (int j = 1; j <= r; ++j)
        for (int p = 1; p <= j; ++p) {
          LemmaCase c;
          c.label = "r=" + std::to_string(r) + ",j=" + std::to_string(j) +
                    ",s=" + std::to_string(s) + ",p=" + std::to_string(p);
          try {
            TLElement rhs = reduce_pair_run_merge(dom, r, j, s, p, n);
            c.rhs = rhs.str();
            c.equal = true;
          } catch (const std::logic_error&) {
            c.equal = false;
          }
          cert.cases.push_back(std::move(c));
          cert.all_equal = cert.all_equal && cert.cases.back().equal;
        }
  }
  return cert;
}

LemmaCertificate verify_pword_exchange_sweep(const DomainPtr& dom, int max_r) {
  LemmaCertificate cert;
  cert.suite = "p-word-exchange";
  for (int r = 0; r <= max_r; ++r)
    for (int s = 0; s <= r; ++s) {
      cert.cases.push_back(verify_pword_exchange(dom, r, s));
      cert.all_equal = cert.all_equal && cert.cases.back().equal;
    }
  return cert;
}

}  // namespace tl
