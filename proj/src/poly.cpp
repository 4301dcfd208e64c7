#include "tl/poly.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace tl {

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

bool poly_is_zero(const Poly& p) { return p.empty(); }

Poly poly_const(const mpq_class& c) {
  if (c == 0) return {};
  return {c};
}

Poly poly_x() { return {mpq_class(0), mpq_class(1)}; }

Poly poly_x_pow(int k) {
  Poly p(k + 1, mpq_class(0));
  p[k] = 1;
  return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(std::move(r));
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return poly_trim(std::move(r));
}

Poly poly_neg(const Poly& a) {
  Poly r = a;
  for (auto& c : r) c = -c;
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

Poly poly_scale(const Poly& a, const mpq_class& c) {
  if (c == 0) return {};
  Poly r = a;
  for (auto& x : r) x *= c;
  return r;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw std::domain_error("poly division by zero");
  r = a;
  q.clear();
  int db = poly_deg(b);
  if (poly_deg(a) >= db) q.assign(poly_deg(a) - db + 1, mpq_class(0));
  while (poly_deg(r) >= db) {
    int k = poly_deg(r) - db;
    mpq_class c = r.back() / b.back();
    q[k] = c;
    for (int i = 0; i <= db; ++i) r[k + i] -= c * b[i];
    r = poly_trim(std::move(r));
  }
  q = poly_trim(std::move(q));
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
  Poly q, r;
  poly_divmod(a, b, q, r);
  if (!r.empty()) throw std::domain_error("poly division not exact");
  return q;
}

Poly poly_monic(const Poly& a) {
  if (a.empty()) return a;
  Poly r = a;
  mpq_class lead = r.back();
  for (auto& c : r) c /= lead;
  return r;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.empty()) {
    Poly q, r;
    poly_divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(x);
}

void poly_ext_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b;
  Poly s0 = poly_const(1), s1;
  Poly t0, t1 = poly_const(1);
  while (!r1.empty()) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    Poly t2 = poly_sub(t0, poly_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    g = s = t = Poly{};
    return;
  }
  mpq_class lead = r0.back();
  g = r0;
  s = s0;
  t = t0;
  for (auto& c : g) c /= lead;
  for (auto& c : s) c /= lead;
  for (auto& c : t) c /= lead;
}

mpq_class poly_eval(const Poly& p, const mpq_class& x) {
  mpq_class r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

double poly_eval_d(const Poly& p, double x) {
  double r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + it->get_d();
  return r;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * mpq_class(static_cast<long>(i));
  return r;
}

Poly poly_sqrt_exact(const Poly& p) {
  int d = poly_deg(p);
  if (d < 0) return {};
  if (d % 2 != 0 || p.back() != 1)
    throw std::domain_error("poly_sqrt_exact: not a monic even-degree polynomial");
  int k = d / 2;
  Poly b(k + 1, mpq_class(0));
  b[k] = 1;
  // Match coefficients of x^(k+i) for i = k-1 .. 0; each determines b[i].
  for (int i = k - 1; i >= 0; --i) {
    mpq_class acc = p[k + i];
    // sum over pairs (a, c) with a + c = k + i, i < a, c <= k, excluding (i, k)
    mpq_class cross = 0;
    for (int a = i + 1; a <= k; ++a) {
      int c = k + i - a;
      if (c < 0 || c > k || c <= i) continue;
      if (a == k && c == i) continue;
      if (c > a) continue;
      if (a == c)
        cross += b[a] * b[a];
      else
        cross += 2 * b[a] * b[c];
    }
    acc -= cross;
    b[i] = acc / 2;
  }
  if (poly_mul(b, b) != p) throw std::domain_error("poly_sqrt_exact: input is not a square");
  return b;
}

Poly cheb_s(int k) {
  Poly prev = poly_const(1);
  if (k == 0) return prev;
  Poly cur = poly_x();
  for (int i = 2; i <= k; ++i) {
    Poly next = poly_sub(poly_mul(poly_x(), cur), prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly cheb_c(int k) {
  Poly prev = poly_const(2);
  if (k == 0) return prev;
  Poly cur = poly_x();
  for (int i = 2; i <= k; ++i) {
    Poly next = poly_sub(poly_mul(poly_x(), cur), prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

std::vector<int> divisors_of(int n) {
  std::vector<int> d;
  for (int i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// psi(q) = minimal polynomial of 2cos(2pi/q).
//
// The second-kind Chebyshev polynomial s_{q-1} factors over Q as the product
// of psi(d) over divisors d > 2 of 2q, because its roots 2cos(k pi/q) group
// into Galois orbits by the order d = 2q/gcd(k, 2q). Two auxiliary facts make
// an exact sieve possible without generic factorization:
//   * for odd q, the roots of psi(2q) are the negatives of the roots of
//     psi(q), so psi(q)(x) = +-psi(2q)(-x);
//   * for odd q, (c_q + 2)/(x + 2) is the square of the "odd-index" product
//     B_q(x) = prod_{k odd < q} (x - 2cos(k pi/q)) = prod_{d | q, d > 1} psi(2d).
Poly psi_poly(int q);

Poly negate_arg_monic(const Poly& p) {
  Poly r = p;
  for (size_t i = 0; i < r.size(); ++i)
    if (i % 2 == 1) r[i] = -r[i];
  return poly_monic(r);
}

Poly odd_index_product(int q) {  // B_q for odd q >= 1
  if (q == 1) return poly_const(1);
  Poly num = poly_add(cheb_c(q), poly_const(2));
  Poly lin = {mpq_class(2), mpq_class(1)};  // x + 2
  return poly_sqrt_exact(poly_div_exact(num, lin));
}

Poly psi_poly_impl(int q) {
  if (q == 1) return Poly{mpq_class(-2), mpq_class(1)};  // x - 2
  if (q == 2) return Poly{mpq_class(2), mpq_class(1)};   // x + 2
  if (q % 2 == 1) return negate_arg_monic(psi_poly(2 * q));
  int h = q / 2;
  if (h % 2 == 1) {
    // q = 2h with h odd: divide B_h by the psi(2d) of proper divisors d of h.
    Poly p = odd_index_product(h);
    for (int d : divisors_of(h))
      if (d > 1 && d < h) p = poly_div_exact(p, psi_poly(2 * d));
    return p;
  }
  // q divisible by 4: sieve s_{q/2 - 1} = prod_{d | q, d > 2} psi(d).
  Poly p = cheb_s(h - 1);
  for (int d : divisors_of(q))
    if (d > 2 && d < q) p = poly_div_exact(p, psi_poly(d));
  return p;
}

Poly psi_poly(int q) {
  static std::map<int, Poly> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
  }
  Poly p = psi_poly_impl(q);  // recursive; computed outside the lock
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(q, std::move(p)).first->second;
}

}  // namespace

Poly min_poly_two_cos_pi_over(int m) {
  if (m < 2) throw std::domain_error("min_poly_two_cos_pi_over: need m >= 2");
  Poly p = psi_poly(2 * m);
  if (poly_deg(p) != euler_phi(2 * m) / 2)
    throw std::logic_error("min_poly_two_cos_pi_over: degree mismatch");
  return p;
}

std::string poly_to_string(const Poly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::string out;
  for (int i = poly_deg(p); i >= 0; --i) {
    const mpq_class& c = p[i];
    if (c == 0) continue;
    mpq_class a = c;
    if (out.empty()) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    bool unit = (a == 1);
    if (i == 0) {
      out += a.get_str();
    } else {
      if (!unit) out += a.get_str() + "*";
      out += var;
      if (i != 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace tl
