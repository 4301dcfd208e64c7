#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tl {

// Dense univariate polynomial over Q, little-endian coefficients.
// The zero polynomial is the empty vector; otherwise the top coefficient
// is nonzero.
using Poly = std::vector<mpq_class>;

Poly poly_trim(Poly p);
int poly_deg(const Poly& p);  // -1 for the zero polynomial
bool poly_is_zero(const Poly& p);
Poly poly_const(const mpq_class& c);
Poly poly_x();
Poly poly_x_pow(int k);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const mpq_class& c);

// Euclidean division; throws if b = 0.
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
// Division known to be exact; throws on nonzero remainder.
Poly poly_div_exact(const Poly& a, const Poly& b);

Poly poly_monic(const Poly& a);
Poly poly_gcd(const Poly& a, const Poly& b);  // monic gcd
// g = gcd(a, b) = s*a + t*b, g monic.
void poly_ext_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t);

mpq_class poly_eval(const Poly& p, const mpq_class& x);
double poly_eval_d(const Poly& p, double x);
Poly poly_derivative(const Poly& p);

// Square root of a monic perfect square; throws if the input is not one.
Poly poly_sqrt_exact(const Poly& p);

// Chebyshev-like families, monic and integral:
//   s_k(2cos t) = sin((k+1)t)/sin(t),  c_k(2cos t) = 2cos(kt).
Poly cheb_s(int k);
Poly cheb_c(int k);

// Minimal polynomial over Q of 2cos(pi/m), m >= 2. Monic, integer
// coefficients, degree phi(2m)/2. Built by an exact divisor sieve on the
// Chebyshev factorizations; no floating point and no factorization tables.
Poly min_poly_two_cos_pi_over(int m);

std::string poly_to_string(const Poly& p, const std::string& var);

}  // namespace tl
