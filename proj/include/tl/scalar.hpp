#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <string>
#include <variant>

#include "tl/poly.hpp"

namespace tl {

class Domain;
using DomainPtr = std::shared_ptr<const Domain>;

// Rational function in the loop parameter, reduced, monic denominator.
struct RatFun {
  Poly num;
  Poly den;  // monic, nonzero; {1} when num = 0
};

// Coefficient attached to a domain. Three backends:
//   symbolic     rational functions in a formal loop parameter lambda
//   number field Q[lambda]/(min_poly), lambda a fixed real algebraic number
//   float        double with a relative zero threshold
class Scalar {
 public:
  Scalar() = default;
  bool valid() const { return dom_ != nullptr; }
  const DomainPtr& domain() const { return dom_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inv() const;
  Scalar conj() const { return *this; }  // all supported domains are real

  bool is_zero(double scale = 1.0) const;
  bool is_one() const;
  // Exact sign where decidable. Symbolic mode reports the sign for large
  // loop parameter (leading coefficient); number fields decide by certified
  // interval refinement around the real root; float compares against eps.
  int sign() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;
  double to_double() const;

  // Symbolic mode only: evaluate the rational function at lambda = q.
  // Throws if the mode is wrong or the denominator vanishes at q.
  mpq_class eval_at(const mpq_class& q) const;

 private:
  friend class Domain;
  DomainPtr dom_;
  std::variant<RatFun, Poly, double> v_;
};

class Domain : public std::enable_shared_from_this<Domain> {
 public:
  enum class Mode { Symbolic, NumberField, Float };

  // Descriptor grammar:
  //   "symbolic"
  //   "index=q"              rational q > 1, exact
  //   "index=4cos2(pi/m)"    integer m >= 4, exact (also accepts 4cos^2)
  //   "float:index=x[,eps=e]"
  static DomainPtr make(const std::string& descriptor);
  static DomainPtr symbolic();
  static DomainPtr cos_field(int m);                  // beta = 4cos^2(pi/m)
  static DomainPtr rational_index(const mpq_class& q);
  static DomainPtr floating(double beta, double eps = 1e-9);

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ != Mode::Float; }
  const std::string& descriptor() const { return descriptor_; }
  double eps() const { return eps_; }
  int cos_m() const { return cos_m_; }
  const Poly& min_poly() const { return min_poly_; }
  bool compatible(const Domain& o) const;

  Scalar zero() const;
  Scalar one() const;
  Scalar lambda() const { return lambda_pow(1); }
  Scalar beta() const { return lambda_pow(2); }
  Scalar lambda_pow(int k) const;
  Scalar from_rational(const mpq_class& q) const;
  Scalar from_int(long v) const { return from_rational(mpq_class(v)); }
  Scalar from_double(double v) const;
  Scalar parse(const std::string& text) const;

 private:
  friend class Scalar;
  Domain() = default;

  Scalar wrap(RatFun f) const;
  Scalar wrap_nf(Poly p) const;
  Scalar wrap_f(double d) const;
  Poly nf_reduce(const Poly& p) const;
  Poly nf_inv(const Poly& p) const;
  int nf_sign(const Poly& p) const;
  double nf_to_double(const Poly& p) const;

  Mode mode_ = Mode::Symbolic;
  std::string descriptor_;
  Poly min_poly_;   // number field only; monic, irreducible over Q
  double eps_ = 0;  // float only
  double lambda_d_ = 0;
  int cos_m_ = 0;
  // Certified bracket around the number-field root, refined on demand.
  mutable mpq_class root_lo_, root_hi_;
  mutable std::shared_ptr<std::mutex> root_mu_;
};

}  // namespace tl
