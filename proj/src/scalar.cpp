#include "tl/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tl {

namespace {

RatFun rf_normalize(Poly num, Poly den) {
  if (poly_is_zero(den)) throw std::domain_error("division by zero");
  if (poly_is_zero(num)) return RatFun{{}, poly_const(1)};
  Poly g = poly_gcd(num, den);
  if (poly_deg(g) > 0) {
    num = poly_div_exact(num, g);
    den = poly_div_exact(den, g);
  }
  mpq_class lead = den.back();
  if (lead != 1) {
    for (auto& c : num) c /= lead;
    for (auto& c : den) c /= lead;
  }
  return RatFun{std::move(num), std::move(den)};
}

RatFun rf_add(const RatFun& a, const RatFun& b) {
  return rf_normalize(poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
                      poly_mul(a.den, b.den));
}

RatFun rf_mul(const RatFun& a, const RatFun& b) {
  return rf_normalize(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

RatFun rf_div(const RatFun& a, const RatFun& b) {
  return rf_normalize(poly_mul(a.num, b.den), poly_mul(a.den, b.num));
}

RatFun rf_neg(const RatFun& a) { return RatFun{poly_neg(a.num), a.den}; }

struct Interval {
  mpq_class lo, hi;
};

Interval iv_add(const Interval& a, const mpq_class& c) { return {a.lo + c, a.hi + c}; }

Interval iv_mul(const Interval& a, const Interval& b) {
  mpq_class p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  mpq_class lo = std::min(std::min(p1, p2), std::min(p3, p4));
  mpq_class hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {lo, hi};
}

Interval iv_eval(const Poly& p, const Interval& x) {
  Interval r{mpq_class(0), mpq_class(0)};
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = iv_add(iv_mul(r, x), *it);
  return r;
}

int sgn_q(const mpq_class& q) { return sgn(q); }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

// ---------------------------------------------------------------------------
// Domain construction

DomainPtr Domain::symbolic() {
  auto d = std::shared_ptr<Domain>(new Domain());
  d->mode_ = Mode::Symbolic;
  d->descriptor_ = "symbolic";
  return d;
}

DomainPtr Domain::cos_field(int m) {
  if (m < 4) throw std::domain_error("index=4cos2(pi/m) requires m >= 4");
  auto d = std::shared_ptr<Domain>(new Domain());
  d->mode_ = Mode::NumberField;
  d->min_poly_ = min_poly_two_cos_pi_over(m);
  d->cos_m_ = m;
  d->lambda_d_ = 2.0 * std::cos(M_PI / m);
  d->descriptor_ = "index=4cos2(pi/" + std::to_string(m) + ")";
  d->root_mu_ = std::make_shared<std::mutex>();
  // Initial bracket: the nearest other root of the minimal polynomial is a
  // different 2cos(k pi / m), at distance >> 1/m^2; delta below is far inside.
  double delta = 0.25 / (double(m) * m);
  d->root_lo_ = mpq_class(d->lambda_d_ - delta);
  d->root_hi_ = mpq_class(d->lambda_d_ + delta);
  if (sgn_q(poly_eval(d->min_poly_, d->root_lo_)) * sgn_q(poly_eval(d->min_poly_, d->root_hi_)) >= 0)
    throw std::logic_error("cos_field: failed to bracket the root");
  return d;
}

DomainPtr Domain::rational_index(const mpq_class& q) {
  if (q <= 1) throw std::domain_error("index=q requires q > 1");
  auto d = std::shared_ptr<Domain>(new Domain());
  d->mode_ = Mode::NumberField;
  d->descriptor_ = "index=" + q.get_str();
  d->root_mu_ = std::make_shared<std::mutex>();
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class rnum, rden;
  bool square = mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t());
  if (square) {
    mpz_sqrt(rnum.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rden.get_mpz_t(), den.get_mpz_t());
    mpq_class root(rnum, rden);
    root.canonicalize();
    d->min_poly_ = Poly{-root, mpq_class(1)};  // x - sqrt(q), lambda rational
    d->lambda_d_ = root.get_d();
    d->root_lo_ = root;
    d->root_hi_ = root;
  } else {
    d->min_poly_ = Poly{-q, mpq_class(0), mpq_class(1)};  // x^2 - q
    d->lambda_d_ = std::sqrt(q.get_d());
    d->root_lo_ = mpq_class(d->lambda_d_ * 0.5);
    d->root_hi_ = mpq_class(d->lambda_d_ * 2.0);
  }
  return d;
}

DomainPtr Domain::floating(double beta, double eps) {
  if (!(beta > 0)) throw std::domain_error("float domain requires index > 0");
  if (!(eps > 0)) throw std::domain_error("float domain requires eps > 0");
  auto d = std::shared_ptr<Domain>(new Domain());
  d->mode_ = Mode::Float;
  d->eps_ = eps;
  d->lambda_d_ = std::sqrt(beta);
  std::ostringstream os;
  os << "float:index=" << beta << ",eps=" << eps;
  d->descriptor_ = os.str();
  return d;
}

DomainPtr Domain::make(const std::string& descriptor) {
  std::string s;
  for (char c : descriptor)
    if (!is_space(c)) s += c;
  if (s == "symbolic") return symbolic();
  auto starts = [&](const char* p) { return s.rfind(p, 0) == 0; };
  if (starts("float:")) {
    std::string rest = s.substr(6);
    double beta = 0, eps = 1e-9;
    bool have_beta = false;
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t comma = rest.find(',', pos);
      std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      size_t eq = item.find('=');
      if (eq == std::string::npos) throw std::domain_error("bad float domain descriptor: " + descriptor);
      std::string key = item.substr(0, eq), val = item.substr(eq + 1);
      if (key == "index") {
        beta = std::strtod(val.c_str(), nullptr);
        have_beta = true;
      } else if (key == "eps") {
        eps = std::strtod(val.c_str(), nullptr);
      } else {
        throw std::domain_error("bad float domain key: " + key);
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!have_beta) throw std::domain_error("float domain needs index=...: " + descriptor);
    return floating(beta, eps);
  }
  if (starts("index=")) {
    std::string val = s.substr(6);
    if (val.rfind("4cos2(pi/", 0) == 0 || val.rfind("4cos^2(pi/", 0) == 0) {
      size_t open = val.find("pi/") + 3;
      size_t close = val.find(')', open);
      if (close == std::string::npos) throw std::domain_error("bad domain descriptor: " + descriptor);
      int m = std::stoi(val.substr(open, close - open));
      return cos_field(m);
    }
    mpq_class q;
    if (q.set_str(val, 10) != 0) throw std::domain_error("bad rational index: " + val);
    q.canonicalize();
    return rational_index(q);
  }
  throw std::domain_error("unrecognized domain descriptor: " + descriptor);
}

bool Domain::compatible(const Domain& o) const {
  if (this == &o) return true;
  if (mode_ != o.mode_) return false;
  switch (mode_) {
    case Mode::Symbolic:
      return true;
    case Mode::NumberField:
      return min_poly_ == o.min_poly_;
    case Mode::Float:
      return lambda_d_ == o.lambda_d_ && eps_ == o.eps_;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Wrapping and canonical reduction

Scalar Domain::wrap(RatFun f) const {
  Scalar s;
  s.dom_ = shared_from_this();
  s.v_ = std::move(f);
  return s;
}

Scalar Domain::wrap_nf(Poly p) const {
  Scalar s;
  s.dom_ = shared_from_this();
  s.v_ = nf_reduce(p);
  return s;
}

Scalar Domain::wrap_f(double d) const {
  Scalar s;
  s.dom_ = shared_from_this();
  s.v_ = d;
  return s;
}

Poly Domain::nf_reduce(const Poly& p) const {
  if (poly_deg(p) < poly_deg(min_poly_)) return p;
  Poly q, r;
  poly_divmod(p, min_poly_, q, r);
  return r;
}

Poly Domain::nf_inv(const Poly& p) const {
  if (poly_is_zero(p)) throw std::domain_error("division by zero");
  Poly g, s, t;
  poly_ext_gcd(p, min_poly_, g, s, t);
  if (poly_deg(g) != 0) throw std::logic_error("number field inverse: reducible modulus");
  return nf_reduce(poly_scale(s, mpq_class(1) / g[0]));
}

int Domain::nf_sign(const Poly& p) const {
  if (poly_is_zero(p)) return 0;
  if (poly_deg(min_poly_) == 1) return sgn_q(p[0]);
  std::lock_guard<std::mutex> lock(*root_mu_);
  for (int iter = 0; iter < 20000; ++iter) {
    Interval v = iv_eval(p, Interval{root_lo_, root_hi_});
    if (sgn_q(v.lo) > 0) return 1;
    if (sgn_q(v.hi) < 0) return -1;
    mpq_class mid = (root_lo_ + root_hi_) / 2;
    int sm = sgn_q(poly_eval(min_poly_, mid));
    if (sm == 0) throw std::logic_error("number field sign: rational root of irreducible modulus");
    if (sm * sgn_q(poly_eval(min_poly_, root_lo_)) < 0)
      root_hi_ = mid;
    else
      root_lo_ = mid;
  }
  throw std::logic_error("number field sign: bisection failed to separate from zero");
}

double Domain::nf_to_double(const Poly& p) const { return poly_eval_d(p, lambda_d_); }

// ---------------------------------------------------------------------------
// Element factories

Scalar Domain::zero() const {
  switch (mode_) {
    case Mode::Symbolic:
      return wrap(RatFun{{}, poly_const(1)});
    case Mode::NumberField:
      return wrap_nf({});
    case Mode::Float:
      return wrap_f(0.0);
  }
  throw std::logic_error("unreachable");
}

Scalar Domain::one() const { return from_rational(1); }

Scalar Domain::from_rational(const mpq_class& q) const {
  mpq_class c = q;
  c.canonicalize();  // callers may pass mpq_class(a, b) in raw form
  switch (mode_) {
    case Mode::Symbolic:
      return wrap(RatFun{poly_const(c), poly_const(1)});
    case Mode::NumberField:
      return wrap_nf(poly_const(c));
    case Mode::Float:
      return wrap_f(c.get_d());
  }
  throw std::logic_error("unreachable");
}

Scalar Domain::from_double(double v) const {
  if (mode_ != Mode::Float) throw std::domain_error("from_double requires the float domain");
  return wrap_f(v);
}

Scalar Domain::lambda_pow(int k) const {
  switch (mode_) {
    case Mode::Symbolic:
      if (k >= 0) return wrap(RatFun{poly_x_pow(k), poly_const(1)});
      return wrap(RatFun{poly_const(1), poly_x_pow(-k)});
    case Mode::NumberField: {
      Poly base = nf_reduce(poly_x());
      Poly acc = poly_const(1);
      for (int i = 0; i < std::abs(k); ++i) acc = nf_reduce(poly_mul(acc, base));
      if (k < 0) acc = nf_inv(acc);
      return wrap_nf(std::move(acc));
    }
    case Mode::Float:
      return wrap_f(std::pow(lambda_d_, k));
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Scalar arithmetic

namespace {
void check_compat(const Scalar& a, const Scalar& b) {
  if (!a.valid() || !b.valid()) throw std::invalid_argument("uninitialized scalar");
  if (!a.domain()->compatible(*b.domain()))
    throw std::invalid_argument("scalar domain mismatch: " + a.domain()->descriptor() + " vs " +
                                b.domain()->descriptor());
}
}  // namespace

Scalar Scalar::operator-() const {
  if (!valid()) throw std::invalid_argument("uninitialized scalar");
  Scalar r = *this;
  switch (dom_->mode()) {
    case Domain::Mode::Symbolic:
      r.v_ = rf_neg(std::get<RatFun>(v_));
      break;
    case Domain::Mode::NumberField:
      r.v_ = poly_neg(std::get<Poly>(v_));
      break;
    case Domain::Mode::Float:
      r.v_ = -std::get<double>(v_);
      break;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_compat(*this, o);
  switch (dom_->mode()) {
    case Domain::Mode::Symbolic:
      v_ = rf_add(std::get<RatFun>(v_), std::get<RatFun>(o.v_));
      break;
    case Domain::Mode::NumberField:
      v_ = poly_add(std::get<Poly>(v_), std::get<Poly>(o.v_));
      break;
    case Domain::Mode::Float:
      v_ = std::get<double>(v_) + std::get<double>(o.v_);
      break;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_compat(*this, o);
  switch (dom_->mode()) {
    case Domain::Mode::Symbolic:
      v_ = rf_mul(std::get<RatFun>(v_), std::get<RatFun>(o.v_));
      break;
    case Domain::Mode::NumberField:
      v_ = dom_->nf_reduce(poly_mul(std::get<Poly>(v_), std::get<Poly>(o.v_)));
      break;
    case Domain::Mode::Float:
      v_ = std::get<double>(v_) * std::get<double>(o.v_);
      break;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

Scalar Scalar::inv() const {
  if (!valid()) throw std::invalid_argument("uninitialized scalar");
  Scalar r = *this;
  switch (dom_->mode()) {
    case Domain::Mode::Symbolic: {
      const RatFun& f = std::get<RatFun>(v_);
      r.v_ = rf_normalize(f.den, f.num);
      break;
    }
    case Domain::Mode::NumberField:
      r.v_ = dom_->nf_inv(std::get<Poly>(v_));
      break;
    case Domain::Mode::Float: {
      double d = std::get<double>(v_);
      if (d == 0) throw std::domain_error("division by zero");
      r.v_ = 1.0 / d;
      break;
    }
  }
  return r;
}

bool Scalar::is_zero(double scale) const {
  if (!valid()) throw std::invalid_argument("uninitialized scalar");
  switch (dom_->mode()) {
    case Domain::Mode::Symbolic:
      return poly_is_zero(std::get<RatFun>(v_).num);
    case Domain::Mode::NumberField:
      return poly_is_zero(std::get<Poly>(v_));
    case Domain::Mode::Float:
      return std::abs(std::get<double>(v_)) <= dom_->eps() * std::max(1.0, scale);
  }
  return false;
}

bool Scalar::is_one() const { return *this == dom_->one(); }

int Scalar::sign() const {
  if (!valid()) throw std::invalid_argument("uninitialized scalar");
  switch (dom_->mode()) {
    case Domain::Mode::Symbolic: {
      const RatFun& f = std::get<RatFun>(v_);
      if (poly_is_zero(f.num)) return 0;
      return sgn_q(f.num.back());  // sign for large loop parameter
    }
    case Domain::Mode::NumberField:
      return dom_->nf_sign(std::get<Poly>(v_));
    case Domain::Mode::Float: {
      double d = std::get<double>(v_);
      if (std::abs(d) <= dom_->eps()) return 0;
      return d > 0 ? 1 : -1;
    }
  }
  return 0;
}

bool Scalar::operator==(const Scalar& o) const {
  check_compat(*this, o);
  switch (dom_->mode()) {
    case Domain::Mode::Symbolic: {
      const RatFun& a = std::get<RatFun>(v_);
      const RatFun& b = std::get<RatFun>(o.v_);
      return a.num == b.num && a.den == b.den;
    }
    case Domain::Mode::NumberField:
      return std::get<Poly>(v_) == std::get<Poly>(o.v_);
    case Domain::Mode::Float: {
      double a = std::get<double>(v_), b = std::get<double>(o.v_);
      return std::abs(a - b) <= dom_->eps() * std::max({1.0, std::abs(a), std::abs(b)});
    }
  }
  return false;
}

mpq_class Scalar::eval_at(const mpq_class& q) const {
  if (!valid() || dom_->mode() != Domain::Mode::Symbolic)
    throw std::domain_error("eval_at requires a symbolic scalar");
  const RatFun& f = std::get<RatFun>(v_);
  mpq_class den = poly_eval(f.den, q);
  if (den == 0) throw std::domain_error("denominator vanishes at the evaluation point");
  return poly_eval(f.num, q) / den;
}

double Scalar::to_double() const {
  if (!valid()) throw std::invalid_argument("uninitialized scalar");
  switch (dom_->mode()) {
    case Domain::Mode::Symbolic:
      throw std::domain_error("symbolic scalar has no numeric value");
    case Domain::Mode::NumberField:
      return dom_->nf_to_double(std::get<Poly>(v_));
    case Domain::Mode::Float:
      return std::get<double>(v_);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

const char* kLambdaUtf8 = "\xce\xbb";

// Render sum of c_i * lambda^(i + shift); used for polynomials and for
// rational functions whose denominator is a pure power of lambda.
std::string laurent_str(const Poly& p, int shift) {
  if (poly_is_zero(p)) return "0";
  std::string out;
  for (int i = poly_deg(p); i >= 0; --i) {
    if (p[i] == 0) continue;
    mpq_class a = p[i];
    if (out.empty()) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    int e = i + shift;
    if (e == 0) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += kLambdaUtf8;
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

bool is_monomial(const Poly& p) {
  if (poly_is_zero(p)) return false;
  for (int i = 0; i < poly_deg(p); ++i)
    if (p[i] != 0) return false;
  return true;
}

}  // namespace

std::string Scalar::str() const {
  if (!valid()) return "<invalid>";
  switch (dom_->mode()) {
    case Domain::Mode::Symbolic: {
      const RatFun& f = std::get<RatFun>(v_);
      if (poly_deg(f.den) == 0) return laurent_str(f.num, 0);
      if (is_monomial(f.den)) return laurent_str(f.num, -poly_deg(f.den));
      return "(" + laurent_str(f.num, 0) + ")/(" + laurent_str(f.den, 0) + ")";
    }
    case Domain::Mode::NumberField:
      return laurent_str(std::get<Poly>(v_), 0);
    case Domain::Mode::Float: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v_));
      return buf;
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Parsing: sums of terms  [+-] [rational] [* ] [lambda [^ int]]
// "l", "L", "lambda" and the UTF-8 lambda all denote the loop parameter.

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && is_space(s[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_lambda() {
    skip_ws();
    if (s.compare(pos, 2, "\xce\xbb") == 0) {
      pos += 2;
      return true;
    }
    if (s.compare(pos, 6, "lambda") == 0) {
      pos += 6;
      return true;
    }
    if (pos < s.size() && (s[pos] == 'l' || s[pos] == 'L')) {
      ++pos;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  long parse_int() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::domain_error("expected integer in scalar: " + s);
    return std::stol(s.substr(start, pos - start));
  }
  mpq_class parse_rational() {
    long num = parse_int();
    skip_ws();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      long den = parse_int();
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    return mpq_class(num);
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
};

}  // namespace

Scalar Domain::parse(const std::string& text) const {
  {
    // Quotient form "(A)/(B)" as produced by str() for general ratios.
    size_t i = 0, n = text.size();
    while (i < n && is_space(text[i])) ++i;
    size_t j = n;
    while (j > i && is_space(text[j - 1])) --j;
    if (j > i && text[i] == '(' && text[j - 1] == ')') {
      int depth = 0;
      for (size_t k = i; k < j; ++k) {
        if (text[k] == '(') ++depth;
        if (text[k] == ')') {
          --depth;
          if (depth == 0 && k + 2 < j && text[k + 1] == '/' && text[k + 2] == '(') {
            Scalar den = parse(text.substr(k + 3, j - 1 - (k + 3)));
            return parse(text.substr(i + 1, k - (i + 1))) / den;
          }
        }
      }
    }
  }
  if (mode_ == Mode::Float) {
    // Accept plain numeric literals in float mode.
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    while (end && *end && is_space(*end)) ++end;
    if (end && *end == '\0') return wrap_f(v);
  }
  Parser p{text};
  Scalar total = zero();
  bool first = true;
  while (!p.done()) {
    int sign = 1;
    p.skip_ws();
    if (p.eat('+')) {
    } else if (p.eat('-')) {
      sign = -1;
    } else if (!first) {
      throw std::domain_error("expected + or - in scalar: " + text);
    }
    first = false;
    mpq_class coeff = 1;
    bool have_coeff = false;
    if (p.peek_digit()) {
      coeff = p.parse_rational();
      have_coeff = true;
    }
    p.eat('*');
    int exponent = 0;
    if (p.eat_lambda()) {
      exponent = 1;
      if (p.eat('^')) exponent = static_cast<int>(p.parse_int());
    } else if (!have_coeff) {
      throw std::domain_error("expected coefficient or lambda in scalar: " + text);
    }
    Scalar term = from_rational(sign < 0 ? mpq_class(-coeff) : coeff);
    if (exponent != 0) term *= lambda_pow(exponent);
    total += term;
  }
  return total;
}

}  // namespace tl
