#include "ecw/gaussian.hpp"

#include <numeric>
#include <ostream>

namespace ecw {

namespace {

using i128 = __int128;

long long checked_narrow(i128 v) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<long long>(v);
}

long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(long long n, long long d) : num_(n), den_(d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  reduce();
}

void Rational::reduce() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  long long g = gcd_ll(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
  i128 d = i128(den_) * o.den_;
  i128 g = 1;
  {
    i128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    g = a == 0 ? 1 : a;
  }
  num_ = checked_narrow(n / g);
  den_ = checked_narrow(d / g);
  reduce();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  long long g1 = gcd_ll(num_, o.den_);
  long long g2 = gcd_ll(o.num_, den_);
  i128 n = i128(num_ / g1) * (o.num_ / g2);
  i128 d = i128(den_ / g2) * (o.den_ / g1);
  num_ = checked_narrow(n);
  den_ = checked_narrow(d);
  reduce();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
  Rational inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  inv.reduce();
  return *this *= inv;
}

bool operator<(const Rational& a, const Rational& b) {
  return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
}

Rational Rational::factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative");
  i128 v = 1;
  for (int k = 2; k <= n; ++k) {
    v *= k;
    if (v > i128(INT64_MAX)) throw std::overflow_error("factorial overflow");
  }
  return Rational(static_cast<long long>(v));
}

std::string Rational::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

GaussianRational GaussianRational::inverse() const {
  Rational n = re_ * re_ + im_ * im_;
  if (n.is_zero()) throw std::invalid_argument("inverse of zero");
  return GaussianRational(re_ / n, -im_ / n);
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = r;
  im_ = i;
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  return *this *= o.inverse();
}

bool operator<(const GaussianRational& a, const GaussianRational& b) {
  if (a.re_ != b.re_) return a.re_ < b.re_;
  return a.im_ < b.im_;
}

std::string GaussianRational::str() const {
  if (is_zero()) return "0";
  if (im_.is_zero()) return re_.str();
  std::string im_part = im_.is_one() ? "i" : (im_ == Rational(-1) ? "-i" : im_.str() + "i");
  if (re_.is_zero()) return im_part;
  std::string s = re_.str();
  if (!(im_ < Rational(0)) && im_part[0] != '-') s += "+";
  return "(" + s + im_part + ")";
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

}  // namespace ecw
