#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>

namespace schrosym {

using Rational = mpq_class;

/// Exact complex number with rational real and imaginary parts (an element of Q[i]).
class Complex {
 public:
  Complex() : re_(0), im_(0) {}
  Complex(long v) : re_(v), im_(0) {}
  Complex(const Rational& re) : re_(re), im_(0) {}
  Complex(const Rational& re, const Rational& im) : re_(re), im_(im) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Complex i() { return Complex(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Complex operator+(const Complex& o) const { return Complex(re_ + o.re_, im_ + o.im_); }
  Complex operator-(const Complex& o) const { return Complex(re_ - o.re_, im_ - o.im_); }
  Complex operator-() const { return Complex(-re_, -im_); }
  Complex operator*(const Complex& o) const {
    return Complex(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
  }
  Complex inverse() const;
  Complex operator/(const Complex& o) const { return *this * o.inverse(); }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }

  bool operator==(const Complex& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const Complex& o) const { return !(*this == o); }

  /// Integer power (negative exponents invert).
  Complex pow(long n) const;

  std::complex<double> to_double() const { return {re_.get_d(), im_.get_d()}; }

  /// Text in the expression grammar: "3/2", "-i", "(1/2+3*i)".
  std::string to_string() const;
  std::string key() const;

 private:
  Rational re_;
  Rational im_;
};

std::string rational_to_string(const Rational& q);
/// Parses "p", "p/q" or a decimal literal "1.25" exactly.
Rational rational_from_string(const std::string& s);

inline long floor_int(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace schrosym
