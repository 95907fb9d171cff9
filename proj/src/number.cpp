#include "schrosym/number.hpp"

#include <stdexcept>

namespace schrosym {

Complex Complex::inverse() const {
  Rational n = re_ * re_ + im_ * im_;
  if (sgn(n) == 0) throw std::domain_error("division by exact zero");
  return Complex(re_ / n, -im_ / n);
}

Complex Complex::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Complex result(1);
  Complex base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_string(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational q(s);
    q.canonicalize();
    return q;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::string denom = "1" + std::string(s.size() - dot - 1, '0');
  Rational q(mpz_class(digits.empty() ? "0" : digits), mpz_class(denom));
  q.canonicalize();
  return q;
}

std::string Complex::to_string() const {
  if (is_real()) return rational_to_string(re_);
  std::string imag;
  if (im_ == 1)
    imag = "i";
  else if (im_ == -1)
    imag = "-i";
  else
    imag = rational_to_string(im_) + "*i";
  if (sgn(re_) == 0) return imag;
  std::string s = "(" + rational_to_string(re_);
  if (sgn(im_) > 0) s += "+";
  return s + imag + ")";
}

std::string Complex::key() const {
  return rational_to_string(re_) + "," + rational_to_string(im_);
}

}  // namespace schrosym
