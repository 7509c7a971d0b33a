#pragma once

#include <cmath>
#include <limits>
#include <ostream>

namespace casimir {

/// Real number stored as sign * exp(logmag).
///
/// Used for quantities such as n!, D_n(ix) or Bateman functions of large
/// order whose magnitudes leave the range of a double long before the
/// combinations that enter the round-trip kernel do.  A sign of zero is an
/// exact zero and the log-magnitude is then meaningless.
template <typename Scalar = double>
class SignedLog {
 public:
  SignedLog() = default;

  static SignedLog from_log(int sign, Scalar logmag) {
    SignedLog r;
    r.sign_ = sign > 0 ? 1 : (sign < 0 ? -1 : 0);
    r.logmag_ = r.sign_ == 0 ? Scalar(0) : logmag;
    return r;
  }

  static SignedLog from_value(Scalar v) {
    if (v == Scalar(0)) return SignedLog();
    using std::abs;
    using std::log;
    return from_log(v > 0 ? 1 : -1, log(abs(v)));
  }

  static SignedLog zero() { return SignedLog(); }
  static SignedLog one() { return from_log(1, Scalar(0)); }

  int sign() const { return sign_; }
  Scalar logmag() const { return logmag_; }
  bool is_zero() const { return sign_ == 0; }

  /// Plain value; over/underflows to +-inf or 0 outside the double range.
  Scalar value() const {
    using std::exp;
    return sign_ == 0 ? Scalar(0) : Scalar(sign_) * exp(logmag_);
  }

  /// value() * exp(-shift), evaluated without forming value().
  Scalar scaled_value(Scalar shift) const {
    using std::exp;
    return sign_ == 0 ? Scalar(0) : Scalar(sign_) * exp(logmag_ - shift);
  }

  SignedLog abs() const { return from_log(sign_ == 0 ? 0 : 1, logmag_); }

  SignedLog operator-() const { return from_log(-sign_, logmag_); }

  SignedLog& operator*=(const SignedLog& o) {
    sign_ *= o.sign_;
    logmag_ = sign_ == 0 ? Scalar(0) : logmag_ + o.logmag_;
    return *this;
  }

  SignedLog& operator/=(const SignedLog& o) {
    if (o.sign_ == 0) {
      // x/0: infinite magnitude, sign of x
      logmag_ = std::numeric_limits<Scalar>::infinity();
      return *this;
    }
    sign_ *= o.sign_;
    logmag_ = sign_ == 0 ? Scalar(0) : logmag_ - o.logmag_;
    return *this;
  }

  friend SignedLog operator*(SignedLog a, const SignedLog& b) { return a *= b; }
  friend SignedLog operator/(SignedLog a, const SignedLog& b) { return a /= b; }

  friend SignedLog operator+(const SignedLog& a, const SignedLog& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    const SignedLog& big = a.logmag_ >= b.logmag_ ? a : b;
    const SignedLog& small = a.logmag_ >= b.logmag_ ? b : a;
    using std::exp;
    using std::log1p;
    const Scalar ratio = exp(small.logmag_ - big.logmag_);
    if (big.sign_ == small.sign_) return from_log(big.sign_, big.logmag_ + log1p(ratio));
    if (ratio == Scalar(1)) return SignedLog();
    return from_log(big.sign_, big.logmag_ + log1p(-ratio));
  }

  friend SignedLog operator-(const SignedLog& a, const SignedLog& b) { return a + (-b); }

  /// Multiplication by a plain real.
  friend SignedLog operator*(SignedLog a, Scalar s) { return a *= from_value(s); }
  friend SignedLog operator*(Scalar s, SignedLog a) { return a *= from_value(s); }

  friend std::ostream& operator<<(std::ostream& os, const SignedLog& v) {
    return os << (v.sign_ < 0 ? "-" : (v.sign_ > 0 ? "+" : "0")) << "exp(" << v.logmag_ << ")";
  }

 private:
  int sign_ = 0;
  Scalar logmag_ = Scalar(0);
};

using SignedLogd = SignedLog<double>;

/// log(n!) as a SignedLog-friendly log-magnitude.
inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace casimir
