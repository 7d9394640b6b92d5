#ifndef MGALE_EXTENDED_HPP
#define MGALE_EXTENDED_HPP

#include "mgale/scalar.hpp"

#include <compare>
#include <stdexcept>
#include <string>

namespace mgale {

/// Extended nonnegative number: a finite value >= 0, or +infinity.
/// Multiplication uses the measure-theoretic convention 0 * inf = 0.
template <Scalar S>
class ExtendedNonneg {
 public:
  ExtendedNonneg() : value_(0) {}
  explicit ExtendedNonneg(S value) : value_(std::move(value)) {
    if (value_ < S(0)) throw std::domain_error("extended nonnegative value must be >= 0");
  }

  static ExtendedNonneg infinity() {
    ExtendedNonneg x;
    x.infinite_ = true;
    return x;
  }

  /// Truncating coercion of a possibly negative scalar (max(x, 0)).
  static ExtendedNonneg of_real(const S& x) { return ExtendedNonneg(positive_part(x)); }

  bool is_infinite() const { return infinite_; }
  const S& finite_value() const {
    if (infinite_) throw std::domain_error("extended value is infinite");
    return value_;
  }
  double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : mgale::to_double(value_);
  }
  std::string format() const { return infinite_ ? std::string("inf") : format_scalar(value_); }

  friend ExtendedNonneg operator+(const ExtendedNonneg& x, const ExtendedNonneg& y) {
    if (x.infinite_ || y.infinite_) return infinity();
    return ExtendedNonneg(S(x.value_ + y.value_));
  }
  friend ExtendedNonneg operator*(const ExtendedNonneg& x, const ExtendedNonneg& y) {
    const bool x_zero = !x.infinite_ && x.value_ == S(0);
    const bool y_zero = !y.infinite_ && y.value_ == S(0);
    if (x_zero || y_zero) return ExtendedNonneg();
    if (x.infinite_ || y.infinite_) return infinity();
    return ExtendedNonneg(S(x.value_ * y.value_));
  }
  ExtendedNonneg& operator+=(const ExtendedNonneg& y) { return *this = *this + y; }

  friend bool operator==(const ExtendedNonneg& x, const ExtendedNonneg& y) {
    if (x.infinite_ || y.infinite_) return x.infinite_ == y.infinite_;
    return x.value_ == y.value_;
  }
  friend bool operator<(const ExtendedNonneg& x, const ExtendedNonneg& y) {
    if (x.infinite_) return false;
    if (y.infinite_) return true;
    return x.value_ < y.value_;
  }
  friend bool operator<=(const ExtendedNonneg& x, const ExtendedNonneg& y) { return !(y < x); }
  friend bool operator>(const ExtendedNonneg& x, const ExtendedNonneg& y) { return y < x; }
  friend bool operator>=(const ExtendedNonneg& x, const ExtendedNonneg& y) { return !(x < y); }

 private:
  S value_;
  bool infinite_ = false;
};

}  // namespace mgale

#endif  // MGALE_EXTENDED_HPP
