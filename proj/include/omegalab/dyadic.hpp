#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace omegalab {

/**
 * Exact dyadic rational m / 2^e.
 *
 * Invariant: e >= 0, and whenever e > 0 the numerator is odd (lowest terms).
 * Integers therefore normalize to e == 0. All arithmetic is exact; there is
 * deliberately no constructor from floating point, since these values carry
 * Kraft sums and halting-probability bounds where rounding is forbidden.
 */
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}

  // m / 2^e, normalized.
  Dyadic(mpz_class m, uint64_t e) : num_(std::move(m)), exp_(e) { normalize(); }

  static Dyadic from_int(long v) { return Dyadic(mpz_class(v), 0); }

  // 2^-e, the Kraft weight of a length-e codeword.
  static Dyadic pow2_neg(uint64_t e) { return Dyadic(mpz_class(1), e); }

  const mpz_class& numerator() const { return num_; }
  uint64_t exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  Dyadic operator+(const Dyadic& o) const {
    uint64_t e = std::max(exp_, o.exp_);
    mpz_class a = num_ << (e - exp_);
    mpz_class b = o.num_ << (e - o.exp_);
    return Dyadic(a + b, e);
  }
  Dyadic operator-(const Dyadic& o) const {
    uint64_t e = std::max(exp_, o.exp_);
    mpz_class a = num_ << (e - exp_);
    mpz_class b = o.num_ << (e - o.exp_);
    return Dyadic(a - b, e);
  }
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }

  bool operator==(const Dyadic& o) const {
    return exp_ == o.exp_ && num_ == o.num_;
  }
  std::strong_ordering operator<=>(const Dyadic& o) const {
    // a/2^ea < b/2^eb  iff  a * 2^eb < b * 2^ea.
    mpz_class lhs = num_ << o.exp_;
    mpz_class rhs = o.num_ << exp_;
    int c = cmp(lhs, rhs);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Canonical rendering "m/2^e".
  std::string to_string() const {
    return num_.get_str() + "/2^" + std::to_string(exp_);
  }

  // Display-only approximation; never feeds back into arithmetic.
  double to_double() const {
    if (exp_ > 60000) return num_ < 0 ? -0.0 : 0.0;
    return std::ldexp(num_.get_d(), -static_cast<int>(exp_));
  }

 private:
  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && mpz_even_p(num_.get_mpz_t())) {
      num_ >>= 1;
      --exp_;
    }
  }

  mpz_class num_;
  uint64_t exp_;
};

}  // namespace omegalab
