#ifndef PINCHUK_RATIONAL_HPP
#define PINCHUK_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace pinchuk {

/// Arbitrary-precision rational, the coefficient domain of every polynomial
/// in this project. Always stored in lowest terms with positive denominator;
/// zero is 0/1. Backed by GMP.
class BigRat {
  public:
    BigRat() : v_(0) {}
    BigRat(long n) : v_(n) {}
    BigRat(long n, long d);
    explicit BigRat(const mpq_class& q) : v_(q) { canonicalize(); }

    /// Parse "num" or "num/den" (den > 0 after canonicalization).
    /// Throws std::invalid_argument on malformed input or zero denominator.
    static BigRat from_string(const std::string& s);

    /// Parse a decimal or scientific literal ("0.01", "1e-9", "-2.5e3")
    /// into the exactly represented rational.
    static BigRat from_decimal_string(const std::string& s);

    /// The exact rational value of a finite double.
    static BigRat from_double(double d);

    /// Round to the nearest rational with the given power-of-ten denominator
    /// (default 10^12), then reduce to lowest terms.
    static BigRat from_double_rounded(double d, unsigned pow10_den = 12);

    std::string to_string() const;       // always "num/den", e.g. "-1/1"
    std::string to_short_string() const; // omits "/1"
    double to_double() const { return v_.get_d(); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    BigRat abs() const { return BigRat(::abs(v_)); }

    BigRat operator-() const { return BigRat(mpq_class(-v_)); }
    BigRat& operator+=(const BigRat& o) { v_ += o.v_; return *this; }
    BigRat& operator-=(const BigRat& o) { v_ -= o.v_; return *this; }
    BigRat& operator*=(const BigRat& o) { v_ *= o.v_; return *this; }
    BigRat& operator/=(const BigRat& o);

    friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
    friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
    friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
    friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }

    friend bool operator==(const BigRat& a, const BigRat& b) { return cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigRat& a, const BigRat& b) { return cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const BigRat& a, const BigRat& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigRat& a, const BigRat& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const BigRat& a, const BigRat& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const BigRat& a, const BigRat& b) { return cmp(a.v_, b.v_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const BigRat& r);

  private:
    void canonicalize() { v_.canonicalize(); }
    mpq_class v_;
};

} // namespace pinchuk

#endif
