#ifndef PINCHUK_UNIPOLY_HPP
#define PINCHUK_UNIPOLY_HPP

#include "pinchuk/rational.hpp"

#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>

namespace pinchuk {

class BiPoly;

/// Sparse univariate polynomial in the formal variable h over BigRat.
/// Canonical form: no stored coefficient is zero.
class UniPoly {
  public:
    UniPoly() = default;
    UniPoly(const BigRat& c) { set_coeff(0, c); }
    UniPoly(long c) : UniPoly(BigRat(c)) {}

    /// c * h^k
    static UniPoly monomial(unsigned k, const BigRat& c = BigRat(1));
    /// The variable h itself.
    static UniPoly var();
    /// From a low-to-high coefficient list, e.g. {-5, 0, 3} = 3h^2 - 5.
    static UniPoly from_coeffs(std::initializer_list<long> low_to_high);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree, or nullopt for the zero polynomial.
    std::optional<int> degree() const;
    BigRat coeff(unsigned k) const;
    void set_coeff(unsigned k, const BigRat& c);
    const std::map<unsigned, BigRat>& coeffs() const { return coeffs_; }

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    UniPoly scaled(const BigRat& c) const;
    UniPoly pow(unsigned e) const;

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Formal derivative in h.
    UniPoly derivative() const;
    /// The unique antiderivative with zero constant term.
    UniPoly antiderivative() const;

    BigRat evaluate(const BigRat& at) const;

    /// Horner-style composition h := arg, producing a bivariate polynomial.
    BiPoly substitute(const BiPoly& arg) const;

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const UniPoly& u);

  private:
    std::map<unsigned, BigRat> coeffs_; // degree -> nonzero coefficient
};

/// Exact quotient num/den; throws NotDivisible when the long-division
/// remainder is nonzero. den must be nonzero.
UniPoly exact_divide(const UniPoly& num, const UniPoly& den);

} // namespace pinchuk

#endif
