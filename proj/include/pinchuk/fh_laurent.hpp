#ifndef PINCHUK_FH_LAURENT_HPP
#define PINCHUK_FH_LAURENT_HPP

#include "pinchuk/unipoly.hpp"

#include <iosfwd>
#include <map>
#include <optional>

namespace pinchuk {

/// Finite Laurent polynomial in a formal variable f whose coefficients are
/// univariate polynomials in h: sum_m f^m * C_m(h), m in Z. Canonical form:
/// no stored coefficient is the zero polynomial. The q ansatz lives here with
/// support in {-2,...,1}; its formal Jacobian has support in {-2,...,2}.
class FHLaurent {
  public:
    FHLaurent() = default;

    static FHLaurent term(int exp, const UniPoly& c);

    bool is_zero() const { return coeffs_.empty(); }
    std::optional<int> min_exp() const;
    std::optional<int> max_exp() const;
    UniPoly coeff(int exp) const;
    void set_coeff(int exp, const UniPoly& c);
    const std::map<int, UniPoly>& coeffs() const { return coeffs_; }

    FHLaurent operator-() const;
    FHLaurent& operator+=(const FHLaurent& o);
    FHLaurent& operator-=(const FHLaurent& o);
    friend FHLaurent operator+(FHLaurent a, const FHLaurent& b) { return a += b; }
    friend FHLaurent operator-(FHLaurent a, const FHLaurent& b) { return a -= b; }
    friend FHLaurent operator*(const FHLaurent& a, const FHLaurent& b);
    FHLaurent scaled(const UniPoly& c) const;
    FHLaurent scaled(const BigRat& c) const;

    friend bool operator==(const FHLaurent& a, const FHLaurent& b) {
        return a.coeffs_ == b.coeffs_;
    }

    friend std::ostream& operator<<(std::ostream& os, const FHLaurent& l);

  private:
    std::map<int, UniPoly> coeffs_; // f-exponent -> nonzero UniPoly in h
};

} // namespace pinchuk

#endif
