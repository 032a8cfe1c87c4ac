#ifndef PINCHUK_BIPOLY_HPP
#define PINCHUK_BIPOLY_HPP

#include "pinchuk/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace pinchuk {

/// Exponent pair of a bivariate monomial x^i y^j.
struct Monomial {
    std::uint32_t x = 0;
    std::uint32_t y = 0;

    unsigned total_degree() const { return x + y; }
    friend bool operator==(const Monomial&, const Monomial&) = default;

    bool divides(const Monomial& m) const { return x <= m.x && y <= m.y; }
    Monomial operator+(const Monomial& m) const { return {x + m.x, y + m.y}; }
    /// Componentwise difference; caller guarantees divisibility.
    Monomial operator-(const Monomial& m) const { return {x - m.x, y - m.y}; }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        return {a.x > b.x ? a.x : b.x, a.y > b.y ? a.y : b.y};
    }
};

/// Graded lexicographic order with x > y: compare total degree, then x-degree.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const unsigned da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.x < b.x;
    }
};

/// Sparse bivariate polynomial in (x, y) over BigRat. Canonical form: no
/// stored coefficient is zero; equality is equality of term maps. Terms are
/// kept ordered by grlex (x > y), so the leading term is the last entry.
class BiPoly {
  public:
    using TermMap = std::map<Monomial, BigRat, GrlexLess>;

    BiPoly() = default;
    BiPoly(const BigRat& c) { set_coeff({0, 0}, c); }
    BiPoly(long c) : BiPoly(BigRat(c)) {}

    static BiPoly monomial(unsigned i, unsigned j, const BigRat& c = BigRat(1));
    static BiPoly var_x() { return monomial(1, 0); }
    static BiPoly var_y() { return monomial(0, 1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Max of i + j over terms; nullopt for the zero polynomial.
    std::optional<int> total_degree() const;
    int degree_x() const; // -1 for zero
    int degree_y() const;

    BigRat coeff(const Monomial& m) const;
    void set_coeff(const Monomial& m, const BigRat& c);
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    /// Leading term under grlex; polynomial must be nonzero.
    const Monomial& leading_monomial() const;
    const BigRat& leading_coeff() const;

    BiPoly operator-() const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
    BiPoly scaled(const BigRat& c) const;
    /// Multiply by the single term c * x^i y^j.
    BiPoly term_multiplied(const Monomial& m, const BigRat& c) const;
    BiPoly pow(unsigned e) const;

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    enum class Var { x, y };
    /// Termwise formal partial derivative.
    BiPoly partial(Var v) const;

    BigRat evaluate_exact(const BigRat& x0, const BigRat& y0) const;
    /// Double-precision term summation. Unverified; a search heuristic only.
    /// Every certified comparison goes through evaluate_exact.
    double evaluate_double(double x0, double y0) const;

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const BiPoly& p);

  private:
    TermMap terms_;
};

/// Exact quotient num/den under grlex: repeatedly cancels the leading term of
/// the running remainder by a monomial multiple of den's leading term (exact
/// divisibility propagates to leading terms at every step). Throws
/// NotDivisible as soon as a leading term fails to divide, which signals
/// num not in (den). den must be nonzero.
BiPoly exact_divide(const BiPoly& num, const BiPoly& den);

} // namespace pinchuk

#endif
