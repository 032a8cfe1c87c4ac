#include "pinchuk/bipoly.hpp"

#include "pinchuk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pinchuk {

BiPoly BiPoly::monomial(unsigned i, unsigned j, const BigRat& c) {
    BiPoly p;
    p.set_coeff({i, j}, c);
    return p;
}

bool BiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
}

std::optional<int> BiPoly::total_degree() const {
    if (terms_.empty()) return std::nullopt;
    // grlex order makes the last term maximal in total degree
    return static_cast<int>(terms_.rbegin()->first.total_degree());
}

int BiPoly::degree_x() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.x));
    return d;
}

int BiPoly::degree_y() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.y));
    return d;
}

BigRat BiPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigRat(0) : it->second;
}

void BiPoly::set_coeff(const Monomial& m, const BigRat& c) {
    if (c.is_zero())
        terms_.erase(m);
    else
        terms_[m] = c;
}

const Monomial& BiPoly::leading_monomial() const {
    if (terms_.empty()) throw std::logic_error("leading_monomial of zero polynomial");
    return terms_.rbegin()->first;
}

const BigRat& BiPoly::leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("leading_coeff of zero polynomial");
    return terms_.rbegin()->second;
}

BiPoly BiPoly::operator-() const {
    BiPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    // accumulate into the smaller-times-larger orientation
    const BiPoly& s = a.term_count() <= b.term_count() ? a : b;
    const BiPoly& l = a.term_count() <= b.term_count() ? b : a;
    for (const auto& [ms, cs] : s.terms_) {
        for (const auto& [ml, cl] : l.terms_) {
            const Monomial m = ms + ml;
            auto [it, inserted] = r.terms_.try_emplace(m, cs * cl);
            if (!inserted) {
                it->second += cs * cl;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

BiPoly BiPoly::scaled(const BigRat& c) const {
    BiPoly r;
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

BiPoly BiPoly::term_multiplied(const Monomial& m, const BigRat& c) const {
    BiPoly r;
    if (c.is_zero()) return r;
    for (const auto& [mm, v] : terms_) r.terms_.emplace(mm + m, v * c);
    return r;
}

BiPoly BiPoly::pow(unsigned e) const {
    BiPoly r(1);
    BiPoly base = *this;
    while (e > 0) {
        if (e & 1u) r *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return r;
}

BiPoly BiPoly::partial(Var v) const {
    BiPoly r;
    for (const auto& [m, c] : terms_) {
        if (v == Var::x && m.x > 0)
            r.terms_.emplace(Monomial{m.x - 1, m.y}, c * BigRat(static_cast<long>(m.x)));
        else if (v == Var::y && m.y > 0)
            r.terms_.emplace(Monomial{m.x, m.y - 1}, c * BigRat(static_cast<long>(m.y)));
    }
    return r;
}

BigRat BiPoly::evaluate_exact(const BigRat& x0, const BigRat& y0) const {
    const int dx = degree_x(), dy = degree_y();
    std::vector<BigRat> xs(static_cast<std::size_t>(dx) + 2), ys(static_cast<std::size_t>(dy) + 2);
    xs[0] = BigRat(1);
    for (int i = 1; i <= dx; ++i) xs[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i - 1)] * x0;
    ys[0] = BigRat(1);
    for (int j = 1; j <= dy; ++j) ys[static_cast<std::size_t>(j)] = ys[static_cast<std::size_t>(j - 1)] * y0;
    BigRat acc;
    for (const auto& [m, c] : terms_) acc += c * xs[m.x] * ys[m.y];
    return acc;
}

double BiPoly::evaluate_double(double x0, double y0) const {
    const int dx = degree_x(), dy = degree_y();
    std::vector<double> xs(static_cast<std::size_t>(dx) + 2), ys(static_cast<std::size_t>(dy) + 2);
    xs[0] = 1.0;
    for (int i = 1; i <= dx; ++i) xs[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i - 1)] * x0;
    ys[0] = 1.0;
    for (int j = 1; j <= dy; ++j) ys[static_cast<std::size_t>(j)] = ys[static_cast<std::size_t>(j - 1)] * y0;
    double acc = 0.0;
    for (const auto& [m, c] : terms_) acc += c.to_double() * xs[m.x] * ys[m.y];
    return acc;
}

BiPoly exact_divide(const BiPoly& num, const BiPoly& den) {
    if (den.is_zero()) throw std::invalid_argument("exact_divide: zero divisor");
    BiPoly q;
    BiPoly r = num;
    const Monomial dm = den.leading_monomial();
    const BigRat& dc = den.leading_coeff();
    while (!r.is_zero()) {
        const Monomial rm = r.leading_monomial();
        if (!dm.divides(rm)) {
            std::ostringstream os;
            os << "leading term x^" << rm.x << " y^" << rm.y
               << " not divisible by divisor leading term x^" << dm.x << " y^" << dm.y;
            throw NotDivisible(os.str());
        }
        const Monomial qm = rm - dm;
        const BigRat qc = r.leading_coeff() / dc;
        q.set_coeff(qm, qc);
        r -= den.term_multiplied(qm, qc);
    }
    return q;
}

std::string BiPoly::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const BiPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) os << (c.sign() > 0 ? " + " : " - ");
        else if (c.sign() < 0) os << "-";
        first = false;
        const BigRat a = c.abs();
        const bool unit = (a == BigRat(1)) && m.total_degree() > 0;
        if (!unit) os << a.to_short_string();
        if (!unit && m.total_degree() > 0) os << "*";
        if (m.x == 1) os << "x";
        else if (m.x > 1) os << "x^" << m.x;
        if (m.x > 0 && m.y > 0) os << "*";
        if (m.y == 1) os << "y";
        else if (m.y > 1) os << "y^" << m.y;
    }
    return os;
}

} // namespace pinchuk
