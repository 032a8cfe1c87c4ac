#include "pinchuk/unipoly.hpp"

#include "pinchuk/bipoly.hpp"
#include "pinchuk/errors.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pinchuk {

UniPoly UniPoly::monomial(unsigned k, const BigRat& c) {
    UniPoly u;
    u.set_coeff(k, c);
    return u;
}

UniPoly UniPoly::var() { return monomial(1); }

UniPoly UniPoly::from_coeffs(std::initializer_list<long> low_to_high) {
    UniPoly u;
    unsigned k = 0;
    for (long c : low_to_high) u.set_coeff(k++, BigRat(c));
    return u;
}

std::optional<int> UniPoly::degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return static_cast<int>(coeffs_.rbegin()->first);
}

BigRat UniPoly::coeff(unsigned k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? BigRat(0) : it->second;
}

void UniPoly::set_coeff(unsigned k, const BigRat& c) {
    if (c.is_zero())
        coeffs_.erase(k);
    else
        coeffs_[k] = c;
}

UniPoly UniPoly::operator-() const {
    UniPoly r;
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, -c);
    return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    for (const auto& [k, c] : o.coeffs_) {
        auto [it, inserted] = coeffs_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    for (const auto& [k, c] : o.coeffs_) {
        auto [it, inserted] = coeffs_.try_emplace(k, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    for (const auto& [ka, ca] : a.coeffs_)
        for (const auto& [kb, cb] : b.coeffs_) {
            auto [it, inserted] = r.coeffs_.try_emplace(ka + kb, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second.is_zero()) r.coeffs_.erase(it);
            }
        }
    return r;
}

UniPoly UniPoly::scaled(const BigRat& c) const {
    UniPoly r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : coeffs_) r.coeffs_.emplace(k, v * c);
    return r;
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly r(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
}

UniPoly UniPoly::derivative() const {
    UniPoly r;
    for (const auto& [k, c] : coeffs_)
        if (k > 0) r.coeffs_.emplace(k - 1, c * BigRat(static_cast<long>(k)));
    return r;
}

UniPoly UniPoly::antiderivative() const {
    UniPoly r;
    for (const auto& [k, c] : coeffs_)
        r.coeffs_.emplace(k + 1, c / BigRat(static_cast<long>(k) + 1));
    return r;
}

BigRat UniPoly::evaluate(const BigRat& at) const {
    BigRat acc;
    int prev = -1;
    // Horner over the sparse support, descending.
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (prev >= 0)
            for (int i = static_cast<int>(it->first); i < prev; ++i) acc *= at;
        acc += it->second;
        prev = static_cast<int>(it->first);
    }
    for (int i = 0; i < prev; ++i) acc *= at;
    return acc;
}

BiPoly UniPoly::substitute(const BiPoly& arg) const {
    BiPoly acc;
    int prev = -1;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (prev >= 0)
            for (int i = static_cast<int>(it->first); i < prev; ++i) acc = acc * arg;
        acc += BiPoly(it->second);
        prev = static_cast<int>(it->first);
    }
    for (int i = 0; i < prev; ++i) acc = acc * arg;
    return acc;
}

UniPoly exact_divide(const UniPoly& num, const UniPoly& den) {
    if (den.is_zero()) throw std::invalid_argument("exact_divide: zero divisor");
    UniPoly q;
    UniPoly r = num;
    const int dd = *den.degree();
    const BigRat dlc = den.coeff(static_cast<unsigned>(dd));
    while (!r.is_zero()) {
        const int rd = *r.degree();
        if (rd < dd)
            throw NotDivisible("univariate remainder of degree " + std::to_string(rd) +
                               " under divisor of degree " + std::to_string(dd));
        const BigRat c = r.coeff(static_cast<unsigned>(rd)) / dlc;
        const unsigned shift = static_cast<unsigned>(rd - dd);
        q.set_coeff(shift, c);
        r -= den * UniPoly::monomial(shift, c);
    }
    return q;
}

std::string UniPoly::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const UniPoly& u) {
    if (u.is_zero()) return os << "0";
    bool first = true;
    for (auto it = u.coeffs().rbegin(); it != u.coeffs().rend(); ++it) {
        const auto& [k, c] = *it;
        if (!first) os << (c.sign() > 0 ? " + " : " - ");
        else if (c.sign() < 0) os << "-";
        first = false;
        const BigRat a = c.abs();
        if (k == 0 || a != BigRat(1)) os << a.to_short_string();
        if (k > 0 && a != BigRat(1)) os << "*";
        if (k == 1) os << "h";
        else if (k > 1) os << "h^" << k;
    }
    return os;
}

} // namespace pinchuk
