#include "pinchuk/fh_laurent.hpp"

#include <ostream>

namespace pinchuk {

FHLaurent FHLaurent::term(int exp, const UniPoly& c) {
    FHLaurent l;
    l.set_coeff(exp, c);
    return l;
}

std::optional<int> FHLaurent::min_exp() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
}

std::optional<int> FHLaurent::max_exp() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.rbegin()->first;
}

UniPoly FHLaurent::coeff(int exp) const {
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? UniPoly() : it->second;
}

void FHLaurent::set_coeff(int exp, const UniPoly& c) {
    if (c.is_zero())
        coeffs_.erase(exp);
    else
        coeffs_[exp] = c;
}

FHLaurent FHLaurent::operator-() const {
    FHLaurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
    return r;
}

FHLaurent& FHLaurent::operator+=(const FHLaurent& o) {
    for (const auto& [e, c] : o.coeffs_) {
        auto [it, inserted] = coeffs_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }
    return *this;
}

FHLaurent& FHLaurent::operator-=(const FHLaurent& o) {
    for (const auto& [e, c] : o.coeffs_) {
        auto [it, inserted] = coeffs_.try_emplace(e, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }
    return *this;
}

FHLaurent operator*(const FHLaurent& a, const FHLaurent& b) {
    FHLaurent r;
    for (const auto& [ea, ca] : a.coeffs_)
        for (const auto& [eb, cb] : b.coeffs_) {
            auto [it, inserted] = r.coeffs_.try_emplace(ea + eb, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second.is_zero()) r.coeffs_.erase(it);
            }
        }
    return r;
}

FHLaurent FHLaurent::scaled(const UniPoly& c) const {
    FHLaurent r;
    if (c.is_zero()) return r;
    for (const auto& [e, v] : coeffs_) {
        UniPoly prod = v * c;
        if (!prod.is_zero()) r.coeffs_.emplace(e, std::move(prod));
    }
    return r;
}

FHLaurent FHLaurent::scaled(const BigRat& c) const {
    FHLaurent r;
    if (c.is_zero()) return r;
    for (const auto& [e, v] : coeffs_) r.coeffs_.emplace(e, v.scaled(c));
    return r;
}

std::ostream& operator<<(std::ostream& os, const FHLaurent& l) {
    if (l.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [e, c] : l.coeffs()) {
        if (!first) os << " + ";
        first = false;
        os << "f^" << e << "*(" << c << ")";
    }
    return os;
}

} // namespace pinchuk
