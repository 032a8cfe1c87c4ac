#include "pinchuk/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pinchuk {

BigRat::BigRat(long n, long d) {
    if (d == 0) throw std::invalid_argument("BigRat: zero denominator");
    v_ = mpq_class(n, d);
    canonicalize();
}

BigRat& BigRat::operator/=(const BigRat& o) {
    if (o.is_zero()) throw std::invalid_argument("BigRat: division by zero");
    v_ /= o.v_;
    return *this;
}

namespace {

bool is_integer_literal(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

BigRat BigRat::from_string(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den))
        throw std::invalid_argument("BigRat: malformed rational '" + s + "'");
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
        throw std::invalid_argument("BigRat: malformed rational '" + s + "'");
    if (sgn(mpq_class(q.get_den())) == 0)
        throw std::invalid_argument("BigRat: zero denominator in '" + s + "'");
    q.canonicalize();
    return BigRat(q);
}

BigRat BigRat::from_decimal_string(const std::string& s) {
    // [sign] digits [. digits] [eE [sign] digits]
    std::string mantissa = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        std::string es = s.substr(e + 1);
        if (!is_integer_literal(es))
            throw std::invalid_argument("BigRat: malformed decimal '" + s + "'");
        exp10 = std::stol(es);
    }
    std::string digits = mantissa;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        exp10 -= static_cast<long>(mantissa.size() - dot - 1);
    }
    if (!is_integer_literal(digits))
        throw std::invalid_argument("BigRat: malformed decimal '" + s + "'");
    mpz_class n(digits, 10); // explicit base: default 0 reads leading zeros as octal
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    mpq_class q = exp10 >= 0 ? mpq_class(n * p10) : mpq_class(n, p10);
    q.canonicalize();
    return BigRat(q);
}

BigRat BigRat::from_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("BigRat: non-finite double");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), d); // exact binary value
    return BigRat(q);
}

BigRat BigRat::from_double_rounded(double d, unsigned pow10_den) {
    if (!std::isfinite(d)) throw std::invalid_argument("BigRat: non-finite double");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, pow10_den);
    // Scale exactly, then round to nearest integer numerator.
    mpq_class scaled;
    mpq_set_d(scaled.get_mpq_t(), d);
    scaled *= mpq_class(den);
    mpz_class num, rem;
    mpz_fdiv_qr(num.get_mpz_t(), rem.get_mpz_t(), scaled.get_num().get_mpz_t(),
                scaled.get_den().get_mpz_t());
    if (mpz_class(2 * rem) >= scaled.get_den()) num += 1;
    mpq_class q(num, den);
    q.canonicalize();
    return BigRat(q);
}

std::string BigRat::to_string() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string BigRat::to_short_string() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return to_string();
}

std::ostream& operator<<(std::ostream& os, const BigRat& r) {
    return os << r.to_short_string();
}

} // namespace pinchuk
