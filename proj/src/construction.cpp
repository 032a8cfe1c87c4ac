#include "pinchuk/construction.hpp"

#include "pinchuk/errors.hpp"

#include <cassert>

namespace pinchuk {

namespace {

// h^3 + h^2 as a univariate polynomial in h
UniPoly h3_plus_h2() {
    return UniPoly::from_coeffs({0, 0, 1, 1});
}

// h^2 + h
UniPoly h2_plus_h() {
    return UniPoly::from_coeffs({0, 1, 1});
}

} // namespace

BaseSystem build_base() {
    BaseSystem b;
    const BiPoly x = BiPoly::var_x();
    const BiPoly y = BiPoly::var_y();
    b.t = x * y - BiPoly(1);
    b.h = x * b.t * b.t + b.t;
    b.xt_plus_1 = x * b.t + BiPoly(1);
    b.f = b.xt_plus_1 * b.xt_plus_1 * (b.t * b.t + y);
    b.p = b.f + b.h;
    b.h_minus_t = b.h - b.t;

    if (b.h_minus_t != x * b.t * b.t)
        throw IdentityViolation("base: h - t != x t^2");
    const BiPoly h3h2 = b.h * b.h * b.h + b.h * b.h;
    if (b.f * b.h_minus_t != h3h2)
        throw IdentityViolation("base: f (h - t) != h^3 + h^2");
    try {
        exact_divide(b.p, b.xt_plus_1);
    } catch (const NotDivisible&) {
        throw IdentityViolation("base: (xt+1) does not divide p");
    }
    return b;
}

UniPoly derive_N1(const BigRat& c, const UniPoly& N0) {
    const UniPoly hh = UniPoly::var();
    const UniPoly M_minus1 =
        (h3_plus_h2() * (h2_plus_h().scaled(BigRat(3) - c) - N0)).scaled(BigRat(2));
    // c h + c - 1
    const UniPoly lin = UniPoly::monomial(1, c) + UniPoly(c - BigRat(1));
    const UniPoly numerator = -(M_minus1.derivative() + hh * hh * lin * lin + N0 * N0);
    const UniPoly denominator = h3_plus_h2().scaled(BigRat(2));
    UniPoly N1 = exact_divide(numerator, denominator);
#ifndef NDEBUG
    assert(N1 == derive_N1_square_form(c, N0));
#endif
    return N1;
}

UniPoly derive_N1_square_form(const BigRat& c, const UniPoly& N0) {
    // 3h^2 + 2h - N0
    const UniPoly s = UniPoly::from_coeffs({0, 2, 3}) - N0;
    const UniPoly quo = exact_divide(s * s, h3_plus_h2().scaled(BigRat(2)));
    // (c-3)(c h + c - 7 h - 5) = (c-3)((c-7) h + (c-5))
    const UniPoly lin =
        UniPoly::monomial(1, c - BigRat(7)) + UniPoly(c - BigRat(5));
    return -quo - lin.scaled((c - BigRat(3)) / BigRat(2)) + N0.derivative();
}

ConstructionResult construct_from_cK(const ConstructionParams& params) {
    ConstructionResult r;
    r.params = params;
    r.base = build_base();

    const UniPoly hh = UniPoly::var();
    r.N0 = -hh + h2_plus_h() * params.K;
    r.M_minus2 = -(h3_plus_h2() * h3_plus_h2());
    r.M_minus1 =
        (h3_plus_h2() * (h2_plus_h().scaled(BigRat(3) - params.c) - r.N0)).scaled(BigRat(2));
    r.N1 = derive_N1(params.c, r.N0);
    r.M1 = -(r.N1 * r.N1).antiderivative() - hh;
    r.M0 = (r.M1 - (r.N0 * r.N1).scaled(BigRat(2))).antiderivative();

    // defining relation of N1, re-checked after the fact
    const UniPoly lin = UniPoly::monomial(1, params.c) + UniPoly(params.c - BigRat(1));
    if (h3_plus_h2().scaled(BigRat(2)) * r.N1 !=
        -(r.M_minus1.derivative() + hh * hh * lin * lin + r.N0 * r.N0))
        throw IdentityViolation("construct: N1 does not satisfy its defining relation");

    r.q_laurent.set_coeff(-2, r.M_minus2);
    r.q_laurent.set_coeff(-1, r.M_minus1);
    r.q_laurent.set_coeff(0, r.M0);
    r.q_laurent.set_coeff(1, r.M1);
    r.q = lower_laurent(r.q_laurent, r.base);
    return r;
}

BiPoly lower_laurent(const FHLaurent& laurent, const BaseSystem& base) {
    if (laurent.is_zero()) return BiPoly();
    const int m_min = *laurent.min_exp();
    const int a = m_min < 0 ? -m_min : 0; // clearing power
    BiPoly cleared;
    BiPoly f_power(1); // f^(m + a), advanced as m walks the support upward
    int at = -a;
    for (const auto& [m, cm] : laurent.coeffs()) {
        for (; at < m; ++at) f_power *= base.f;
        cleared += cm.substitute(base.h) * f_power;
    }
    if (a == 0) return cleared;
    return exact_divide(cleared, base.f.pow(static_cast<unsigned>(a)));
}

} // namespace pinchuk
