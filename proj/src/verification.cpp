#include "pinchuk/verification.hpp"

#include "pinchuk/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pinchuk {

BiPoly jacobian(const BiPoly& a, const BiPoly& b) {
    return a.partial(BiPoly::Var::x) * b.partial(BiPoly::Var::y) -
           a.partial(BiPoly::Var::y) * b.partial(BiPoly::Var::x);
}

namespace {

void assert_equal(const BiPoly& got, const BiPoly& want, const char* what) {
    if (got == want) return;
    throw IdentityViolation(std::string(what) + "; difference: " + (got - want).str());
}

} // namespace

void check_base_identities(const BaseSystem& base) {
    assert_equal(jacobian(base.h, base.t), base.h_minus_t, "J(h,t) != h - t");
    assert_equal(jacobian(base.f, base.h), -base.f, "J(f,h) != -f");
    assert_equal(jacobian(base.p, base.h), -base.f, "J(p,h) != -f");
}

FHLaurent formal_jac_p(const FHLaurent& laurent) {
    FHLaurent out;
    for (const auto& [m, g] : laurent.coeffs()) {
        out += FHLaurent::term(m + 1, -g.derivative());
        if (m != 0) out += FHLaurent::term(m, g.scaled(BigRat(m)));
    }
    return out;
}

void check_commutation(const FHLaurent& laurent, const BaseSystem& base) {
    const FHLaurent jf = formal_jac_p(laurent);
    int m_min = 0;
    if (auto m = laurent.min_exp()) m_min = std::min(m_min, *m);
    if (auto m = jf.min_exp()) m_min = std::min(m_min, *m);
    const int a = -m_min; // common clearing power, >= 0

    auto cleared = [&](const FHLaurent& value) {
        BiPoly out;
        for (const auto& [m, cm] : value.coeffs())
            out += cm.substitute(base.h) * base.f.pow(static_cast<unsigned>(m + a));
        return out;
    };
    const BiPoly c_l = cleared(laurent);
    const BiPoly c_j = cleared(jf);

    // f^(a+1) J(p, C_L / f^a) = J(p, C_L) f - a C_L J(p, f) by the quotient
    // rule, and the formal value clears to C_J f under the same power.
    const BiPoly lhs =
        jacobian(base.p, c_l) * base.f - (c_l * jacobian(base.p, base.f)).scaled(BigRat(a));
    const BiPoly rhs = c_j * base.f;
    if (!(lhs == rhs))
        throw IdentityViolation("formal Jacobian does not commute with lowering; "
                                "cleared difference: " +
                                (lhs - rhs).str());
}

SOSCertificate make_sos_certificate(const BaseSystem& base, const BigRat& c, const UniPoly& N0,
                                    const UniPoly& N1, const BiPoly& p, const BiPoly& q) {
    const BiPoly h2_plus_h = base.h * base.h + base.h;

    SOSCertificate cert;
    cert.S1 = h2_plus_h.scaled(c) - base.t;
    cert.S2 = base.h_minus_t + N0.substitute(base.h) + N1.substitute(base.h) * base.f;
    cert.S3 = base.f;
    cert.jac = jacobian(p, q);
    cert.verified =
        cert.jac == cert.S1 * cert.S1 + cert.S2 * cert.S2 + cert.S3 * cert.S3;
    if (!cert.verified)
        throw IdentityViolation("J(p,q) is not the sum of the three certificate squares");
    return cert;
}

SOSCertificate verify_sos(const ConstructionResult& result) {
    return make_sos_certificate(result.base, result.params.c, result.N0, result.N1, result.base.p,
                                result.q);
}

bool GroebnerBasis::is_trivial() const {
    return gens_.size() == 1 && gens_.front() == BiPoly(1);
}

bool is_trivial(const GroebnerBasis& basis) { return basis.is_trivial(); }

BiPoly normal_form(const BiPoly& poly, const std::vector<BiPoly>& basis) {
    BiPoly rem;
    BiPoly cur = poly;
    while (!cur.is_zero()) {
        const Monomial lm = cur.leading_monomial();
        const BigRat lc = cur.leading_coeff();
        bool reduced = false;
        for (const BiPoly& g : basis) {
            if (g.is_zero()) continue;
            const Monomial& gm = g.leading_monomial();
            if (gm.divides(lm)) {
                cur -= g.term_multiplied(lm - gm, lc / g.leading_coeff());
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            // Irreducible leading term moves to the remainder; everything
            // produced later is strictly smaller in grlex.
            rem.set_coeff(lm, lc);
            cur.set_coeff(lm, BigRat(0));
        }
    }
    return rem;
}

BiPoly s_polynomial(const BiPoly& a, const BiPoly& b) {
    const Monomial g = Monomial::lcm(a.leading_monomial(), b.leading_monomial());
    const BiPoly sa = a.term_multiplied(g - a.leading_monomial(), BigRat(1) / a.leading_coeff());
    const BiPoly sb = b.term_multiplied(g - b.leading_monomial(), BigRat(1) / b.leading_coeff());
    return sa - sb;
}

namespace {

/// Integer-coefficient representative with coprime coefficients and positive
/// leading coefficient; keeps Buchberger's intermediate numbers small.
BiPoly make_primitive(const BiPoly& p) {
    mpz_class den_lcm = 1;
    mpz_class num_gcd = 0;
    for (const auto& [m, c] : p.terms()) {
        den_lcm = lcm(den_lcm, c.denominator());
        num_gcd = gcd(num_gcd, c.numerator());
    }
    BiPoly out = p.scaled(BigRat(mpq_class(den_lcm, num_gcd)));
    if (out.leading_coeff().sign() < 0) return -out;
    return out;
}

BiPoly make_monic(const BiPoly& p) { return p.scaled(BigRat(1) / p.leading_coeff()); }

GroebnerBasis unit_basis() { return GroebnerBasis({BiPoly(1)}); }

} // namespace

GroebnerBasis groebner_basis(const std::vector<BiPoly>& gens) {
    std::vector<BiPoly> basis;
    for (const BiPoly& g : gens)
        if (!g.is_zero()) basis.push_back(make_primitive(g));
    if (basis.empty())
        throw std::invalid_argument("groebner_basis: generators must not all be zero");
    for (const BiPoly& g : basis)
        if (g.is_constant()) return unit_basis();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        // Normal selection strategy: smallest lcm degree first.
        std::size_t best = 0;
        unsigned best_deg =
            Monomial::lcm(basis[pairs[0].first].leading_monomial(),
                          basis[pairs[0].second].leading_monomial())
                .total_degree();
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            const unsigned d = Monomial::lcm(basis[pairs[k].first].leading_monomial(),
                                             basis[pairs[k].second].leading_monomial())
                                   .total_degree();
            if (d < best_deg) {
                best = k;
                best_deg = d;
            }
        }
        const auto [i, j] = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

        const Monomial& mi = basis[i].leading_monomial();
        const Monomial& mj = basis[j].leading_monomial();
        // Buchberger's first criterion: coprime leading monomials reduce to 0.
        if (Monomial::lcm(mi, mj) == mi + mj) continue;

        BiPoly s = normal_form(s_polynomial(basis[i], basis[j]), basis);
        if (s.is_zero()) continue;
        if (s.is_constant()) return unit_basis();
        s = make_primitive(s);
        const std::size_t k = basis.size();
        basis.push_back(std::move(s));
        for (std::size_t i2 = 0; i2 < k; ++i2) pairs.emplace_back(i2, k);
    }

    // Minimize: drop any generator whose leading term another one divides.
    // A divisor's monomial never exceeds the multiple's in grlex, so one
    // ascending pass suffices.
    std::sort(basis.begin(), basis.end(), [](const BiPoly& a, const BiPoly& b) {
        return GrlexLess{}(a.leading_monomial(), b.leading_monomial());
    });
    std::vector<BiPoly> minimal;
    for (const BiPoly& g : basis) {
        const bool redundant =
            std::any_of(minimal.begin(), minimal.end(), [&](const BiPoly& kept) {
                return kept.leading_monomial().divides(g.leading_monomial());
            });
        if (!redundant) minimal.push_back(g);
    }

    // Reduce: each generator's tail modulo the others (leading terms are
    // already mutually irreducible), then normalize to monic.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<BiPoly> others;
        others.reserve(minimal.size() - 1);
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = make_monic(normal_form(minimal[i], others));
    }
    return GroebnerBasis(std::move(minimal));
}

bool groebner_self_check(const GroebnerBasis& basis, const std::vector<BiPoly>& original_gens) {
    const std::vector<BiPoly>& g = basis.generators();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (!normal_form(s_polynomial(g[i], g[j]), g).is_zero()) return false;
    for (const BiPoly& gen : original_gens)
        if (!normal_form(gen, g).is_zero()) return false;
    return true;
}

bool groebner_triviality(const BaseSystem& base, const BigRat& c) {
    const BiPoly h2_plus_h = base.h * base.h + base.h;
    return groebner_basis({base.f, h2_plus_h.scaled(c) - base.t}).is_trivial();
}

void check_p_factor(const BaseSystem& base, const BiPoly& p) {
    try {
        (void)exact_divide(p, base.xt_plus_1);
    } catch (const NotDivisible& e) {
        throw IdentityViolation(std::string("xt+1 does not divide p: ") + e.what());
    }
    // Rational samples on both connected components of y = (x-1)/x^2.
    const BigRat sample_xs[] = {BigRat(1),  BigRat(2),  BigRat(3),  BigRat(1, 2),
                                BigRat(-1), BigRat(-2), BigRat(-1, 2)};
    for (const BigRat& x0 : sample_xs) {
        const BigRat y0 = (x0 - BigRat(1)) / (x0 * x0);
        if (!p.evaluate_exact(x0, y0).is_zero())
            throw IdentityViolation("p does not vanish on y=(x-1)/x^2 at x = " +
                                    x0.to_short_string());
    }
}

void check_p_factor(const BaseSystem& base) { check_p_factor(base, base.p); }

} // namespace pinchuk
