#ifndef PINCHUK_VERIFICATION_HPP
#define PINCHUK_VERIFICATION_HPP

#include "pinchuk/construction.hpp"

#include <vector>

namespace pinchuk {

/// Jacobian bracket J(a,b) = a_x b_y - a_y b_x. Antisymmetric, bilinear,
/// satisfies the Leibniz rule in each slot.
BiPoly jacobian(const BiPoly& a, const BiPoly& b);

/// Asserts the exact identities J(h,t) = h - t, J(f,h) = -f, and the
/// linearity consequence J(p,h) = -f. Throws IdentityViolation carrying the
/// offending difference.
void check_base_identities(const BaseSystem& base);

/// The formal Jacobian-with-p of a Laurent value in f: linear map sending
/// G(h) f^m to -G'(h) f^(m+1) + m G(h) f^m.
FHLaurent formal_jac_p(const FHLaurent& laurent);

/// Certifies that the formal rule above commutes with lowering. Let m_min be
/// the minimum f-exponent across L and formal_jac_p(L), a = max(0, -m_min),
/// and C_L, C_J the common f^a-cleared numerators of the two values. Writing
/// L = C_L / f^a, the quotient rule gives
///   f^(a+1) J(p, L) = J(p, C_L) f - a C_L J(p, f),
/// so the check asserts
///   J(p, C_L) f - a C_L J(p, f) == C_J f
/// as an exact polynomial identity. This works for Laurent values that are
/// not themselves lowerable. Throws IdentityViolation on mismatch.
void check_commutation(const FHLaurent& laurent, const BaseSystem& base);

/// The three squared summands certifying positivity of J(p,q):
///   S1 = c (h^2+h) - t,  S2 = (h - t) + N0(h) + N1(h) f,  S3 = f,
/// with verified = (jac == S1^2 + S2^2 + S3^2) as exact term maps. Together
/// with triviality of <f, c(h^2+h)-t> this certifies J(p,q) > 0 everywhere.
struct SOSCertificate {
    BiPoly S1;
    BiPoly S2;
    BiPoly S3;
    BiPoly jac; // J(p, q)
    bool verified = false;
};

/// Builds the certificate for arbitrary (p, q) against the squares derived
/// from (c, N0, N1). Throws IdentityViolation when the SOS equality fails.
SOSCertificate make_sos_certificate(const BaseSystem& base, const BigRat& c, const UniPoly& N0,
                                    const UniPoly& N1, const BiPoly& p, const BiPoly& q);

/// Certificate for a full construction result.
SOSCertificate verify_sos(const ConstructionResult& result);

/// Reduced Groebner basis under grlex x > y: monic generators, no term of any
/// generator divisible by the leading term of another, sorted by leading
/// monomial.
class GroebnerBasis {
  public:
    explicit GroebnerBasis(std::vector<BiPoly> gens) : gens_(std::move(gens)) {}
    const std::vector<BiPoly>& generators() const { return gens_; }
    /// True iff the basis is {1}, i.e. the generators have no common
    /// complex zero.
    bool is_trivial() const;

  private:
    std::vector<BiPoly> gens_;
};

/// Full normal form of poly modulo basis: every reducible term is cancelled,
/// not just the leading one.
BiPoly normal_form(const BiPoly& poly, const std::vector<BiPoly>& basis);

/// S-polynomial of a nonzero pair.
BiPoly s_polynomial(const BiPoly& a, const BiPoly& b);

/// Buchberger's algorithm with the coprime-leading-term criterion for pair
/// pruning, followed by full inter-reduction. Generators must not all be
/// zero. Returns early with {1} as soon as a nonzero constant appears, since
/// the ideal is then the whole ring.
GroebnerBasis groebner_basis(const std::vector<BiPoly>& gens);

bool is_trivial(const GroebnerBasis& basis);

/// True iff the ideal <f, c(h^2+h) - t> is the unit ideal, i.e. the two
/// squares S3 and S1 of the certificate share no zero even over the complex
/// numbers. Together with a verified SOSCertificate this gives J(p,q) > 0 on
/// the whole real plane.
bool groebner_triviality(const BaseSystem& base, const BigRat& c);

/// Engine self-check: every S-polynomial of basis pairs reduces to zero and
/// every original generator reduces to zero modulo the basis.
bool groebner_self_check(const GroebnerBasis& basis, const std::vector<BiPoly>& original_gens);

/// Asserts (xt+1) | p exactly and that p vanishes at rational sample points
/// on both connected components of the curve y = (x-1)/x^2 (x > 0 and x < 0).
/// Throws IdentityViolation on failure.
void check_p_factor(const BaseSystem& base);

/// Same divisibility and branch-vanishing checks against a supplied p.
void check_p_factor(const BaseSystem& base, const BiPoly& p);

} // namespace pinchuk

#endif
