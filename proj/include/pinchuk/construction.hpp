#ifndef PINCHUK_CONSTRUCTION_HPP
#define PINCHUK_CONSTRUCTION_HPP

#include "pinchuk/bipoly.hpp"
#include "pinchuk/fh_laurent.hpp"
#include "pinchuk/unipoly.hpp"

namespace pinchuk {

/// The fixed auxiliary polynomials of the plane map family:
///   t = xy - 1,  h = x t^2 + t,  f = (xt+1)^2 (t^2 + y),  p = f + h,
/// with the defining relation f (h - t) = h^3 + h^2.
struct BaseSystem {
    BiPoly t;
    BiPoly h;
    BiPoly f;
    BiPoly p;
    BiPoly xt_plus_1;
    BiPoly h_minus_t;
};

/// Builds the base system and verifies its exact relations:
/// h - t = x t^2, f (h - t) = h^3 + h^2, and (xt+1) | p.
/// Throws IdentityViolation if any fails.
BaseSystem build_base();

/// Free parameters of the second coordinate: a rational constant c and a
/// polynomial K(h) with rational coefficients.
struct ConstructionParams {
    BigRat c;
    UniPoly K;
};

/// Everything produced for one (c, K): the coefficient polynomials of the
/// q ansatz q = sum_{i=-2}^{1} f^i M_i(h), the ansatz itself, and its
/// lowering to a plain polynomial in (x, y).
struct ConstructionResult {
    ConstructionParams params;
    BaseSystem base;
    UniPoly N0; // -h + (h^2+h) K(h)
    UniPoly N1;
    UniPoly M_minus2; // -(h^3+h^2)^2
    UniPoly M_minus1; // 2 (h^3+h^2) ((3-c)(h^2+h) - N0)
    UniPoly M0;
    UniPoly M1;
    FHLaurent q_laurent;
    BiPoly q;
};

/// Solves 2 (h^3+h^2) N1 = -(M_{-1}' + h^2 (c h + c - 1)^2 + N0^2) for N1 by
/// exact univariate division, with M_{-1} computed from (c, N0). Throws
/// NotDivisible when this N0 does not yield a polynomial N1 (and hence no
/// polynomial q).
UniPoly derive_N1(const BigRat& c, const UniPoly& N0);

/// The same N1 through the completed-square rearrangement
///   N1 = -(3h^2 + 2h - N0)^2 / (2(h^3+h^2)) - (c-3)(c h + c - 7h - 5)/2 + N0'.
/// Independent transcription of the same quantity; agrees with derive_N1 on
/// every input (equal results, or NotDivisible together).
UniPoly derive_N1_square_form(const BigRat& c, const UniPoly& N0);

/// Runs the whole pipeline for (c, K):
///   N0 = -h + (h^2+h) K,
///   M_{-2} = -(h^3+h^2)^2,
///   M_{-1} = 2 (h^3+h^2) ((3-c)(h^2+h) - N0),
///   N1 from derive_N1,
///   M_1 = -integral_0^h N1(s)^2 ds - h,
///   M_0 = integral_0^h (M_1(s) - 2 N0(s) N1(s)) ds,
/// assembles q_laurent with support {-2,-1,0,1} and lowers it to q.
/// Never throws NotDivisible for this special form of N0.
ConstructionResult construct_from_cK(const ConstructionParams& params);

/// Lowers sum_m f^m C_m(h) to a polynomial in (x, y): forms the cleared
/// numerator N = sum_m C_m(h(x,y)) f^(m - m_min) and exact-divides by
/// f^(-m_min) once when m_min < 0, so one divisibility check certifies
/// polynomiality of the whole value. Throws NotDivisible when the Laurent
/// value is not a polynomial map.
BiPoly lower_laurent(const FHLaurent& laurent, const BaseSystem& base);

} // namespace pinchuk

#endif
