#ifndef PINCHUK_WITNESS_HPP
#define PINCHUK_WITNESS_HPP

#include "pinchuk/construction.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pinchuk {

/// Tunables of the collision search. The numeric members drive the float
/// heuristics; the BigRat members are the exact thresholds used by witness
/// certification (kept separately so a decimal flag like 0.01 is honored
/// exactly rather than through its double image).
struct SearchConfig {
    double x_min = -10.0;
    double x_max = 10.0;
    double y_min = -10.0;
    double y_max = 10.0;
    unsigned grid_n = 1024;
    /// Image-space cell width as a fraction of the observed per-axis range.
    double bucket_scale = 1.0 / 4096.0;
    double newton_tol = 1e-12;
    unsigned newton_max_iter = 50;
    double min_separation = 1e-2;
    BigRat min_separation_exact = BigRat(1, 100);
    BigRat exact_tol = BigRat(1, 1000000000);
    /// Cap on the candidate list (kept are the smallest-residual pairs).
    unsigned max_candidates = 512;
    unsigned max_witnesses = 3;

    /// Throws std::invalid_argument on a malformed configuration.
    void validate() const;
};

/// A grid pair whose images landed in the same or adjacent image-space cells.
struct CandidatePair {
    double x1, y1, x2, y2;
    double residual_float; // ‖F(z1) − F(z2)‖∞ in doubles
};

/// Two distinct points with (nearly) equal images: the constructive
/// non-injectivity evidence. Floats locate the pair; the rational roundings
/// and the exact residual are what certification judges.
struct WitnessPair {
    double x1, y1, x2, y2;
    BigRat x1_rat, y1_rat, x2_rat, y2_rat; // roundings, denominator <= 10^12
    double image_residual_float;           // ‖F(z1) − F(z2)‖∞ in doubles
    BigRat image_residual_exact;           // ‖F(z1_rat) − F(z2_rat)‖∞, exact
    double separation;                     // ‖z1 − z2‖∞ in doubles
    BigRat min_separation_exact;           // exact threshold copied from the config
    /// Empirical Newton health: every step taken from ‖G‖∞ ≤ 1e−4 contracted
    /// the norm by at least 10×. Failures demote the witness in the report
    /// ordering; they do not invalidate certification.
    bool newton_contraction_ok = true;
};

/// Double-precision term summation of both coordinates (and of the four
/// partial derivatives on demand). A search heuristic only: every certified
/// statement is recomputed with exact arithmetic.
class MapEvaluator {
  public:
    MapEvaluator(const BiPoly& p, const BiPoly& q);

    std::pair<double, double> eval(double x, double y) const;
    /// Row-major [p_x, p_y, q_x, q_y] at the point.
    void jacobian_at(double x, double y, double out[4]) const;

  private:
    struct Term {
        std::uint32_t i, j;
        double c;
    };
    static std::vector<Term> flatten(const BiPoly& poly);
    double sum(const std::vector<Term>& terms, const double* xp, const double* yp) const;

    std::vector<Term> p_, q_, px_, py_, qx_, qy_;
    unsigned max_deg_ = 0;
};

std::pair<double, double> eval_map_float(const ConstructionResult& result, double x, double y);

/// Grid scan: evaluates F over an n×n grid, buckets images into cells of
/// width range·bucket_scale per axis, and pairs up points in the same or
/// adjacent cells whose domain separation is at least min_separation.
/// Oversized cells fall back to pairing each member with its successors in
/// image order, so no cell can blow up the candidate count; the global list
/// keeps the max_candidates smallest residuals and is sorted by
/// (residual, grid index) ascending. Deterministic for a fixed config.
/// Throws NoCandidates when nothing qualifies.
std::vector<CandidatePair> find_collision_candidates(const BiPoly& p, const BiPoly& q,
                                                     const SearchConfig& cfg);
std::vector<CandidatePair> find_collision_candidates(const ConstructionResult& result,
                                                     const SearchConfig& cfg);

/// Newton iteration on G(z2) = F(z2) − F(z1) with z1 frozen (square 2×2
/// system; the Jacobian of F is invertible wherever J(p,q) > 0). Succeeds
/// when ‖G‖∞ ≤ newton_tol within the iteration budget and the refined pair
/// stays min_separation apart; the result carries exact rational roundings
/// (denominator ≤ 10^12) and the exactly recomputed image residual.
/// Throws NoConvergence (budget, overflow, or singular step) or Collapsed
/// (z2 converged onto z1).
WitnessPair newton_refine(const BiPoly& p, const BiPoly& q, std::pair<double, double> z1,
                          std::pair<double, double> z2_init, const SearchConfig& cfg);
WitnessPair newton_refine(const ConstructionResult& result, std::pair<double, double> z1,
                          std::pair<double, double> z2_init, const SearchConfig& cfg);

/// True iff image_residual_exact <= exact_tol and the exact separation
/// ‖z1_rat − z2_rat‖∞ >= the pair's min_separation_exact. Pure rational
/// comparisons; no floats.
bool certify_witness(const WitnessPair& pair, const BigRat& exact_tol);

struct WitnessReport {
    std::vector<WitnessPair> witnesses; // certified, healthy-Newton pairs first
    unsigned candidates = 0;
    unsigned refined = 0;
    unsigned collapsed = 0;
    unsigned no_convergence = 0;
    unsigned uncertified = 0;
    unsigned demoted = 0;
};

/// Full driver: candidates, Newton refinement (retrying each pair with the
/// roles swapped when refinement fails), exact certification, and collection
/// of up to max_witnesses certified pairs. Propagates NoCandidates from the
/// grid stage; an empty witness list with nonzero candidates is returned, not
/// thrown.
WitnessReport run_witness_search(const BiPoly& p, const BiPoly& q, const SearchConfig& cfg);
WitnessReport run_witness_search(const ConstructionResult& result, const SearchConfig& cfg);

} // namespace pinchuk

#endif
