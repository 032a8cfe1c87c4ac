#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pinchuk/construction.hpp"
#include "pinchuk/errors.hpp"
#include "pinchuk/witness.hpp"

#include "oracles.hpp"

#include <cmath>
#include <random>

using pinchuk::BigRat;
using pinchuk::BiPoly;
using pinchuk::ConstructionResult;
using pinchuk::MapEvaluator;
using pinchuk::NoCandidates;
using pinchuk::SearchConfig;
using pinchuk::WitnessPair;

namespace {
const ConstructionResult& degree15() {
    static const ConstructionResult r =
        pinchuk::construct_from_cK({BigRat(1), pinchuk::UniPoly(3)});
    return r;
}
} // namespace

TEST_CASE("config validation") {
    SearchConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    SearchConfig bad = cfg;
    bad.x_min = 1.0;
    bad.x_max = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.grid_n = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.grid_n = 1u << 20;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.bucket_scale = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.newton_tol = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.min_separation = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.exact_tol = BigRat(-1);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.max_candidates = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.max_witnesses = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("map evaluator matches exact evaluation") {
    const ConstructionResult& r = degree15();

    const auto at11 = pinchuk::eval_map_float(r, 1.0, 1.0);
    CHECK(at11.first == doctest::Approx(1.0).epsilon(1e-9));
    const double q11 = r.q.evaluate_exact(BigRat(1), BigRat(1)).to_double();
    CHECK(at11.second == doctest::Approx(q11).epsilon(1e-9));

    const auto at00 = pinchuk::eval_map_float(r, 0.0, 0.0);
    CHECK(at00.first == doctest::Approx(0.0).epsilon(1e-12));

    MapEvaluator ev(r.base.p, r.q);
    std::mt19937 gen(89);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (int k = 0; k < 200; ++k) {
        const double x = coord(gen), y = coord(gen);
        const auto [pf, qf] = ev.eval(x, y);
        const double pe =
            r.base.p.evaluate_exact(BigRat::from_double(x), BigRat::from_double(y)).to_double();
        const double qe =
            r.q.evaluate_exact(BigRat::from_double(x), BigRat::from_double(y)).to_double();
        CHECK(std::abs(pf - pe) <= 1e-6 * (1.0 + std::abs(pe)));
        CHECK(std::abs(qf - qe) <= 1e-6 * (1.0 + std::abs(qe)));
    }
}

TEST_CASE("map evaluator jacobian matches exact partials") {
    const ConstructionResult& r = degree15();
    MapEvaluator ev(r.base.p, r.q);
    const BiPoly px = r.base.p.partial(BiPoly::Var::x), py = r.base.p.partial(BiPoly::Var::y);
    const BiPoly qx = r.q.partial(BiPoly::Var::x), qy = r.q.partial(BiPoly::Var::y);
    std::mt19937 gen(97);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int k = 0; k < 50; ++k) {
        const double x = coord(gen), y = coord(gen);
        double jac[4];
        ev.jacobian_at(x, y, jac);
        const BigRat rx = BigRat::from_double(x), ry = BigRat::from_double(y);
        const double want[4] = {px.evaluate_exact(rx, ry).to_double(),
                                py.evaluate_exact(rx, ry).to_double(),
                                qx.evaluate_exact(rx, ry).to_double(),
                                qy.evaluate_exact(rx, ry).to_double()};
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(jac[i] - want[i]) <= 1e-6 * (1.0 + std::abs(want[i])));
    }
}

TEST_CASE("candidate search on the degree-15 map") {
    const ConstructionResult& r = degree15();
    SearchConfig cfg;
    const auto cands = pinchuk::find_collision_candidates(r, cfg);
    CHECK(cands.size() == cfg.max_candidates);
    for (std::size_t i = 0; i + 1 < cands.size(); ++i)
        CHECK(cands[i].residual_float <= cands[i + 1].residual_float);
    for (const auto& c : cands) {
        const double sep =
            std::max(std::abs(c.x1 - c.x2), std::abs(c.y1 - c.y2));
        CHECK(sep >= cfg.min_separation);
        CHECK(c.residual_float >= 0.0);
    }
}

TEST_CASE("candidate search failure modes") {
    // the identity map is injective: grid images spread out, nothing collides
    SearchConfig cfg;
    cfg.grid_n = 64;
    CHECK_THROWS_AS(
        pinchuk::find_collision_candidates(BiPoly::var_x(), BiPoly::var_y(), cfg),
        NoCandidates);

    // a box too small to hold two points min_separation apart
    const ConstructionResult& r = degree15();
    SearchConfig tiny;
    tiny.x_min = 0.0;
    tiny.x_max = 0.005;
    tiny.y_min = 0.0;
    tiny.y_max = 0.005;
    tiny.grid_n = 2;
    CHECK_THROWS_AS(pinchuk::find_collision_candidates(r, tiny), NoCandidates);
}

TEST_CASE("newton refinement certifies candidates") {
    const ConstructionResult& r = degree15();
    SearchConfig cfg;
    const auto cands = pinchuk::find_collision_candidates(r, cfg);

    unsigned certified = 0;
    for (std::size_t i = 0; i < cands.size() && certified < 2; ++i) {
        WitnessPair w;
        try {
            w = pinchuk::newton_refine(r, {cands[i].x1, cands[i].y1},
                                       {cands[i].x2, cands[i].y2}, cfg);
        } catch (const std::runtime_error&) {
            continue;
        }
        if (!pinchuk::certify_witness(w, cfg.exact_tol)) continue;
        ++certified;
        CHECK(w.image_residual_exact <= cfg.exact_tol);
        CHECK(w.separation >= cfg.min_separation);
        CHECK((w.x1_rat != w.x2_rat || w.y1_rat != w.y2_rat));

        // the exact residual is what the rational points actually produce
        const BigRat dp = r.base.p.evaluate_exact(w.x1_rat, w.y1_rat) -
                          r.base.p.evaluate_exact(w.x2_rat, w.y2_rat);
        const BigRat dq = r.q.evaluate_exact(w.x1_rat, w.y1_rat) -
                          r.q.evaluate_exact(w.x2_rat, w.y2_rat);
        const BigRat res = dp.abs() > dq.abs() ? dp.abs() : dq.abs();
        CHECK(res == w.image_residual_exact);
    }
    CHECK(certified >= 1);
}

TEST_CASE("newton collapse detection") {
    const ConstructionResult& r = degree15();
    SearchConfig cfg;
    CHECK_THROWS_AS(pinchuk::newton_refine(r, {1.5, 2.5}, {1.5, 2.5}, cfg),
                    pinchuk::Collapsed);
}

TEST_CASE("certify_witness thresholds") {
    WitnessPair w{};
    w.x1_rat = BigRat(0);
    w.y1_rat = BigRat(0);
    w.x2_rat = BigRat(1);
    w.y2_rat = BigRat(1);
    w.image_residual_exact = BigRat(1, 2000000000);
    w.min_separation_exact = BigRat(1, 100);
    CHECK(pinchuk::certify_witness(w, BigRat(1, 1000000000)));
    CHECK(!pinchuk::certify_witness(w, BigRat(0))); // zero tolerance rejects
    CHECK(!pinchuk::certify_witness(w, BigRat(1, 4000000000L)));

    // coincident rational points are never a witness
    WitnessPair same = w;
    same.x2_rat = same.x1_rat;
    same.y2_rat = same.y1_rat;
    same.image_residual_exact = BigRat(0);
    CHECK(!pinchuk::certify_witness(same, BigRat(1, 1000000000)));

    // separation below the exact threshold is rejected
    WitnessPair close = w;
    close.x2_rat = BigRat(1, 500);
    close.y2_rat = BigRat(0);
    CHECK(!pinchuk::certify_witness(close, BigRat(1, 1000000000)));
}

TEST_CASE("full search finds certified witnesses") {
    const ConstructionResult& r = degree15();
    SearchConfig cfg;
    const auto report = pinchuk::run_witness_search(r, cfg);
    CHECK(report.candidates > 0);
    REQUIRE(!report.witnesses.empty());
    CHECK(report.witnesses.size() <= cfg.max_witnesses);
    for (const auto& w : report.witnesses) {
        CHECK(pinchuk::certify_witness(w, cfg.exact_tol));
        CHECK(w.image_residual_exact <= cfg.exact_tol);
        CHECK(w.min_separation_exact == cfg.min_separation_exact);
        const BigRat sx = (w.x1_rat - w.x2_rat).abs();
        const BigRat sy = (w.y1_rat - w.y2_rat).abs();
        CHECK((sx > sy ? sx : sy) >= cfg.min_separation_exact);
    }
    // healthy witnesses precede demoted ones
    bool seen_demoted = false;
    for (const auto& w : report.witnesses) {
        if (!w.newton_contraction_ok) seen_demoted = true;
        else CHECK(!seen_demoted);
    }
}

TEST_CASE("search is deterministic") {
    const ConstructionResult& r = degree15();
    SearchConfig cfg;
    cfg.max_candidates = 64;
    cfg.max_witnesses = 2;

    const auto c1 = pinchuk::find_collision_candidates(r, cfg);
    const auto c2 = pinchuk::find_collision_candidates(r, cfg);
    REQUIRE(c1.size() == c2.size());
    for (std::size_t i = 0; i < c1.size(); ++i) {
        CHECK(c1[i].x1 == c2[i].x1);
        CHECK(c1[i].y1 == c2[i].y1);
        CHECK(c1[i].x2 == c2[i].x2);
        CHECK(c1[i].y2 == c2[i].y2);
        CHECK(c1[i].residual_float == c2[i].residual_float);
    }

    const auto r1 = pinchuk::run_witness_search(r, cfg);
    const auto r2 = pinchuk::run_witness_search(r, cfg);
    REQUIRE(r1.witnesses.size() == r2.witnesses.size());
    for (std::size_t i = 0; i < r1.witnesses.size(); ++i) {
        CHECK(r1.witnesses[i].x1 == r2.witnesses[i].x1);
        CHECK(r1.witnesses[i].x2 == r2.witnesses[i].x2);
        CHECK(r1.witnesses[i].x1_rat == r2.witnesses[i].x1_rat);
        CHECK(r1.witnesses[i].image_residual_exact == r2.witnesses[i].image_residual_exact);
    }
}
