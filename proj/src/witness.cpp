#include "pinchuk/witness.hpp"

#include "pinchuk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinchuk {

void SearchConfig::validate() const {
    if (!(x_min < x_max) || !(y_min < y_max))
        throw std::invalid_argument("search box must satisfy x_min < x_max and y_min < y_max");
    if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
    if (grid_n > 65536) throw std::invalid_argument("grid_n must be at most 65536");
    if (!(bucket_scale >= 1e-9) || !(bucket_scale <= 1.0))
        throw std::invalid_argument("bucket_scale must lie in [1e-9, 1]");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("newton_tol must be positive");
    if (newton_max_iter == 0) throw std::invalid_argument("newton_max_iter must be positive");
    if (!(min_separation > 0.0)) throw std::invalid_argument("min_separation must be positive");
    if (min_separation_exact.sign() <= 0)
        throw std::invalid_argument("min_separation_exact must be positive");
    if (exact_tol.sign() < 0) throw std::invalid_argument("exact_tol must be nonnegative");
    if (max_candidates == 0) throw std::invalid_argument("max_candidates must be positive");
    if (max_witnesses == 0) throw std::invalid_argument("max_witnesses must be positive");
}

MapEvaluator::MapEvaluator(const BiPoly& p, const BiPoly& q)
    : p_(flatten(p)),
      q_(flatten(q)),
      px_(flatten(p.partial(BiPoly::Var::x))),
      py_(flatten(p.partial(BiPoly::Var::y))),
      qx_(flatten(q.partial(BiPoly::Var::x))),
      qy_(flatten(q.partial(BiPoly::Var::y))) {
    for (const auto* terms : {&p_, &q_, &px_, &py_, &qx_, &qy_})
        for (const Term& t : *terms) max_deg_ = std::max({max_deg_, t.i, t.j});
}

std::vector<MapEvaluator::Term> MapEvaluator::flatten(const BiPoly& poly) {
    std::vector<Term> out;
    out.reserve(poly.term_count());
    for (const auto& [m, c] : poly.terms()) out.push_back({m.x, m.y, c.to_double()});
    return out;
}

double MapEvaluator::sum(const std::vector<Term>& terms, const double* xp,
                         const double* yp) const {
    double acc = 0.0;
    for (const Term& t : terms) acc += t.c * xp[t.i] * yp[t.j];
    return acc;
}

namespace {

void fill_powers(double v, unsigned max_deg, std::vector<double>& out) {
    out.resize(max_deg + 1);
    out[0] = 1.0;
    for (unsigned k = 1; k <= max_deg; ++k) out[k] = out[k - 1] * v;
}

} // namespace

std::pair<double, double> MapEvaluator::eval(double x, double y) const {
    std::vector<double> xp, yp;
    fill_powers(x, max_deg_, xp);
    fill_powers(y, max_deg_, yp);
    return {sum(p_, xp.data(), yp.data()), sum(q_, xp.data(), yp.data())};
}

void MapEvaluator::jacobian_at(double x, double y, double out[4]) const {
    std::vector<double> xp, yp;
    fill_powers(x, max_deg_, xp);
    fill_powers(y, max_deg_, yp);
    out[0] = sum(px_, xp.data(), yp.data());
    out[1] = sum(py_, xp.data(), yp.data());
    out[2] = sum(qx_, xp.data(), yp.data());
    out[3] = sum(qy_, xp.data(), yp.data());
}

std::pair<double, double> eval_map_float(const ConstructionResult& result, double x, double y) {
    return MapEvaluator(result.base.p, result.q).eval(x, y);
}

namespace {

constexpr unsigned kSmallCell = 64; // exhaustive pairing up to this size
constexpr unsigned kWindow = 16;    // successor window inside oversized cells

struct GridImage {
    std::vector<double> u, v; // NaN marks a non-finite image
    unsigned n = 0;
    double x0 = 0, dx = 0, y0 = 0, dy = 0;

    double x_of(std::uint32_t idx) const { return x0 + dx * double(idx / n); }
    double y_of(std::uint32_t idx) const { return y0 + dy * double(idx % n); }
};

/// Bounded best-candidates collector: keeps the max_candidates smallest
/// (residual, i, j) triples, deterministically.
class CandidateHeap {
  public:
    explicit CandidateHeap(unsigned cap) : cap_(cap) {}

    struct Entry {
        double residual;
        std::uint32_t i, j;
        bool operator<(const Entry& o) const {
            if (residual != o.residual) return residual < o.residual;
            if (i != o.i) return i < o.i;
            return j < o.j;
        }
    };

    void offer(const Entry& e) {
        if (heap_.size() < cap_) {
            heap_.push_back(e);
            std::push_heap(heap_.begin(), heap_.end());
        } else if (e < heap_.front()) {
            std::pop_heap(heap_.begin(), heap_.end());
            heap_.back() = e;
            std::push_heap(heap_.begin(), heap_.end());
        }
    }

    std::vector<Entry> take_sorted() {
        std::sort_heap(heap_.begin(), heap_.end());
        return std::move(heap_);
    }

  private:
    unsigned cap_;
    std::vector<Entry> heap_; // max-heap on Entry ordering
};

} // namespace

std::vector<CandidatePair> find_collision_candidates(const BiPoly& p, const BiPoly& q,
                                                     const SearchConfig& cfg) {
    cfg.validate();
    const MapEvaluator ev(p, q);

    GridImage grid;
    grid.n = cfg.grid_n;
    grid.x0 = cfg.x_min;
    grid.y0 = cfg.y_min;
    grid.dx = (cfg.x_max - cfg.x_min) / double(cfg.grid_n - 1);
    grid.dy = (cfg.y_max - cfg.y_min) / double(cfg.grid_n - 1);

    const std::size_t total = std::size_t(cfg.grid_n) * cfg.grid_n;
    grid.u.resize(total);
    grid.v.resize(total);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double umin = 0, umax = 0, vmin = 0, vmax = 0;
    bool any_finite = false;
    for (std::uint32_t gi = 0; gi < cfg.grid_n; ++gi) {
        const double x = grid.x_of(gi * cfg.grid_n);
        for (std::uint32_t gj = 0; gj < cfg.grid_n; ++gj) {
            const std::size_t idx = std::size_t(gi) * cfg.grid_n + gj;
            const auto [pu, pv] = ev.eval(x, grid.y_of(gj));
            if (std::isfinite(pu) && std::isfinite(pv)) {
                grid.u[idx] = pu;
                grid.v[idx] = pv;
                if (!any_finite) {
                    umin = umax = pu;
                    vmin = vmax = pv;
                    any_finite = true;
                } else {
                    umin = std::min(umin, pu);
                    umax = std::max(umax, pu);
                    vmin = std::min(vmin, pv);
                    vmax = std::max(vmax, pv);
                }
            } else {
                grid.u[idx] = nan;
                grid.v[idx] = nan;
            }
        }
    }
    if (!any_finite)
        throw NoCandidates("every grid image overflowed; shrink --box or rescale the map");

    const double wu = (umax > umin) ? (umax - umin) * cfg.bucket_scale : 1.0;
    const double wv = (vmax > vmin) ? (vmax - vmin) * cfg.bucket_scale : 1.0;
    const std::int64_t cell_max = std::int64_t(std::floor(1.0 / cfg.bucket_scale));

    auto cell_of = [cell_max](double value, double lo, double width) {
        const auto c = std::int64_t(std::floor((value - lo) / width));
        return std::uint64_t(std::clamp<std::int64_t>(c, 0, cell_max));
    };

    std::vector<std::pair<std::uint64_t, std::uint32_t>> cells;
    cells.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (std::isnan(grid.u[idx])) continue;
        const std::uint64_t key =
            (cell_of(grid.u[idx], umin, wu) << 32) | cell_of(grid.v[idx], vmin, wv);
        cells.emplace_back(key, std::uint32_t(idx));
    }
    std::sort(cells.begin(), cells.end());

    std::vector<std::size_t> starts; // group boundaries in cells
    for (std::size_t k = 0; k < cells.size(); ++k)
        if (k == 0 || cells[k].first != cells[k - 1].first) starts.push_back(k);
    starts.push_back(cells.size());

    auto group_of = [&](std::uint64_t key) -> std::pair<std::size_t, std::size_t> {
        const auto lo = std::lower_bound(
            cells.begin(), cells.end(), key,
            [](const std::pair<std::uint64_t, std::uint32_t>& e, std::uint64_t k) {
                return e.first < k;
            });
        std::size_t b = std::size_t(lo - cells.begin());
        std::size_t e = b;
        while (e < cells.size() && cells[e].first == key) ++e;
        return {b, e};
    };

    CandidateHeap heap(cfg.max_candidates);
    auto offer = [&](std::uint32_t i, std::uint32_t j) {
        if (i > j) std::swap(i, j);
        const double sep = std::max(std::abs(grid.x_of(i) - grid.x_of(j)),
                                    std::abs(grid.y_of(i) - grid.y_of(j)));
        if (sep < cfg.min_separation) return;
        const double res =
            std::max(std::abs(grid.u[i] - grid.u[j]), std::abs(grid.v[i] - grid.v[j]));
        heap.offer({res, i, j});
    };

    for (std::size_t g = 0; g + 1 < starts.size(); ++g) {
        const std::size_t b = starts[g], e = starts[g + 1];
        const std::size_t m = e - b;
        if (m <= kSmallCell) {
            for (std::size_t a = b; a < e; ++a)
                for (std::size_t b2 = a + 1; b2 < e; ++b2)
                    offer(cells[a].second, cells[b2].second);
        } else {
            // Oversized cell: pair each member only with its next kWindow
            // successors in image order, bounding the work at m * kWindow.
            std::vector<std::uint32_t> by_image(m);
            for (std::size_t k = 0; k < m; ++k) by_image[k] = cells[b + k].second;
            std::sort(by_image.begin(), by_image.end(), [&](std::uint32_t a, std::uint32_t c) {
                if (grid.u[a] != grid.u[c]) return grid.u[a] < grid.u[c];
                if (grid.v[a] != grid.v[c]) return grid.v[a] < grid.v[c];
                return a < c;
            });
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t k = a + 1; k < std::min(m, a + 1 + kWindow); ++k)
                    offer(by_image[a], by_image[k]);
        }

        // Cross pairs with the four lexicographically-forward neighbor cells,
        // small cells only.
        if (m <= kSmallCell) {
            const std::uint64_t key = cells[b].first;
            const std::uint64_t cu = key >> 32, cv = key & 0xffffffffu;
            const std::pair<std::int64_t, std::int64_t> offsets[] = {{0, 1}, {1, -1}, {1, 0}, {1, 1}};
            for (const auto& [du, dv] : offsets) {
                const std::int64_t nu = std::int64_t(cu) + du, nv = std::int64_t(cv) + dv;
                if (nu < 0 || nv < 0 || nu > cell_max || nv > cell_max) continue;
                const auto [nb, ne] = group_of((std::uint64_t(nu) << 32) | std::uint64_t(nv));
                if (ne - nb == 0 || ne - nb > kSmallCell) continue;
                for (std::size_t a = b; a < e; ++a)
                    for (std::size_t c = nb; c < ne; ++c) offer(cells[a].second, cells[c].second);
            }
        }
    }

    const auto entries = heap.take_sorted();
    if (entries.empty())
        throw NoCandidates("no collision candidates on the grid; widen --box, raise --grid, "
                           "or raise --bucket-scale");

    std::vector<CandidatePair> out;
    out.reserve(entries.size());
    for (const auto& e : entries)
        out.push_back({grid.x_of(e.i), grid.y_of(e.i), grid.x_of(e.j), grid.y_of(e.j),
                       e.residual});
    return out;
}

std::vector<CandidatePair> find_collision_candidates(const ConstructionResult& result,
                                                     const SearchConfig& cfg) {
    return find_collision_candidates(result.base.p, result.q, cfg);
}

namespace {

BigRat eval_residual_exact(const BiPoly& poly, const WitnessPair& w) {
    const BigRat d = poly.evaluate_exact(w.x1_rat, w.y1_rat) -
                     poly.evaluate_exact(w.x2_rat, w.y2_rat);
    return d.abs();
}

} // namespace

WitnessPair newton_refine(const BiPoly& p, const BiPoly& q, std::pair<double, double> z1,
                          std::pair<double, double> z2_init, const SearchConfig& cfg) {
    cfg.validate();
    const MapEvaluator ev(p, q);
    const auto [f1u, f1v] = ev.eval(z1.first, z1.second);
    if (!std::isfinite(f1u) || !std::isfinite(f1v))
        throw NoConvergence("image of the frozen point is not finite");

    double zx = z2_init.first, zy = z2_init.second;
    std::vector<double> norms;
    bool converged = false;
    double gnorm = 0.0;
    for (unsigned it = 0; it <= cfg.newton_max_iter; ++it) {
        const auto [gu, gv] = ev.eval(zx, zy);
        const double g1 = gu - f1u, g2 = gv - f1v;
        gnorm = std::max(std::abs(g1), std::abs(g2));
        if (!std::isfinite(gnorm)) throw NoConvergence("iterate image overflowed");
        norms.push_back(gnorm);
        if (gnorm <= cfg.newton_tol) {
            converged = true;
            break;
        }
        if (it == cfg.newton_max_iter) break;
        double jac[4];
        ev.jacobian_at(zx, zy, jac);
        const double det = jac[0] * jac[3] - jac[1] * jac[2];
        if (!std::isfinite(det) || det == 0.0)
            throw NoConvergence("singular Newton system at the iterate");
        zx -= (g1 * jac[3] - g2 * jac[1]) / det;
        zy -= (jac[0] * g2 - jac[2] * g1) / det;
        if (!std::isfinite(zx) || !std::isfinite(zy))
            throw NoConvergence("iterate left the finite plane");
    }
    if (!converged)
        throw NoConvergence("newton budget of " + std::to_string(cfg.newton_max_iter) +
                            " iterations exhausted (‖G‖∞ = " + std::to_string(gnorm) + ")");

    const double separation =
        std::max(std::abs(z1.first - zx), std::abs(z1.second - zy));
    if (separation < cfg.min_separation)
        throw Collapsed("refined point collapsed onto the frozen point (separation " +
                        std::to_string(separation) + ")");

    WitnessPair w;
    w.x1 = z1.first;
    w.y1 = z1.second;
    w.x2 = zx;
    w.y2 = zy;
    w.x1_rat = BigRat::from_double_rounded(w.x1);
    w.y1_rat = BigRat::from_double_rounded(w.y1);
    w.x2_rat = BigRat::from_double_rounded(w.x2);
    w.y2_rat = BigRat::from_double_rounded(w.y2);
    w.image_residual_float = gnorm;
    w.image_residual_exact =
        std::max(eval_residual_exact(p, w), eval_residual_exact(q, w));
    w.separation = separation;
    w.min_separation_exact = cfg.min_separation_exact;
    w.newton_contraction_ok = true;
    for (std::size_t k = 0; k + 1 < norms.size(); ++k)
        if (norms[k] <= 1e-4 && norms[k + 1] > norms[k] / 10.0) w.newton_contraction_ok = false;
    return w;
}

WitnessPair newton_refine(const ConstructionResult& result, std::pair<double, double> z1,
                          std::pair<double, double> z2_init, const SearchConfig& cfg) {
    return newton_refine(result.base.p, result.q, z1, z2_init, cfg);
}

bool certify_witness(const WitnessPair& pair, const BigRat& exact_tol) {
    if (pair.image_residual_exact > exact_tol) return false;
    const BigRat sep = std::max((pair.x1_rat - pair.x2_rat).abs(),
                                (pair.y1_rat - pair.y2_rat).abs());
    return sep >= pair.min_separation_exact;
}

WitnessReport run_witness_search(const BiPoly& p, const BiPoly& q, const SearchConfig& cfg) {
    const auto candidates = find_collision_candidates(p, q, cfg);

    WitnessReport report;
    report.candidates = unsigned(candidates.size());
    std::vector<WitnessPair> healthy, demoted;
    for (const CandidatePair& cand : candidates) {
        if (healthy.size() >= cfg.max_witnesses) break;
        WitnessPair w;
        bool have = false;
        try {
            w = newton_refine(p, q, {cand.x1, cand.y1}, {cand.x2, cand.y2}, cfg);
            have = true;
        } catch (const Collapsed&) {
            ++report.collapsed;
        } catch (const NoConvergence&) {
            ++report.no_convergence;
        }
        if (!have) {
            // Retry with the roles swapped; the frozen point changes the
            // Newton basin.
            try {
                w = newton_refine(p, q, {cand.x2, cand.y2}, {cand.x1, cand.y1}, cfg);
                have = true;
            } catch (const Collapsed&) {
                ++report.collapsed;
            } catch (const NoConvergence&) {
                ++report.no_convergence;
            }
        }
        if (!have) continue;
        ++report.refined;
        if (!certify_witness(w, cfg.exact_tol)) {
            ++report.uncertified;
            continue;
        }
        if (w.newton_contraction_ok) {
            healthy.push_back(w);
        } else {
            ++report.demoted;
            if (demoted.size() < cfg.max_witnesses) demoted.push_back(w);
        }
    }

    report.witnesses = std::move(healthy);
    for (const WitnessPair& w : demoted) {
        if (report.witnesses.size() >= cfg.max_witnesses) break;
        report.witnesses.push_back(w);
    }
    return report;
}

WitnessReport run_witness_search(const ConstructionResult& result, const SearchConfig& cfg) {
    return run_witness_search(result.base.p, result.q, cfg);
}

} // namespace pinchuk
