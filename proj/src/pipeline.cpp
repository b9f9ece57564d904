#include "maxcurve/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "maxcurve/curve.hpp"

namespace maxcurve {

namespace {

PolynomialApproximant fit_with_relaxation(const CurveFn& sigma, double t_bound,
                                          ErrorSchedule& schedule, int max_degree, int* rounds,
                                          bool* certified) {
    for (;;) {
        try {
            PolynomialApproximant f = fit(sigma, t_bound, schedule, max_degree);
            *certified = schedule.floor <= kMaxScheduleFloor;
            return f;
        } catch (const FitFailure& e) {
            ++*rounds;
            const double proposal = std::max(e.feasible_floor * 1.25, schedule.floor * 2.0);
            if (*rounds > 8 || proposal > kMaxScheduleFloor) {
                // Emit a best-effort approximant so artifacts can still be
                // written; the run is reported uncertified.
                schedule.floor = std::max(2.0 * e.feasible_floor, 1.0);
                PolynomialApproximant f = fit(sigma, t_bound, schedule, max_degree);
                *certified = false;
                return f;
            }
            schedule.floor = proposal;
        }
    }
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config) {
    if (config.n < 8) throw std::invalid_argument("config: N >= 8 required");
    const double t_bound = config.effective_t();
    if (!(t_bound >= 1.0 && t_bound <= static_cast<double>(config.n) - 1.0))
        throw std::invalid_argument("config: T must satisfy 1 <= T <= N-1");

    DoubleSequence seq = build_double_sequence(config.kminus, config.kplus, config.n, config.seed);
    const std::vector<BlockSpan> minus_blocks = seq.minus_blocks;
    const std::vector<BlockSpan> plus_blocks = seq.plus_blocks;

    PolygonalBuild poly = build_polygonal(std::move(seq));
    SmoothCurve sigma = smooth_curve(std::move(poly.curve));

    PipelineResult res{
        .markers = poly.markers,
        .markers_in_range = {},
        .sigma = std::move(sigma),
        .approximant = {},
        .settled_schedule = ErrorSchedule::quadratic_decay(),
        .relax_rounds = 0,
        .marker_rounds = 0,
        .fit_certified = false,
        .marker_report = {},
        .divergence = {},
        .clusters = {},
        .clusters_pass = true,
        .certified = false,
        .fit_seconds = 0.0,
    };
    const CurveFn sigma_eval = [&res](double t) { return res.sigma.eval(t); };

    for (const MarkerParam& m : res.markers)
        if (m.s >= -t_bound + 1.0 && m.s <= t_bound - 1.0) res.markers_in_range.push_back(m);

    const auto t0 = std::chrono::steady_clock::now();
    res.approximant = fit_with_relaxation(sigma_eval, t_bound, res.settled_schedule,
                                          config.max_degree, &res.relax_rounds,
                                          &res.fit_certified);

    res.marker_report =
        marker_angle_certify(res.approximant, res.markers_in_range, config.marker_tol);
    while (!res.marker_report.all_pass && res.marker_rounds < 3) {
        ++res.marker_rounds;
        for (const MarkerCheck& c : res.marker_report.checks)
            if (!c.pass) res.settled_schedule.tighten(c.s, 1.0, 0.25);
        bool cert = false;
        res.approximant = fit_with_relaxation(sigma_eval, t_bound, res.settled_schedule,
                                              config.max_degree, &res.relax_rounds, &cert);
        res.fit_certified = res.fit_certified && cert;
        res.marker_report =
            marker_angle_certify(res.approximant, res.markers_in_range, config.marker_tol);
    }
    res.fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const CurveFn gamma = [&res](double t) { return res.approximant.eval(t); };
    const ValueFn gamma_value = [&res](double t) { return res.approximant.eval(t).value; };

    res.divergence = tangent_divergence_report(gamma, res.markers_in_range, config.marker_tol);

    // Window-Hausdorff convergence per block against the block's net level,
    // clipped to the approximant interval. Slack: net/step/insertion budget
    // 3/j, the smoothing budget at the block's innermost index, and twice the
    // settled weight over the window.
    auto check_blocks = [&](const std::vector<BlockSpan>& blocks, const ContinuumSpec& spec,
                            Side side) {
        for (const BlockSpan& b : blocks) {
            const double lo = std::max(static_cast<double>(b.first), -t_bound);
            const double hi = std::min(static_cast<double>(b.last), t_bound);
            if (!(hi - lo >= 1.0)) continue;  // block out of the window
            const NetLevel net = net_at(spec, b.level);
            BlockClusterCheck chk;
            chk.side = side;
            chk.report = cluster_estimate(gamma_value, lo, hi, 256, net);
            const double min_abs_n = std::min(std::abs(lo), std::abs(hi));
            const double eps_max = std::max(res.settled_schedule.eval(lo),
                                            res.settled_schedule.eval(hi));
            chk.allowed = 3.0 / b.level + 1.0 / (min_abs_n + 1.0) + 2.0 * eps_max;
            chk.pass = chk.report.hausdorff_to_target < chk.allowed;
            res.clusters_pass = res.clusters_pass && chk.pass;
            res.clusters.push_back(std::move(chk));
        }
    };
    check_blocks(minus_blocks, config.kminus, Side::Minus);
    check_blocks(plus_blocks, config.kplus, Side::Plus);

    res.certified = res.fit_certified && res.marker_report.all_pass && res.divergence.pass &&
                    res.clusters_pass;
    return res;
}

}  // namespace maxcurve
