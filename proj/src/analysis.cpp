#include "maxcurve/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxcurve {

double wrap_to_pi(double angle) {
    angle = std::fmod(angle, 2.0 * std::numbers::pi);
    if (angle > std::numbers::pi) angle -= 2.0 * std::numbers::pi;
    if (angle <= -std::numbers::pi) angle += 2.0 * std::numbers::pi;
    return angle;
}

ClusterReport cluster_estimate(const ValueFn& curve, double window_lo, double window_hi,
                               int samples, const NetLevel& target) {
    if (!(window_lo < window_hi)) throw std::invalid_argument("cluster_estimate: empty window");
    if (samples < 16) throw std::invalid_argument("cluster_estimate: samples >= 16 required");
    std::vector<Cx> image;
    image.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double t =
            window_lo + (window_hi - window_lo) * static_cast<double>(k) / (samples - 1);
        image.push_back(curve(t));
    }
    ClusterReport rep;
    rep.window_lo = window_lo;
    rep.window_hi = window_hi;
    rep.samples = samples;
    rep.target_level = target.level;
    rep.hausdorff_to_target = hausdorff_chordal(image, target.points);
    return rep;
}

std::vector<double> tangent_arg_profile(const CurveFn& curve, const std::vector<double>& ts) {
    if (ts.size() < 2) throw std::invalid_argument("tangent_arg_profile: need >= 2 parameters");
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        if (!(ts[i] < ts[i + 1]))
            throw std::invalid_argument("tangent_arg_profile: parameters must be increasing");

    std::vector<double> out;
    out.reserve(ts.size());
    double prev_raw = std::arg(curve(ts[0]).derivative);
    out.push_back(prev_raw);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double raw = std::arg(curve(ts[i]).derivative);
        const double gap = wrap_to_pi(raw - prev_raw);
        if (std::abs(gap) >= std::numbers::pi * (1.0 - 1e-9))
            throw std::invalid_argument(
                "tangent_arg_profile: spacing too coarse to unwrap, refine the parameter grid");
        out.push_back(out.back() + gap);
        prev_raw = raw;
    }
    return out;
}

DivergenceReport tangent_divergence_report(const CurveFn& curve, const MarkerParams& markers,
                                           double tol) {
    int h_minus = 0, v_minus = 0, h_plus = 0, v_plus = 0;
    for (const MarkerParam& m : markers) {
        const bool horizontal = m.expected_angle == 0.0;
        if (m.side == Side::Minus)
            (horizontal ? h_minus : v_minus)++;
        else
            (horizontal ? h_plus : v_plus)++;
    }
    if (h_minus < 2 || v_minus < 2 || h_plus < 2 || v_plus < 2)
        throw std::invalid_argument(
            "tangent_divergence_report: need >= 2 markers of each orientation per side");

    MarkerParams sorted = markers;
    std::sort(sorted.begin(), sorted.end(),
              [](const MarkerParam& a, const MarkerParam& b) { return a.s < b.s; });

    DivergenceReport rep;
    rep.tol = tol;
    double lo_minus = 1e300, hi_minus = -1e300, lo_plus = 1e300, hi_plus = -1e300;
    int prev_kind_minus = -1, prev_kind_plus = -1;
    for (const MarkerParam& m : sorted) {
        const double angle = wrap_to_pi(std::arg(curve(m.s).derivative));
        rep.marker_params.push_back(m.s);
        rep.marker_angles.push_back(angle);
        const double err = std::abs(wrap_to_pi(angle - m.expected_angle));
        if (err > tol) rep.angles_ok = false;
        const int kind = m.expected_angle == 0.0 ? 0 : 1;
        if (m.side == Side::Minus) {
            lo_minus = std::min(lo_minus, angle);
            hi_minus = std::max(hi_minus, angle);
            if (prev_kind_minus >= 0 && prev_kind_minus != kind) ++rep.oscillations_minus;
            prev_kind_minus = kind;
        } else {
            lo_plus = std::min(lo_plus, angle);
            hi_plus = std::max(hi_plus, angle);
            if (prev_kind_plus >= 0 && prev_kind_plus != kind) ++rep.oscillations_plus;
            prev_kind_plus = kind;
        }
    }
    rep.spread_minus = hi_minus - lo_minus;
    rep.spread_plus = hi_plus - lo_plus;
    rep.pass = rep.angles_ok && rep.oscillations_minus >= 2 && rep.oscillations_plus >= 2;
    return rep;
}

}  // namespace maxcurve
