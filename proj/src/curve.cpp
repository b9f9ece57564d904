#include "maxcurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxcurve {

PolygonalCurve::PolygonalCurve(DoubleSequence seq) : seq_(std::move(seq)) {
    if (seq_.pts.size() < 2) throw std::invalid_argument("PolygonalCurve: need at least 2 nodes");
}

Cx PolygonalCurve::eval(double t) const { return eval_with_derivative(t).value; }

CurveSample PolygonalCurve::eval_with_derivative(double t) const {
    if (!(t >= t_min() && t <= t_max()))
        throw std::domain_error("PolygonalCurve: parameter outside domain");
    long n = static_cast<long>(std::floor(t));
    if (n >= seq_.n_max) n = seq_.n_max - 1;  // left derivative at the right end
    const Cx p = seq_.point(n);
    const Cx d = seq_.point(n + 1) - p;
    return {p + (t - static_cast<double>(n)) * d, d};
}

PolygonalBuild build_polygonal(DoubleSequence seq) {
    MarkerParams markers;
    auto add = [&](const std::vector<long>& idx, double angle, Side side) {
        for (long m : idx)
            markers.push_back({static_cast<double>(m) + 0.5, angle, side});
    };
    constexpr double half_pi = std::numbers::pi / 2.0;
    add(seq.markers_h_minus, 0.0, Side::Minus);
    add(seq.markers_v_minus, half_pi, Side::Minus);
    add(seq.markers_h_plus, 0.0, Side::Plus);
    add(seq.markers_v_plus, half_pi, Side::Plus);
    std::sort(markers.begin(), markers.end(),
              [](const MarkerParam& a, const MarkerParam& b) { return a.s < b.s; });
    return {PolygonalCurve(std::move(seq)), std::move(markers)};
}

}  // namespace maxcurve
