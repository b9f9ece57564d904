#include "maxcurve/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxcurve {

CurveSample CornerBlend::eval(double t) const {
    const double lo = static_cast<double>(node) - half_width;
    const double hi = static_cast<double>(node) + half_width;
    if (!(t >= lo && t <= hi)) throw std::domain_error("CornerBlend: t outside window");
    const double w = 2.0 * half_width;
    const double u = (t - lo) / w;

    // Hermite basis; at u = 0 and u = 1 the weights collapse to exact 0/1.
    const double h00 = (2.0 * u - 3.0) * u * u + 1.0;
    const double h10 = ((u - 2.0) * u + 1.0) * u;
    const double h01 = (3.0 - 2.0 * u) * u * u;
    const double h11 = (u - 1.0) * u * u;
    const Cx value = h00 * v0 + (h10 * w) * d1 + h01 * v1 + (h11 * w) * d2;
    const Cx derivative = (1.0 - u) * d1 + u * d2;
    return {value, derivative};
}

double choose_delta(double budget, Cx d1, Cx d2) {
    if (!(budget > 0.0)) throw std::invalid_argument("choose_delta: budget must be positive");
    const double scale = std::abs(d1) + std::abs(d2);
    if (scale == 0.0) return 0.25;
    return std::min(0.25, budget / scale);
}

SmoothCurve::SmoothCurve(PolygonalCurve base) : base_(std::move(base)) {
    const DoubleSequence& seq = base_.sequence();
    blends_.reserve(static_cast<std::size_t>(seq.n_max - seq.n_min - 1));
    for (long n = seq.n_min + 1; n < seq.n_max; ++n) {
        CornerBlend b;
        b.node = n;
        b.corner = seq.point(n);
        b.d1 = seq.point(n) - seq.point(n - 1);
        b.d2 = seq.point(n + 1) - seq.point(n);
        const double budget = 1.0 / (static_cast<double>(std::llabs(n)) + 1.0);
        b.half_width = choose_delta(budget, b.d1, b.d2);
        // boundary samples straight off the linear pieces, so the blend glues
        // to them without any recomputed expression
        b.v0 = base_.eval(static_cast<double>(n) - b.half_width);
        b.v1 = base_.eval(static_cast<double>(n) + b.half_width);
        blends_.push_back(b);
    }
}

const CornerBlend& SmoothCurve::blend_at_node(long n) const {
    const DoubleSequence& seq = base_.sequence();
    if (n <= seq.n_min || n >= seq.n_max)
        throw std::invalid_argument("blend_at_node: not an interior node");
    return blends_[static_cast<std::size_t>(n - seq.n_min - 1)];
}

CurveSample SmoothCurve::eval(double t) const {
    if (!(t >= t_min() && t <= t_max()))
        throw std::domain_error("SmoothCurve: parameter outside domain");
    const DoubleSequence& seq = base_.sequence();
    const long nearest = std::lround(t);
    if (nearest > seq.n_min && nearest < seq.n_max) {
        const CornerBlend& b = blends_[static_cast<std::size_t>(nearest - seq.n_min - 1)];
        if (b.contains(t)) return b.eval(t);
    }
    return base_.eval_with_derivative(t);
}

}  // namespace maxcurve
