#pragma once

#include <vector>

#include "maxcurve/curve.hpp"

namespace maxcurve {

/// Corner replacement on [n - delta, n + delta]. The value is the cubic
/// Hermite blend through the two boundary samples, so it matches the adjacent
/// linear pieces bit-exactly at the window edges; the derivative is evaluated
/// as the straight interpolation (1-u) d1 + u d2, which therefore never
/// leaves the segment [d1, d2] in the complex plane.
struct CornerBlend {
    long node = 0;        // corner at integer parameter n
    double half_width = 0.0;  // delta in (0, 1/4]
    Cx d1, d2;            // incoming and outgoing derivatives
    Cx v0, v1;            // curve values at n - delta and n + delta
    Cx corner;            // p_n

    bool contains(double t) const {
        return t > static_cast<double>(node) - half_width &&
               t < static_cast<double>(node) + half_width;
    }
    CurveSample eval(double t) const;
};

/// delta_n = min(1/4, eps_n / (|d1| + |d2|)), which caps the blend deviation
/// below eps_n and keeps the window clear of the interval midpoints.
double choose_delta(double budget, Cx d1, Cx d2);

/// C^1 curve: the polygonal base outside all corner windows, Hermite blends
/// inside, with the per-corner budget eps_n = 1/(|n|+1).
class SmoothCurve {
  public:
    explicit SmoothCurve(PolygonalCurve base);

    double t_min() const { return base_.t_min(); }
    double t_max() const { return base_.t_max(); }

    CurveSample eval(double t) const;
    Cx value(double t) const { return eval(t).value; }

    const PolygonalCurve& base() const { return base_; }
    const std::vector<CornerBlend>& blends() const { return blends_; }
    const CornerBlend& blend_at_node(long n) const;

  private:
    PolygonalCurve base_;
    std::vector<CornerBlend> blends_;  // one per interior integer node
};

inline SmoothCurve smooth_curve(PolygonalCurve base) { return SmoothCurve(std::move(base)); }

}  // namespace maxcurve
