#pragma once

#include <utility>
#include <vector>

#include "maxcurve/sequence.hpp"

namespace maxcurve {

/// Value and derivative of a curve at one parameter.
struct CurveSample {
    Cx value;
    Cx derivative;
};

/// Piecewise-linear curve through the double sequence: on [n, n+1],
/// eta(t) = p_n + (t - n) (p_{n+1} - p_n), so eta(n) = p_n bit-exactly.
/// The derivative on (n, n+1) is the node difference; at integer parameters
/// the right derivative is used except at the right domain end.
class PolygonalCurve {
  public:
    explicit PolygonalCurve(DoubleSequence seq);

    double t_min() const { return static_cast<double>(seq_.n_min); }
    double t_max() const { return static_cast<double>(seq_.n_max); }

    Cx eval(double t) const;
    CurveSample eval_with_derivative(double t) const;

    const DoubleSequence& sequence() const { return seq_; }

  private:
    DoubleSequence seq_;
};

/// Marker midpoint parameter with its certified tangent direction.
struct MarkerParam {
    double s = 0.0;
    double expected_angle = 0.0;  // 0 (horizontal) or pi/2 (vertical)
    Side side = Side::Plus;
};

using MarkerParams = std::vector<MarkerParam>;

struct PolygonalBuild {
    PolygonalCurve curve;
    MarkerParams markers;
};

/// Markers sit at the midpoints n + 1/2 of the marker segments, where the
/// derivative argument is exactly 0 or pi/2.
PolygonalBuild build_polygonal(DoubleSequence seq);

}  // namespace maxcurve
