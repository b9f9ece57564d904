#pragma once

#include <functional>
#include <vector>

#include "maxcurve/approx.hpp"
#include "maxcurve/continuum.hpp"
#include "maxcurve/curve.hpp"

namespace maxcurve {

using ValueFn = std::function<Cx(double)>;

/// Window-Hausdorff estimate: the image of a parameter window sampled
/// uniformly, measured against a target net in the chordal metric.
struct ClusterReport {
    double window_lo = 0.0;
    double window_hi = 0.0;
    int samples = 0;
    int target_level = 1;
    double hausdorff_to_target = 0.0;
};

ClusterReport cluster_estimate(const ValueFn& curve, double window_lo, double window_hi,
                               int samples, const NetLevel& target);

/// Continuous unwrapping of arg(curve'(t)) along the ordered parameters:
/// each output differs from the raw argument by a multiple of 2 pi and
/// consecutive outputs differ by less than pi. Throws when the spacing is too
/// coarse to unwrap unambiguously.
std::vector<double> tangent_arg_profile(const CurveFn& curve, const std::vector<double>& ts);

/// Tangent-direction diagnostic at the markers: horizontal markers must point
/// within tol of angle 0, vertical ones within tol of pi/2, and each side must
/// alternate between the two families at least twice. A curve whose tangent
/// argument settles to a limit eventually fails the oscillation criterion.
struct DivergenceReport {
    bool pass = false;
    double tol = 0.0;
    std::vector<double> marker_angles;   // wrapped measured angles, in s order
    std::vector<double> marker_params;
    double spread_minus = 0.0;  // max - min of marker angles per side
    double spread_plus = 0.0;
    int oscillations_minus = 0;  // H <-> V alternations in parameter order
    int oscillations_plus = 0;
    bool angles_ok = true;
};

DivergenceReport tangent_divergence_report(const CurveFn& curve, const MarkerParams& markers,
                                           double tol);

double wrap_to_pi(double angle);

}  // namespace maxcurve
