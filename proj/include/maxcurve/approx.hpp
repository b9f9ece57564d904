#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "maxcurve/curve.hpp"

namespace maxcurve {

using CurveFn = std::function<CurveSample(double)>;

/// Local refinement of the weight: every window covering t scales the
/// tolerance there by `scale` (used to sharpen the fit near markers).
struct TightenWindow {
    double center = 0.0;
    double half_width = 1.0;
    double scale = 0.25;
};

/// Positive weight eps(t) bounding the simultaneous value/derivative
/// approximation error. The base profile is nonincreasing in |t|; an optional
/// floor relaxes the far tail when the requested profile is unattainable at
/// the degree cap.
struct ErrorSchedule {
    enum class Base { QuadraticDecay, Uniform };
    Base base = Base::QuadraticDecay;
    double uniform_value = 1.0;
    double floor = 0.0;
    std::vector<TightenWindow> windows;

    static ErrorSchedule quadratic_decay() { return ErrorSchedule{}; }
    static ErrorSchedule uniform(double eps) {
        ErrorSchedule s;
        s.base = Base::Uniform;
        s.uniform_value = eps;
        return s;
    }

    double base_at(double t) const;
    double eval(double t) const;
    void tighten(double center, double half_width, double scale);
};

/// Chebyshev series on [-T, T] approximating the curve and its derivative,
/// with certified maximum weighted errors over the verification grid.
struct PolynomialApproximant {
    double t_bound = 0.0;  // T
    int degree = 0;
    std::vector<Cx> coeff;        // value series, length degree+1
    std::vector<Cx> deriv_coeff;  // derivative series, length degree
    double cert_value_err = 0.0;  // weighted units; <= 1 when certified
    double cert_deriv_err = 0.0;

    /// Stable Clenshaw evaluation of value and derivative.
    /// Throws std::domain_error outside [-T, T].
    CurveSample eval(double t) const;
};

inline CurveSample eval_poly(const PolynomialApproximant& f, double t) { return f.eval(t); }

/// Raised when the degree cap is reached without meeting the schedule.
/// Carries the best achieved weighted errors and the smallest uniform floor
/// under which the best fit would certify, so the caller can relax and retry.
struct FitFailure : std::runtime_error {
    double best_value_err;
    double best_deriv_err;
    int best_degree;
    double feasible_floor;
    FitFailure(double ve, double de, int deg, double fl);
};

/// Discrete least squares in the Chebyshev basis over an oversampled
/// first-kind node grid (factor 4), degree doubling from 8 up to max_degree.
/// Certification runs on the disjoint second-kind grid; the lowest passing
/// degree is returned with trailing zero coefficients trimmed.
PolynomialApproximant fit(const CurveFn& curve, double t_bound, const ErrorSchedule& schedule,
                          int max_degree);

/// Weighted errors of an approximant against the curve on an n-point
/// second-kind grid (value, derivative), in units of the schedule.
std::pair<double, double> verify_against(const PolynomialApproximant& f, const CurveFn& curve,
                                         const ErrorSchedule& schedule, int grid_points);

struct MarkerCheck {
    double s = 0.0;
    double expected = 0.0;
    double measured = 0.0;
    double error = 0.0;  // wrapped |measured - expected|
    bool pass = false;
};

struct MarkerReport {
    double tol = 0.0;
    std::vector<MarkerCheck> checks;
    bool all_pass = true;
};

/// Checks arg f'(s) against each marker's expected angle (wrapped distance).
/// Markers must lie within [-T+1, T-1].
MarkerReport marker_angle_certify(const PolynomialApproximant& f, const MarkerParams& markers,
                                  double tol);

}  // namespace maxcurve
