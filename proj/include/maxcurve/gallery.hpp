#pragma once

#include <functional>
#include <string>

#include "maxcurve/approx.hpp"
#include "maxcurve/sphere.hpp"

namespace maxcurve {

/// Closed-form curve with its exact analytic derivative and declared ends.
struct NamedCurve {
    std::string name;
    std::function<Cx(double)> value;
    std::function<Cx(double)> derivative;
    SpherePoint initial_end;
    SpherePoint terminal_end;

    CurveSample sample(double t) const { return {value(t), derivative(t)}; }
};

/// The four explicit curves with prescribed ends:
///   1: exp(-t^2 + it), ends (0, 0)
///   2: reparametrized oscillator with ends (-1, +1)
///   3: exp(t + it), ends (0, infinity)
///   4: exp(t^2 + it), ends (infinity, infinity)
NamedCurve example_curve(int which);

/// psi(s) = s exp(1/(1-s^2)) on (-1, 1): strictly increasing onto the reals.
double psi(double s);
double psi_derivative(double s);

/// Total inverse of psi: bracketing bisection refined by Newton polish,
/// |psi(result) - x| <= 1e-12 max(1, |x|).
double psi_inverse(double x);

/// Curve 2 written in the s parameter (s in (-1,1)); the t-parametrized curve
/// is this composed with psi_inverse. Exposed so end behavior can be checked
/// arbitrarily close to s = +-1, where the t parameter overflows.
Cx example2_in_s(double s);

/// Conformal map of the doubly-slit plane (slits [+i,+i inf), [-i,-i inf))
/// onto the strip |Im w| < c:  h(z) = (2c/pi) asinh(z), principal branch.
/// Real, increasing, and h(0) = 0 on the real axis. Throws on a slit point.
Cx strip_map(double c, Cx z);

/// Inverse of strip_map on the open strip.
Cx strip_map_inverse(double c, Cx w);

/// h'(u) = (2c/pi)/sqrt(1+u^2), real and positive along the real axis.
double strip_map_real_derivative(double c, double u);

/// g(u) = f(h(u)) and g'(u) = f'(h(u)) h'(u); arg g' = arg f' at h(u) since
/// h' is real positive. Throws when h(u) leaves the approximant interval.
CurveSample transfer(const PolynomialApproximant& f, double c, double u);

/// Largest half-width c = 2^{-k}, k = 0..7, such that |f'| is nonzero on a
/// sampled grid of the rectangle [-T, T] x [-c, c] (dyadic search, 8 steps).
/// Returns 0 when even the thinnest grid hits a zero.
double strip_half_width(const PolynomialApproximant& f, int t_samples = 257, int v_samples = 9);

}  // namespace maxcurve
