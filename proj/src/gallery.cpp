#include "maxcurve/gallery.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxcurve {

namespace {

constexpr double kPsiExpCap = 700.0;  // exp argument beyond which psi overflows

// exp(1/(1-s^2)) with a saturating guard for |s| -> 1.
double psi_exp_term(double s, bool* saturated) {
    const double denom = 1.0 - s * s;
    const double arg = 1.0 / denom;
    if (arg > kPsiExpCap) {
        if (saturated) *saturated = true;
        return std::exp(kPsiExpCap);
    }
    if (saturated) *saturated = false;
    return std::exp(arg);
}

}  // namespace

double psi(double s) {
    if (!(s > -1.0 && s < 1.0)) throw std::domain_error("psi: |s| < 1 required");
    return s * psi_exp_term(s, nullptr);
}

double psi_derivative(double s) {
    if (!(s > -1.0 && s < 1.0)) throw std::domain_error("psi_derivative: |s| < 1 required");
    const double d = 1.0 - s * s;
    return psi_exp_term(s, nullptr) * (1.0 + 2.0 * s * s / (d * d));
}

double psi_inverse(double x) {
    if (x == 0.0) return 0.0;
    // psi is odd and strictly increasing; bracket by sign.
    double lo, hi;
    if (x > 0.0) {
        lo = 0.0;
        hi = 1.0 - 1e-17;
    } else {
        lo = -1.0 + 1e-17;
        hi = 0.0;
    }
    auto value = [&](double s) {
        bool sat = false;
        const double e = psi_exp_term(s, &sat);
        return sat ? (s > 0 ? 1e306 : -1e306) : s * e;
    };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (value(mid) < x)
            lo = mid;
        else
            hi = mid;
    }
    double s = 0.5 * (lo + hi);
    // Newton polish; the bisection result is already well within the basin.
    for (int it = 0; it < 4; ++it) {
        const double f = value(s) - x;
        const double fp = psi_derivative(s);
        if (!std::isfinite(f) || !std::isfinite(fp) || fp == 0.0) break;
        double next = s - f / fp;
        if (!(next > -1.0 && next < 1.0)) break;
        s = next;
    }
    return s;
}

Cx example2_in_s(double s) {
    if (!(s > -1.0 && s < 1.0)) throw std::domain_error("example2_in_s: |s| < 1 required");
    const double q = s * s - 1.0;  // negative on (-1,1)
    const double osc_arg = std::exp(-1.0 / q);
    return Cx(s, q * std::sin(osc_arg));
}

NamedCurve example_curve(int which) {
    NamedCurve c;
    switch (which) {
        case 1:
            c.name = "exp(-t^2+it)";
            c.value = [](double t) { return std::exp(Cx(-t * t, t)); };
            c.derivative = [](double t) { return Cx(-2.0 * t, 1.0) * std::exp(Cx(-t * t, t)); };
            c.initial_end = SpherePoint::finite(0, 0);
            c.terminal_end = SpherePoint::finite(0, 0);
            return c;
        case 2: {
            c.name = "oscillator with ends -1,+1";
            c.value = [](double t) { return example2_in_s(psi_inverse(t)); };
            c.derivative = [](double t) {
                const double s = psi_inverse(t);
                const double q = s * s - 1.0;
                const double e = std::exp(-1.0 / q);
                // d/ds [ s + i q sin(exp(-1/q)) ] / psi'(s)
                const double dimag = 2.0 * s * std::sin(e) + 2.0 * s * e * std::cos(e) / q;
                return Cx(1.0, dimag) / psi_derivative(s);
            };
            c.initial_end = SpherePoint::finite(-1, 0);
            c.terminal_end = SpherePoint::finite(1, 0);
            return c;
        }
        case 3:
            c.name = "exp(t+it)";
            c.value = [](double t) { return std::exp(Cx(t, t)); };
            c.derivative = [](double t) { return Cx(1.0, 1.0) * std::exp(Cx(t, t)); };
            c.initial_end = SpherePoint::finite(0, 0);
            c.terminal_end = SpherePoint::infinity();
            return c;
        case 4:
            c.name = "exp(t^2+it)";
            c.value = [](double t) { return std::exp(Cx(t * t, t)); };
            c.derivative = [](double t) { return Cx(2.0 * t, 1.0) * std::exp(Cx(t * t, t)); };
            c.initial_end = SpherePoint::infinity();
            c.terminal_end = SpherePoint::infinity();
            return c;
        default:
            throw std::invalid_argument("example_curve: id must be 1..4");
    }
}

Cx strip_map(double c, Cx z) {
    if (!(c > 0.0)) throw std::invalid_argument("strip_map: half-width must be positive");
    if (z.real() == 0.0 && std::abs(z.imag()) >= 1.0)
        throw std::domain_error("strip_map: point lies on a slit");
    return (2.0 * c / std::numbers::pi) * std::asinh(z);
}

Cx strip_map_inverse(double c, Cx w) {
    if (!(c > 0.0)) throw std::invalid_argument("strip_map_inverse: half-width must be positive");
    if (!(std::abs(w.imag()) < c)) throw std::domain_error("strip_map_inverse: outside strip");
    return std::sinh(w * (std::numbers::pi / (2.0 * c)));
}

double strip_map_real_derivative(double c, double u) {
    return (2.0 * c / std::numbers::pi) / std::sqrt(1.0 + u * u);
}

CurveSample transfer(const PolynomialApproximant& f, double c, double u) {
    const Cx hu = strip_map(c, Cx(u, 0.0));
    const CurveSample inner = f.eval(hu.real());  // h(u) is real for real u
    return {inner.value, inner.derivative * strip_map_real_derivative(c, u)};
}

double strip_half_width(const PolynomialApproximant& f, int t_samples, int v_samples) {
    // Clenshaw evaluates the series at complex arguments just as well; the
    // derivative of the approximant over the rectangle is probed on a grid.
    auto deriv_at = [&](Cx z) {
        const Cx x = z / f.t_bound;
        Cx b1{0.0, 0.0}, b2{0.0, 0.0};
        for (std::size_t k = f.deriv_coeff.size(); k-- > 1;) {
            const Cx b0 = 2.0 * x * b1 - b2 + f.deriv_coeff[k];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + (f.deriv_coeff.empty() ? Cx{} : f.deriv_coeff[0]);
    };
    double c = 1.0;
    for (int step = 0; step < 8; ++step, c *= 0.5) {
        bool zero_free = true;
        for (int i = 0; i < t_samples && zero_free; ++i) {
            const double t = -f.t_bound + 2.0 * f.t_bound * i / (t_samples - 1);
            for (int k = 0; k < v_samples; ++k) {
                const double v = -c + 2.0 * c * k / (v_samples - 1);
                if (std::abs(deriv_at(Cx(t, v))) == 0.0) {
                    zero_free = false;
                    break;
                }
            }
        }
        if (zero_free) return c;
    }
    return 0.0;
}

}  // namespace maxcurve
