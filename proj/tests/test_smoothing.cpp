#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxcurve/smoothing.hpp"

using namespace maxcurve;

namespace {

DoubleSequence three_nodes() {
    DoubleSequence seq;
    seq.n_min = 0;
    seq.n_max = 2;
    seq.pts = {Cx(0, 0), Cx(1, 0), Cx(1, 1)};
    seq.step_levels = {1, 1};
    seq.plus_blocks = {{1, 0, 2}};
    return seq;
}

SmoothCurve pipeline_smooth(long n = 32) {
    auto seq = build_double_sequence(ContinuumSpec::segment(Cx(0, 0), Cx(1, 0)),
                                     ContinuumSpec::circle(Cx(0, 0), 1.0), n, 7);
    return smooth_curve(PolygonalCurve(std::move(seq)));
}

// Smallest distance from the origin to the segment [d1, d2]; the blend
// derivative can never get closer to zero than this.
double segment_distance_to_zero(Cx d1, Cx d2) {
    const Cx d = d2 - d1;
    const double len2 = std::norm(d);
    double t = len2 > 0 ? -(d1.real() * d.real() + d1.imag() * d.imag()) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(d1 + t * d);
}

}  // namespace

TEST_CASE("corner blend boundary and midpoint values") {
    // corner at 0 with d1 = 1+i, d2 = 1-i, window half-width 0.1
    CornerBlend b;
    b.node = 0;
    b.half_width = 0.1;
    b.d1 = Cx(1, 1);
    b.d2 = Cx(1, -1);
    b.corner = Cx(0, 0);
    b.v0 = b.corner - b.half_width * b.d1;
    b.v1 = b.corner + b.half_width * b.d2;

    const CurveSample at_lo = b.eval(-0.1);
    CHECK(at_lo.value == Cx(-0.1, -0.1));
    CHECK(at_lo.derivative == Cx(1, 1));

    const CurveSample at_mid = b.eval(0.0);
    CHECK(at_mid.derivative == Cx(1, 0));  // (d1+d2)/2
    CHECK(at_mid.value.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(at_mid.value.imag() == doctest::Approx(-0.05).epsilon(1e-12));

    const CurveSample at_hi = b.eval(0.1);
    CHECK(at_hi.value == Cx(0.1, -0.1));
    CHECK(at_hi.derivative == Cx(1, -1));

    CHECK_THROWS_AS(b.eval(0.11), std::domain_error);
}

TEST_CASE("choose_delta") {
    CHECK(choose_delta(1.0, Cx(1, 0), Cx(0, 1)) == 0.25);
    CHECK(choose_delta(0.01, Cx(1, 0), Cx(0, 1)) == doctest::Approx(0.005));
    CHECK(choose_delta(0.1, Cx(0.01, 0), Cx(0, 0.01)) == 0.25);
    CHECK_THROWS_AS(choose_delta(0.0, Cx(1, 0), Cx(0, 1)), std::invalid_argument);
}

TEST_CASE("midpoints of intervals are untouched") {
    const SmoothCurve sigma{PolygonalCurve(three_nodes())};
    const PolygonalCurve eta{three_nodes()};
    for (double t : {0.5, 1.5}) {
        CHECK(sigma.eval(t).value == eta.eval(t));
        CHECK(sigma.eval(t).derivative == eta.eval_with_derivative(t).derivative);
    }
}

TEST_CASE("C1 gluing at window boundaries") {
    const SmoothCurve sigma = pipeline_smooth();
    const DoubleSequence& seq = sigma.base().sequence();
    for (long n = seq.n_min + 1; n < seq.n_max; ++n) {
        const CornerBlend& b = sigma.blend_at_node(n);
        const double lo = static_cast<double>(n) - b.half_width;
        const double hi = static_cast<double>(n) + b.half_width;
        const CurveSample line_lo = sigma.base().eval_with_derivative(lo);
        const CurveSample line_hi = sigma.base().eval_with_derivative(hi);
        const CurveSample blend_lo = b.eval(lo);
        const CurveSample blend_hi = b.eval(hi);
        CHECK(std::abs(blend_lo.value - line_lo.value) == 0.0);  // bit-exact join
        CHECK(std::abs(blend_hi.value - line_hi.value) == 0.0);
        CHECK(std::abs(blend_lo.derivative - line_lo.derivative) <= 1e-12);
        CHECK(std::abs(blend_hi.derivative - line_hi.derivative) <= 1e-12);
    }
}

TEST_CASE("blend derivative stays on the segment between adjacent slopes") {
    const SmoothCurve sigma = pipeline_smooth();
    for (const CornerBlend& b : sigma.blends()) {
        for (int k = 0; k <= 32; ++k) {
            const double t =
                static_cast<double>(b.node) + b.half_width * (2.0 * k / 32.0 - 1.0) * 0.999;
            const Cx d = b.eval(t).derivative;
            // collinearity residual of d relative to [d1, d2]
            const Cx u = b.d2 - b.d1;
            const double res = std::abs(std::imag((d - b.d1) * std::conj(u)));
            CHECK(res <= 1e-12 * std::max(1.0, std::abs(u) * std::abs(u)));
        }
    }
}

TEST_CASE("deviation from the corner stays within the per-node budget") {
    const SmoothCurve sigma = pipeline_smooth();
    const PolygonalCurve& eta = sigma.base();
    const DoubleSequence& seq = eta.sequence();
    for (long n = seq.n_min; n < seq.n_max; ++n) {
        double worst = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            const double t = static_cast<double>(n) + k / 1000.0;
            worst = std::max(worst, std::abs(sigma.eval(t).value - eta.eval(t)));
        }
        CHECK(worst < 1.0 / (static_cast<double>(std::llabs(n)) + 1.0));
    }
}

TEST_CASE("derivative bounded away from zero") {
    const SmoothCurve sigma = pipeline_smooth();
    double min_speed = 1e300;
    const double lo = sigma.t_min(), hi = sigma.t_max();
    for (int k = 0; k <= 100000; ++k) {
        const double t = lo + (hi - lo) * k / 100000.0;
        min_speed = std::min(min_speed, std::abs(sigma.eval(t).derivative));
    }
    CHECK(min_speed > 0.0);
    // the blend derivative interpolates [d1,d2]; its modulus is bounded below
    // by the distance from that segment to the origin
    double floor = 1e300;
    for (const CornerBlend& b : sigma.blends())
        floor = std::min(floor, segment_distance_to_zero(b.d1, b.d2));
    CHECK(floor > 0.0);
    CHECK(min_speed >= floor * 0.5);
}

TEST_CASE("markers keep exact angles after smoothing") {
    auto seq = build_double_sequence(ContinuumSpec::singleton(SpherePoint::finite(-1, 0)),
                                     ContinuumSpec::singleton(SpherePoint::finite(1, 0)), 16, 1);
    PolygonalBuild built = build_polygonal(std::move(seq));
    const PolygonalCurve eta = built.curve;  // keep a copy for comparison
    const SmoothCurve sigma = smooth_curve(std::move(built.curve));
    for (const MarkerParam& m : built.markers) {
        const CurveSample s = sigma.eval(m.s);
        const CurveSample e = eta.eval_with_derivative(m.s);
        CHECK(s.value == e.value);
        CHECK(s.derivative == e.derivative);
        CHECK(std::arg(s.derivative) == m.expected_angle);
    }
}

TEST_CASE("smoothing keeps half-width under a quarter") {
    const SmoothCurve sigma = pipeline_smooth();
    for (const CornerBlend& b : sigma.blends()) {
        CHECK(b.half_width > 0.0);
        CHECK(b.half_width <= 0.25);
    }
}

TEST_CASE("out of domain evaluation throws") {
    const SmoothCurve sigma{PolygonalCurve(three_nodes())};
    CHECK_THROWS_AS(sigma.eval(-0.001), std::domain_error);
    CHECK_THROWS_AS(sigma.eval(2.001), std::domain_error);
}
