#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maxcurve/curve.hpp"

using namespace maxcurve;

namespace {

// Hand-built three-node sequence 0, 1, 1+i on indices 0..2.
DoubleSequence tiny_sequence() {
    DoubleSequence seq;
    seq.n_min = 0;
    seq.n_max = 2;
    seq.pts = {Cx(0, 0), Cx(1, 0), Cx(1, 1)};
    seq.step_levels = {1, 1};
    seq.markers_h_plus = {0};  // [0,1] is horizontal
    seq.markers_v_plus = {1};  // [1,1+i] is vertical
    seq.plus_blocks = {{1, 0, 2}};
    return seq;
}

DoubleSequence pipeline_sequence() {
    return build_double_sequence(ContinuumSpec::segment(Cx(0, 0), Cx(1, 0)),
                                 ContinuumSpec::circle(Cx(0, 0), 1.0), 32, 7);
}

}  // namespace

TEST_CASE("linear interpolation between nodes") {
    const PolygonalCurve eta{tiny_sequence()};
    CHECK(eta.eval(0.5) == Cx(0.5, 0.0));
    CHECK(eta.eval(1.5) == Cx(1.0, 0.5));
    CHECK(eta.eval(1.0) == Cx(1.0, 0.0));
}

TEST_CASE("nodes are interpolated bit-exactly") {
    const DoubleSequence seq = pipeline_sequence();
    const PolygonalCurve eta{seq};
    for (long n = seq.n_min; n <= seq.n_max; ++n) {
        const Cx v = eta.eval(static_cast<double>(n));
        CHECK(v.real() == seq.point(n).real());
        CHECK(v.imag() == seq.point(n).imag());
    }
}

TEST_CASE("derivative convention") {
    const PolygonalCurve eta{tiny_sequence()};
    CHECK(eta.eval_with_derivative(0.25).value == Cx(0.25, 0.0));
    CHECK(eta.eval_with_derivative(0.25).derivative == Cx(1.0, 0.0));
    CHECK(eta.eval_with_derivative(1.75).value == Cx(1.0, 0.75));
    CHECK(eta.eval_with_derivative(1.75).derivative == Cx(0.0, 1.0));
    // right derivative at interior integers, left at the right end
    CHECK(eta.eval_with_derivative(1.0).derivative == Cx(0.0, 1.0));
    CHECK(eta.eval_with_derivative(2.0).derivative == Cx(0.0, 1.0));
    CHECK(eta.eval_with_derivative(0.0).derivative == Cx(1.0, 0.0));
    CHECK_THROWS_AS(eta.eval(2.5), std::domain_error);
    CHECK_THROWS_AS(eta.eval(-0.5), std::domain_error);
}

TEST_CASE("derivative never vanishes") {
    const DoubleSequence seq = pipeline_sequence();
    const PolygonalCurve eta{seq};
    for (double t = eta.t_min(); t <= eta.t_max(); t += 0.37)
        CHECK(std::abs(eta.eval_with_derivative(t).derivative) > 0.0);
}

TEST_CASE("markers sit at marker segment midpoints with exact angles") {
    const PolygonalBuild built = build_polygonal(tiny_sequence());
    REQUIRE(built.markers.size() == 2);
    CHECK(built.markers[0].s == 0.5);
    CHECK(built.markers[0].expected_angle == 0.0);
    CHECK(built.markers[1].s == 1.5);
    CHECK(built.markers[1].expected_angle == std::numbers::pi / 2.0);
    for (const MarkerParam& m : built.markers) {
        const Cx d = built.curve.eval_with_derivative(m.s).derivative;
        CHECK(std::arg(d) == m.expected_angle);
    }
}

TEST_CASE("pipeline markers have exact derivative arguments") {
    const PolygonalBuild built = build_polygonal(pipeline_sequence());
    CHECK(built.markers.size() >= 8);
    for (const MarkerParam& m : built.markers) {
        const Cx d = built.curve.eval_with_derivative(m.s).derivative;
        CHECK(std::arg(d) == m.expected_angle);  // exactly 0 or pi/2
        CHECK((m.expected_angle == 0.0 || m.expected_angle == std::numbers::pi / 2.0));
    }
}

TEST_CASE("affine on each unit interval") {
    const DoubleSequence seq = pipeline_sequence();
    const PolygonalCurve eta{seq};
    for (long n = seq.n_min; n < seq.n_max; ++n) {
        for (int k = 1; k < 8; ++k) {
            const double t = static_cast<double>(n) + k / 8.0;
            const Cx direct = seq.point(n) + (t - n) * (seq.point(n + 1) - seq.point(n));
            CHECK(std::abs(eta.eval(t) - direct) == 0.0);
        }
    }
}
