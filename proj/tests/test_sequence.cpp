#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxcurve/sequence.hpp"

using namespace maxcurve;

namespace {

ContinuumSpec seg01() { return ContinuumSpec::segment(Cx(0, 0), Cx(1, 0)); }
ContinuumSpec unit_circle() { return ContinuumSpec::circle(Cx(0, 0), 1.0); }
ContinuumSpec point_at(double re, double im = 0.0) {
    return ContinuumSpec::singleton(SpherePoint::finite(re, im));
}
ContinuumSpec point_at_infinity() { return ContinuumSpec::singleton(SpherePoint::infinity()); }

void expect_valid(const DoubleSequence& seq, const ContinuumSpec& km, const ContinuumSpec& kp) {
    const SequenceValidation rep = validate_sequence(seq, km, kp);
    for (const std::string& issue : rep.issues) MESSAGE(issue);
    CHECK(rep.ok);
}

double min_modulus(const DoubleSequence& seq, const BlockSpan& b) {
    double m = 1e300;
    for (long n = b.first; n <= b.last; ++n) m = std::min(m, std::abs(seq.point(n)));
    return m;
}

}  // namespace

TEST_CASE("half sequence around a finite singleton stays near it") {
    const HalfSequence half = build_half_sequence(point_at(0.0), Side::Plus, 16, 1);
    CHECK(static_cast<long>(half.pts.size()) >= 17);
    double worst = 0.0;
    for (Cx z : half.pts) worst = std::max(worst, chordal_distance(z, Cx(0, 0)));
    CHECK(worst <= 0.5);
    // final block collapses geometrically toward the point
    const BlockSpan last = half.blocks.back();
    double tail = 0.0;
    for (long i = last.first; i <= last.last; ++i)
        tail = std::max(tail, std::abs(half.pts[static_cast<std::size_t>(i)]));
    CHECK(tail <= std::ldexp(1.0, -static_cast<int>(half.blocks.size())));
    CHECK(half.markers_h.size() >= 2);
    CHECK(half.markers_v.size() >= 2);
}

TEST_CASE("half sequence toward infinity escapes monotonically") {
    const HalfSequence half = build_half_sequence(point_at_infinity(), Side::Plus, 16, 1);
    CHECK(static_cast<long>(half.pts.size()) >= 17);
    DoubleSequence seq = build_double_sequence(point_at_infinity(), point_at_infinity(), 16, 1);
    expect_valid(seq, point_at_infinity(), point_at_infinity());
    double prev = 0.0;
    for (const BlockSpan& b : seq.plus_blocks) {
        const double m = min_modulus(seq, b);
        CHECK(m >= prev);           // block-wise minimum modulus nondecreasing
        CHECK(m > 4.0 * b.level);   // block j stays beyond the level surrogate radius
        prev = m;
        double worst = 0.0;
        for (long n = b.first; n <= b.last; ++n)
            worst = std::max(worst, chordal_to_infinity(seq.point(n)));
        CHECK(worst < 1.0 / b.level);
    }
}

TEST_CASE("segment half sequence covers the final net level") {
    const HalfSequence half = build_half_sequence(seg01(), Side::Plus, 64, 1);
    const BlockSpan last = half.blocks.back();
    std::vector<Cx> tail;
    for (long i = last.first; i <= last.last; ++i)
        tail.push_back(half.pts[static_cast<std::size_t>(i)]);
    const NetLevel net = net_at(seg01(), last.level);
    CHECK(hausdorff_chordal(tail, net.points) < 2.0 / last.level);
}

TEST_CASE("double sequence validates across spec pairs, sizes and seeds") {
    struct Pair {
        ContinuumSpec km, kp;
    };
    const Pair pairs[] = {
        {point_at(-1.0), point_at(1.0)},
        {seg01(), unit_circle()},
        {unit_circle(), point_at_infinity()},
    };
    const long ns[] = {8, 32, 128};
    const std::uint64_t seeds[] = {1, 7, 42};
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) {
            const DoubleSequence seq =
                build_double_sequence(pairs[k].km, pairs[k].kp, ns[i], seeds[i]);
            CHECK(seq.n_max >= ns[i]);
            CHECK(seq.n_min <= -ns[i]);
            expect_valid(seq, pairs[k].km, pairs[k].kp);
        }
    }
}

TEST_CASE("markers on each side approach the respective singleton") {
    const auto km = point_at(-1.0);
    const auto kp = point_at(1.0);
    const DoubleSequence seq = build_double_sequence(km, kp, 32, 7);
    expect_valid(seq, km, kp);
    auto block_of = [&](long n, const std::vector<BlockSpan>& blocks) -> const BlockSpan* {
        for (const BlockSpan& b : blocks)
            if (n >= b.first && n <= b.last) return &b;
        return nullptr;
    };
    for (long m : seq.markers_h_plus) {
        const BlockSpan* b = block_of(m, seq.plus_blocks);
        REQUIRE(b != nullptr);
        CHECK(chordal_distance(seq.point(m), Cx(1, 0)) < 1.0 / b->level);
    }
    for (long m : seq.markers_v_minus) {
        const BlockSpan* b = block_of(m, seq.minus_blocks);
        REQUIRE(b != nullptr);
        CHECK(chordal_distance(seq.point(m), Cx(-1, 0)) < 1.0 / b->level);
    }
}

TEST_CASE("final-block markers trace the final circle net") {
    const DoubleSequence seq = build_double_sequence(unit_circle(), unit_circle(), 64, 7);
    expect_valid(seq, unit_circle(), unit_circle());
    const BlockSpan last = seq.plus_blocks.back();
    std::vector<Cx> marker_pts;
    for (long m : seq.markers_h_plus)
        if (m >= last.first && m <= last.last) marker_pts.push_back(seq.point(m));
    for (long m : seq.markers_v_plus)
        if (m >= last.first && m <= last.last) marker_pts.push_back(seq.point(m));
    REQUIRE(!marker_pts.empty());
    const NetLevel net = net_at(unit_circle(), last.level);
    CHECK(hausdorff_chordal(marker_pts, net.points) < 2.0 * net.mesh);
}

TEST_CASE("mixed pair: segment to infinity") {
    const auto km = seg01();
    const auto kp = point_at_infinity();
    const DoubleSequence seq = build_double_sequence(km, kp, 32, 7);
    expect_valid(seq, km, kp);
    // minus side stays chordally near the segment
    for (const BlockSpan& b : seq.minus_blocks)
        for (long n = b.first; n <= b.last; ++n) {
            double best = 4.0;
            for (int k = 0; k <= 100; ++k)
                best = std::min(best, chordal_distance(seq.point(n), Cx(k / 100.0, 0.0)));
            CHECK(best < 1.0);
        }
    for (const BlockSpan& b : seq.plus_blocks) CHECK(min_modulus(seq, b) > 4.0 * b.level);
}

TEST_CASE("construction is bit-exactly reproducible") {
    const auto km = seg01();
    const auto kp = unit_circle();
    const DoubleSequence a = build_double_sequence(km, kp, 32, 42);
    const DoubleSequence b = build_double_sequence(km, kp, 32, 42);
    REQUIRE(a.pts.size() == b.pts.size());
    for (std::size_t i = 0; i < a.pts.size(); ++i) {
        CHECK(a.pts[i].real() == b.pts[i].real());
        CHECK(a.pts[i].imag() == b.pts[i].imag());
    }
    CHECK(a.markers_h_plus == b.markers_h_plus);
    CHECK(a.markers_v_minus == b.markers_v_minus);
}

TEST_CASE("different seeds may reorder ties but stay valid") {
    const DoubleSequence a = build_double_sequence(unit_circle(), unit_circle(), 16, 1);
    const DoubleSequence b = build_double_sequence(unit_circle(), unit_circle(), 16, 99);
    expect_valid(a, unit_circle(), unit_circle());
    expect_valid(b, unit_circle(), unit_circle());
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(build_half_sequence(seg01(), Side::Plus, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_double_sequence(seg01(), seg01(), 7, 1), std::invalid_argument);
}

TEST_CASE("marker segments are exact to the bit") {
    const DoubleSequence seq = build_double_sequence(seg01(), unit_circle(), 32, 1);
    for (long m : seq.markers_h_plus) {
        const Cx d = seq.point(m + 1) - seq.point(m);
        CHECK(d.imag() == 0.0);
        CHECK(d.real() > 0.0);
    }
    for (long m : seq.markers_h_minus) {
        const Cx d = seq.point(m + 1) - seq.point(m);
        CHECK(d.imag() == 0.0);
        CHECK(d.real() > 0.0);
    }
    for (long m : seq.markers_v_plus) {
        const Cx d = seq.point(m + 1) - seq.point(m);
        CHECK(d.real() == 0.0);
        CHECK(d.imag() > 0.0);
    }
    for (long m : seq.markers_v_minus) {
        const Cx d = seq.point(m + 1) - seq.point(m);
        CHECK(d.real() == 0.0);
        CHECK(d.imag() > 0.0);
    }
}
