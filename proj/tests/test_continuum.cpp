#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>
#include <random>
#include <set>

#include "maxcurve/continuum.hpp"

using namespace maxcurve;

namespace {

// Independent breadth-first distance, built from scratch off safe_edge so it
// shares no code path with epsilon_chain's graph walk.
std::size_t bfs_oracle_distance(const NetLevel& net, std::size_t from, std::size_t to) {
    const std::size_t n = net.points.size();
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::deque<std::size_t> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t nb = 0; nb < n; ++nb) {
            if (dist[nb] != SIZE_MAX) continue;
            if (!safe_edge(net.points[cur], net.points[nb], net.delta)) continue;
            dist[nb] = dist[cur] + 1;
            queue.push_back(nb);
        }
    }
    return dist[to];
}

std::vector<ContinuumSpec> builtin_specs() {
    return {
        ContinuumSpec::segment(Cx(0, 0), Cx(1, 0)),
        ContinuumSpec::circle(Cx(0, 0), 1.0),
        ContinuumSpec::polyline({Cx(0, 0), Cx(1, 0), Cx(1, 1)}),
    };
}

}  // namespace

TEST_CASE("segment net at level 1 covers the unit segment") {
    const auto spec = ContinuumSpec::segment(Cx(0, 0), Cx(1, 0));
    const NetLevel net = net_at(spec, 1);
    CHECK(net.mesh <= 0.5);
    CHECK(net.delta == 0.5);
    bool has0 = false, has1 = false, interior = false;
    for (Cx z : net.points) {
        if (z == Cx(0, 0)) has0 = true;
        if (z == Cx(1, 0)) has1 = true;
        if (z.real() > 0.0 && z.real() < 1.0) interior = true;
    }
    CHECK(has0);
    CHECK(has1);
    CHECK(interior);
}

TEST_CASE("singleton nets") {
    const auto spec = ContinuumSpec::singleton(SpherePoint::finite(2, 3));
    const NetLevel net = net_at(spec, 5);
    REQUIRE(net.points.size() == 1);
    CHECK(net.points[0] == Cx(2, 3));
    CHECK(net.mesh == 0.0);
    CHECK(net.delta == doctest::Approx(0.1));

    const auto inf_spec = ContinuumSpec::singleton(SpherePoint::infinity());
    for (int j = 1; j <= 8; ++j) {
        const NetLevel n = net_at(inf_spec, j);
        REQUIRE(n.points.size() == 1);
        // surrogate must represent infinity to within the level mesh
        CHECK(chordal_to_infinity(n.points[0]) < n.mesh);
        CHECK(std::abs(n.points[0]) > 2.0 / n.mesh);
    }
}

TEST_CASE("circle net at level 2 matches the covering arithmetic") {
    const auto spec = ContinuumSpec::circle(Cx(0, 0), 1.0);
    const NetLevel net = net_at(spec, 2);
    const double required = 2.0 * M_PI / (2.0 * std::asin(1.0 / 8.0));
    CHECK(static_cast<double>(net.points.size()) >= std::ceil(required));
    // brute-force covering check over dense circle samples
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const Cx ideal = std::polar(1.0, 2.0 * M_PI * k / 10000.0);
        double best = 4.0;
        for (Cx p : net.points) best = std::min(best, chordal_distance(ideal, p));
        worst = std::max(worst, best);
    }
    CHECK(worst <= 0.25);
}

TEST_CASE("independent covering oracle for built-in specs, levels <= 8") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const auto& spec : builtin_specs()) {
        for (int j = 1; j <= 8; ++j) {
            const NetLevel net = net_at(spec, j);
            double worst = 0.0;
            for (int it = 0; it < 10000; ++it) {
                const SpherePoint ideal = spec.ideal_sample(u01(rng), u01(rng));
                double best = 4.0;
                for (Cx p : net.points)
                    best = std::min(best, chordal_distance(ideal, SpherePoint::finite(p)));
                worst = std::max(worst, best);
            }
            CHECK(worst <= net.mesh);
        }
    }
}

TEST_CASE("nets are nested across levels") {
    for (const auto& spec : builtin_specs()) {
        for (int j = 1; j < 8; ++j) {
            const NetLevel coarse = net_at(spec, j);
            const NetLevel fine = net_at(spec, j + 1);
            std::set<std::pair<double, double>> fine_pts;
            for (Cx z : fine.points) fine_pts.insert({z.real(), z.imag()});
            for (Cx z : coarse.points) CHECK(fine_pts.count({z.real(), z.imag()}) == 1);
        }
    }
}

TEST_CASE("safe edge criterion") {
    CHECK(safe_edge(Cx(0, 0), Cx(0.1, 0), 0.5));
    // chordally close endpoints, segment through the origin
    CHECK(chordal_distance(Cx(10, 0), Cx(-10, 0)) < 0.5);
    CHECK_FALSE(safe_edge(Cx(10, 0), Cx(-10, 0), 0.5));
    CHECK(safe_edge(Cx(0.3, -0.7), Cx(0.3, -0.7), 0.1));
    // distance criterion alone can also reject
    CHECK_FALSE(safe_edge(Cx(0, 0), Cx(1, 0), 0.5));
}

TEST_CASE("epsilon chain on a forced path") {
    // delta = 1 admits only consecutive hops: d(0, 0.5) = 0.894, d(0.5, 1) = 0.632,
    // but d(0,1) = 1.414 is over the bound.
    NetLevel net;
    net.level = 1;
    net.delta = 1.0;
    net.points = {Cx(0, 0), Cx(0.5, 0), Cx(1, 0)};
    const Chain chain = epsilon_chain(net, Cx(0, 0), Cx(1, 0));
    REQUIRE(chain.points.size() == 3);
    CHECK(chain.points[0] == Cx(0, 0));
    CHECK(chain.points[1] == Cx(0.5, 0));
    CHECK(chain.points[2] == Cx(1, 0));
    CHECK_FALSE(validate_chain(chain).has_value());
}

TEST_CASE("epsilon chain degenerate and error cases") {
    NetLevel net;
    net.level = 1;
    net.delta = 0.5;
    net.points = {Cx(0, 0), Cx(0.1, 0)};
    const Chain c = epsilon_chain(net, Cx(0.1, 0), Cx(0.1, 0));
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0] == Cx(0.1, 0));
    CHECK_THROWS_AS(epsilon_chain(net, Cx(0.2, 0), Cx(0, 0)), std::invalid_argument);

    NetLevel split;
    split.level = 1;
    split.delta = 0.25;
    split.points = {Cx(0, 0), Cx(5, 0)};
    CHECK_THROWS_AS(epsilon_chain(split, Cx(0, 0), Cx(5, 0)), DisconnectedNetError);
}

TEST_CASE("eighth roots of unity at delta 0.8 walk one semicircle") {
    NetLevel net;
    net.level = 1;
    net.delta = 0.8;
    for (int k = 0; k < 8; ++k) net.points.push_back(std::polar(1.0, 2.0 * M_PI * k / 8.0));
    // adjacent chordal gap 2 sin(pi/8) = 0.765 < 0.8; skipping a root needs 1.414
    CHECK(chordal_distance(net.points[0], net.points[1]) == doctest::Approx(2.0 * std::sin(M_PI / 8)));
    const Chain chain = epsilon_chain(net, net.points[0], net.points[4]);
    REQUIRE(chain.points.size() == 5);
    for (int k = 0; k <= 4; ++k) CHECK(chain.points[k] == net.points[k]);
    CHECK(bfs_oracle_distance(net, 0, 4) == 4);
}

TEST_CASE("chains match the breadth-first oracle on built-in nets") {
    std::mt19937_64 rng(17);
    for (const auto& spec : builtin_specs()) {
        for (int j = 1; j <= 8; ++j) {
            const NetLevel net = net_at(spec, j);
            std::uniform_int_distribution<std::size_t> pick(0, net.points.size() - 1);
            for (int rep = 0; rep < 10; ++rep) {
                const std::size_t a = pick(rng), b = pick(rng);
                const Chain chain = epsilon_chain_by_index(net, a, b);
                CHECK_FALSE(validate_chain(chain).has_value());
                CHECK(chain.points.size() - 1 == bfs_oracle_distance(net, a, b));
                CHECK(chain.points.front() == net.points[a]);
                CHECK(chain.points.back() == net.points[b]);
            }
        }
    }
}

TEST_CASE("chain composability") {
    const auto spec = ContinuumSpec::circle(Cx(0, 0), 1.0);
    const NetLevel net = net_at(spec, 3);
    const std::size_t n = net.points.size();
    const Chain c1 = epsilon_chain_by_index(net, 0, n / 3);
    const Chain c2 = epsilon_chain_by_index(net, n / 3, 2 * n / 3);
    Chain glued;
    glued.delta = net.delta;
    glued.points = c1.points;
    glued.points.insert(glued.points.end(), c2.points.begin() + 1, c2.points.end());
    CHECK_FALSE(validate_chain(glued).has_value());
    CHECK(glued.points.front() == net.points[0]);
    CHECK(glued.points.back() == net.points[2 * n / 3]);
}

TEST_CASE("disconnected custom net names the level and components") {
    NetLevel lonely;
    lonely.level = 1;
    lonely.delta = 0.5;
    lonely.mesh = 0.5;
    lonely.points = {Cx(0, 0), Cx(0.1, 0), Cx(50, 50)};
    const auto spec = ContinuumSpec::custom({lonely});
    try {
        net_at(spec, 1);
        FAIL("expected DisconnectedNetError");
    } catch (const DisconnectedNetError& e) {
        CHECK(e.level == 1);
        CHECK(std::string(e.what()).find("disconnected") != std::string::npos);
        CHECK(e.component_a != e.component_b);
    }
}

TEST_CASE("spec factories validate their input") {
    CHECK_THROWS_AS(ContinuumSpec::segment(Cx(1, 1), Cx(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(ContinuumSpec::circle(Cx(0, 0), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ContinuumSpec::polyline({Cx(0, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(ContinuumSpec::polyline({Cx(0, 0), Cx(1, 0), Cx(0, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(ContinuumSpec::segment(Cx(1e160, 0), Cx(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(net_at(ContinuumSpec::segment(Cx(0, 0), Cx(1, 0)), 0), std::invalid_argument);
}
