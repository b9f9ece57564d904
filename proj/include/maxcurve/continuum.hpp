#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxcurve/sphere.hpp"

namespace maxcurve {

/// One resolution level of a continuum's discretization: a finite net whose
/// covering radius is `mesh` and whose proximity graph at radius `delta`
/// (safe edges only) is connected. Net points are always finite; the point
/// at infinity is represented by a large-modulus surrogate.
struct NetLevel {
    int level = 1;
    std::vector<Cx> points;
    double mesh = 0.0;   // covering radius of the intended continuum
    double delta = 0.0;  // connectivity radius of the proximity graph

    PointSet to_point_set() const { return PointSet::of_finite(points); }
};

/// Machine description of a continuum on the Riemann sphere, as a family of
/// nested nets obtainable per level.
struct ContinuumSpec {
    enum class Kind { Singleton, Segment, Circle, Polyline, Custom };

    Kind kind = Kind::Singleton;
    SpherePoint point;              // Singleton
    Cx seg_a{}, seg_b{};            // Segment
    Cx center{};                    // Circle
    double radius = 0.0;            // Circle
    std::vector<Cx> nodes;          // Polyline
    std::vector<NetLevel> levels;   // Custom

    static ContinuumSpec singleton(SpherePoint p);
    static ContinuumSpec segment(Cx a, Cx b);
    static ContinuumSpec circle(Cx center, double radius);
    static ContinuumSpec polyline(std::vector<Cx> nodes);
    static ContinuumSpec custom(std::vector<NetLevel> levels);

    bool degenerate() const { return kind == Kind::Singleton; }

    /// Uniform random point of the ideal continuum, `u`,`v` in [0,1).
    /// Used by the independent covering oracle in tests.
    SpherePoint ideal_sample(double u, double v) const;
};

/// Raised when a net's proximity graph is disconnected at the level's delta.
/// Carries the level and one representative point of two distinct components.
struct DisconnectedNetError : std::runtime_error {
    int level;
    Cx component_a, component_b;
    DisconnectedNetError(int lvl, Cx a, Cx b);
};

/// True iff chordal_distance(a,b) < delta and the chordal diameter of the
/// Euclidean segment [a,b] is < delta. The second condition rejects segments
/// that are chordally short end-to-end but swing near the origin on the way.
bool safe_edge(Cx a, Cx b, double delta, int samples = kSegmentDiameterSamples);

/// Net of `spec` at level j >= 1. Meshes obey mesh <= 1/(2j), delta = 1/(2j),
/// nets of the non-degenerate shapes are nested across levels, and the
/// proximity graph is checked for connectivity (DisconnectedNetError if not).
NetLevel net_at(const ContinuumSpec& spec, int j);

/// Finite point chain with consecutive chordal steps below `delta`.
struct Chain {
    std::vector<Cx> points;
    double delta = 0.0;
};

/// Validates the Chain invariants (nonempty, steps < delta, safe edges).
/// Returns an explanation on failure, std::nullopt when valid.
std::optional<std::string> validate_chain(const Chain& chain);

/// Shortest path (edge count) from p to q in the net's safe-edge proximity
/// graph, ties broken by the lexicographically smallest index sequence.
/// p and q must be members of the net's point set (exact equality).
Chain epsilon_chain(const NetLevel& net, Cx p, Cx q);
Chain epsilon_chain_by_index(const NetLevel& net, std::size_t from, std::size_t to);

/// Safe-edge adjacency of a net, exposed for oracles and diagnostics.
std::vector<std::vector<std::size_t>> proximity_graph(const NetLevel& net);

}  // namespace maxcurve
