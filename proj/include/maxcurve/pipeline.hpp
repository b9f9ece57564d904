#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxcurve/analysis.hpp"
#include "maxcurve/approx.hpp"
#include "maxcurve/continuum.hpp"
#include "maxcurve/sequence.hpp"
#include "maxcurve/smoothing.hpp"

namespace maxcurve {

/// End-to-end run configuration. Defaults mirror the CLI defaults.
struct RunConfig {
    ContinuumSpec kminus;
    ContinuumSpec kplus;
    long n = 32;
    std::uint64_t seed = 1;
    std::optional<double> t_bound;  // approximation window, default n-1
    int max_degree = 4096;
    double marker_tol = 0.2;

    double effective_t() const { return t_bound ? *t_bound : static_cast<double>(n - 1); }
};

/// Cluster window diagnostics per construction block, with the pinned slack
/// bound that the window-Hausdorff value is expected to beat.
struct BlockClusterCheck {
    Side side = Side::Plus;
    ClusterReport report;
    double allowed = 0.0;
    bool pass = false;
};

struct PipelineResult {
    MarkerParams markers;          // all marker midpoints of the sequence
    MarkerParams markers_in_range; // restricted to [-T+1, T-1]
    SmoothCurve sigma;
    PolynomialApproximant approximant;
    ErrorSchedule settled_schedule;
    int relax_rounds = 0;
    int marker_rounds = 0;
    bool fit_certified = false;
    MarkerReport marker_report;
    DivergenceReport divergence;
    std::vector<BlockClusterCheck> clusters;
    bool clusters_pass = true;
    bool certified = false;  // fit + markers + divergence + clusters
    double fit_seconds = 0.0;
};

/// Relaxation cap: when even a uniform tail floor of this size cannot be
/// certified at the degree cap, the run is declared uncertified.
inline constexpr double kMaxScheduleFloor = 0.5;

/// Full construction: double sequence -> polygonal -> smooth -> polynomial
/// fit (with schedule relaxation on fit failure and marker-driven tightening
/// rounds) -> verification reports.
PipelineResult run_pipeline(const RunConfig& config);

}  // namespace maxcurve
