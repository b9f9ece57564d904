#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxcurve/continuum.hpp"

namespace maxcurve {

enum class Side { Minus, Plus };

/// Index span of one construction block and the net level it rode on.
struct BlockSpan {
    int level = 1;
    long first = 0;  // inclusive
    long last = 0;   // inclusive
};

/// The truncated double sequence: finite points indexed n in [n_min, n_max],
/// chordal step bounds 1/j per block, no three consecutive points collinear,
/// and exactly horizontal / exactly vertical marker segments on both sides.
/// Blocks are built to completion, so n_min <= -N and n_max >= N.
struct DoubleSequence {
    long n_min = 0;
    long n_max = 0;
    std::vector<Cx> pts;            // pts[n - n_min]
    std::vector<int> step_levels;   // level of segment [p_n, p_{n+1}] at n - n_min

    // Indices n such that [p_n, p_{n+1}] is a marker segment.
    std::vector<long> markers_h_minus, markers_v_minus;
    std::vector<long> markers_h_plus, markers_v_plus;

    std::vector<BlockSpan> minus_blocks;  // level increases toward n_min
    std::vector<BlockSpan> plus_blocks;   // level increases toward n_max
    long bridge_first = 0, bridge_last = -1;  // empty when last < first

    Cx point(long n) const { return pts[static_cast<std::size_t>(n - n_min)]; }
    int step_level(long n) const { return step_levels[static_cast<std::size_t>(n - n_min)]; }
    bool in_domain(long n) const { return n >= n_min && n <= n_max; }
};

/// One half of the construction in its own outward indexing 0..M.
struct HalfSequence {
    std::vector<Cx> pts;
    std::vector<int> step_levels;          // level of internal step [m, m+1]
    std::vector<long> markers_h, markers_v;  // internal start index of marker pair
    std::vector<BlockSpan> blocks;           // internal index spans
    std::vector<int> marker_role;            // 0 none, 1 first of pair, 2 second of pair
};

/// Builds one side: targets enumerated over nested net levels (full coverage
/// pass per block), connected by epsilon-chains, a tangent marker spliced
/// into the departure step of every leg, and collinear triples dispersed by
/// small orthogonal displacements. Blocks run to completion; the result has
/// at least N+1 points.
HalfSequence build_half_sequence(const ContinuumSpec& spec, Side side, long n, std::uint64_t seed);

/// Glues the reversed minus half, a step-bounded bridge, and the plus half
/// into one sequence with p_0 the plus side's first point.
DoubleSequence build_double_sequence(const ContinuumSpec& kminus, const ContinuumSpec& kplus,
                                     long n, std::uint64_t seed);

struct SequenceValidation {
    bool ok = true;
    std::vector<std::string> issues;
};

inline constexpr double kCollinearityTolerance = 1e-9;

/// Checks every DoubleSequence invariant: per-block chordal step bounds,
/// safe edges at the block delta, the relative collinearity threshold, exact
/// marker orientations, marker counts, block quotas, and per-block Hausdorff
/// convergence to the corresponding net level.
SequenceValidation validate_sequence(const DoubleSequence& seq, const ContinuumSpec& kminus,
                                     const ContinuumSpec& kplus);

/// Points of one block, convenience for window diagnostics.
std::vector<Cx> block_points(const DoubleSequence& seq, const BlockSpan& block);

}  // namespace maxcurve
