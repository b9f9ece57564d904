#include "maxcurve/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace maxcurve {

namespace {

// Chains and straight legs aim below 0.75 * delta so the collinearity
// displacements (at most an eighth of the local gap per endpoint) cannot push
// any step past the block's delta.
constexpr double kLegFactor = 0.75;
constexpr double kFixTrigger = 32.0 * kCollinearityTolerance;
constexpr double kFixAccept = 8.0 * kCollinearityTolerance;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double cross(Cx d1, Cx d2) { return std::imag(d1 * std::conj(d2)); }

bool noncollinear(Cx a, Cx b, Cx c, double factor) {
    const Cx d1 = b - a, d2 = c - b;
    return std::abs(cross(d1, d2)) > factor * std::abs(d1) * std::abs(d2);
}

double block_delta(int level) { return 1.0 / (2.0 * level); }

// Shared append machinery. Keeps the running point list, per-step levels,
// marker bookkeeping, and repairs collinear triples as they appear.
class Assembler {
  public:
    std::vector<Cx> pts;
    std::vector<int> step_levels;
    std::vector<int> marker_role;  // 0 plain, 1 first of a marker pair, 2 second
    std::vector<long> markers_h, markers_v;

    long size() const { return static_cast<long>(pts.size()); }
    Cx last() const { return pts.back(); }

    void push_raw(Cx z, int level, int role) {
        pts.push_back(z);
        marker_role.push_back(role);
        if (pts.size() >= 2) step_levels.push_back(level);
    }

    void append(Cx z, int level) {
        push_raw(z, level, 0);
        fix_last_triple();
    }

    // Splices a marker pair into the forthcoming step last() -> target. The
    // pair straddles the midpoint of the step, offset sideways so the three
    // new triples are never collinear and every substep stays a safe edge.
    // Returns false when the step is too short to carry a marker.
    bool insert_marker(Cx target, int level, bool horizontal, bool flip) {
        const Cx a = last();
        const Cx b = target;
        const double len = std::abs(b - a);
        if (len < 1e-12) return false;
        const double h = std::min(1.0 / (4.0 * level), len / 2.0);
        const double nu = std::min(1.0 / (8.0 * level), len / 8.0);
        const double sgn = flip ? -1.0 : 1.0;
        const double delta = block_delta(level);
        const Cx mid = a + 0.5 * (b - a);
        const Cx prev = pts.size() >= 2 ? pts[pts.size() - 2] : a;

        for (double s : {1.0, -1.0, 0.5, -0.5, 0.25, -0.25, 2.0, -2.0, 0.125, -0.125}) {
            Cx m1, m2;
            if (horizontal) {
                m1 = Cx(mid.real() - sgn * h / 2.0, mid.imag() + s * nu);
                m2 = Cx(m1.real() + sgn * h, m1.imag());
            } else {
                m1 = Cx(mid.real() + s * nu, mid.imag() - sgn * h / 2.0);
                m2 = Cx(m1.real(), m1.imag() + sgn * h);
            }
            const bool triples_ok =
                (pts.size() < 2 || noncollinear(prev, a, m1, kFixAccept)) &&
                noncollinear(a, m1, m2, kFixAccept) && noncollinear(m1, m2, b, kFixAccept);
            if (!triples_ok) continue;
            if (!safe_edge(a, m1, 0.99 * delta) || !safe_edge(m1, m2, 0.99 * delta) ||
                !safe_edge(m2, b, 0.99 * delta))
                continue;
            const long idx = size();
            push_raw(m1, level, 1);
            push_raw(m2, level, 2);
            (horizontal ? markers_h : markers_v).push_back(idx);
            return true;
        }
        throw std::runtime_error("marker insertion found no admissible placement");
    }

  private:
    int zigzag_ = 0;

    bool step_ok(Cx a, Cx b, int level) const {
        return a != b && safe_edge(a, b, 0.99 * block_delta(level));
    }

    void fix_last_triple() {
        if (pts.size() < 3) return;
        const std::size_t k = pts.size() - 1;
        if (noncollinear(pts[k - 2], pts[k - 1], pts[k], kFixTrigger)) return;

        const int lev_in = step_levels[k - 2];
        const int lev_out = step_levels[k - 1];
        const bool middle_movable = marker_role[k - 1] == 0;

        const Cx dir = pts[k] - pts[k - 2];
        const double gap =
            std::min(std::abs(pts[k - 1] - pts[k - 2]), std::abs(pts[k] - pts[k - 1]));
        const int lev = std::max(lev_in, lev_out);
        const double mag = std::min(1.0 / (8.0 * lev), gap / 8.0);
        const Cx unit = std::abs(dir) > 0 ? dir / std::abs(dir) : Cx(1.0, 0.0);
        const Cx perp = Cx(-unit.imag(), unit.real());
        const double par = (zigzag_++ % 2 == 0) ? 1.0 : -1.0;

        for (double s : {1.0, -1.0, 0.5, -0.5, 0.25, -0.25, 2.0, -2.0, 0.125, -0.125}) {
            const Cx off = par * s * mag * perp;
            if (middle_movable) {
                const Cx moved = pts[k - 1] + off;
                if (!noncollinear(pts[k - 2], moved, pts[k], kFixAccept)) continue;
                if (pts.size() >= 4 && !noncollinear(pts[k - 3], pts[k - 2], moved, kFixAccept))
                    continue;
                if (!step_ok(pts[k - 2], moved, lev_in) || !step_ok(moved, pts[k], lev_out))
                    continue;
                pts[k - 1] = moved;
                return;
            }
            if (marker_role[k - 1] == 1 && marker_role[k] == 2) {
                // move the whole pair perpendicular to its axis; the shared
                // coordinate shifts by the same rounded amount on both points,
                // so the exact orientation survives.
                const bool horiz = pts[k].imag() == pts[k - 1].imag();
                Cx m1 = pts[k - 1], m2 = pts[k];
                const double d = par * s * mag;
                if (horiz) {
                    m1 = Cx(m1.real(), m1.imag() + d);
                    m2 = Cx(m2.real(), m2.imag() + d);
                } else {
                    m1 = Cx(m1.real() + d, m1.imag());
                    m2 = Cx(m2.real() + d, m2.imag());
                }
                if (!noncollinear(pts[k - 2], m1, m2, kFixAccept)) continue;
                if (pts.size() >= 4 && !noncollinear(pts[k - 3], pts[k - 2], m1, kFixAccept))
                    continue;
                if (!step_ok(pts[k - 2], m1, lev_in) || !step_ok(m1, m2, lev_out)) continue;
                pts[k - 1] = m1;
                pts[k] = m2;
                return;
            }
            // middle is the closing point of a marker pair: move the new point
            const Cx moved = pts[k] + off;
            if (!noncollinear(pts[k - 2], pts[k - 1], moved, kFixAccept)) continue;
            if (!step_ok(pts[k - 1], moved, lev_out)) continue;
            pts[k] = moved;
            return;
        }
        throw std::runtime_error("collinearity fixup found no admissible displacement");
    }
};

std::optional<std::size_t> find_exact(const NetLevel& net, Cx z) {
    for (std::size_t i = 0; i < net.points.size(); ++i)
        if (net.points[i] == z) return i;
    return std::nullopt;
}

// Emits the straight run last() -> target, subdivided until every substep is
// a safe edge at kLegFactor * delta. Optionally splices a marker into the
// first substep.
void emit_straight(Assembler& a, Cx target, int level, bool* marker_horizontal, bool flip) {
    const Cx from = a.last();
    if (from == target) return;
    const double bound = kLegFactor * block_delta(level);
    int m = 1;
    auto ok = [&](int parts) {
        for (int i = 0; i < parts; ++i) {
            const Cx p = from + (static_cast<double>(i) / parts) * (target - from);
            const Cx q = (i + 1 == parts)
                             ? target
                             : from + (static_cast<double>(i + 1) / parts) * (target - from);
            if (!safe_edge(p, q, bound)) return false;
        }
        return true;
    };
    while (!ok(m)) {
        if (m > (1 << 22)) throw std::runtime_error("leg subdivision did not converge");
        m *= 2;
    }
    for (int i = 1; i <= m; ++i) {
        const Cx wp = (i == m) ? target : from + (static_cast<double>(i) / m) * (target - from);
        if (i == 1 && marker_horizontal != nullptr) {
            if (a.insert_marker(wp, level, *marker_horizontal, flip))
                *marker_horizontal = !*marker_horizontal;
        }
        a.append(wp, level);
    }
}

// Emits the epsilon-chain leg between two net indices, with a marker spliced
// into the departure step.
void emit_chain_leg(Assembler& a, const NetLevel& work, std::size_t from, std::size_t to,
                    int level, bool* marker_horizontal, bool flip) {
    const Chain chain = epsilon_chain_by_index(work, from, to);
    for (std::size_t k = 1; k < chain.points.size(); ++k) {
        if (k == 1 && marker_horizontal != nullptr) {
            if (a.insert_marker(chain.points[k], level, *marker_horizontal, flip))
                *marker_horizontal = !*marker_horizontal;
        }
        a.append(chain.points[k], level);
    }
}

struct BuildState {
    Assembler a;
    std::vector<BlockSpan> blocks;
    bool marker_horizontal = true;
    std::uint64_t seed = 0;
    bool flip = false;
    // degenerate bookkeeping
    long spiral_index = 0;
    Cx net_anchor{};  // exact net position of the last arrival
    bool have_anchor = false;
};

// One full-coverage block over the level-j net: every net point is visited
// (nearest-unvisited order, ties broken by a seeded rank), successive targets
// joined by epsilon-chains, one marker per arrival. Repeats passes until the
// block has emitted at least its quota of 4j points.
void run_net_block(BuildState& st, const ContinuumSpec& spec, int j) {
    NetLevel net = net_at(spec, j);
    NetLevel work = net;
    work.delta = kLegFactor * net.delta;

    const long start = st.have_anchor ? st.a.size() : 0;
    std::size_t anchor;
    if (!st.have_anchor) {
        anchor = 0;
        st.a.push_raw(net.points[0], j, 0);
    } else if (auto found = find_exact(net, st.net_anchor)) {
        anchor = *found;
    } else {
        // nets that do not nest (custom specs): walk to the nearest net point
        std::size_t best = 0;
        double bd = 4.0;
        for (std::size_t i = 0; i < net.points.size(); ++i) {
            const double d = chordal_distance(st.net_anchor, net.points[i]);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        emit_straight(st.a, net.points[best], j, nullptr, st.flip);
        anchor = best;
    }

    const long quota = 4L * j;
    std::vector<char> visited(net.points.size(), 0);
    visited[anchor] = 1;
    std::size_t nvis = 1;

    while (true) {
        if (nvis == net.points.size()) {
            if (st.a.size() - start >= quota) break;
            std::fill(visited.begin(), visited.end(), 0);
            visited[anchor] = 1;
            nvis = 1;
        }
        std::size_t best = net.points.size();
        double best_d = 5.0;
        std::uint64_t best_rank = 0;
        for (std::size_t i = 0; i < net.points.size(); ++i) {
            if (visited[i]) continue;
            const double d = chordal_distance(net.points[anchor], net.points[i]);
            const std::uint64_t rank = splitmix64(st.seed ^ (0x5bd1e995ull * (i + 1)));
            if (best == net.points.size() || d < best_d || (d == best_d && rank < best_rank)) {
                best = i;
                best_d = d;
                best_rank = rank;
            }
        }
        emit_chain_leg(st.a, work, anchor, best, j, &st.marker_horizontal, st.flip);
        anchor = best;
        visited[best] = 1;
        ++nvis;
    }
    st.net_anchor = net.points[anchor];
    st.have_anchor = true;
    st.blocks.push_back({j, start, st.a.size() - 1});
}

// Degenerate finite continuum: targets spiral into the point. The radius
// halves per block (harmonic decay within a block keeps targets distinct
// without outrunning double precision), the angle advances one radian per
// target, and every leg carries a marker.
void run_point_block(BuildState& st, Cx p, int j) {
    auto target = [&](int level, long within) {
        const double radius =
            std::max(std::ldexp(1.0, -level - 2) / (1.0 + static_cast<double>(within)), 1e-10);
        return p + radius * std::polar(1.0, static_cast<double>(st.spiral_index));
    };
    if (!st.have_anchor) {
        st.spiral_index = 1;
        st.a.push_raw(target(j, 0), j, 0);
        st.have_anchor = true;
    }
    const long start = st.blocks.empty() ? 0 : st.a.size();
    const long quota = 4L * j;
    long fresh = 0;
    while (fresh < 2 || st.a.size() - start < quota) {
        ++st.spiral_index;
        ++fresh;
        emit_straight(st.a, target(j, fresh), j, &st.marker_horizontal, st.flip);
    }
    st.blocks.push_back({j, start, st.a.size() - 1});
}

// Degenerate continuum at infinity: block j departs the level-j surrogate,
// extends the radius at fixed angle, then rotates one radian at the larger
// radius, so every point of block j keeps modulus above 4j.
void run_infinity_block(BuildState& st, int j) {
    const double r_from = 4.0 * j + 1.0;
    const double r_to = 4.0 * (j + 1) + 1.0;
    const double th_from = static_cast<double>(j);
    const double th_to = static_cast<double>(j + 1);
    if (!st.have_anchor) {
        st.a.push_raw(r_from * std::polar(1.0, th_from), j, 0);
        st.have_anchor = true;
    }
    const long start = st.blocks.empty() ? 0 : st.a.size();
    const long quota = 4L * j;
    const int radial = std::max<int>(2, static_cast<int>(quota / 2));
    const int angular = std::max<int>(4, static_cast<int>(quota - radial));
    for (int k = 1; k <= radial; ++k) {
        const double r = r_from + (r_to - r_from) * k / radial;
        emit_straight(st.a, r * std::polar(1.0, th_from), j,
                      k == 1 ? &st.marker_horizontal : nullptr, st.flip);
    }
    for (int k = 1; k <= angular; ++k) {
        const double th = th_from + (th_to - th_from) * k / angular;
        emit_straight(st.a, r_to * std::polar(1.0, th), j,
                      k == 1 ? &st.marker_horizontal : nullptr, st.flip);
    }
    st.blocks.push_back({j, start, st.a.size() - 1});
}

}  // namespace

HalfSequence build_half_sequence(const ContinuumSpec& spec, Side side, long n, std::uint64_t seed) {
    if (n < 8) throw std::invalid_argument("build_half_sequence: N >= 8 required");

    BuildState st;
    st.seed = splitmix64(seed ^ (side == Side::Minus ? 0xA5A5A5A5ull : 0x5A5A5A5Aull));
    st.flip = (side == Side::Minus);

    bool degenerate_point = spec.degenerate();
    Cx degenerate_at{};
    bool at_infinity = false;
    if (degenerate_point) {
        at_infinity = !spec.point.is_finite();
        if (!at_infinity) degenerate_at = spec.point.z;
    } else if (spec.kind == ContinuumSpec::Kind::Custom && net_at(spec, 1).points.size() == 1) {
        degenerate_point = true;
        degenerate_at = net_at(spec, 1).points[0];
    }

    for (int j = 1;; ++j) {
        st.marker_horizontal = (j % 2 == 1);
        if (!degenerate_point)
            run_net_block(st, spec, j);
        else if (at_infinity)
            run_infinity_block(st, j);
        else
            run_point_block(st, degenerate_at, j);
        if (st.a.size() >= n + 1) break;
    }

    if (st.a.markers_h.empty() || st.a.markers_v.empty())
        throw std::invalid_argument(
            "build_half_sequence: N too small to place both marker orientations");

    HalfSequence half;
    half.pts = std::move(st.a.pts);
    half.step_levels = std::move(st.a.step_levels);
    half.markers_h = std::move(st.a.markers_h);
    half.markers_v = std::move(st.a.markers_v);
    half.marker_role = std::move(st.a.marker_role);
    half.blocks = std::move(st.blocks);
    return half;
}

DoubleSequence build_double_sequence(const ContinuumSpec& kminus, const ContinuumSpec& kplus,
                                     long n, std::uint64_t seed) {
    const HalfSequence minus = build_half_sequence(kminus, Side::Minus, n, seed);
    const HalfSequence plus = build_half_sequence(kplus, Side::Plus, n, splitmix64(seed + 1));

    const Cx q0 = minus.pts[0];
    const Cx r0 = plus.pts[0];
    const bool drop_shared = (q0 == r0);

    // Bridge between the two halves at block-1 step size.
    std::vector<Cx> bridge;
    if (!drop_shared) {
        const double bound = kLegFactor * block_delta(1);
        int m = 1;
        auto ok = [&](int parts) {
            for (int i = 0; i < parts; ++i) {
                const Cx p = q0 + (static_cast<double>(i) / parts) * (r0 - q0);
                const Cx q = (i + 1 == parts)
                                 ? r0
                                 : q0 + (static_cast<double>(i + 1) / parts) * (r0 - q0);
                if (!safe_edge(p, q, bound)) return false;
            }
            return true;
        };
        while (!ok(m)) {
            if (m > (1 << 22)) throw std::runtime_error("bridge subdivision did not converge");
            m *= 2;
        }
        for (int i = 1; i < m; ++i) bridge.push_back(q0 + (static_cast<double>(i) / m) * (r0 - q0));
    }
    const long bcount = static_cast<long>(bridge.size());
    const long qcount = static_cast<long>(minus.pts.size());
    const long minus_offset = drop_shared ? 0 : bcount + 1;  // global(q_i) = -(minus_offset + i)

    Assembler g;
    // reversed minus half, raw: its interior triples are already valid
    const long lowest_kept = drop_shared ? 1 : 0;
    for (long i = qcount - 1; i >= lowest_kept; --i) {
        const int role = minus.marker_role[static_cast<std::size_t>(i)];
        const int swapped = role == 1 ? 2 : (role == 2 ? 1 : 0);
        const int lev = (i == qcount - 1) ? 1 : minus.step_levels[static_cast<std::size_t>(i)];
        g.push_raw(minus.pts[static_cast<std::size_t>(i)], lev, swapped);
    }
    for (Cx z : bridge) g.append(z, 1);
    for (std::size_t i = 0; i < plus.pts.size(); ++i) {
        const int lev = (i == 0) ? 1 : plus.step_levels[i - 1];
        if (g.pts.empty()) {
            g.push_raw(plus.pts[i], lev, plus.marker_role[i]);
            continue;
        }
        if (plus.marker_role[i] != 0) {
            g.push_raw(plus.pts[i], lev, plus.marker_role[i]);
            continue;
        }
        g.append(plus.pts[i], lev);
    }

    DoubleSequence seq;
    seq.n_max = static_cast<long>(plus.pts.size()) - 1;
    seq.n_min = seq.n_max + 1 - g.size();
    seq.pts = std::move(g.pts);
    seq.step_levels = std::move(g.step_levels);
    if (!drop_shared && bcount > 0) {
        seq.bridge_first = -bcount;
        seq.bridge_last = -1;
    } else {
        seq.bridge_first = 0;
        seq.bridge_last = -1;  // empty
    }

    for (long m : plus.markers_h) seq.markers_h_plus.push_back(m);
    for (long m : plus.markers_v) seq.markers_v_plus.push_back(m);
    const auto to_global = [&](long internal) { return -(minus_offset + internal + 1); };
    for (long m : minus.markers_h) seq.markers_h_minus.push_back(to_global(m));
    for (long m : minus.markers_v) seq.markers_v_minus.push_back(to_global(m));
    std::sort(seq.markers_h_minus.begin(), seq.markers_h_minus.end());
    std::sort(seq.markers_v_minus.begin(), seq.markers_v_minus.end());

    for (const BlockSpan& b : plus.blocks) seq.plus_blocks.push_back(b);
    for (const BlockSpan& b : minus.blocks)
        seq.minus_blocks.push_back({b.level, -(minus_offset + b.last), -(minus_offset + b.first)});

    if (drop_shared) {
        // internal index 0 was dropped; block 1 of the minus side shrinks by one
        for (auto& b : seq.minus_blocks)
            if (b.last > -1) b.last = -1;
    }
    return seq;
}

std::vector<Cx> block_points(const DoubleSequence& seq, const BlockSpan& block) {
    std::vector<Cx> out;
    out.reserve(static_cast<std::size_t>(block.last - block.first + 1));
    for (long i = block.first; i <= block.last; ++i) out.push_back(seq.point(i));
    return out;
}

SequenceValidation validate_sequence(const DoubleSequence& seq, const ContinuumSpec& kminus,
                                     const ContinuumSpec& kplus) {
    SequenceValidation rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.issues.push_back(msg);
    };

    const long count = seq.n_max - seq.n_min + 1;
    if (static_cast<long>(seq.pts.size()) != count) fail("point count does not match domain");
    if (static_cast<long>(seq.step_levels.size()) != count - 1) fail("step level table size");

    for (long nn = seq.n_min; nn < seq.n_max; ++nn) {
        const Cx a = seq.point(nn), b = seq.point(nn + 1);
        const int lev = seq.step_level(nn);
        if (a == b) {
            fail("zero step at n=" + std::to_string(nn));
            continue;
        }
        if (!(chordal_distance(a, b) < 1.0 / lev))
            fail("step bound 1/j violated at n=" + std::to_string(nn));
        if (!safe_edge(a, b, block_delta(lev)))
            fail("step not a safe edge at block delta, n=" + std::to_string(nn));
    }

    for (long nn = seq.n_min; nn + 2 <= seq.n_max; ++nn) {
        const Cx d1 = seq.point(nn + 1) - seq.point(nn);
        const Cx d2 = seq.point(nn + 2) - seq.point(nn + 1);
        if (!(std::abs(cross(d1, d2)) > kCollinearityTolerance * std::abs(d1) * std::abs(d2)))
            fail("collinear triple at n=" + std::to_string(nn));
    }

    auto check_markers = [&](const std::vector<long>& ms, bool horizontal, const char* tag) {
        for (long m : ms) {
            if (m < seq.n_min || m + 1 > seq.n_max) {
                fail(std::string(tag) + ": marker index out of domain");
                continue;
            }
            const Cx d = seq.point(m + 1) - seq.point(m);
            if (horizontal) {
                if (!(d.imag() == 0.0 && d.real() > 0.0))
                    fail(std::string(tag) + ": segment at n=" + std::to_string(m) +
                         " is not exactly horizontal left-to-right");
            } else {
                if (!(d.real() == 0.0 && d.imag() > 0.0))
                    fail(std::string(tag) + ": segment at n=" + std::to_string(m) +
                         " is not exactly vertical bottom-to-top");
            }
        }
    };
    check_markers(seq.markers_h_minus, true, "H-");
    check_markers(seq.markers_v_minus, false, "V-");
    check_markers(seq.markers_h_plus, true, "H+");
    check_markers(seq.markers_v_plus, false, "V+");

    const std::size_t blocks_minus = seq.minus_blocks.size();
    const std::size_t blocks_plus = seq.plus_blocks.size();
    if (seq.markers_h_minus.size() < blocks_minus / 2 ||
        seq.markers_v_minus.size() < blocks_minus / 2)
        fail("minus side lacks marker density");
    if (seq.markers_h_plus.size() < blocks_plus / 2 || seq.markers_v_plus.size() < blocks_plus / 2)
        fail("plus side lacks marker density");

    auto check_blocks = [&](const std::vector<BlockSpan>& blocks, const ContinuumSpec& spec,
                            const char* tag) {
        for (const BlockSpan& b : blocks) {
            if (b.first > b.last) {
                fail(std::string(tag) + ": empty block span");
                continue;
            }
            const long sz = b.last - b.first + 1;
            if (sz < 4L * b.level)
                fail(std::string(tag) + ": block " + std::to_string(b.level) + " below quota");
            const NetLevel net = net_at(spec, b.level);
            const double hd = hausdorff_chordal(block_points(seq, b), net.points);
            if (!(hd < 3.0 / b.level))
                fail(std::string(tag) + ": block " + std::to_string(b.level) +
                     " Hausdorff to net = " + std::to_string(hd) +
                     " >= " + std::to_string(3.0 / b.level));
        }
    };
    check_blocks(seq.minus_blocks, kminus, "minus");
    check_blocks(seq.plus_blocks, kplus, "plus");

    return rep;
}

}  // namespace maxcurve
