#include "maxcurve/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace maxcurve {

namespace {

void require_parsable(Cx z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument(std::string(what) + ": coordinates must be finite");
    if (std::abs(z) > kMaxParsedModulus)
        throw std::invalid_argument(std::string(what) + ": modulus exceeds 1e150 cap");
}

double level_delta(int j) { return 1.0 / (2.0 * j); }

// Distance from the origin to the Euclidean segment [a,b].
double distance_to_origin(Cx a, Cx b) {
    const Cx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(a);
    double t = -(a.real() * d.real() + a.imag() * d.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * d);
}

}  // namespace

ContinuumSpec ContinuumSpec::singleton(SpherePoint p) {
    ContinuumSpec s;
    s.kind = Kind::Singleton;
    s.point = p;
    if (p.is_finite()) require_parsable(p.z, "singleton");
    return s;
}

ContinuumSpec ContinuumSpec::segment(Cx a, Cx b) {
    require_parsable(a, "segment");
    require_parsable(b, "segment");
    if (a == b) throw std::invalid_argument("segment: endpoints must be distinct");
    ContinuumSpec s;
    s.kind = Kind::Segment;
    s.seg_a = a;
    s.seg_b = b;
    return s;
}

ContinuumSpec ContinuumSpec::circle(Cx center, double radius) {
    require_parsable(center, "circle");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("circle: radius must be positive and finite");
    ContinuumSpec s;
    s.kind = Kind::Circle;
    s.center = center;
    s.radius = radius;
    return s;
}

ContinuumSpec ContinuumSpec::polyline(std::vector<Cx> nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("polyline: needs at least 2 nodes");
    for (Cx z : nodes) require_parsable(z, "polyline");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j])
                throw std::invalid_argument("polyline: nodes must be pairwise distinct");
    ContinuumSpec s;
    s.kind = Kind::Polyline;
    s.nodes = std::move(nodes);
    return s;
}

ContinuumSpec ContinuumSpec::custom(std::vector<NetLevel> levels) {
    if (levels.empty()) throw std::invalid_argument("custom: needs at least one level");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const NetLevel& lv = levels[i];
        if (lv.level != static_cast<int>(i) + 1)
            throw std::invalid_argument("custom: levels must be indexed 1,2,...");
        if (lv.points.empty()) throw std::invalid_argument("custom: empty level");
        for (Cx z : lv.points) require_parsable(z, "custom level point");
        if (!(lv.mesh <= level_delta(lv.level)) || !(lv.delta <= level_delta(lv.level)))
            throw std::invalid_argument("custom: mesh and delta must be <= 1/(2j)");
        if (i > 0 && !(lv.mesh < levels[i - 1].mesh))
            throw std::invalid_argument("custom: meshes must strictly decrease");
    }
    ContinuumSpec s;
    s.kind = Kind::Custom;
    s.levels = std::move(levels);
    return s;
}

SpherePoint ContinuumSpec::ideal_sample(double u, double v) const {
    switch (kind) {
        case Kind::Singleton:
            return point;
        case Kind::Segment:
            return SpherePoint::finite(seg_a + u * (seg_b - seg_a));
        case Kind::Circle:
            return SpherePoint::finite(center + radius * std::polar(1.0, 2.0 * M_PI * u));
        case Kind::Polyline: {
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < nodes.size(); ++i) total += std::abs(nodes[i + 1] - nodes[i]);
            double target = u * total;
            for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
                const double len = std::abs(nodes[i + 1] - nodes[i]);
                if (target <= len || i + 2 == nodes.size()) {
                    const double t = len > 0.0 ? std::clamp(target / len, 0.0, 1.0) : 0.0;
                    return SpherePoint::finite(nodes[i] + t * (nodes[i + 1] - nodes[i]));
                }
                target -= len;
            }
            return SpherePoint::finite(nodes.back());
        }
        case Kind::Custom: {
            const auto& pts = levels.back().points;
            const std::size_t k = std::min(pts.size() - 1,
                                           static_cast<std::size_t>(v * static_cast<double>(pts.size())));
            return SpherePoint::finite(pts[k]);
        }
    }
    return point;
}

DisconnectedNetError::DisconnectedNetError(int lvl, Cx a, Cx b)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "net at level " << lvl << " is disconnected: component containing (" << a.real()
             << "," << a.imag() << ") is separated from component containing (" << b.real() << ","
             << b.imag() << ")";
          return os.str();
      }()),
      level(lvl),
      component_a(a),
      component_b(b) {}

bool safe_edge(Cx a, Cx b, double delta, int samples) {
    const double d = chordal_distance(a, b);
    if (!(d < delta)) return false;
    if (a == b) return true;
    // Cheap sufficient condition: the chordal arc length of the segment is
    //   <= 2 * EuclidLength / (1 + dist(0,segment)^2),
    // and the diameter never exceeds the arc length.
    const double len = std::abs(b - a);
    const double rho = distance_to_origin(a, b);
    const double arc_bound = 2.0 * len / (1.0 + rho * rho);
    if (arc_bound < delta) return true;
    return segment_chordal_diameter(a, b, samples) < delta;
}

namespace {

// Smallest power-of-two subdivision count >= lo such that the predicate
// holds; powers of two keep nets nested across levels.
template <typename Pred>
int doubling_search(int lo, Pred ok) {
    int k = lo;
    while (!ok(k)) {
        if (k > (1 << 24)) throw std::runtime_error("net refinement did not converge");
        k *= 2;
    }
    return k;
}

// Nets are built with adjacent spacing below 0.7 * delta. The headroom lets
// the sequence builder run chains at 0.75 * delta and still absorb the small
// orthogonal displacements that break up collinear runs.
constexpr double kNetSpacingFactor = 0.7;

std::vector<Cx> segment_net(Cx a, Cx b, double delta) {
    auto spacing_ok = [&](int m) {
        for (int k = 0; k < m; ++k) {
            const Cx p = a + (static_cast<double>(k) / m) * (b - a);
            const Cx q = a + (static_cast<double>(k + 1) / m) * (b - a);
            if (!safe_edge(p, q, kNetSpacingFactor * delta)) return false;
        }
        return true;
    };
    const int m = doubling_search(2, spacing_ok);
    std::vector<Cx> pts;
    pts.reserve(m + 1);
    for (int k = 0; k <= m; ++k)
        pts.push_back(k == m ? b : a + (static_cast<double>(k) / m) * (b - a));
    return pts;
}

std::vector<Cx> circle_net(Cx c, double r, double delta) {
    auto spacing_ok = [&](int kk) {
        for (int i = 0; i < kk; ++i) {
            const Cx p = c + r * std::polar(1.0, 2.0 * M_PI * i / kk);
            const Cx q = c + r * std::polar(1.0, 2.0 * M_PI * (i + 1) / kk);
            if (!safe_edge(p, q, kNetSpacingFactor * delta)) return false;
        }
        return true;
    };
    const int kk = doubling_search(8, spacing_ok);
    std::vector<Cx> pts;
    pts.reserve(kk);
    for (int i = 0; i < kk; ++i) pts.push_back(c + r * std::polar(1.0, 2.0 * M_PI * i / kk));
    return pts;
}

void check_connectivity(NetLevel& net) {
    const auto adj = proximity_graph(net);
    const std::size_t n = net.points.size();
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t nb : adj[cur])
            if (!seen[nb]) {
                seen[nb] = 1;
                ++reached;
                queue.push_back(nb);
            }
    }
    if (reached != n) {
        std::size_t other = 0;
        while (seen[other]) ++other;
        throw DisconnectedNetError(net.level, net.points[0], net.points[other]);
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> proximity_graph(const NetLevel& net) {
    const std::size_t n = net.points.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (safe_edge(net.points[i], net.points[j], net.delta)) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return adj;
}

NetLevel net_at(const ContinuumSpec& spec, int j) {
    if (j < 1) throw std::invalid_argument("net_at: level must be >= 1");
    NetLevel net;
    net.level = j;
    net.delta = level_delta(j);
    net.mesh = level_delta(j);

    switch (spec.kind) {
        case ContinuumSpec::Kind::Singleton:
            if (spec.point.is_finite()) {
                net.points = {spec.point.z};
                net.mesh = 0.0;
            } else {
                // Finite surrogate of the point at infinity. Radius 4j+1 keeps
                // 2/sqrt(1+R^2) well under the level mesh 1/(2j).
                const double R = 4.0 * j + 1.0;
                net.points = {R * std::polar(1.0, static_cast<double>(j))};
            }
            return net;  // one-point graph, trivially connected
        case ContinuumSpec::Kind::Segment:
            net.points = segment_net(spec.seg_a, spec.seg_b, net.delta);
            break;
        case ContinuumSpec::Kind::Circle:
            net.points = circle_net(spec.center, spec.radius, net.delta);
            break;
        case ContinuumSpec::Kind::Polyline: {
            net.points = spec.nodes;
            std::vector<Cx> extra;
            for (std::size_t e = 0; e + 1 < spec.nodes.size(); ++e) {
                const auto pts = segment_net(spec.nodes[e], spec.nodes[e + 1], net.delta);
                extra.insert(extra.end(), pts.begin() + 1, pts.end() - 1);
            }
            net.points.insert(net.points.end(), extra.begin(), extra.end());
            break;
        }
        case ContinuumSpec::Kind::Custom: {
            if (j > static_cast<int>(spec.levels.size()))
                throw std::invalid_argument("net_at: custom spec has no level " + std::to_string(j));
            net = spec.levels[static_cast<std::size_t>(j - 1)];
            break;
        }
    }
    check_connectivity(net);
    return net;
}

std::optional<std::string> validate_chain(const Chain& chain) {
    if (chain.points.empty()) return "chain is empty";
    for (std::size_t i = 0; i + 1 < chain.points.size(); ++i) {
        const Cx a = chain.points[i], b = chain.points[i + 1];
        if (!(chordal_distance(a, b) < chain.delta)) {
            std::ostringstream os;
            os << "chain step " << i << " has chordal length " << chordal_distance(a, b)
               << " >= delta " << chain.delta;
            return os.str();
        }
        if (!safe_edge(a, b, chain.delta)) {
            std::ostringstream os;
            os << "chain step " << i << " is not a safe edge at delta " << chain.delta;
            return os.str();
        }
    }
    return std::nullopt;
}

Chain epsilon_chain_by_index(const NetLevel& net, std::size_t from, std::size_t to) {
    const std::size_t n = net.points.size();
    if (from >= n || to >= n) throw std::invalid_argument("epsilon_chain: index out of range");
    Chain chain;
    chain.delta = net.delta;
    if (from == to) {
        chain.points = {net.points[from]};
        return chain;
    }
    const auto adj = proximity_graph(net);

    // BFS distances from the target, then a greedy walk from the source that
    // always picks the smallest-index neighbor one step closer. That yields
    // the lexicographically smallest index sequence among shortest paths.
    constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n, kUnreached);
    std::deque<std::size_t> queue{to};
    dist[to] = 0;
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t nb : adj[cur])
            if (dist[nb] == kUnreached) {
                dist[nb] = dist[cur] + 1;
                queue.push_back(nb);
            }
    }
    if (dist[from] == kUnreached)
        throw DisconnectedNetError(net.level, net.points[from], net.points[to]);

    std::size_t cur = from;
    chain.points.push_back(net.points[cur]);
    while (cur != to) {
        std::size_t next = kUnreached;
        for (std::size_t nb : adj[cur])
            if (dist[nb] + 1 == dist[cur]) {
                next = nb;
                break;  // adjacency lists are in increasing index order
            }
        cur = next;
        chain.points.push_back(net.points[cur]);
    }
    return chain;
}

Chain epsilon_chain(const NetLevel& net, Cx p, Cx q) {
    auto find = [&](Cx z) -> std::size_t {
        for (std::size_t i = 0; i < net.points.size(); ++i)
            if (net.points[i] == z) return i;
        throw std::invalid_argument("epsilon_chain: point does not belong to the net");
    };
    return epsilon_chain_by_index(net, find(p), find(q));
}

}  // namespace maxcurve
