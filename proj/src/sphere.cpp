#include "maxcurve/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxcurve {

SpherePoint SpherePoint::finite(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument("finite sphere point requires finite coordinates");
    SpherePoint p;
    p.inf = false;
    p.z = Cx(re, im);
    return p;
}

SpherePoint SpherePoint::finite(Cx value) { return finite(value.real(), value.imag()); }

SpherePoint SpherePoint::infinity() {
    SpherePoint p;
    p.inf = true;
    p.z = Cx(0.0, 0.0);
    return p;
}

PointSet::PointSet(std::vector<SpherePoint> pts) : points(std::move(pts)) {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("PointSet: duplicate point");
}

PointSet PointSet::of_finite(const std::vector<Cx>& pts) {
    std::vector<SpherePoint> sp;
    sp.reserve(pts.size());
    for (Cx z : pts) sp.push_back(SpherePoint::finite(z));
    return PointSet(std::move(sp));
}

double chordal_to_infinity(Cx z) {
    // 2 / sqrt(1+|z|^2), with hypot keeping huge moduli overflow-free.
    const double m = std::hypot(z.real(), z.imag());
    return 2.0 / std::hypot(1.0, m);
}

double chordal_distance(Cx z, Cx w) {
    if (z.real() == w.real() && z.imag() == w.imag()) return 0.0;
    const double num = std::hypot(z.real() - w.real(), z.imag() - w.imag());
    const double dz = std::hypot(1.0, std::hypot(z.real(), z.imag()));
    const double dw = std::hypot(1.0, std::hypot(w.real(), w.imag()));
    // Divide by the larger factor first: keeps the intermediate small and
    // makes the result bit-symmetric in the arguments.
    const double hi = std::max(dz, dw), lo = std::min(dz, dw);
    const double d = 2.0 * ((num / hi) / lo);
    return std::min(d, 2.0);
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    if (p.inf && q.inf) return 0.0;
    if (p.inf) return chordal_to_infinity(q.z);
    if (q.inf) return chordal_to_infinity(p.z);
    return chordal_distance(p.z, q.z);
}

double hausdorff_chordal(const PointSet& a, const PointSet& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff_chordal: empty point set");
    auto directed = [](const PointSet& from, const PointSet& to) {
        double worst = 0.0;
        for (const auto& p : from.points) {
            double best = 4.0;
            for (const auto& q : to.points) best = std::min(best, chordal_distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double hausdorff_chordal(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff_chordal: empty point set");
    auto directed = [](const std::vector<Cx>& from, const std::vector<Cx>& to) {
        double worst = 0.0;
        for (Cx p : from) {
            double best = 4.0;
            for (Cx q : to) best = std::min(best, chordal_distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double segment_chordal_diameter(Cx a, Cx b, int samples) {
    if (samples < 2) throw std::invalid_argument("segment_chordal_diameter: samples >= 2 required");
    std::vector<Cx> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    const double step = 1.0 / static_cast<double>(samples - 1);
    for (int k = 0; k < samples; ++k) {
        const double t = (k == samples - 1) ? 1.0 : step * k;
        pts.push_back(a + t * (b - a));
    }
    double diam = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            diam = std::max(diam, chordal_distance(pts[i], pts[j]));
    return diam;
}

double segment_chordal_diameter(const SpherePoint& a, const SpherePoint& b, int samples) {
    if (a.inf || b.inf)
        throw std::invalid_argument(
            "segment_chordal_diameter: segments are Euclidean objects between finite points");
    return segment_chordal_diameter(a.z, b.z, samples);
}

}  // namespace maxcurve
