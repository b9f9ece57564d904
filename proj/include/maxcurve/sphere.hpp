#pragma once

#include <complex>
#include <vector>

namespace maxcurve {

using Cx = std::complex<double>;

/// Largest modulus accepted for a finite point coming from external input.
/// Keeps every chordal-metric expression far away from overflow.
inline constexpr double kMaxParsedModulus = 1e150;

/// A point of the extended plane: a finite complex value or the point at
/// infinity. Infinity is a single canonical value (stored payload 0), so
/// exact equality on SpherePoint is well defined.
struct SpherePoint {
    bool inf = false;
    Cx z{0.0, 0.0};

    static SpherePoint finite(double re, double im = 0.0);
    static SpherePoint finite(Cx value);
    static SpherePoint infinity();

    bool is_finite() const { return !inf; }

    friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.z.real() == b.z.real() && a.z.imag() == b.z.imag();
    }
    friend bool operator!=(const SpherePoint& a, const SpherePoint& b) { return !(a == b); }
};

/// Finite list of distinct sphere points. Construction rejects duplicates
/// (exact equality), so a zero Hausdorff distance really means set equality.
struct PointSet {
    std::vector<SpherePoint> points;

    explicit PointSet(std::vector<SpherePoint> pts);
    static PointSet of_finite(const std::vector<Cx>& pts);

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

/// Chordal metric on the Riemann sphere,
///   d(z,w) = 2|z-w| / (sqrt(1+|z|^2) sqrt(1+|w|^2)),  d(z,inf) = 2/sqrt(1+|z|^2).
/// Evaluated in a scaled order so moduli up to ~1e150 stay overflow-free.
/// Range [0,2]; symmetric; zero iff the points are equal.
double chordal_distance(const SpherePoint& p, const SpherePoint& q);
double chordal_distance(Cx z, Cx w);
double chordal_to_infinity(Cx z);

/// Symmetric Hausdorff distance of two nonempty point sets in the chordal
/// metric. Throws std::invalid_argument on an empty input.
double hausdorff_chordal(const PointSet& a, const PointSet& b);
double hausdorff_chordal(const std::vector<Cx>& a, const std::vector<Cx>& b);

inline constexpr int kSegmentDiameterSamples = 129;

/// Maximum pairwise chordal distance over `samples` equally spaced points of
/// the Euclidean segment [a,b] (endpoints included), so the result is always
/// >= chordal_distance(a,b). This is the guard against segments whose
/// endpoints are chordally close but which pass near the origin, where the
/// chordal image balloons.
double segment_chordal_diameter(Cx a, Cx b, int samples = kSegmentDiameterSamples);
double segment_chordal_diameter(const SpherePoint& a, const SpherePoint& b,
                                int samples = kSegmentDiameterSamples);

}  // namespace maxcurve
