#include "maxcurve/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace maxcurve {

namespace {

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * std::numbers::pi);
    if (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

// Chebyshev series evaluation (value) by Clenshaw recurrence, x in [-1,1].
Cx clenshaw(const std::vector<Cx>& c, double x) {
    Cx b1{0.0, 0.0}, b2{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 1;) {
        const Cx b0 = 2.0 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + (c.empty() ? Cx{} : c[0]);
}

// Coefficients of the derivative series via the standard backward recurrence
// d_k = d_{k+2} + 2(k+1) c_{k+1}, then d_0 halved and the chain-rule factor
// for t = T x applied.
std::vector<Cx> derivative_series(const std::vector<Cx>& c, double t_bound) {
    const std::size_t n = c.size();
    if (n <= 1) return {};
    std::vector<Cx> d(n - 1, Cx{0.0, 0.0});
    Cx dkp1{0.0, 0.0}, dkp2{0.0, 0.0};
    for (long k = static_cast<long>(n) - 2; k >= 0; --k) {
        const Cx dk = dkp2 + 2.0 * static_cast<double>(k + 1) * c[static_cast<std::size_t>(k + 1)];
        d[static_cast<std::size_t>(k)] = dk;
        dkp2 = dkp1;
        dkp1 = dk;
    }
    d[0] *= 0.5;
    const double scale = 1.0 / t_bound;
    for (Cx& v : d) v *= scale;
    return d;
}

// Least squares in the Chebyshev basis over first-kind nodes is diagonal:
// c_j = (2 - [j==0]) / M * sum_k f(x_k) T_j(x_k).
std::vector<Cx> fit_coefficients(const std::vector<Cx>& samples, const std::vector<double>& xs,
                                 int degree) {
    const std::size_t m = samples.size();
    std::vector<Cx> c(static_cast<std::size_t>(degree) + 1, Cx{0.0, 0.0});
    for (std::size_t k = 0; k < m; ++k) {
        const double x = xs[k];
        const Cx f = samples[k];
        double t_prev = 1.0, t_cur = x;
        c[0] += f;
        if (degree >= 1) c[1] += f * x;
        for (int j = 2; j <= degree; ++j) {
            const double t_next = 2.0 * x * t_cur - t_prev;
            c[static_cast<std::size_t>(j)] += f * t_next;
            t_prev = t_cur;
            t_cur = t_next;
        }
    }
    const double inv = 1.0 / static_cast<double>(m);
    c[0] *= inv;
    for (int j = 1; j <= degree; ++j) c[static_cast<std::size_t>(j)] *= 2.0 * inv;
    return c;
}

std::vector<double> first_kind_nodes(int m) {
    std::vector<double> xs(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        xs[static_cast<std::size_t>(k)] = std::cos(std::numbers::pi * (k + 0.5) / m);
    return xs;
}

std::vector<double> second_kind_nodes(int m) {  // m points including the endpoints
    std::vector<double> xs(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        xs[static_cast<std::size_t>(k)] = std::cos(std::numbers::pi * k / (m - 1));
    return xs;
}

struct VerifyStats {
    double value_err = 0.0;  // weighted
    double deriv_err = 0.0;
    double feasible_floor = 0.0;
};

VerifyStats verify_on_grid(const PolynomialApproximant& f, const CurveFn& curve,
                           const ErrorSchedule& schedule, const std::vector<double>& xs) {
    VerifyStats st;
    for (double x : xs) {
        const double t = f.t_bound * x;
        const CurveSample truth = curve(t);
        const CurveSample got = f.eval(t);
        const double eps = schedule.eval(t);
        const double ev = std::abs(got.value - truth.value);
        const double ed = std::abs(got.derivative - truth.derivative);
        st.value_err = std::max(st.value_err, ev / eps);
        st.deriv_err = std::max(st.deriv_err, ed / eps);
        // smallest uniform floor that would admit this point
        double tighten = 1.0;
        for (const TightenWindow& w : schedule.windows)
            if (std::abs(t - w.center) <= w.half_width) tighten *= w.scale;
        const double need = std::max(ev, ed) / tighten;
        if (need > schedule.base_at(t)) st.feasible_floor = std::max(st.feasible_floor, need);
    }
    return st;
}

}  // namespace

double ErrorSchedule::base_at(double t) const {
    const double raw = base == Base::Uniform ? uniform_value : std::min(1.0, 1.0 / (1.0 + t * t));
    return std::max(floor, raw);
}

double ErrorSchedule::eval(double t) const {
    double e = base_at(t);
    for (const TightenWindow& w : windows)
        if (std::abs(t - w.center) <= w.half_width) e *= w.scale;
    return e;
}

void ErrorSchedule::tighten(double center, double half_width, double scale) {
    windows.push_back({center, half_width, scale});
}

CurveSample PolynomialApproximant::eval(double t) const {
    if (!(t >= -t_bound && t <= t_bound))
        throw std::domain_error("PolynomialApproximant: t outside [-T, T]");
    const double x = t / t_bound;
    return {clenshaw(coeff, x), deriv_coeff.empty() ? Cx{0.0, 0.0} : clenshaw(deriv_coeff, x)};
}

FitFailure::FitFailure(double ve, double de, int deg, double fl)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "fit: degree cap " << deg << " reached with weighted errors value=" << ve
             << " derivative=" << de << " (feasible floor " << fl << ")";
          return os.str();
      }()),
      best_value_err(ve),
      best_deriv_err(de),
      best_degree(deg),
      feasible_floor(fl) {}

std::pair<double, double> verify_against(const PolynomialApproximant& f, const CurveFn& curve,
                                         const ErrorSchedule& schedule, int grid_points) {
    const auto st = verify_on_grid(f, curve, schedule, second_kind_nodes(grid_points));
    return {st.value_err, st.deriv_err};
}

PolynomialApproximant fit(const CurveFn& curve, double t_bound, const ErrorSchedule& schedule,
                          int max_degree) {
    if (!(t_bound > 0.0)) throw std::invalid_argument("fit: T must be positive");
    if (max_degree < 8) throw std::invalid_argument("fit: max_degree >= 8 required");

    double best_ve = 0.0, best_de = 0.0, best_floor = 0.0;
    int best_degree = 0;
    bool have_best = false;

    for (int degree = 8;; degree *= 2) {
        if (degree > max_degree) break;
        const int m = 4 * (degree + 1);
        const auto xs = first_kind_nodes(m);
        std::vector<Cx> samples(xs.size());
        for (std::size_t k = 0; k < xs.size(); ++k) samples[k] = curve(t_bound * xs[k]).value;

        PolynomialApproximant f;
        f.t_bound = t_bound;
        f.degree = degree;
        f.coeff = fit_coefficients(samples, xs, degree);
        f.deriv_coeff = derivative_series(f.coeff, t_bound);

        const auto ver = verify_on_grid(f, curve, schedule, second_kind_nodes(m + 1));
        if (ver.value_err <= 1.0 && ver.deriv_err <= 1.0) {
            // trim trailing numerically-zero coefficients
            double cmax = 0.0;
            for (Cx c : f.coeff) cmax = std::max(cmax, std::abs(c));
            const double cut = 1e-14 * std::max(1.0, cmax);
            while (f.coeff.size() > 2 && std::abs(f.coeff.back()) <= cut) f.coeff.pop_back();
            f.degree = static_cast<int>(f.coeff.size()) - 1;
            f.deriv_coeff = derivative_series(f.coeff, t_bound);
            f.cert_value_err = ver.value_err;
            f.cert_deriv_err = ver.deriv_err;
            return f;
        }
        const double score = std::max(ver.value_err, ver.deriv_err);
        if (!have_best || score < std::max(best_ve, best_de)) {
            best_ve = ver.value_err;
            best_de = ver.deriv_err;
            best_degree = degree;
            best_floor = ver.feasible_floor;
            have_best = true;
        }
    }
    throw FitFailure(best_ve, best_de, best_degree, best_floor);
}

MarkerReport marker_angle_certify(const PolynomialApproximant& f, const MarkerParams& markers,
                                  double tol) {
    MarkerReport rep;
    rep.tol = tol;
    for (const MarkerParam& m : markers) {
        if (!(m.s >= -f.t_bound + 1.0 && m.s <= f.t_bound - 1.0))
            throw std::domain_error("marker_angle_certify: marker outside [-T+1, T-1]");
        MarkerCheck chk;
        chk.s = m.s;
        chk.expected = m.expected_angle;
        chk.measured = std::arg(f.eval(m.s).derivative);
        chk.error = std::abs(wrap_angle(chk.measured - chk.expected));
        chk.pass = chk.error <= tol;
        rep.all_pass = rep.all_pass && chk.pass;
        rep.checks.push_back(chk);
    }
    return rep;
}

}  // namespace maxcurve
