#include "maxcurve/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace maxcurve {

namespace {

double parse_real_token(const std::string& s, const std::string& field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(field + ": cannot parse '" + s + "' as a real number");
    }
}

SpherePoint finite_checked(double re, double im, const std::string& field) {
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument(field + ": coordinates must be finite");
    if (std::hypot(re, im) > kMaxParsedModulus)
        throw std::invalid_argument(field + ": modulus exceeds the 1e150 cap");
    return SpherePoint::finite(re, im);
}

}  // namespace

SpherePoint parse_sphere_point(const Json& j, const std::string& field) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return SpherePoint::infinity();
        return finite_checked(parse_real_token(s, field), 0.0, field);
    }
    if (j.is_number()) return finite_checked(j.get<double>(), 0.0, field);
    if (j.is_array()) {
        if (j.size() != 2 || !j[0].is_number() || !j[1].is_number())
            throw std::invalid_argument(field + ": point array must be [re, im]");
        return finite_checked(j[0].get<double>(), j[1].get<double>(), field);
    }
    if (j.is_object()) {
        if (!j.contains("re") || !j.contains("im"))
            throw std::invalid_argument(field + ": point object must carry re and im");
        return finite_checked(j["re"].get<double>(), j["im"].get<double>(), field);
    }
    throw std::invalid_argument(field + ": unsupported point encoding");
}

ContinuumSpec parse_continuum_spec(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("continuum: object with a 'kind' field required");
    const std::string kind = j["kind"].get<std::string>();
    auto finite_at = [&](const char* key) {
        if (!j.contains(key))
            throw std::invalid_argument(std::string("continuum: missing field '") + key + "'");
        const SpherePoint p = parse_sphere_point(j[key], key);
        if (!p.is_finite())
            throw std::invalid_argument(std::string(key) + ": must be a finite point");
        return p.z;
    };
    if (kind == "singleton") {
        if (!j.contains("p")) throw std::invalid_argument("singleton: missing field 'p'");
        return ContinuumSpec::singleton(parse_sphere_point(j["p"], "p"));
    }
    if (kind == "segment") return ContinuumSpec::segment(finite_at("a"), finite_at("b"));
    if (kind == "circle") {
        if (!j.contains("radius")) throw std::invalid_argument("circle: missing field 'radius'");
        return ContinuumSpec::circle(finite_at("center"), j["radius"].get<double>());
    }
    if (kind == "polyline") {
        if (!j.contains("nodes") || !j["nodes"].is_array())
            throw std::invalid_argument("polyline: missing 'nodes' array");
        std::vector<Cx> nodes;
        for (std::size_t i = 0; i < j["nodes"].size(); ++i) {
            const SpherePoint p = parse_sphere_point(j["nodes"][i], "nodes");
            if (!p.is_finite()) throw std::invalid_argument("nodes: must be finite points");
            nodes.push_back(p.z);
        }
        return ContinuumSpec::polyline(std::move(nodes));
    }
    if (kind == "custom") {
        if (!j.contains("levels") || !j["levels"].is_array())
            throw std::invalid_argument("custom: missing 'levels' array");
        std::vector<NetLevel> levels;
        for (const auto& lj : j["levels"]) {
            NetLevel lv;
            lv.level = lj.at("level").get<int>();
            lv.mesh = lj.at("r").get<double>();
            lv.delta = lj.at("delta").get<double>();
            for (const auto& pj : lj.at("points")) {
                const SpherePoint p = parse_sphere_point(pj, "points");
                if (!p.is_finite()) throw std::invalid_argument("points: must be finite");
                lv.points.push_back(p.z);
            }
            levels.push_back(std::move(lv));
        }
        return ContinuumSpec::custom(std::move(levels));
    }
    throw std::invalid_argument("continuum: unknown kind '" + kind + "'");
}

ContinuumSpec parse_continuum_spec_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("continuum: invalid JSON: ") + e.what());
    }
    return parse_continuum_spec(j);
}

Json approximant_to_json(const PolynomialApproximant& f) {
    Json j;
    j["T"] = f.t_bound;
    j["degree"] = f.degree;
    Json re = Json::array(), im = Json::array();
    for (Cx c : f.coeff) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    j["coeff_re"] = std::move(re);
    j["coeff_im"] = std::move(im);
    j["cert_value_err"] = f.cert_value_err;
    j["cert_deriv_err"] = f.cert_deriv_err;
    return j;
}

PolynomialApproximant approximant_from_json(const Json& j) {
    PolynomialApproximant f;
    f.t_bound = j.at("T").get<double>();
    f.degree = j.at("degree").get<int>();
    const auto& re = j.at("coeff_re");
    const auto& im = j.at("coeff_im");
    if (re.size() != im.size() || static_cast<int>(re.size()) != f.degree + 1)
        throw std::invalid_argument("approximant: coefficient arrays inconsistent with degree");
    for (std::size_t k = 0; k < re.size(); ++k)
        f.coeff.emplace_back(re[k].get<double>(), im[k].get<double>());
    f.cert_value_err = j.at("cert_value_err").get<double>();
    f.cert_deriv_err = j.at("cert_deriv_err").get<double>();
    // rebuild the derivative series deterministically
    PolynomialApproximant refit;
    refit.t_bound = f.t_bound;
    refit.coeff = f.coeff;
    const std::size_t n = f.coeff.size();
    std::vector<Cx> d(n > 1 ? n - 1 : 0, Cx{0.0, 0.0});
    Cx dkp1{0.0, 0.0}, dkp2{0.0, 0.0};
    for (long k = static_cast<long>(n) - 2; k >= 0; --k) {
        const Cx dk = dkp2 + 2.0 * static_cast<double>(k + 1) * f.coeff[static_cast<std::size_t>(k + 1)];
        d[static_cast<std::size_t>(k)] = dk;
        dkp2 = dkp1;
        dkp1 = dk;
    }
    if (!d.empty()) {
        d[0] *= 0.5;
        for (Cx& v : d) v /= f.t_bound;
    }
    f.deriv_coeff = std::move(d);
    return f;
}

Json schedule_to_json(const ErrorSchedule& s) {
    Json j;
    j["base"] = s.base == ErrorSchedule::Base::Uniform ? "uniform" : "quadratic_decay";
    j["uniform_value"] = s.uniform_value;
    j["floor"] = s.floor;
    Json ws = Json::array();
    for (const TightenWindow& w : s.windows) {
        Json wj;
        wj["center"] = w.center;
        wj["half_width"] = w.half_width;
        wj["scale"] = w.scale;
        ws.push_back(std::move(wj));
    }
    j["tighten_windows"] = std::move(ws);
    return j;
}

Json cluster_report_to_json(const ClusterReport& r) {
    Json j;
    j["window"] = Json::array({r.window_lo, r.window_hi});
    j["samples"] = r.samples;
    j["target_level"] = r.target_level;
    j["hausdorff_to_target"] = r.hausdorff_to_target;
    return j;
}

Json marker_report_to_json(const MarkerReport& r) {
    Json j;
    j["tol"] = r.tol;
    j["all_pass"] = r.all_pass;
    Json checks = Json::array();
    for (const MarkerCheck& c : r.checks) {
        Json cj;
        cj["s"] = c.s;
        cj["expected"] = c.expected;
        cj["measured"] = c.measured;
        cj["error"] = c.error;
        cj["pass"] = c.pass;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j;
}

Json divergence_report_to_json(const DivergenceReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["tol"] = r.tol;
    j["angles_ok"] = r.angles_ok;
    j["spread_minus"] = r.spread_minus;
    j["spread_plus"] = r.spread_plus;
    j["oscillations_minus"] = r.oscillations_minus;
    j["oscillations_plus"] = r.oscillations_plus;
    j["marker_params"] = r.marker_params;
    j["marker_angles"] = r.marker_angles;
    return j;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_sequence_csv(std::ostream& os, const DoubleSequence& seq) {
    std::set<long> h, v;
    for (long m : seq.markers_h_minus) h.insert(m);
    for (long m : seq.markers_h_plus) h.insert(m);
    for (long m : seq.markers_v_minus) v.insert(m);
    for (long m : seq.markers_v_plus) v.insert(m);
    os << "n,re,im,marker\n";
    for (long n = seq.n_min; n <= seq.n_max; ++n) {
        const Cx z = seq.point(n);
        const char* tag = h.count(n) ? "H" : (v.count(n) ? "V" : "");
        os << n << ',' << fmt17(z.real()) << ',' << fmt17(z.imag()) << ',' << tag << '\n';
    }
}

void write_curve_csv(std::ostream& os, const CurveFn& curve, double lo, double hi, int samples) {
    os << "t,re,im,d_re,d_im\n";
    for (int k = 0; k < samples; ++k) {
        const double t = lo + (hi - lo) * static_cast<double>(k) / (samples - 1);
        const CurveSample s = curve(t);
        os << fmt17(t) << ',' << fmt17(s.value.real()) << ',' << fmt17(s.value.imag()) << ','
           << fmt17(s.derivative.real()) << ',' << fmt17(s.derivative.imag()) << '\n';
    }
}

void write_overlay_svg(std::ostream& os, const CurveFn& curve, double lo, double hi, int samples,
                       const std::vector<NetLevel>& nets, bool has_infinite_end) {
    constexpr double kClip = 10.0;
    constexpr double kSize = 800.0;
    auto sx = [&](double re) { return (re + kClip) / (2.0 * kClip) * kSize; };
    auto sy = [&](double im) { return (kClip - im) / (2.0 * kClip) * kSize; };
    char buf[64];
    auto f2 = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };

    os << "<svg xmlns='http://www.w3.org/2000/svg' width='800' height='800' "
          "viewBox='0 0 800 800'>\n";
    os << "<rect width='800' height='800' fill='white'/>\n";

    bool open = false;
    for (int k = 0; k < samples; ++k) {
        const double t = lo + (hi - lo) * static_cast<double>(k) / (samples - 1);
        const Cx z = curve(t).value;
        const bool visible = std::abs(z) <= kClip;
        if (visible && !open) {
            os << "<polyline fill='none' stroke='black' stroke-width='0.6' points='";
            open = true;
        }
        if (visible) os << f2(sx(z.real())) << ',' << f2(sy(z.imag())) << ' ';
        if (!visible && open) {
            os << "'/>\n";
            open = false;
        }
    }
    if (open) os << "'/>\n";

    const char* colors[] = {"crimson", "royalblue"};
    for (std::size_t i = 0; i < nets.size(); ++i)
        for (Cx p : nets[i].points)
            if (std::abs(p) <= kClip)
                os << "<circle cx='" << f2(sx(p.real())) << "' cy='" << f2(sy(p.imag()))
                   << "' r='2' fill='" << colors[i % 2] << "'/>\n";

    if (has_infinite_end)
        os << "<text x='10' y='20' font-size='14'>one or both target continua contain the point "
              "at infinity (not drawable)</text>\n";
    os << "</svg>\n";
}

}  // namespace maxcurve
