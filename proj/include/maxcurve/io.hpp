#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "maxcurve/analysis.hpp"
#include "maxcurve/approx.hpp"
#include "maxcurve/continuum.hpp"
#include "maxcurve/sequence.hpp"

namespace maxcurve {

using Json = nlohmann::ordered_json;

/// Parses the point encoding used across the JSON interfaces: the string
/// "inf", a number, a numeric string, [re, im], or {"re":..,"im":..}.
/// Finite points above the 1e150 modulus cap are rejected.
SpherePoint parse_sphere_point(const Json& j, const std::string& field);

/// {"kind": "singleton"|"segment"|"circle"|"polyline"|"custom", ...}
ContinuumSpec parse_continuum_spec(const Json& j);
ContinuumSpec parse_continuum_spec_text(const std::string& text);

Json approximant_to_json(const PolynomialApproximant& f);
PolynomialApproximant approximant_from_json(const Json& j);

Json schedule_to_json(const ErrorSchedule& s);
Json cluster_report_to_json(const ClusterReport& r);
Json marker_report_to_json(const MarkerReport& r);
Json divergence_report_to_json(const DivergenceReport& r);

/// Decimal with 17 significant digits: lossless round-trip for doubles.
std::string fmt17(double v);

void write_sequence_csv(std::ostream& os, const DoubleSequence& seq);

/// Rows t,re,im,d_re,d_im over `samples` uniform parameters in [lo, hi].
void write_curve_csv(std::ostream& os, const CurveFn& curve, double lo, double hi, int samples);

/// Diagnostic plot: the finite-plane portion clipped to modulus <= 10 with
/// the target nets overlaid; infinity is annotated textually.
void write_overlay_svg(std::ostream& os, const CurveFn& curve, double lo, double hi, int samples,
                       const std::vector<NetLevel>& nets, bool has_infinite_end);

}  // namespace maxcurve
