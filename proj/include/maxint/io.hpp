#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxint/analysis.hpp"
#include "maxint/landmarks.hpp"
#include "maxint/solver.hpp"

namespace maxint {

using Json = nlohmann::ordered_json;

std::string version_string();

/// {"type": "polytope-h" | "polytope-v" | "lp-ball" | "hull-ball-points", ...}
/// "rows" / "vertices" hold one representative per ± pair; the full lists
/// "halfspaces" / "points" are accepted only when closed under negation.
/// An optional "transform" matrix maps the body linearly.
SymmetricBody body_from_json(const Json& j);
Json body_to_json(const SymmetricBody& body);

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);
Json vector_to_json(const Vec& v);

Json to_json(const Ellipsoid& e);
Ellipsoid ellipsoid_from_json(const Json& j);
Json to_json(const MomentReport& m);
Json to_json(const PositionSolution& s);
Json to_json(const Landmarks& lm);
Json to_json(const MPositionCertificate& c);
Json to_json(const RadiusProfile& p);
Json to_json(const LimitMeasureReport& r);
Json to_json(const BProbeReport& r);
Json to_json(const RestrictedSphereMeasure& m);

/// CSV writers: optional leading "# ..." provenance line, then a header row.
void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace);
void write_profile_csv(std::ostream& os, const RadiusProfile& p);
void write_clusters_csv(std::ostream& os, const LimitMeasureReport& r);
void write_bprobe_csv(std::ostream& os, const BProbeReport& r);
void write_midpoints_csv(std::ostream& os, const BProbeReport& r);
/// 2D: arc list; nD: sample table with inclusion flags.
void write_measure_csv(std::ostream& os, const RestrictedSphereMeasure& m);

/// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace maxint
