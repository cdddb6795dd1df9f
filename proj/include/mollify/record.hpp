#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mollify/hecke.hpp"
#include "mollify/optimize.hpp"
#include "mollify/terms.hpp"

namespace mollify {

inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json spec_to_json(const MollifierSpec& spec);
/// Inverse of spec_to_json.
MollifierSpec spec_from_json(const nlohmann::json& j);

nlohmann::json terms_to_json(const TermMatrix& terms);
nlohmann::json quadrature_to_json(const ConvergenceOptions& opts);
nlohmann::json report_to_json(const VerificationReport& report);

/// Evaluation record: spec echo, terms, kappa, quadrature settings, wall time.
nlohmann::json evaluation_record(const std::string& command, const MollifierSpec& spec,
                                 const TermMatrix& terms, const ConvergenceOptions& opts,
                                 double wall_seconds);

void write_json(const std::string& path, const nlohmann::json& j);

/// CSV writers with the headers R,nu,kappa / iter,kappa / n,value.
void write_surface_csv(std::ostream& out, const std::vector<SurfacePoint>& points);
void write_trace_csv(std::ostream& out, const std::vector<std::pair<int, double>>& trace);
void write_series_csv(std::ostream& out, const CoefficientSeries& series);

}  // namespace mollify
