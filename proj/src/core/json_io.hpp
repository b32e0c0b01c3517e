#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "core/bitcommit.hpp"
#include "core/qudit.hpp"
#include "core/tomography.hpp"

namespace qdl::io {

// Every document carries "schema": "<name>/1".

nlohmann::json density_to_json(const DensityMatrix& rho);
// Accepts matrices within 1e-6 of Hermitian / unit trace / PSD, then snaps
// them exactly onto the density manifold. Errors name the offending field.
DensityMatrix density_from_json(const nlohmann::json& j);

nlohmann::json counts_to_json(const tomo::CountData& data);
tomo::CountData counts_from_json(const nlohmann::json& j);

nlohmann::json tomo_report_json(const tomo::MleReport& report,
                                const tomo::MeasurementSet& set);

nlohmann::json entanglement_report_json(const DensityMatrix& rho);

nlohmann::json bc_report_json(const bc::SecurityReport& report);
nlohmann::json bc_threshold_json(double lambda, double r_star);
std::string curves_csv(const std::vector<bc::CurvePoint>& points);

nlohmann::json vortex_decomposition_json(double displacement, double waist);

// dump(2) with trailing newline; doubles serialize shortest-roundtrip.
std::string dump_json(const nlohmann::json& j);

}  // namespace qdl::io
