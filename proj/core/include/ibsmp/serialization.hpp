#pragma once

#include "ibsmp/deorbit.hpp"
#include "ibsmp/moea.hpp"
#include "ibsmp/phasing.hpp"
#include "ibsmp/sequence.hpp"
#include "ibsmp/transfer.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ibsmp {

inline constexpr int kSchemaVersion = 1;

/// JSON views of the core result types. Every object carries a
/// schema_version field; loaders reject unknown versions.
nlohmann::json to_json(const DeorbitResult& r);
nlohmann::json to_json(const DeorbitSurrogate& s);
nlohmann::json to_json(const TransferSolution& s);
nlohmann::json to_json(const SequenceResult& r);
nlohmann::json to_json(const PhasingReport& r);

DeorbitSurrogate surrogate_from_json(const nlohmann::json& j);

/// Loads and validates a debris catalog (JSON array of objects with id,
/// mass_kg, a_km, e, i_deg, raan_deg). Angles are converted to radians.
/// Validation failures throw std::runtime_error naming the entry and field.
std::vector<DebrisCatalogEntry> load_catalog(const std::string& path);
std::vector<DebrisCatalogEntry> catalog_from_json(const nlohmann::json& j);

/// FNV-1a hash of a configuration string, hex-encoded; stamped into CSV
/// preambles so outputs are traceable to their inputs.
std::string config_hash(const std::string& config_text);

/// Two comment lines: ISO-8601 UTC run timestamp and the config hash.
std::string csv_preamble(const std::string& hash);

/// One row per revolution/orbit: rev,t_s,a_km,e,i_deg,raan_deg,rp_km,
/// ra_km,dv_kms,m_kg.
std::string history_csv(const std::vector<EquinoctialState>& states,
                        const std::vector<double>& dv,
                        const std::vector<double>& mass,
                        const std::string& hash);
std::string deorbit_history_csv(const DeorbitResult& r, const std::string& hash);

/// Front rows: order,tof_days,dv_kms,x1..x10 (shorter duration vectors are
/// padded with empty cells).
std::string fronts_csv(const std::vector<ParetoPoint>& points,
                       const std::string& hash);

/// Ranking rows: rank,order,conv.
std::string rankings_csv(const std::vector<ConvRanking>& rankings,
                         const std::string& hash);

/// Writes via a temporary file in the same directory and renames over the
/// destination, so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

} // namespace ibsmp
