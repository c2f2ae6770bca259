#include "ibsmp/serialization.hpp"

#include "ibsmp/elements.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ibsmp {
namespace {

using nlohmann::json;

void require_version(const json& j, const char* what) {
    if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion)
        throw std::runtime_error(std::string(what) +
                                 ": missing or unsupported schema_version");
}

double require_number(const json& j, const char* field, std::size_t index) {
    if (!j.contains(field) || !j[field].is_number())
        throw std::runtime_error("catalog entry " + std::to_string(index) +
                                 ": missing or non-numeric field '" + field + "'");
    return j[field].get<double>();
}

} // namespace

json to_json(const DeorbitResult& r) {
    return json{{"schema_version", kSchemaVersion},
                {"dv_kms", r.dv},
                {"tof_s", r.tof},
                {"tof_days", r.tof / kSecondsPerDay},
                {"a_f_km", r.a_f},
                {"e_f", r.e_f},
                {"m_ibs_final_kg", r.m_ibs_final},
                {"n_orbits", r.n_orbits},
                {"converged", r.converged}};
}

json to_json(const DeorbitSurrogate& s) {
    json slices = json::array();
    for (const auto& sl : s.slices) {
        slices.push_back(json{{"m_ibs0_kg", sl.m_ibs0},
                              {"available", sl.available},
                              {"tof_s", sl.tof},
                              {"dv_kms", sl.dv},
                              {"a_f_km", sl.a_f},
                              {"argmin_i1", sl.argmin_i1},
                              {"argmin_i2", sl.argmin_i2},
                              {"tof_min_s", sl.tof_min},
                              {"tof_max_s", sl.tof_max}});
    }
    return json{{"schema_version", kSchemaVersion},
                {"debris", json{{"mass_kg", s.debris.mass}, {"a0_km", s.debris.a0}}},
                {"grid",
                 json{{"n_mibs", s.spec.n_mibs},
                      {"n_dla1", s.spec.n_dla1},
                      {"n_dlaf", s.spec.n_dlaf},
                      {"mibs_lo_kg", s.spec.mibs_lo},
                      {"mibs_hi_kg", s.spec.mibs_hi},
                      {"dla_hi_rad", s.spec.dla_hi}}},
                {"slices", slices}};
}

DeorbitSurrogate surrogate_from_json(const json& j) {
    require_version(j, "surrogate");
    DeorbitSurrogate s;
    s.debris.mass = j.at("debris").at("mass_kg").get<double>();
    s.debris.a0 = j.at("debris").at("a0_km").get<double>();
    const json& g = j.at("grid");
    s.spec.n_mibs = g.at("n_mibs").get<int>();
    s.spec.n_dla1 = g.at("n_dla1").get<int>();
    s.spec.n_dlaf = g.at("n_dlaf").get<int>();
    s.spec.mibs_lo = g.at("mibs_lo_kg").get<double>();
    s.spec.mibs_hi = g.at("mibs_hi_kg").get<double>();
    s.spec.dla_hi = g.at("dla_hi_rad").get<double>();
    for (const json& sj : j.at("slices")) {
        SurrogateSlice sl;
        sl.m_ibs0 = sj.at("m_ibs0_kg").get<double>();
        sl.available = sj.at("available").get<bool>();
        sl.tof = sj.at("tof_s").get<std::vector<double>>();
        sl.dv = sj.at("dv_kms").get<std::vector<double>>();
        sl.a_f = sj.at("a_f_km").get<std::vector<double>>();
        sl.argmin_i1 = sj.at("argmin_i1").get<std::vector<int>>();
        sl.argmin_i2 = sj.at("argmin_i2").get<std::vector<int>>();
        sl.tof_min = sj.at("tof_min_s").get<double>();
        sl.tof_max = sj.at("tof_max_s").get<double>();
        s.slices.push_back(std::move(sl));
    }
    return s;
}

json to_json(const TransferSolution& s) {
    return json{{"schema_version", kSchemaVersion},
                {"controls",
                 json{{"dlt1_rad", s.controls.dlt1},
                      {"dltf_rad", s.controls.dltf},
                      {"rt1", s.controls.rt1},
                      {"rtf", s.controls.rtf},
                      {"beta_a_rad", s.controls.beta_a},
                      {"beta_p_rad", s.controls.beta_p}}},
                {"dv_kms", s.dv},
                {"tof_s", s.tof},
                {"tof_days", s.tof / kSecondsPerDay},
                {"n_revolutions", s.n_revolutions},
                {"residual",
                 json{{"da_km", s.residual[0]},
                      {"de", s.residual[1]},
                      {"di_deg", s.residual[2] * kRadToDeg}}},
                {"m_ibs_final_kg", s.m_ibs_final},
                {"feasible", s.feasible}};
}

json to_json(const SequenceResult& r) {
    json phases = json::array();
    for (const auto& p : r.phases) {
        phases.push_back(json{{"debris_index", p.debris_index},
                              {"t_rv_days", p.t_rv_days},
                              {"t_do_days", p.t_do_days},
                              {"dv_rv_kms", p.dv_rv},
                              {"dv_do_kms", p.dv_do},
                              {"m_after_rv_kg", p.m_after_rv},
                              {"m_after_do_kg", p.m_after_do},
                              {"feasible", p.feasible},
                              {"note", p.note}});
    }
    return json{{"schema_version", kSchemaVersion},
                {"tof_tot_days", r.tof_tot_days},
                {"dv_tot_kms", r.dv_tot},
                {"feasible", r.feasible},
                {"violation", r.violation},
                {"phases", phases}};
}

json to_json(const PhasingReport& r) {
    return json{{"schema_version", kSchemaVersion},
                {"t_wait_di_s", r.t_wait_di},
                {"t_wait_dphi_s", r.t_wait_dphi},
                {"total_s", r.total},
                {"total_days", r.total / kSecondsPerDay},
                {"fraction_of_nominal", r.fraction_of_nominal},
                {"strategy", r.strategy}};
}

std::vector<DebrisCatalogEntry> catalog_from_json(const json& j) {
    if (!j.is_array())
        throw std::runtime_error("catalog: top-level JSON array expected");
    if (j.empty()) throw std::runtime_error("catalog must contain >= 1 entry");
    std::vector<DebrisCatalogEntry> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const json& e = j[k];
        DebrisCatalogEntry d;
        if (!e.contains("id") || !e["id"].is_string())
            throw std::runtime_error("catalog entry " + std::to_string(k) +
                                     ": missing or non-string field 'id'");
        d.id = e["id"].get<std::string>();
        d.mass = require_number(e, "mass_kg", k);
        d.a = require_number(e, "a_km", k);
        d.e = require_number(e, "e", k);
        d.i = require_number(e, "i_deg", k) * kDegToRad;
        d.raan = require_number(e, "raan_deg", k) * kDegToRad;
        if (d.mass <= 0.0)
            throw std::runtime_error("catalog entry " + std::to_string(k) +
                                     ": field 'mass_kg' must be positive");
        if (d.a <= 6378.16)
            throw std::runtime_error("catalog entry " + std::to_string(k) +
                                     ": field 'a_km' must exceed Earth radius");
        if (d.e < 0.0 || d.e >= 1.0)
            throw std::runtime_error("catalog entry " + std::to_string(k) +
                                     ": field 'e' must be in [0, 1)");
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<DebrisCatalogEntry> load_catalog(const std::string& path) {
    return catalog_from_json(json::parse(read_text(path)));
}

std::string config_hash(const std::string& config_text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : config_text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string csv_preamble(const std::string& hash) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string("# generated ") + stamp + "\n# config " + hash + "\n";
}

std::string history_csv(const std::vector<EquinoctialState>& states,
                        const std::vector<double>& dv,
                        const std::vector<double>& mass,
                        const std::string& hash) {
    if (states.size() != dv.size() || states.size() != mass.size())
        throw std::invalid_argument("history_csv: column length mismatch");
    std::ostringstream out;
    out << csv_preamble(hash)
        << "rev,t_s,a_km,e,i_deg,raan_deg,rp_km,ra_km,dv_kms,m_kg\n";
    char row[256];
    for (std::size_t k = 0; k < states.size(); ++k) {
        const KeplerianElements kep = equinoctial_to_kep(states[k]);
        const auto [rp, ra] = apsis_radii(states[k]);
        std::snprintf(row, sizeof row,
                      "%zu,%.3f,%.6f,%.8f,%.6f,%.6f,%.6f,%.6f,%.8f,%.4f\n", k + 1,
                      states[k].epoch, states[k].a, kep.e, kep.i * kRadToDeg,
                      kep.raan * kRadToDeg, rp, ra, dv[k], mass[k]);
        out << row;
    }
    return out.str();
}

std::string deorbit_history_csv(const DeorbitResult& r, const std::string& hash) {
    std::ostringstream out;
    out << csv_preamble(hash)
        << "rev,t_s,a_km,e,i_deg,raan_deg,rp_km,ra_km,dv_kms,m_kg\n";
    char row[256];
    for (std::size_t k = 0; k < r.history.size(); ++k) {
        const DeorbitSnapshot& s = r.history[k];
        std::snprintf(row, sizeof row,
                      "%zu,%.3f,%.6f,%.8f,%.6f,%.6f,%.6f,%.6f,%.8f,%.4f\n", k + 1,
                      s.t, s.a, s.e, 0.0, 0.0, s.rp, s.ra, s.dv, s.m);
        out << row;
    }
    return out.str();
}

std::string fronts_csv(const std::vector<ParetoPoint>& points,
                       const std::string& hash) {
    std::ostringstream out;
    out << csv_preamble(hash) << "order,tof_days,dv_kms";
    for (int i = 1; i <= 10; ++i) out << ",x" << i;
    out << "\n";
    for (const auto& p : points) {
        out << p.order << ',' << p.tof_days << ',' << p.dv_kms;
        for (std::size_t i = 0; i < 10; ++i) {
            out << ',';
            if (i < p.x.size()) out << p.x[i];
        }
        out << "\n";
    }
    return out.str();
}

std::string rankings_csv(const std::vector<ConvRanking>& rankings,
                         const std::string& hash) {
    std::ostringstream out;
    out << csv_preamble(hash) << "rank,order,conv\n";
    for (const auto& r : rankings)
        out << r.rank << ',' << r.order << ',' << r.conv << "\n";
    return out.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
        f << content;
        if (!f.good()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace ibsmp
