// Batch front end: one subcommand per pipeline stage. Structured results
// go to stdout as JSON; series data lands in CSV files; errors are
// machine-readable JSON on stderr.
#include "ibsmp/gauss_oracle.hpp"
#include "ibsmp/phasing.hpp"
#include "ibsmp/propagator.hpp"
#include "ibsmp/sequence.hpp"
#include "ibsmp/serialization.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ibsmp;

namespace {

int fail(const std::string& code, const std::string& message,
         json extra = json::object()) {
    extra["error"] = code;
    extra["message"] = message;
    std::cerr << extra.dump() << "\n";
    return code == "infeasible" ? 2 : 1;
}

double env_override(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("bad numeric value in $") + name);
    }
}

Constants constants_from_env() {
    Constants c;
    c.mu = env_override("SPIRAL_MU", c.mu);
    c.earth_radius = env_override("SPIRAL_EARTH_RADIUS", c.earth_radius);
    c.rp_threshold = env_override("SPIRAL_RP_THRESHOLD", c.rp_threshold);
    c.g0 = env_override("SPIRAL_G0", c.g0);
    return c;
}

SpacecraftConfig spacecraft_from_env() {
    SpacecraftConfig s;
    s.f_tot = env_override("SPIRAL_FTOT_KN", s.f_tot);
    s.isp = env_override("SPIRAL_ISP_S", s.isp);
    s.m_dry = env_override("SPIRAL_MDRY_KG", s.m_dry);
    s.m_launch = env_override("SPIRAL_MLAUNCH_KG", s.m_launch);
    return s;
}

std::vector<double> parse_list(const std::string& text, std::size_t expected,
                               const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.size() != expected)
        throw std::runtime_error(what + ": expected " + std::to_string(expected) +
                                 " comma-separated values");
    return out;
}

std::string default_catalog_path() { return std::string(IBSMP_DATA_DIR) + "/leo_debris5.json"; }

std::string hash_of(const json& j) { return config_hash(j.dump()); }

std::vector<DebrisCatalogEntry> load_catalog_arg(const std::string& path,
                                                 bool demo_catalog_flag) {
    return load_catalog(demo_catalog_flag && path.empty() ? default_catalog_path()
                                                       : path);
}

int find_debris(const std::vector<DebrisCatalogEntry>& cat, const std::string& id) {
    for (std::size_t i = 0; i < cat.size(); ++i)
        if (cat[i].id == id) return static_cast<int>(i);
    throw std::runtime_error("debris id '" + id + "' not in catalog");
}

std::vector<int> parse_order(const std::string& text, std::size_t n) {
    std::vector<int> order;
    for (char ch : text) {
        if (ch < '1' || ch > '9')
            throw std::runtime_error("order must be a digit string like 13452");
        order.push_back(ch - '1');
    }
    std::vector<bool> seen(n, false);
    for (int i : order) {
        if (i >= static_cast<int>(n) || seen[i])
            throw std::runtime_error("order must be a permutation of 1.." +
                                     std::to_string(n));
        seen[i] = true;
    }
    return order;
}

std::vector<DeorbitSurrogate> load_surrogates(
    const std::string& dir, const std::vector<DebrisCatalogEntry>& cat) {
    std::vector<DeorbitSurrogate> out;
    for (const auto& d : cat) {
        const std::string path = dir + "/surrogate_" + d.id + ".json";
        out.push_back(surrogate_from_json(json::parse(read_text(path))));
    }
    return out;
}

/// Fronts CSV reader for `rank`: skips comment lines, expects the
/// order,tof_days,dv_kms,... header written by fronts_csv.
std::vector<ParetoPoint> read_front_csv(const std::string& path) {
    std::istringstream in(read_text(path));
    std::vector<ParetoPoint> pts;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("order,", 0) != 0)
                throw std::runtime_error(path + ": unexpected header");
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        ParetoPoint p;
        std::getline(ss, p.order, ',');
        std::getline(ss, cell, ',');
        p.tof_days = std::stod(cell);
        std::getline(ss, cell, ',');
        p.dv_kms = std::stod(cell);
        while (std::getline(ss, cell, ','))
            if (!cell.empty()) p.x.push_back(std::stod(cell));
        pts.push_back(std::move(p));
    }
    return pts;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-thrust debris-removal mission planning toolkit"};
    app.require_subcommand(1);

    int threads = 0;
    std::uint64_t seed = 20260823;
    bool demo_catalog_flag = false;
    app.add_option("--threads", threads, "worker thread cap (0 = all cores)");
    app.add_option("--seed", seed, "seed for stochastic stages");
    app.add_flag("--demo-catalog", demo_catalog_flag,
                 "use the bundled five-debris catalog and reference spacecraft");

    // propagate
    auto* cmd_prop = app.add_subcommand("propagate", "analytic one-arc propagation");
    std::string prop_state;
    double prop_dl = 0.0, prop_eps = 0.0, prop_alpha = 0.0, prop_beta = 0.0;
    bool prop_oracle = false;
    cmd_prop->add_option("--state", prop_state, "a,p1,p2,q1,q2,L")->required();
    cmd_prop->add_option("--dl", prop_dl, "longitude span [rad]")->required();
    cmd_prop->add_option("--eps", prop_eps, "acceleration [km/s^2]");
    cmd_prop->add_option("--alpha", prop_alpha, "azimuth [rad]");
    cmd_prop->add_option("--beta", prop_beta, "elevation [rad]");
    cmd_prop->add_flag("--oracle", prop_oracle, "add numerically integrated columns");

    // deorbit
    auto* cmd_deo = app.add_subcommand("deorbit", "single de-orbit spiral");
    std::string deo_catalog, deo_id, deo_controls, deo_csv;
    double deo_mibs0 = 350.0;
    cmd_deo->add_option("--catalog", deo_catalog, "debris catalog JSON");
    cmd_deo->add_option("--debris", deo_id, "debris id")->required();
    cmd_deo->add_option("--mibs0", deo_mibs0, "IBS wet mass at start [kg]");
    cmd_deo->add_option("--controls", deo_controls, "dla1,dlaf [rad]")->required();
    cmd_deo->add_option("--csv", deo_csv, "per-orbit CSV output path");

    // surrogate build / query
    auto* cmd_sur = app.add_subcommand("surrogate", "de-orbit cost surrogates");
    auto* cmd_sur_build = cmd_sur->add_subcommand("build", "grid build per debris");
    std::string surb_catalog, surb_out;
    cmd_sur_build->add_option("--catalog", surb_catalog, "debris catalog JSON");
    cmd_sur_build->add_option("--out", surb_out, "output directory")->required();
    auto* cmd_sur_query = cmd_sur->add_subcommand("query", "interpolated lookup");
    std::string surq_file;
    double surq_tof = 0.0, surq_mibs0 = 0.0;
    cmd_sur_query->add_option("--surrogate", surq_file, "surrogate JSON")->required();
    cmd_sur_query->add_option("--tof", surq_tof, "de-orbit time [days]")->required();
    cmd_sur_query->add_option("--mibs0", surq_mibs0, "IBS mass [kg]")->required();

    // transfer
    auto* cmd_tr = app.add_subcommand("transfer", "rendezvous transfer NLP");
    std::string tr_from, tr_to, tr_out, tr_csv;
    double tr_tof = 0.0, tr_mibs0 = 1000.0;
    cmd_tr->add_option("--from", tr_from, "a,e departure")->required();
    cmd_tr->add_option("--to", tr_to, "a,e,di_deg target")->required();
    cmd_tr->add_option("--tof", tr_tof, "time budget [days]")->required();
    cmd_tr->add_option("--mibs0", tr_mibs0, "IBS mass [kg]");
    cmd_tr->add_option("--out", tr_out, "solution JSON output path");
    cmd_tr->add_option("--csv", tr_csv, "per-revolution CSV output path");

    // sequence
    auto* cmd_seq = app.add_subcommand("sequence", "fixed-order Pareto search");
    std::string seq_catalog, seq_order, seq_surdir, seq_out;
    int seq_budget = 2000, seq_pop = 24;
    bool seq_all = false;
    cmd_seq->add_option("--catalog", seq_catalog, "debris catalog JSON");
    cmd_seq->add_option("--order", seq_order, "visit order, e.g. 13452");
    cmd_seq->add_option("--surrogates", seq_surdir, "surrogate directory")->required();
    cmd_seq->add_option("--budget", seq_budget, "objective evaluations");
    cmd_seq->add_option("--population", seq_pop, "population size");
    cmd_seq->add_option("--out", seq_out, "output directory")->required();
    cmd_seq->add_flag("--all-orders", seq_all, "iterate every permutation");

    // rank
    auto* cmd_rank = app.add_subcommand("rank", "Conv ranking of stored fronts");
    std::string rank_dir, rank_out;
    cmd_rank->add_option("--fronts", rank_dir, "directory of front CSVs")->required();
    cmd_rank->add_option("--out", rank_out, "ranking CSV output path");

    // phasing
    auto* cmd_ph = app.add_subcommand("phasing", "worst-case phasing annex");
    std::string ph_result, ph_catalog;
    cmd_ph->add_option("--result", ph_result, "sequence result JSON")->required();
    cmd_ph->add_option("--catalog", ph_catalog, "debris catalog JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        const Constants c = constants_from_env();
        const SpacecraftConfig sc = spacecraft_from_env();

        if (*cmd_prop) {
            const auto v = parse_list(prop_state, 6, "--state");
            EquinoctialState s;
            s.a = v[0]; s.p1 = v[1]; s.p2 = v[2];
            s.q1 = v[3]; s.q2 = v[4]; s.longitude = v[5];
            ThrustSetting t{prop_eps, prop_alpha, prop_beta};
            const EquinoctialState out = propagate_first_order(s, prop_dl, t, c);
            json j{{"schema_version", kSchemaVersion},
                   {"a_km", out.a}, {"p1", out.p1}, {"p2", out.p2},
                   {"q1", out.q1}, {"q2", out.q2}, {"longitude_rad", out.longitude},
                   {"t_s", out.epoch}};
            if (prop_oracle) {
                ControlProfile profile = [&](double, const KeplerianElements&) {
                    const double cb = std::cos(prop_beta);
                    return std::array<double, 3>{
                        prop_eps * std::cos(prop_alpha) * cb,
                        prop_eps * std::sin(prop_alpha) * cb,
                        prop_eps * std::sin(prop_beta)};
                };
                const EquinoctialState ref = integrate_to_longitude(
                    s, profile, s.longitude + prop_dl, {}, c);
                j["oracle"] = json{{"a_km", ref.a}, {"p1", ref.p1}, {"p2", ref.p2},
                                   {"q1", ref.q1}, {"q2", ref.q2}, {"t_s", ref.epoch}};
                j["error"] = json{{"a_km", out.a - ref.a},
                                  {"p1", out.p1 - ref.p1},
                                  {"p2", out.p2 - ref.p2},
                                  {"t_s", out.epoch - ref.epoch}};
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (*cmd_deo) {
            const auto cat = load_catalog_arg(deo_catalog, demo_catalog_flag);
            const int idx = find_debris(cat, deo_id);
            const auto v = parse_list(deo_controls, 2, "--controls");
            DeorbitControls ctl;
            ctl.dla1 = v[0];
            ctl.dlaf = v[1];
            DebrisOrbit dob{cat[idx].mass, cat[idx].a};
            const DeorbitResult r =
                simulate_deorbit(dob, deo_mibs0, ctl, sc, c, !deo_csv.empty());
            if (!deo_csv.empty()) {
                json cfg{{"debris", deo_id}, {"mibs0", deo_mibs0},
                         {"dla1", ctl.dla1}, {"dlaf", ctl.dlaf}};
                write_text_atomic(deo_csv, deorbit_history_csv(r, hash_of(cfg)));
            }
            std::cout << to_json(r).dump(2) << "\n";
            return r.converged ? 0 : 2;
        }

        if (*cmd_sur_build) {
            const auto cat = load_catalog_arg(surb_catalog, demo_catalog_flag);
            fs::create_directories(surb_out);
            for (const auto& d : cat) {
                DebrisOrbit dob{d.mass, d.a};
                const DeorbitGrid grid =
                    build_surrogate_grid(dob, sc, c, {}, threads);
                const DeorbitSurrogate sur = extract_envelope(grid);
                write_text_atomic(surb_out + "/surrogate_" + d.id + ".json",
                                  to_json(sur).dump(2) + "\n");
            }
            std::cout << json{{"schema_version", kSchemaVersion},
                              {"built", cat.size()},
                              {"out", surb_out}}
                             .dump(2)
                      << "\n";
            return 0;
        }

        if (*cmd_sur_query) {
            const DeorbitSurrogate sur =
                surrogate_from_json(json::parse(read_text(surq_file)));
            try {
                const SurrogateValue v = query_surrogate(
                    sur, surq_tof * kSecondsPerDay, surq_mibs0);
                std::cout << json{{"schema_version", kSchemaVersion},
                                  {"dv_kms", v.dv},
                                  {"a_f_km", v.a_f}}
                                 .dump(2)
                          << "\n";
                return 0;
            } catch (const SurrogateDomainError& ex) {
                return fail("infeasible", ex.what(),
                            json{{"tof_min_days", ex.tof_min / kSecondsPerDay},
                                 {"tof_max_days", ex.tof_max / kSecondsPerDay}});
            }
        }

        if (*cmd_tr) {
            const auto from = parse_list(tr_from, 2, "--from");
            const auto to = parse_list(tr_to, 3, "--to");
            BoundaryConditions bc{from[0], from[1], to[0], to[1],
                                  to[2] * kDegToRad};
            RendezvousOptions opts;
            opts.seed = seed;
            opts.threads = threads;
            const TransferSolution sol = solve_rendezvous(
                bc, tr_tof * kSecondsPerDay, tr_mibs0, sc, c, opts);
            const json j = to_json(sol);
            if (!tr_out.empty()) write_text_atomic(tr_out, j.dump(2) + "\n");
            if (!tr_csv.empty()) {
                const TransferSimResult hist = simulate_transfer(
                    bc, sol.controls, tr_tof * kSecondsPerDay, tr_mibs0, sc, c,
                    true);
                write_text_atomic(tr_csv, history_csv(hist.per_rev,
                                                      hist.dv_per_rev,
                                                      hist.m_per_rev, hash_of(j)));
            }
            std::cout << j.dump(2) << "\n";
            if (!sol.feasible)
                return fail("infeasible",
                            "time budget too short for the required change",
                            json{{"residual_da_km", sol.residual[0]},
                                 {"residual_de", sol.residual[1]},
                                 {"residual_di_deg",
                                  sol.residual[2] * kRadToDeg}});
            return 0;
        }

        if (*cmd_seq) {
            const auto cat = load_catalog_arg(seq_catalog, demo_catalog_flag);
            Scenario scen;
            scen.debris = cat;
            scen.spacecraft = sc;
            scen.constants = c;
            const auto surrogates = load_surrogates(seq_surdir, cat);
            SequenceEvaluator evaluator(scen, surrogates);
            fs::create_directories(seq_out);

            std::vector<std::vector<int>> orders;
            if (seq_all) {
                orders = enumerate_orders(static_cast<int>(cat.size()));
            } else {
                if (seq_order.empty())
                    return fail("usage", "either --order or --all-orders required");
                orders.push_back(parse_order(seq_order, cat.size()));
            }

            MoeaOptions mopts;
            mopts.budget = seq_budget;
            mopts.population = seq_pop;
            mopts.seed = seed;
            for (const auto& ord : orders) {
                const auto front =
                    pareto_optimize(ord, evaluator, SequenceBounds{}, mopts);
                std::string label;
                for (int i : ord) label += std::to_string(i + 1);
                json cfg{{"order", label}, {"budget", seq_budget},
                         {"population", seq_pop}, {"seed", seed}};
                write_text_atomic(seq_out + "/front_" + label + ".csv",
                                  fronts_csv(front, hash_of(cfg)));
            }
            std::cout << json{{"schema_version", kSchemaVersion},
                              {"fronts", orders.size()},
                              {"out", seq_out}}
                             .dump(2)
                      << "\n";
            return 0;
        }

        if (*cmd_rank) {
            std::map<std::string, std::vector<ParetoPoint>> fronts;
            for (const auto& entry : fs::directory_iterator(rank_dir)) {
                const std::string name = entry.path().filename().string();
                if (name.rfind("front_", 0) != 0 ||
                    entry.path().extension() != ".csv")
                    continue;
                const auto pts = read_front_csv(entry.path().string());
                if (!pts.empty()) fronts[pts.front().order] = pts;
            }
            if (fronts.empty())
                return fail("usage", "no front_*.csv files in " + rank_dir);
            const auto rankings = conv_rank(fronts);
            const std::string csv =
                rankings_csv(rankings, config_hash(rank_dir));
            if (!rank_out.empty())
                write_text_atomic(rank_out, csv);
            std::cout << csv;
            return 0;
        }

        if (*cmd_ph) {
            const json res = json::parse(read_text(ph_result));
            const auto cat = load_catalog_arg(ph_catalog, demo_catalog_flag);
            Scenario scen;  // departure orbit defaults
            const double n0 =
                std::sqrt(c.mu / std::pow(scen.departure_a, 3));
            PhasingReport rep;
            rep.t_wait_di = apsidal_alignment_delay(n0);
            // worst-case in-plane phasing against the first catalog orbit
            const double n_f = std::sqrt(c.mu / std::pow(cat.front().a, 3));
            rep.t_wait_dphi = quasi_circular_phasing_delay(n0, n_f, kTwoPi);
            rep.total = rep.t_wait_di + rep.t_wait_dphi;
            rep.strategy = "quasi-circular";
            const double nominal_days = res.at("tof_tot_days").get<double>();
            rep.fraction_of_nominal =
                rep.total / (nominal_days * kSecondsPerDay);
            std::cout << to_json(rep).dump(2) << "\n";
            return 0;
        }

        return fail("usage", "no subcommand matched");
    } catch (const std::exception& ex) {
        return fail("runtime", ex.what());
    }
}
