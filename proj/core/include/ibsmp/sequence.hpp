#pragma once

#include "ibsmp/constants.hpp"
#include "ibsmp/deorbit.hpp"
#include "ibsmp/moea.hpp"
#include "ibsmp/shepherd.hpp"
#include "ibsmp/transfer.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ibsmp {

/// One catalogued debris object. Angles in radians internally.
struct DebrisCatalogEntry {
    std::string id;
    double mass = 0.0;  // [kg]
    double a = 0.0;     // [km]
    double e = 0.0;
    double i = 0.0;     // [rad]
    double raan = 0.0;  // [rad]
};

struct Scenario {
    std::vector<DebrisCatalogEntry> debris;
    double departure_a = 6628.16;  // [km]
    double departure_e = 0.01;
    SpacecraftConfig spacecraft;
    Constants constants;
};

/// Removal plan: visiting order plus per-phase durations, alternating
/// (T_RV, T_DO) per debris, in days.
struct SequencePlan {
    std::vector<int> order;               // indices into Scenario::debris
    std::vector<double> durations_days;   // 2 * order.size() entries
};

struct PhaseRecord {
    int debris_index = -1;
    double t_rv_days = 0.0;
    double t_do_days = 0.0;
    double dv_rv = 0.0;  // [km/s]
    double dv_do = 0.0;  // [km/s]
    double m_after_rv = 0.0;
    double m_after_do = 0.0;
    bool feasible = false;
    std::string note;  // failure reason when infeasible
};

struct SequenceResult {
    double tof_tot_days = 0.0;  // always the exact duration sum
    double dv_tot = 0.0;        // [km/s]
    bool feasible = false;
    double violation = 0.0;  // penalty magnitude when infeasible
    std::vector<PhaseRecord> phases;
};

/// Chains rendezvous and de-orbit phases for a fixed plan. Rendezvous
/// legs are solved with the constrained NLP (memoized on quantized
/// departure orbit, target, time budget and mass); de-orbit costs come
/// from the prebuilt surrogates. Infeasible phases produce a penalty
/// record, never an exception.
class SequenceEvaluator {
public:
    SequenceEvaluator(const Scenario& scenario,
                      const std::vector<DeorbitSurrogate>& surrogates);

    SequenceResult evaluate(const SequencePlan& plan);

    /// Lower bound on each debris's de-orbit time [days], from its
    /// surrogate domain; used as the T_DO bound in optimization.
    double min_deorbit_days(int debris_index) const;

private:
    const Scenario& scenario_;
    const std::vector<DeorbitSurrogate>& surrogates_;

    struct LegKey {
        long a_q, e_q, tof_q, m_q;
        int target;
        bool operator<(const LegKey& o) const;
    };
    std::map<LegKey, TransferSolution> memo_;
    // per-target warm starts keyed by quantized time budget
    std::map<int, std::map<long, std::vector<double>>> warm_;

    TransferSolution rendezvous_leg(double a0, double e0, int target, double di,
                                    double tof_bar, double m0);
};

/// All permutations of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> enumerate_orders(int n);

struct SequenceBounds {
    double t_rv_lo = 5.0;    // [days]
    double t_rv_hi = 100.0;  // [days]
    double t_do_hi = 50.0;   // [days]; lower bound comes from the surrogate
};

/// Runs the seeded evolutionary search over durations for a fixed order.
/// Returns feasible non-dominated (ToF_Tot, dV_Tot) points with their
/// duration vectors.
std::vector<ParetoPoint> pareto_optimize(const std::vector<int>& order,
                                         SequenceEvaluator& evaluator,
                                         const SequenceBounds& bounds,
                                         const MoeaOptions& opts);

} // namespace ibsmp
