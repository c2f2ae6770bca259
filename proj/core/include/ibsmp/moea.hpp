#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ibsmp {

/// Bi-objective evaluation (both minimized). Infeasible points carry a
/// positive violation magnitude used for feasibility-first dominance.
struct MoeaEval {
    double f1 = 0.0;
    double f2 = 0.0;
    double violation = 0.0;
    bool feasible = true;
};

using MoeaObjective = std::function<MoeaEval(const std::vector<double>&)>;

struct MoeaIndividual {
    std::vector<double> x;
    MoeaEval eval;
};

struct MoeaOptions {
    int population = 24;
    int budget = 2000;  // total objective evaluations, including the initial pop
    std::uint64_t seed = 1;
    double crossover_prob = 0.9;
    double eta_crossover = 15.0;  // SBX distribution index
    double eta_mutation = 20.0;   // polynomial mutation index
};

/// Feasibility-first dominance: feasible beats infeasible; two infeasible
/// points compare by violation; two feasible points by Pareto dominance.
bool moea_dominates(const MoeaEval& a, const MoeaEval& b);

/// Seeded NSGA-II style search (non-dominated sorting, crowding distance,
/// simulated-binary crossover, polynomial mutation). Returns the archive
/// of feasible mutually non-dominated points found; deterministic for a
/// given seed.
std::vector<MoeaIndividual> moea_optimize(const MoeaObjective& objective,
                                          const std::vector<double>& lower,
                                          const std::vector<double>& upper,
                                          const MoeaOptions& opts = {});

/// One Pareto-front point with its decision vector and provenance label.
struct ParetoPoint {
    double tof_days = 0.0;
    double dv_kms = 0.0;
    std::vector<double> x;
    std::string order;
};

/// Non-dominated archive over (tof_days, dv_kms), minimization in both.
class ParetoArchive {
public:
    /// Inserts if not dominated; evicts points the newcomer dominates.
    /// Returns true when the point entered the archive.
    bool insert(ParetoPoint p);
    const std::vector<ParetoPoint>& points() const { return points_; }
    std::vector<ParetoPoint> sorted_by_tof() const;

private:
    std::vector<ParetoPoint> points_;
};

struct ConvRanking {
    int rank = 0;
    std::string order;
    double conv = 0.0;
};

/// Average normalized distance of each front to the global non-dominated
/// union, scaled by 100. Normalization is per-objective range of the
/// global front; a degenerate (zero) range falls back to 1.
std::vector<ConvRanking> conv_rank(
    const std::map<std::string, std::vector<ParetoPoint>>& fronts);

} // namespace ibsmp
