#include "ibsmp/sequence.hpp"

#include "ibsmp/elements.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ibsmp {
namespace {

/// Impulsive Hohmann-with-plane-change cost between near-circular orbits,
/// used as an optimistic bound for the capacity pre-filter.
double impulsive_bound(double a0, double af, double di, double mu) {
    const double v1 = std::sqrt(mu / a0);
    const double v2 = std::sqrt(mu / af);
    const double at = 0.5 * (a0 + af);
    const double vtp = std::sqrt(mu * (2.0 / a0 - 1.0 / at));
    const double vta = std::sqrt(mu * (2.0 / af - 1.0 / at));
    const double dv2 =
        std::sqrt(std::max(0.0, v2 * v2 + vta * vta - 2.0 * v2 * vta * std::cos(di)));
    return std::fabs(vtp - v1) + dv2;
}

long quantize(double v, double step) {
    return static_cast<long>(std::llround(v / step));
}

} // namespace

bool SequenceEvaluator::LegKey::operator<(const LegKey& o) const {
    if (a_q != o.a_q) return a_q < o.a_q;
    if (e_q != o.e_q) return e_q < o.e_q;
    if (tof_q != o.tof_q) return tof_q < o.tof_q;
    if (m_q != o.m_q) return m_q < o.m_q;
    return target < o.target;
}

SequenceEvaluator::SequenceEvaluator(const Scenario& scenario,
                                     const std::vector<DeorbitSurrogate>& surrogates)
    : scenario_(scenario), surrogates_(surrogates) {
    if (surrogates_.size() != scenario_.debris.size())
        throw std::invalid_argument(
            "SequenceEvaluator: one surrogate per debris required");
}

double SequenceEvaluator::min_deorbit_days(int debris_index) const {
    const DeorbitSurrogate& sur = surrogates_.at(debris_index);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& s : sur.slices)
        if (s.available) lo = std::min(lo, s.tof.front());
    if (!std::isfinite(lo))
        throw std::runtime_error("min_deorbit_days: surrogate has no feasible cell");
    return lo / kSecondsPerDay;
}

TransferSolution SequenceEvaluator::rendezvous_leg(double a0, double e0, int target,
                                                   double di, double tof_bar,
                                                   double m0) {
    // coarse buckets: a leg's cost moves by far less than the feasibility
    // tolerances across one bucket, and reuse keeps the search tractable
    const LegKey key{quantize(a0, 5.0), quantize(e0, 1.5e-3),
                     quantize(tof_bar, 3.0 * kSecondsPerDay), quantize(m0, 10.0),
                     target};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const DebrisCatalogEntry& tgt = scenario_.debris.at(target);
    BoundaryConditions bc{a0, e0, tgt.a, tgt.e, di};

    TransferSolution sol;
    // capacity pre-filter: reject budgets that cannot deliver even an
    // optimistic impulsive cost at continuous full thrust
    const double bound =
        0.9 * impulsive_bound(a0, tgt.a, di, scenario_.constants.mu);
    const double capacity =
        1.1 * scenario_.spacecraft.f_tot / m0 * tof_bar;
    if (bound > capacity) {
        sol.tof = tof_bar;
        sol.feasible = false;
        sol.residual = {tgt.a - a0, tgt.e - e0, -di};
        sol.dv = 0.0;
        sol.m_ibs_final = m0;
    } else {
        RendezvousOptions opts;
        // fallback starts are only reached when the warm/duty starts fail,
        // so the common case costs a single NLP solve
        opts.multistarts = 2;
        opts.max_outer = 10;
        opts.max_inner = 25;
        opts.threads = 1;
        opts.stop_at_first_feasible = true;
        auto& wt = warm_[target];
        if (!wt.empty()) {
            // nearest time budget already solved for this target
            auto lb = wt.lower_bound(key.tof_q);
            if (lb == wt.end()) --lb;
            opts.extra_starts.push_back(lb->second);
        }
        sol = solve_rendezvous(bc, tof_bar, m0, scenario_.spacecraft,
                               scenario_.constants, opts);
        if (sol.feasible)
            warm_[target][key.tof_q] = {sol.controls.dlt1, sol.controls.dltf,
                                        sol.controls.rt1, sol.controls.rtf,
                                        sol.controls.beta_a, sol.controls.beta_p};
    }
    memo_.emplace(key, sol);
    return sol;
}

SequenceResult SequenceEvaluator::evaluate(const SequencePlan& plan) {
    const std::size_t n = plan.order.size();
    if (plan.durations_days.size() != 2 * n)
        throw std::invalid_argument("evaluate: need 2 durations per debris");

    SequenceResult res;
    res.tof_tot_days = std::accumulate(plan.durations_days.begin(),
                                       plan.durations_days.end(), 0.0);
    res.feasible = true;

    double a = scenario_.departure_a;
    double e = scenario_.departure_e;
    double m = scenario_.spacecraft.m_launch;
    int prev = -1;  // -1 = launch orbit, coplanar with the first target

    for (std::size_t k = 0; k < n; ++k) {
        PhaseRecord ph;
        ph.debris_index = plan.order[k];
        ph.t_rv_days = plan.durations_days[2 * k];
        ph.t_do_days = plan.durations_days[2 * k + 1];
        const DebrisCatalogEntry& tgt = scenario_.debris.at(ph.debris_index);

        const double di =
            (prev < 0) ? 0.0
                       : relative_inclination(scenario_.debris[prev].i,
                                              scenario_.debris[prev].raan, tgt.i,
                                              tgt.raan);

        const TransferSolution rv = rendezvous_leg(
            a, e, ph.debris_index, di, ph.t_rv_days * kSecondsPerDay, m);
        if (!rv.feasible) {
            ph.note = "rendezvous infeasible";
            res.feasible = false;
            res.violation += 1.0 + std::hypot(rv.residual[0] / 1000.0,
                                              std::hypot(rv.residual[1] / 0.1,
                                                         rv.residual[2] / 0.1));
            res.phases.push_back(ph);
            break;
        }
        ph.dv_rv = rv.dv;
        m = rv.m_ibs_final;
        ph.m_after_rv = m;
        res.dv_tot += rv.dv;

        SurrogateValue dq;
        try {
            dq = query_surrogate(surrogates_.at(ph.debris_index),
                                 ph.t_do_days * kSecondsPerDay, m);
        } catch (const std::exception& ex) {
            ph.note = std::string("de-orbit surrogate: ") + ex.what();
            res.feasible = false;
            res.violation += 1.0;
            res.phases.push_back(ph);
            break;
        }
        ph.dv_do = dq.dv;
        res.dv_tot += dq.dv;

        // shepherding rocket equation over the de-orbit dv
        const double ve =
            scenario_.spacecraft.isp * scenario_.constants.g0;
        m = (m + 2.0 * tgt.mass) * std::exp(-dq.dv / ve) - 2.0 * tgt.mass;
        ph.m_after_do = m;
        if (m < scenario_.spacecraft.m_dry) {
            ph.note = "propellant exhausted";
            res.feasible = false;
            res.violation +=
                1.0 + (scenario_.spacecraft.m_dry - m) / scenario_.spacecraft.m_dry;
            res.phases.push_back(ph);
            break;
        }

        ph.feasible = true;
        res.phases.push_back(ph);
        // release orbit: semi-major axis from the surrogate, perigee
        // pinned at the de-orbit threshold
        a = dq.a_f;
        e = 1.0 - scenario_.constants.rp_threshold / dq.a_f;
        prev = ph.debris_index;
    }
    return res;
}

std::vector<std::vector<int>> enumerate_orders(int n) {
    if (n < 1)
        throw std::invalid_argument("enumerate_orders: n must be >= 1");
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

std::vector<ParetoPoint> pareto_optimize(const std::vector<int>& order,
                                         SequenceEvaluator& evaluator,
                                         const SequenceBounds& bounds,
                                         const MoeaOptions& opts) {
    const std::size_t n = order.size();
    std::vector<double> lower(2 * n), upper(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        lower[2 * k] = bounds.t_rv_lo;
        upper[2 * k] = bounds.t_rv_hi;
        lower[2 * k + 1] = evaluator.min_deorbit_days(order[k]);
        upper[2 * k + 1] = bounds.t_do_hi;
    }

    std::string label;
    for (int i : order) label += std::to_string(i + 1);

    auto objective = [&](const std::vector<double>& x) {
        SequencePlan plan{order, x};
        const SequenceResult r = evaluator.evaluate(plan);
        MoeaEval ev;
        ev.f1 = r.tof_tot_days;
        ev.f2 = r.dv_tot;
        ev.feasible = r.feasible;
        ev.violation = r.violation;
        return ev;
    };

    const auto archive = moea_optimize(objective, lower, upper, opts);
    std::vector<ParetoPoint> front;
    for (const auto& ind : archive)
        front.push_back({ind.eval.f1, ind.eval.f2, ind.x, label});
    std::sort(front.begin(), front.end(),
              [](const ParetoPoint& a, const ParetoPoint& b) {
                  return a.tof_days < b.tof_days;
              });
    return front;
}

} // namespace ibsmp
