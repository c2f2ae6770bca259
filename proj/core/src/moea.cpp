#include "ibsmp/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ibsmp {
namespace {

bool pareto_less(const MoeaEval& a, const MoeaEval& b) {
    return (a.f1 <= b.f1 && a.f2 <= b.f2) && (a.f1 < b.f1 || a.f2 < b.f2);
}

/// Fast-ish non-dominated sort; fine at these population sizes.
std::vector<int> front_ranks(const std::vector<MoeaIndividual>& pop) {
    const int n = static_cast<int>(pop.size());
    std::vector<int> rank(n, -1);
    std::vector<int> domcount(n, 0);
    std::vector<std::vector<int>> dominated(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (moea_dominates(pop[i].eval, pop[j].eval)) dominated[i].push_back(j);
            else if (moea_dominates(pop[j].eval, pop[i].eval)) ++domcount[i];
        }
    std::vector<int> current;
    for (int i = 0; i < n; ++i)
        if (domcount[i] == 0) {
            rank[i] = 0;
            current.push_back(i);
        }
    int level = 0;
    while (!current.empty()) {
        std::vector<int> next;
        for (int i : current)
            for (int j : dominated[i])
                if (--domcount[j] == 0) {
                    rank[j] = level + 1;
                    next.push_back(j);
                }
        current = std::move(next);
        ++level;
    }
    return rank;
}

std::vector<double> crowding(const std::vector<MoeaIndividual>& pop,
                             const std::vector<int>& idx) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(pop.size(), 0.0);
    for (int obj = 0; obj < 2; ++obj) {
        std::vector<int> order = idx;
        auto key = [&](int i) {
            return obj == 0 ? pop[i].eval.f1 : pop[i].eval.f2;
        };
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return key(a) < key(b); });
        d[order.front()] = inf;
        d[order.back()] = inf;
        const double range = key(order.back()) - key(order.front());
        if (range <= 0.0) continue;
        for (std::size_t k = 1; k + 1 < order.size(); ++k)
            d[order[k]] += (key(order[k + 1]) - key(order[k - 1])) / range;
    }
    return d;
}

double sbx_child(double x1, double x2, double lo, double hi, double eta,
                 std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double u = u01(rng);
    const double beta = (u <= 0.5) ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                   : std::pow(1.0 / (2.0 * (1.0 - u)),
                                              1.0 / (eta + 1.0));
    const double c = 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2);
    return std::clamp(c, lo, hi);
}

double poly_mutate(double x, double lo, double hi, double eta,
                   std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double u = u01(rng);
    const double span = hi - lo;
    if (span <= 0.0) return x;
    double delta;
    if (u < 0.5)
        delta = std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0;
    else
        delta = 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
    return std::clamp(x + delta * span, lo, hi);
}

} // namespace

bool moea_dominates(const MoeaEval& a, const MoeaEval& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible) return a.violation < b.violation;
    return pareto_less(a, b);
}

std::vector<MoeaIndividual> moea_optimize(const MoeaObjective& objective,
                                          const std::vector<double>& lower,
                                          const std::vector<double>& upper,
                                          const MoeaOptions& opts) {
    const std::size_t dim = lower.size();
    if (upper.size() != dim || dim == 0)
        throw std::invalid_argument("moea_optimize: bound dimension mismatch");
    if (opts.population < 4 || opts.budget < opts.population)
        throw std::invalid_argument("moea_optimize: budget/population too small");

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    std::vector<MoeaIndividual> archive;
    auto archive_insert = [&](const MoeaIndividual& ind) {
        if (!ind.eval.feasible) return;
        for (const auto& a : archive)
            if (pareto_less(a.eval, ind.eval) ||
                (a.eval.f1 == ind.eval.f1 && a.eval.f2 == ind.eval.f2))
                return;
        archive.erase(std::remove_if(archive.begin(), archive.end(),
                                     [&](const MoeaIndividual& a) {
                                         return pareto_less(ind.eval, a.eval);
                                     }),
                      archive.end());
        archive.push_back(ind);
    };

    int evals = 0;
    auto make = [&](std::vector<double> x) {
        MoeaIndividual ind;
        ind.eval = objective(x);
        ind.x = std::move(x);
        ++evals;
        archive_insert(ind);
        return ind;
    };

    std::vector<MoeaIndividual> pop;
    pop.reserve(opts.population);
    for (int i = 0; i < opts.population && evals < opts.budget; ++i) {
        std::vector<double> x(dim);
        if (i == 0) {
            x = lower;  // the min-ToF corner is always worth probing
        } else {
            for (std::size_t d = 0; d < dim; ++d)
                x[d] = lower[d] + u01(rng) * (upper[d] - lower[d]);
        }
        pop.push_back(make(std::move(x)));
    }

    const double mut_prob = 1.0 / static_cast<double>(dim);
    while (evals < opts.budget) {
        const std::vector<int> rank = front_ranks(pop);
        std::vector<int> all(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) all[i] = static_cast<int>(i);
        const std::vector<double> crowd = crowding(pop, all);

        auto tournament = [&]() -> const MoeaIndividual& {
            std::uniform_int_distribution<int> pick(0,
                                                    static_cast<int>(pop.size()) - 1);
            const int a = pick(rng), b = pick(rng);
            if (rank[a] != rank[b]) return pop[rank[a] < rank[b] ? a : b];
            return pop[crowd[a] >= crowd[b] ? a : b];
        };

        // offspring generation
        std::vector<MoeaIndividual> children;
        while (static_cast<int>(children.size()) < opts.population &&
               evals < opts.budget) {
            const MoeaIndividual& p1 = tournament();
            const MoeaIndividual& p2 = tournament();
            std::vector<double> c1 = p1.x, c2 = p2.x;
            if (u01(rng) < opts.crossover_prob) {
                for (std::size_t d = 0; d < dim; ++d) {
                    if (u01(rng) < 0.5) continue;
                    c1[d] = sbx_child(p1.x[d], p2.x[d], lower[d], upper[d],
                                      opts.eta_crossover, rng);
                    c2[d] = sbx_child(p2.x[d], p1.x[d], lower[d], upper[d],
                                      opts.eta_crossover, rng);
                }
            }
            for (auto* c : {&c1, &c2})
                for (std::size_t d = 0; d < dim; ++d)
                    if (u01(rng) < mut_prob)
                        (*c)[d] = poly_mutate((*c)[d], lower[d], upper[d],
                                              opts.eta_mutation, rng);
            children.push_back(make(std::move(c1)));
            if (evals < opts.budget &&
                static_cast<int>(children.size()) < opts.population)
                children.push_back(make(std::move(c2)));
        }

        // environmental selection on the merged population
        std::vector<MoeaIndividual> merged = pop;
        merged.insert(merged.end(), children.begin(), children.end());
        const std::vector<int> mrank = front_ranks(merged);
        std::vector<int> order(merged.size());
        for (std::size_t i = 0; i < merged.size(); ++i)
            order[i] = static_cast<int>(i);
        const std::vector<double> mcrowd = crowding(merged, order);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (mrank[a] != mrank[b]) return mrank[a] < mrank[b];
            return mcrowd[a] > mcrowd[b];
        });
        std::vector<MoeaIndividual> next;
        next.reserve(opts.population);
        for (int i = 0; i < opts.population; ++i) next.push_back(merged[order[i]]);
        pop = std::move(next);
    }
    return archive;
}

bool ParetoArchive::insert(ParetoPoint p) {
    auto dominates = [](const ParetoPoint& a, const ParetoPoint& b) {
        return a.tof_days <= b.tof_days && a.dv_kms <= b.dv_kms &&
               (a.tof_days < b.tof_days || a.dv_kms < b.dv_kms);
    };
    for (const auto& q : points_)
        if (dominates(q, p) ||
            (q.tof_days == p.tof_days && q.dv_kms == p.dv_kms))
            return false;
    points_.erase(std::remove_if(points_.begin(), points_.end(),
                                 [&](const ParetoPoint& q) {
                                     return dominates(p, q);
                                 }),
                  points_.end());
    points_.push_back(std::move(p));
    return true;
}

std::vector<ParetoPoint> ParetoArchive::sorted_by_tof() const {
    std::vector<ParetoPoint> out = points_;
    std::sort(out.begin(), out.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        return a.tof_days < b.tof_days;
    });
    return out;
}

std::vector<ConvRanking> conv_rank(
    const std::map<std::string, std::vector<ParetoPoint>>& fronts) {
    ParetoArchive global;
    for (const auto& [order, front] : fronts)
        for (const auto& p : front) global.insert(p);
    const auto& g = global.points();
    if (g.empty())
        throw std::invalid_argument("conv_rank: no points in any front");

    double tof_lo = g.front().tof_days, tof_hi = tof_lo;
    double dv_lo = g.front().dv_kms, dv_hi = dv_lo;
    for (const auto& p : g) {
        tof_lo = std::min(tof_lo, p.tof_days);
        tof_hi = std::max(tof_hi, p.tof_days);
        dv_lo = std::min(dv_lo, p.dv_kms);
        dv_hi = std::max(dv_hi, p.dv_kms);
    }
    const double dt = (tof_hi > tof_lo) ? tof_hi - tof_lo : 1.0;
    const double dd = (dv_hi > dv_lo) ? dv_hi - dv_lo : 1.0;

    std::vector<ConvRanking> out;
    for (const auto& [order, front] : fronts) {
        if (front.empty()) continue;
        double acc = 0.0;
        for (const auto& p : front) {
            double dmin = std::numeric_limits<double>::infinity();
            for (const auto& q : g)
                dmin = std::min(dmin, std::hypot((p.tof_days - q.tof_days) / dt,
                                                 (p.dv_kms - q.dv_kms) / dd));
            acc += dmin;
        }
        out.push_back({0, order, 100.0 * acc / static_cast<double>(front.size())});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ConvRanking& a, const ConvRanking& b) {
                         return a.conv < b.conv;
                     });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].rank = static_cast<int>(i) + 1;
    return out;
}

} // namespace ibsmp
