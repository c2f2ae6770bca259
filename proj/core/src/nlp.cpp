#include "ibsmp/nlp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace ibsmp {
namespace {

using Vec = std::vector<double>;

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Vec project(Vec x, const Vec& lo, const Vec& hi) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
}

struct Merit {
    const NlpProblem& p;
    const Vec& scale;
    Vec lambda;       // multipliers on scaled constraints
    double penalty;   // quadratic penalty weight

    Vec scaled_residuals(const Vec& x) const {
        Vec c = p.equality_constraints(x);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] /= scale[i];
        return c;
    }

    double value(const Vec& x) const {
        const Vec c = scaled_residuals(x);
        double v = p.objective(x);
        for (std::size_t i = 0; i < c.size(); ++i)
            v += lambda[i] * c[i] + 0.5 * penalty * c[i] * c[i];
        return v;
    }
};

Vec fd_gradient(const Merit& m, const Vec& x, const Vec& lo, const Vec& hi,
                double rel) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double span = hi[i] - lo[i];
        const double h = rel * std::max({std::fabs(x[i]), 0.01 * span, 1e-8});
        Vec xp = x, xm = x;
        xp[i] = std::min(x[i] + h, hi[i]);
        xm[i] = std::max(x[i] - h, lo[i]);
        const double denom = xp[i] - xm[i];
        g[i] = denom > 0.0 ? (m.value(xp) - m.value(xm)) / denom : 0.0;
    }
    return g;
}

/// Projected L-BFGS with backtracking line search on the merit function.
/// Good enough for the smooth low-dimensional problems handled here.
Vec inner_minimize(const Merit& m, Vec x, const Vec& lo, const Vec& hi,
                   const NlpOptions& opts) {
    constexpr std::size_t kMemory = 8;
    std::deque<Vec> s_hist, y_hist;
    std::deque<double> rho_hist;

    double f = m.value(x);
    Vec g = fd_gradient(m, x, lo, hi, opts.fd_rel_step);
    int stalled = 0;

    for (int it = 0; it < opts.max_inner; ++it) {
        // projected-gradient stationarity test
        Vec pg = x;
        for (std::size_t i = 0; i < x.size(); ++i)
            pg[i] = std::clamp(x[i] - g[i], lo[i], hi[i]) - x[i];
        if (norm2(pg) < opts.grad_tol) break;

        // two-loop recursion for the L-BFGS direction
        Vec q = g;
        std::vector<double> alpha(s_hist.size());
        for (int k = static_cast<int>(s_hist.size()) - 1; k >= 0; --k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i) dot += s_hist[k][i] * q[i];
            alpha[k] = rho_hist[k] * dot;
            for (std::size_t i = 0; i < q.size(); ++i)
                q[i] -= alpha[k] * y_hist[k][i];
        }
        if (!s_hist.empty()) {
            double sy = 0.0, yy = 0.0;
            const Vec& sl = s_hist.back();
            const Vec& yl = y_hist.back();
            for (std::size_t i = 0; i < q.size(); ++i) {
                sy += sl[i] * yl[i];
                yy += yl[i] * yl[i];
            }
            if (yy > 0.0)
                for (double& qi : q) qi *= sy / yy;
        }
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i) dot += y_hist[k][i] * q[i];
            const double beta = rho_hist[k] * dot;
            for (std::size_t i = 0; i < q.size(); ++i)
                q[i] += (alpha[k] - beta) * s_hist[k][i];
        }

        // backtracking with projection onto the box
        double step = 1.0;
        Vec x_new;
        double f_new = f;
        bool accepted = false;
        for (int ls = 0; ls < 20; ++ls) {
            Vec trial(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - step * q[i];
            trial = project(std::move(trial), lo, hi);
            const double ft = m.value(trial);
            double gd = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                gd += g[i] * (trial[i] - x[i]);
            if (ft <= f + 1e-4 * gd && ft < f) {
                x_new = std::move(trial);
                f_new = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // quasi-Newton direction failed; fall back to a projected
            // gradient step once, then give up if that stalls too
            double gstep = 1.0 / std::max(1.0, norm2(g));
            bool moved = false;
            for (int ls = 0; ls < 20; ++ls) {
                Vec trial(x.size());
                for (std::size_t i = 0; i < x.size(); ++i)
                    trial[i] = x[i] - gstep * g[i];
                trial = project(std::move(trial), lo, hi);
                const double ft = m.value(trial);
                if (ft < f) {
                    x_new = std::move(trial);
                    f_new = ft;
                    moved = true;
                    break;
                }
                gstep *= 0.5;
            }
            if (!moved) break;
            s_hist.clear(); y_hist.clear(); rho_hist.clear();
        }

        Vec g_new = fd_gradient(m, x_new, lo, hi, opts.fd_rel_step);
        Vec s(x.size()), y(x.size());
        double sy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = g_new[i] - g[i];
            sy += s[i] * y[i];
        }
        if (sy > 1e-14) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > kMemory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        // flat-progress cutoff: two consecutive near-zero decreases
        if (f - f_new <= opts.f_tol * (1.0 + std::fabs(f))) {
            if (++stalled >= 2) {
                x = std::move(x_new);
                break;
            }
        } else {
            stalled = 0;
        }

        x = std::move(x_new);
        g = std::move(g_new);
        f = f_new;
    }
    return x;
}

} // namespace

NlpResult minimize_constrained(const NlpProblem& problem, std::vector<double> x0,
                               const NlpOptions& opts) {
    const std::size_t n = x0.size();
    if (problem.lower.size() != n || problem.upper.size() != n)
        throw std::invalid_argument("minimize_constrained: bound dimension mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (!(problem.lower[i] <= x0[i] && x0[i] <= problem.upper[i]))
            throw std::invalid_argument("minimize_constrained: x0 out of bounds");

    const std::size_t m = problem.equality_constraints(x0).size();
    Vec scale = problem.constraint_scale;
    if (scale.empty()) scale.assign(m, 1.0);
    if (scale.size() != m)
        throw std::invalid_argument("minimize_constrained: scale dimension mismatch");

    Merit merit{problem, scale, Vec(m, 0.0), 10.0};

    Vec x = x0;
    NlpResult best;
    best.x = x;
    best.objective = problem.objective(x);
    best.residuals = problem.equality_constraints(x);
    double best_violation = norm2(merit.scaled_residuals(x));
    double best_feasible_obj = std::numeric_limits<double>::infinity();

    double prev_violation = best_violation;
    for (int outer = 0; outer < opts.max_outer; ++outer) {
        x = inner_minimize(merit, x, problem.lower, problem.upper, opts);
        const Vec c = merit.scaled_residuals(x);
        const double violation = norm2(c);
        const double obj = problem.objective(x);

        if (violation <= opts.constraint_tol) {
            if (obj < best_feasible_obj) {
                best_feasible_obj = obj;
                best.x = x;
                best.objective = obj;
                best.residuals = problem.equality_constraints(x);
                best.feasible = true;
            }
        } else if (!best.feasible && violation < best_violation) {
            best_violation = violation;
            best.x = x;
            best.objective = obj;
            best.residuals = problem.equality_constraints(x);
        }
        best.outer_iterations = outer + 1;

        if (best.feasible && violation <= opts.constraint_tol &&
            outer >= 2)  // a couple of polishing rounds after feasibility
            break;

        for (std::size_t i = 0; i < m; ++i)
            merit.lambda[i] += merit.penalty * c[i];
        if (violation > 0.25 * prev_violation) merit.penalty *= 4.0;
        prev_violation = violation;
    }
    return best;
}

} // namespace ibsmp
