#pragma once

#include <functional>
#include <vector>

namespace ibsmp {

/// Smooth box-bounded problem with equality constraints c(x) = 0. Each
/// constraint is divided by its scaling entry before entering the merit
/// function, so residuals of different units stay comparable.
struct NlpProblem {
    std::function<double(const std::vector<double>&)> objective;
    std::function<std::vector<double>(const std::vector<double>&)> equality_constraints;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> constraint_scale;  // empty means all ones
};

struct NlpOptions {
    int max_outer = 50;
    int max_inner = 60;
    double constraint_tol = 1e-6;  // on scaled residual norm
    double grad_tol = 1e-8;        // on projected-gradient norm
    double fd_rel_step = 1e-6;     // central differences, relative per coordinate
    // inner loop stops after two consecutive iterations whose merit
    // decrease falls below f_tol * (1 + |merit|)
    double f_tol = 1e-12;
};

struct NlpResult {
    std::vector<double> x;
    double objective = 0.0;
    std::vector<double> residuals;  // unscaled
    bool feasible = false;
    int outer_iterations = 0;
};

/// Augmented-Lagrangian outer loop around a projected quasi-Newton
/// (L-BFGS with box projection) inner solver. Gradients come from central
/// finite differences. Returns the best feasible iterate seen, or the
/// smallest-residual iterate with feasible = false after max_outer rounds.
NlpResult minimize_constrained(const NlpProblem& problem, std::vector<double> x0,
                               const NlpOptions& opts = {});

} // namespace ibsmp
