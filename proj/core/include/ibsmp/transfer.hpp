#pragma once

#include "ibsmp/constants.hpp"
#include "ibsmp/elements.hpp"
#include "ibsmp/shepherd.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace ibsmp {

/// Two-node control law for the multi-revolution transfer. The thrust-arc
/// extent dlt and apogee/perigee split rt are interpolated linearly in
/// elapsed time over [0, tof_bar]; the elevations are constant.
struct TransferControls {
    double dlt1 = 0.0;    // [rad] in [-pi, pi]
    double dltf = 0.0;    // [rad] in [-pi, pi]
    double rt1 = 1.0;     // [-] in [0, 2]
    double rtf = 1.0;     // [-] in [0, 2]
    double beta_a = 0.0;  // apogee-arc elevation [rad] in [-pi/2, pi/2]
    double beta_p = 0.0;  // perigee-arc elevation [rad] in [-pi/2, pi/2]
};

/// Departure orbit (inclination folded to zero) and target described by
/// the plane-change angle di alone.
struct BoundaryConditions {
    double a0 = 0.0;   // [km]
    double e0 = 0.0;
    double a_f = 0.0;  // [km]
    double e_f = 0.0;
    double di = 0.0;   // relative inclination [rad], >= 0
};

/// Arc decomposition of one revolution's thrust allowance.
struct DecodedArc {
    double alpha_a = 0.0;  // apogee azimuth, +-pi/2
    double alpha_p = 0.0;  // perigee azimuth
    double dla = 0.0;      // apogee arc semi-amplitude [rad]
    double dlp = 0.0;      // perigee arc semi-amplitude [rad]
};

/// Splits a signed thrust extent between the apogee and perigee arcs.
/// rt <= 1 puts the fraction rt at apogee with matching azimuths; rt > 1
/// flips the perigee azimuth and allocates (2 - rt) to apogee.
/// Always dla + dlp = |dl_thrust|.
DecodedArc decode_controls(double dl_thrust, double r_t);

struct TransferSimResult {
    double dv = 0.0;  // [km/s]
    EquinoctialState final_state;
    double m_final = 0.0;  // [kg]
    int n_rev = 0;
    std::vector<EquinoctialState> per_rev;  // state snapshot after each revolution
    std::vector<double> dv_per_rev;         // cumulative dv at each snapshot
    std::vector<double> m_per_rev;          // mass at each snapshot
};

/// Simulates the transfer: per revolution a perigee arc then an apogee
/// arc, controls interpolated at the current elapsed time, spacecraft
/// flying solo (epsilon = F_tot / m). The last arc is truncated by
/// bisection so the elapsed time equals tof_bar.
TransferSimResult simulate_transfer(const BoundaryConditions& bc,
                                    const TransferControls& controls,
                                    double tof_bar, double m_ibs0,
                                    const SpacecraftConfig& config,
                                    const Constants& c,
                                    bool record_history = false);

/// Raw terminal mismatch (da [km], de [-], di [rad]) against the target.
std::array<double, 3> boundary_mismatch(const EquinoctialState& final_state,
                                        const BoundaryConditions& bc);

struct TransferSolution {
    TransferControls controls;
    double dv = 0.0;   // [km/s]
    double tof = 0.0;  // [s]
    int n_revolutions = 0;
    std::array<double, 3> residual{};  // (da km, de, di rad)
    double m_ibs_final = 0.0;
    bool feasible = false;
};

struct RendezvousOptions {
    int max_outer = 50;
    int max_inner = 60;
    int multistarts = 5;  // random starts beyond the deterministic guess
    std::uint64_t seed = 20260823;
    int threads = 0;  // 0 = hardware concurrency
    // warm starts (e.g. the solution of a neighbouring time budget),
    // tried in addition to the deterministic and random starts
    std::vector<std::vector<double>> extra_starts;
    // return as soon as one start converges to a feasible solution,
    // skipping the remaining starts; trades dv polish for speed
    bool stop_at_first_feasible = false;
};

/// Feasibility thresholds on the raw mismatch: |da| < 1 km, |de| < 1e-3,
/// |di| < 0.01 deg.
bool transfer_feasible(const std::array<double, 3>& residual);

/// Minimizes transfer dV subject to hitting the target orbit, via the
/// augmented-Lagrangian solver with one deterministic and `multistarts`
/// seeded random starts. Returns the best feasible solution, or the
/// best-residual one flagged infeasible when the time budget is too short.
TransferSolution solve_rendezvous(const BoundaryConditions& bc, double tof_bar,
                                  double m_ibs0, const SpacecraftConfig& config,
                                  const Constants& c,
                                  const RendezvousOptions& opts = {});

} // namespace ibsmp
