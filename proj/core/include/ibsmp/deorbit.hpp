#pragma once

#include "ibsmp/constants.hpp"
#include "ibsmp/shepherd.hpp"

#include <stdexcept>
#include <vector>

namespace ibsmp {

/// A debris target: mass and the radius of its initial circular orbit.
struct DebrisOrbit {
    double mass = 0.0;  // [kg]
    double a0 = 0.0;    // initial circular semi-major axis [km]
};

/// Two-node control law for the de-orbit spiral: the apogee-arc
/// semi-amplitude is interpolated linearly from dla1 at orbit 1 to dlaf at
/// orbit n_ref, clamped afterwards.
struct DeorbitControls {
    double dla1 = 0.0;  // [rad] in [0, pi]
    double dlaf = 0.0;  // [rad] in [0, pi]
    int n_ref = 1200;
    int n_max = 1200;
};

struct DeorbitSnapshot {
    double t = 0.0;   // [s]
    double a = 0.0;   // [km]
    double e = 0.0;
    double rp = 0.0;  // [km]
    double ra = 0.0;  // [km]
    double dv = 0.0;  // cumulative [km/s]
    double m = 0.0;   // [kg]
};

struct DeorbitResult {
    double dv = 0.0;           // [km/s]
    double tof = 0.0;          // [s]
    double a_f = 0.0;          // [km]
    double e_f = 0.0;
    double m_ibs_final = 0.0;  // [kg]
    int n_orbits = 0;
    bool converged = false;
    std::vector<DeorbitSnapshot> history;  // per orbit, when requested
};

/// Arc semi-amplitude for a given orbit number (1-based).
double arc_amplitude_at(const DeorbitControls& controls, int orbit_index);

/// Simulates the apogee-arc perigee-lowering spiral until the perigee
/// radius reaches the de-orbit threshold (back-tracked by bisection to
/// 0.1 km) or n_max orbits elapse (converged = false).
DeorbitResult simulate_deorbit(const DebrisOrbit& debris, double m_ibs0,
                               const DeorbitControls& controls,
                               const SpacecraftConfig& config, const Constants& c,
                               bool record_history = false);

/// Control-grid specification for surrogate construction.
struct GridSpec {
    int n_mibs = 8;
    int n_dla1 = 50;
    int n_dlaf = 50;
    double mibs_lo = 350.0;   // [kg]
    double mibs_hi = 1000.0;  // [kg]
    double dla_hi = kPi;      // [rad]
};

struct DeorbitGrid {
    DebrisOrbit debris;
    GridSpec spec;
    std::vector<double> mibs_samples;
    std::vector<double> dla1_samples;
    std::vector<double> dlaf_samples;
    std::vector<DeorbitResult> cells;  // [im * n_dla1 * n_dlaf + i1 * n_dlaf + i2]

    const DeorbitResult& at(int im, int i1, int i2) const {
        return cells[(im * spec.n_dla1 + i1) * spec.n_dlaf + i2];
    }
};

/// Runs simulate_deorbit over the whole control grid. Cells are
/// independent and are evaluated on up to `threads` workers, gathered
/// deterministically by grid index.
DeorbitGrid build_surrogate_grid(const DebrisOrbit& debris,
                                 const SpacecraftConfig& config, const Constants& c,
                                 const GridSpec& spec = {}, int threads = 0);

/// One m_IBS0 slice of the surrogate: min-dV envelope over ToF bins.
struct SurrogateSlice {
    double m_ibs0 = 0.0;
    bool available = false;
    std::vector<double> tof;  // bin centres [s], ascending
    std::vector<double> dv;   // envelope [km/s], non-increasing
    std::vector<double> a_f;  // final semi-major axis at the argmin [km]
    std::vector<int> argmin_i1;  // grid coordinates of the envelope argmin
    std::vector<int> argmin_i2;
    double tof_min = 0.0;
    double tof_max = 0.0;
};

struct DeorbitSurrogate {
    DebrisOrbit debris;
    GridSpec spec;
    std::vector<SurrogateSlice> slices;  // one per m_IBS0 sample, ascending
};

/// Bins converged grid cells by ToF (200 bins per slice), takes the
/// minimum-dV cell per bin, and enforces envelope monotonicity by a
/// cumulative minimum over increasing ToF.
DeorbitSurrogate extract_envelope(const DeorbitGrid& grid);

struct SurrogateDomainError : std::runtime_error {
    SurrogateDomainError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), tof_min(lo), tof_max(hi) {}
    double tof_min;  // valid range [s]
    double tof_max;
};

struct SurrogateValue {
    double dv = 0.0;   // [km/s]
    double a_f = 0.0;  // [km]
};

/// Bilinear query: piecewise-linear in ToF within a slice, linear between
/// adjacent m_IBS0 slices. Throws SurrogateDomainError when tof falls
/// outside the (slice-interpolated) domain.
SurrogateValue query_surrogate(const DeorbitSurrogate& surrogate, double tof,
                               double m_ibs0);

} // namespace ibsmp
