#pragma once

#include "ibsmp/constants.hpp"

namespace ibsmp {

/// Ion-beam shepherd spacecraft configuration. Thrust in kN so that
/// thrust/mass[kg] comes out in km/s^2 directly.
struct SpacecraftConfig {
    double f_tot = 5e-4;      // total propulsive thrust [kN] (0.5 N)
    double isp = 3000.0;      // specific impulse [s]
    double m_dry = 250.0;     // [kg]
    double m_launch = 1000.0; // [kg]
};

struct MassState {
    double m_ibs = 0.0;   // current shepherd wet mass [kg]
    double m_debr = 0.0;  // mass of shepherded debris [kg]; 0 when solo
};

/// Formation-keeping thrust F_p2 required to balance a beam thrust F_p1
/// pushing debris of mass m_debr. Requires m_debr > 0.
double balance_thrust(double f_p1, double m_ibs, double m_debr);

/// Acceleration of the combined IBS-debris body (or of the spacecraft
/// alone when m_debr = 0) under full thrust [km/s^2].
double beam_acceleration(const SpacecraftConfig& config, const MassState& mass);

/// Rocket-equation mass update for a shepherding burn of duration t_thrust
/// at combined-body acceleration epsilon. Throws on propellant exhaustion
/// (result below dry mass).
double update_mass_shepherding(const MassState& mass, double epsilon, double t_thrust,
                               const SpacecraftConfig& config, const Constants& c);

/// Same update for a solo (no debris) burn.
double update_mass_solo(double m_ibs, double epsilon, double t_thrust,
                        const SpacecraftConfig& config, const Constants& c);

} // namespace ibsmp
