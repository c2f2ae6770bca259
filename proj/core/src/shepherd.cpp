#include "ibsmp/shepherd.hpp"

#include <cmath>
#include <stdexcept>

namespace ibsmp {

double balance_thrust(double f_p1, double m_ibs, double m_debr) {
    if (m_debr <= 0.0)
        throw std::domain_error("balance_thrust: requires m_debr > 0");
    return f_p1 * (1.0 + m_ibs / m_debr);
}

double beam_acceleration(const SpacecraftConfig& config, const MassState& mass) {
    if (mass.m_ibs <= 0.0)
        throw std::domain_error("beam_acceleration: requires m_ibs > 0");
    if (mass.m_debr > 0.0)
        return config.f_tot / (2.0 * mass.m_debr + mass.m_ibs);
    return config.f_tot / mass.m_ibs;
}

double update_mass_shepherding(const MassState& mass, double epsilon, double t_thrust,
                               const SpacecraftConfig& config, const Constants& c) {
    if (t_thrust < 0.0)
        throw std::domain_error("update_mass_shepherding: t_thrust must be >= 0");
    const double ve = config.isp * c.g0;
    const double m2d = 2.0 * mass.m_debr;
    const double m = (mass.m_ibs + m2d) * std::exp(-epsilon * t_thrust / ve) - m2d;
    if (m < config.m_dry)
        throw std::runtime_error("update_mass_shepherding: propellant exhausted");
    return m;
}

double update_mass_solo(double m_ibs, double epsilon, double t_thrust,
                        const SpacecraftConfig& config, const Constants& c) {
    if (t_thrust < 0.0)
        throw std::domain_error("update_mass_solo: t_thrust must be >= 0");
    const double m = m_ibs * std::exp(-epsilon * t_thrust / (config.isp * c.g0));
    if (m < config.m_dry)
        throw std::runtime_error("update_mass_solo: propellant exhausted");
    return m;
}

} // namespace ibsmp
