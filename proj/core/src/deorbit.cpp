#include "ibsmp/deorbit.hpp"

#include "ibsmp/elements.hpp"
#include "ibsmp/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ibsmp {
namespace {

constexpr double kRpTolKm = 0.1;
// below this eccentricity the osculating apsis direction is numerical
// noise; keep the previous revolution's placement instead
constexpr double kCircularPhaseFloor = 1e-4;

double perigee_radius(const EquinoctialState& s) {
    return s.a * (1.0 - s.eccentricity());
}

} // namespace

double arc_amplitude_at(const DeorbitControls& controls, int orbit_index) {
    if (orbit_index < 1)
        throw std::domain_error("arc_amplitude_at: orbit_index must be >= 1");
    if (controls.n_ref < 2)
        throw std::domain_error("arc_amplitude_at: n_ref must be >= 2");
    if (orbit_index >= controls.n_ref) return controls.dlaf;
    const double frac =
        static_cast<double>(orbit_index - 1) / static_cast<double>(controls.n_ref - 1);
    return controls.dla1 + frac * (controls.dlaf - controls.dla1);
}

DeorbitResult simulate_deorbit(const DebrisOrbit& debris, double m_ibs0,
                               const DeorbitControls& controls,
                               const SpacecraftConfig& config, const Constants& c,
                               bool record_history) {
    if (debris.a0 <= c.rp_threshold)
        throw std::domain_error("simulate_deorbit: initial orbit below threshold");
    if (m_ibs0 < config.m_dry || m_ibs0 > config.m_launch)
        throw std::domain_error("simulate_deorbit: m_ibs0 out of [m_dry, m_launch]");

    EquinoctialState state;
    state.a = debris.a0;
    state.longitude = 0.0;

    MassState mass{m_ibs0, debris.mass};
    double dv = 0.0;
    double la_fallback = state.longitude + kPi;

    DeorbitResult res;
    for (int orbit = 1; orbit <= controls.n_max; ++orbit) {
        res.n_orbits = orbit;
        const double dla = arc_amplitude_at(controls, orbit);
        const double e = state.eccentricity();

        // apogee longitude of the osculating orbit; near-circular keeps
        // the previous orbit's value
        double la = (e > kCircularPhaseFloor) ? std::atan2(state.p1, state.p2) + kPi
                                              : la_fallback;
        while (la - dla < state.longitude) la += kTwoPi;
        la_fallback = la + kTwoPi;

        const double eps = beam_acceleration(config, mass);

        if (dla <= 0.0) {
            state = propagate_first_order(state, la - state.longitude, {}, c);
            continue;
        }

        auto [after, t_thrust] =
            apsis_thrust_arc(state, la, dla, -kPi / 2.0, 0.0, eps, c);

        if (perigee_radius(after) <= c.rp_threshold) {
            // bisect the thrust-arc length so the final perigee radius
            // lands on the threshold
            EquinoctialState at_start = propagate_first_order(
                state, (la - dla) - state.longitude, {}, c);
            ThrustSetting burn{eps, -kPi / 2.0, 0.0};
            double lo = 0.0, hi = 2.0 * dla;
            EquinoctialState fin = after;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                fin = propagate_first_order(at_start, mid, burn, c);
                const double rp = perigee_radius(fin);
                if (std::fabs(rp - c.rp_threshold) < kRpTolKm) break;
                (rp <= c.rp_threshold ? hi : lo) = mid;
            }
            const double t_fin = fin.epoch - at_start.epoch;
            dv += eps * t_fin;
            res.dv = dv;
            res.tof = fin.epoch;
            res.a_f = fin.a;
            res.e_f = fin.eccentricity();
            res.m_ibs_final =
                update_mass_shepherding(mass, eps, t_fin, config, c);
            res.converged = true;
            if (record_history) {
                const auto [rp, ra] = apsis_radii(fin);
                res.history.push_back({fin.epoch, fin.a, fin.eccentricity(), rp,
                                       ra, dv, res.m_ibs_final});
            }
            return res;
        }

        dv += eps * t_thrust;
        mass.m_ibs = update_mass_shepherding(mass, eps, t_thrust, config, c);
        state = after;
        if (record_history) {
            const auto [rp, ra] = apsis_radii(state);
            res.history.push_back({state.epoch, state.a, state.eccentricity(),
                                   rp, ra, dv, mass.m_ibs});
        }
    }

    res.dv = dv;
    res.tof = state.epoch;
    res.a_f = state.a;
    res.e_f = state.eccentricity();
    res.m_ibs_final = mass.m_ibs;
    res.converged = false;
    return res;
}

DeorbitGrid build_surrogate_grid(const DebrisOrbit& debris,
                                 const SpacecraftConfig& config, const Constants& c,
                                 const GridSpec& spec, int threads) {
    DeorbitGrid grid;
    grid.debris = debris;
    grid.spec = spec;
    auto linspace = [](double lo, double hi, int n) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1);
        return v;
    };
    grid.mibs_samples = linspace(spec.mibs_lo, spec.mibs_hi, spec.n_mibs);
    grid.dla1_samples = linspace(0.0, spec.dla_hi, spec.n_dla1);
    grid.dlaf_samples = linspace(0.0, spec.dla_hi, spec.n_dlaf);

    const int total = spec.n_mibs * spec.n_dla1 * spec.n_dlaf;
    grid.cells.resize(total);

    const int nworkers = threads > 0
                             ? threads
                             : std::max(1u, std::thread::hardware_concurrency());
    auto worker = [&](int w) {
        for (int idx = w; idx < total; idx += nworkers) {
            const int im = idx / (spec.n_dla1 * spec.n_dlaf);
            const int rest = idx % (spec.n_dla1 * spec.n_dlaf);
            DeorbitControls ctl;
            ctl.dla1 = grid.dla1_samples[rest / spec.n_dlaf];
            ctl.dlaf = grid.dlaf_samples[rest % spec.n_dlaf];
            grid.cells[idx] =
                simulate_deorbit(debris, grid.mibs_samples[im], ctl, config, c);
        }
    };
    if (nworkers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    return grid;
}

DeorbitSurrogate extract_envelope(const DeorbitGrid& grid) {
    constexpr int kBins = 200;
    DeorbitSurrogate sur;
    sur.debris = grid.debris;
    sur.spec = grid.spec;
    sur.slices.resize(grid.mibs_samples.size());

    for (std::size_t im = 0; im < grid.mibs_samples.size(); ++im) {
        SurrogateSlice& slice = sur.slices[im];
        slice.m_ibs0 = grid.mibs_samples[im];

        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int i1 = 0; i1 < grid.spec.n_dla1; ++i1)
            for (int i2 = 0; i2 < grid.spec.n_dlaf; ++i2) {
                const auto& cell = grid.at(static_cast<int>(im), i1, i2);
                if (!cell.converged) continue;
                lo = std::min(lo, cell.tof);
                hi = std::max(hi, cell.tof);
            }
        if (!(lo <= hi)) continue;  // no converged cell in this slice

        slice.available = true;
        slice.tof_min = lo;
        slice.tof_max = hi;
        const double width = (hi > lo) ? (hi - lo) / kBins : 1.0;

        struct Bin {
            double dv = std::numeric_limits<double>::infinity();
            double a_f = 0.0;
            int i1 = -1, i2 = -1;
        };
        std::vector<Bin> bins(kBins);
        for (int i1 = 0; i1 < grid.spec.n_dla1; ++i1)
            for (int i2 = 0; i2 < grid.spec.n_dlaf; ++i2) {
                const auto& cell = grid.at(static_cast<int>(im), i1, i2);
                if (!cell.converged) continue;
                int b = static_cast<int>((cell.tof - lo) / width);
                b = std::clamp(b, 0, kBins - 1);
                if (cell.dv < bins[b].dv) {
                    bins[b] = {cell.dv, cell.a_f, i1, i2};
                }
            }

        // cumulative minimum over increasing ToF: a longer phase can always
        // run the cheaper, faster spiral and wait out the remainder
        Bin best;
        for (int b = 0; b < kBins; ++b) {
            if (bins[b].i1 >= 0 && bins[b].dv < best.dv) best = bins[b];
            if (best.i1 < 0) continue;
            slice.tof.push_back(lo + (b + 0.5) * width);
            slice.dv.push_back(best.dv);
            slice.a_f.push_back(best.a_f);
            slice.argmin_i1.push_back(best.i1);
            slice.argmin_i2.push_back(best.i2);
        }
    }
    return sur;
}

namespace {

SurrogateValue query_slice(const SurrogateSlice& s, double tof) {
    if (!s.available)
        throw SurrogateDomainError("surrogate slice unavailable", 0.0, 0.0);
    if (tof < s.tof.front() || tof > s.tof.back())
        throw SurrogateDomainError("ToF outside surrogate domain",
                                   s.tof.front(), s.tof.back());
    const auto it = std::lower_bound(s.tof.begin(), s.tof.end(), tof);
    if (it == s.tof.begin()) return {s.dv.front(), s.a_f.front()};
    const std::size_t j = static_cast<std::size_t>(it - s.tof.begin());
    const double t0 = s.tof[j - 1], t1 = s.tof[j];
    const double w = (t1 > t0) ? (tof - t0) / (t1 - t0) : 0.0;
    return {s.dv[j - 1] + w * (s.dv[j] - s.dv[j - 1]),
            s.a_f[j - 1] + w * (s.a_f[j] - s.a_f[j - 1])};
}

} // namespace

SurrogateValue query_surrogate(const DeorbitSurrogate& sur, double tof,
                               double m_ibs0) {
    if (sur.slices.empty())
        throw std::domain_error("query_surrogate: empty surrogate");
    std::vector<double> ms;
    for (const auto& s : sur.slices) ms.push_back(s.m_ibs0);
    if (m_ibs0 < ms.front() || m_ibs0 > ms.back())
        throw std::domain_error("query_surrogate: m_ibs0 out of sampled range");

    const auto it = std::lower_bound(ms.begin(), ms.end(), m_ibs0);
    std::size_t j = static_cast<std::size_t>(it - ms.begin());
    if (j == 0 || ms[j] == m_ibs0) {
        if (j >= sur.slices.size()) j = sur.slices.size() - 1;
        return query_slice(sur.slices[j], tof);
    }
    const auto lo = query_slice(sur.slices[j - 1], tof);
    const auto hi = query_slice(sur.slices[j], tof);
    const double w = (m_ibs0 - ms[j - 1]) / (ms[j] - ms[j - 1]);
    return {lo.dv + w * (hi.dv - lo.dv), lo.a_f + w * (hi.a_f - lo.a_f)};
}

} // namespace ibsmp
