// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failed criteria. Heavy artifacts (surrogates, rendezvous solutions) are
// shared across criteria, so run order matters.
#include "ibsmp/deorbit.hpp"
#include "ibsmp/elements.hpp"
#include "ibsmp/gauss_oracle.hpp"
#include "ibsmp/integrals.hpp"
#include "ibsmp/moea.hpp"
#include "ibsmp/phasing.hpp"
#include "ibsmp/propagator.hpp"
#include "ibsmp/sequence.hpp"
#include "ibsmp/serialization.hpp"
#include "ibsmp/shepherd.hpp"
#include "ibsmp/transfer.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace ibsmp;

namespace {

const Constants kC;
const SpacecraftConfig kCfg;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::vector<DebrisCatalogEntry> demo_catalog() {
    return load_catalog(std::string(IBSMP_DATA_DIR) + "/leo_debris5.json");
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------- 1
void criterion_relative_inclination() {
    const auto cat = demo_catalog();
    struct Pair {
        int a, b;
        double di_deg;
    };
    const Pair ref[] = {{0, 1, 2.16}, {0, 2, 1.47}, {0, 3, 1.95}, {0, 4, 1.00},
                        {1, 2, 3.63}, {1, 3, 2.65}, {1, 4, 2.00}, {2, 3, 2.52},
                        {2, 4, 2.00}, {3, 4, 1.00}};
    double worst = 0.0;
    for (const Pair& p : ref) {
        const double di = relative_inclination(cat[p.a].i, cat[p.a].raan,
                                               cat[p.b].i, cat[p.b].raan) *
                          kRadToDeg;
        worst = std::max(worst, std::fabs(di - p.di_deg));
    }
    report(1, worst <= 0.01,
           fmt("pairwise plane-change angles, worst deviation %.4f deg "
               "(tol 0.01)",
               worst));
}

// ---------------------------------------------------------------- 2
void criterion_beam_acceleration() {
    const double shep = beam_acceleration(kCfg, {1000.0, 800.0});
    const double solo = beam_acceleration(kCfg, {1000.0, 0.0});
    const double e1 = std::fabs(shep - 1.923e-7) / 1.923e-7;
    const double e2 = std::fabs(solo - 5e-7) / 5e-7;
    report(2, e1 < 5e-4 && e2 < 5e-4,
           fmt("beam accelerations %.4e / %.4e km/s^2 (rel err %.1e, %.1e; "
               "tol 5e-4)",
               shep, solo, e1, e2));
}

// ---------------------------------------------------------------- 3
void criterion_integrals() {
    using boost::math::quadrature::gauss_kronrod;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ue(0.0, 0.5), uang(0.0, kTwoPi),
        udl(0.05, 4.0 * kPi);
    double worst = 0.0;
    for (int s = 0; s < 500; ++s) {
        const double e = (s % 5 == 0) ? ue(rng) * 1e-2 : ue(rng);
        const double w = uang(rng);
        const double p1 = e * std::sin(w), p2 = e * std::cos(w);
        const double l0 = uang(rng) - kPi, lf = l0 + udl(rng);
        const IntegralSet got = kepler_integrals(p1, p2, l0, lf);
        auto F = [&](double l) { return 1.0 + p1 * std::sin(l) + p2 * std::cos(l); };
        auto quad = [&](auto f) {
            return gauss_kronrod<double, 31>::integrate(f, l0, lf, 12, 1e-13);
        };
        const double ref[7] = {
            quad([&](double l) { return 1.0 / F(l); }),
            quad([&](double l) { return 1.0 / std::pow(F(l), 2); }),
            quad([&](double l) { return 1.0 / std::pow(F(l), 3); }),
            quad([&](double l) { return std::cos(l) / std::pow(F(l), 2); }),
            quad([&](double l) { return std::cos(l) / std::pow(F(l), 3); }),
            quad([&](double l) { return std::sin(l) / std::pow(F(l), 2); }),
            quad([&](double l) { return std::sin(l) / std::pow(F(l), 3); })};
        const double got7[7] = {got.i11, got.i12, got.i13, got.ic2,
                                got.ic3, got.is2, got.is3};
        for (int k = 0; k < 7; ++k)
            worst = std::max(worst, std::fabs(got7[k] - ref[k]));
    }
    // continuity straddling the tan(L/2) pole at L = pi over several turns
    double jump = 0.0;
    for (int rev = 0; rev < 3; ++rev) {
        const double lp = kPi + rev * kTwoPi;
        const IntegralSet lo = kepler_integrals(0.1, 0.2, 0.0, lp - 1e-7);
        const IntegralSet hi = kepler_integrals(0.1, 0.2, 0.0, lp + 1e-7);
        jump = std::max(jump, std::fabs(hi.i13 - lo.i13));
    }
    report(3, worst < 1e-9 && jump < 1e-5,
           fmt("closed forms vs quadrature over 500 samples, worst abs err "
               "%.2e (tol 1e-9); pole continuity jump %.2e",
               worst, jump));
}

// ---------------------------------------------------------------- 4
void criterion_order_of_accuracy() {
    EquinoctialState s0;
    s0.a = 7128.16;
    const double dl = kTwoPi;
    const double alpha = kPi / 2.0, beta = 0.0;

    // error taken as the max over the revolution (quarter-point samples):
    // at exactly 2*pi the P2 second-order coefficient vanishes by symmetry
    // and the ratio would measure a higher-order remainder
    auto errors = [&](double eps) {
        ControlProfile prof = [&](double, const KeplerianElements&) {
            return std::array<double, 3>{eps * std::cos(alpha),
                                         eps * std::sin(alpha), 0.0};
        };
        std::array<double, 4> err{};
        for (int k = 1; k <= 4; ++k) {
            const double span = dl * k / 4.0;
            const EquinoctialState an =
                propagate_first_order(s0, span, {eps, alpha, beta}, kC);
            const EquinoctialState ex =
                integrate_to_longitude(s0, prof, s0.longitude + span, {}, kC);
            err[0] = std::max(err[0], std::fabs(an.a - ex.a));
            err[1] = std::max(err[1], std::fabs(an.p1 - ex.p1));
            err[2] = std::max(err[2], std::fabs(an.p2 - ex.p2));
            err[3] = std::max(err[3], std::fabs(an.epoch - ex.epoch));
        }
        return err;
    };
    const auto e1 = errors(2e-7);
    const auto e2 = errors(1e-7);
    bool ok = true;
    double ratios[4];
    for (int k = 0; k < 4; ++k) {
        ratios[k] = e1[k] / e2[k];
        ok = ok && ratios[k] >= 3.2 && ratios[k] <= 4.8;
    }
    report(4, ok,
           fmt("second-order error ratios a/P1/P2/t = %.2f %.2f %.2f %.2f "
               "(window [3.2, 4.8])",
               ratios[0], ratios[1], ratios[2], ratios[3]));
}

// ---------------------------------------------------------------- 5
void criterion_reference_transfers() {
    BoundaryConditions bc{6892.24, 0.031, 7478.16, 0.0, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const TransferSolution cop =
        solve_rendezvous(bc, 70.0 * kSecondsPerDay, 1000.0, kCfg, kC);
    bc.di = 10.0 * kDegToRad;
    const TransferSolution inc =
        solve_rendezvous(bc, 70.0 * kSecondsPerDay, 1000.0, kCfg, kC);

    const bool ok_cop = cop.feasible &&
                        std::fabs(cop.dv - 0.301) / 0.301 <= 0.05 &&
                        std::abs(cop.n_revolutions - 1001) <= 25;
    const bool ok_inc = inc.feasible && std::fabs(inc.dv - 1.480) / 1.480 <= 0.07;
    report(5, ok_cop && ok_inc,
           fmt("rendezvous dv coplanar %.4f km/s (%d rev), 10 deg %.4f km/s "
               "[targets 0.301 +-5%% / 1001 +-25 rev, 1.480 +-7%%; %.0f s]",
               cop.dv, cop.n_revolutions, inc.dv, elapsed_s(t0)));
}

// ---------------------------------------------------------------- 6
void criterion_min_deorbit_times() {
    const auto cat = demo_catalog();
    const double ref[5] = {2.67, 3.36, 3.68, 11.12, 12.25};
    double worst = 0.0;
    bool all_conv = true;
    for (int k = 0; k < 5; ++k) {
        const DebrisOrbit d{cat[k].mass, cat[k].a};
        const DeorbitResult r =
            simulate_deorbit(d, 350.0, {kPi, kPi, 1200, 1200}, kCfg, kC);
        all_conv = all_conv && r.converged;
        worst = std::max(worst,
                         std::fabs(r.tof / kSecondsPerDay - ref[k]) / ref[k]);
    }
    report(6, all_conv && worst <= 0.15,
           fmt("minimum de-orbit times, worst relative deviation %.3f "
               "(tol 0.15)",
               worst));
}

// ---------------------------------------------------------------- 7
DeorbitSurrogate criterion_surrogate_fidelity() {
    const auto cat = demo_catalog();
    const DebrisOrbit d{cat[0].mass, cat[0].a};
    const auto t0 = std::chrono::steady_clock::now();
    const DeorbitGrid grid = build_surrogate_grid(d, kCfg, kC);
    const double build_s = elapsed_s(t0);
    const DeorbitSurrogate sur = extract_envelope(grid);

    // node queries reproduce envelope values exactly
    bool nodes_exact = true;
    for (const auto& sl : sur.slices) {
        if (!sl.available) continue;
        for (std::size_t k = 0; k < sl.tof.size(); k += 7) {
            const SurrogateValue v = query_surrogate(sur, sl.tof[k], sl.m_ibs0);
            nodes_exact = nodes_exact && v.dv == sl.dv[k];
        }
    }

    // random queries checked against re-simulating the argmin cell
    std::mt19937_64 rng(7);
    double worst = 0.0;
    int checked = 0;
    while (checked < 50) {
        const auto& sl =
            sur.slices[rng() % sur.slices.size()];
        if (!sl.available || sl.tof.size() < 2) continue;
        const std::size_t bin = rng() % sl.tof.size();
        const DeorbitControls ctl{grid.dla1_samples[sl.argmin_i1[bin]],
                                  grid.dlaf_samples[sl.argmin_i2[bin]], 1200,
                                  1200};
        const DeorbitResult rs = simulate_deorbit(d, sl.m_ibs0, ctl, kCfg, kC);
        if (!rs.converged) continue;
        const double tof_q =
            std::min(std::max(rs.tof, sl.tof.front()), sl.tof.back());
        const SurrogateValue v = query_surrogate(sur, tof_q, sl.m_ibs0);
        worst = std::max(worst, std::fabs(v.dv - rs.dv) / rs.dv);
        ++checked;
    }

    report(7, build_s < 600.0 && nodes_exact && worst <= 0.05,
           fmt("grid build %.0f s (limit 600), node queries exact: %s, worst "
               "re-simulation deviation %.3f (tol 0.05)",
               build_s, nodes_exact ? "yes" : "no", worst));
    return sur;
}

// ------------------------------------------------------------- 8, 10
void criteria_sequence_and_phasing(const DeorbitSurrogate& sur0) {
    const auto cat = demo_catalog();
    Scenario sc;
    sc.debris = cat;

    std::vector<DeorbitSurrogate> surs;
    surs.push_back(sur0);
    for (int k = 1; k < 5; ++k) {
        const DebrisOrbit d{cat[k].mass, cat[k].a};
        surs.push_back(extract_envelope(build_surrogate_grid(d, kCfg, kC)));
    }

    // (a) published removal plan for the five-debris scenario
    SequenceEvaluator ev(sc, surs);
    SequencePlan plan;
    plan.order = {0, 2, 3, 4, 1};
    plan.durations_days = {5.0,   22.06, 88.10, 25.96, 66.71,
                           34.33, 55.89, 30.77, 56.98, 33.99};
    const auto ta = std::chrono::steady_clock::now();
    const SequenceResult seq = ev.evaluate(plan);
    const double dv_err = std::fabs(seq.dv_tot - 1.98) / 1.98;
    const bool ok_a = seq.feasible && dv_err <= 0.15;

    // (b) seeded duration search on the two-debris sub-scenario
    Scenario sc2;
    sc2.debris = {cat[0], cat[2]};
    std::vector<DeorbitSurrogate> surs2{surs[0], surs[2]};
    SequenceEvaluator ev2(sc2, surs2);
    SequenceBounds bounds;
    MoeaOptions mopts;
    mopts.budget = 2000;
    mopts.seed = 20260823;
    const auto tb = std::chrono::steady_clock::now();
    const auto front = pareto_optimize({0, 1}, ev2, bounds, mopts);
    const double search_s = elapsed_s(tb);

    bool no_dominated = !front.empty();
    for (std::size_t i = 0; i < front.size(); ++i)
        for (std::size_t j = 0; j < front.size(); ++j)
            if (i != j && front[i].dv_kms <= front[j].dv_kms &&
                front[i].tof_days <= front[j].tof_days &&
                (front[i].dv_kms < front[j].dv_kms ||
                 front[i].tof_days < front[j].tof_days))
                no_dominated = false;
    const double lb_sum = 2.0 * bounds.t_rv_lo + ev2.min_deorbit_days(0) +
                          ev2.min_deorbit_days(1);
    const double min_tof =
        front.empty() ? std::numeric_limits<double>::infinity()
                      : front.front().tof_days;
    const bool ok_b = no_dominated && std::fabs(min_tof - lb_sum) <= 0.5 &&
                      search_s < 1800.0;

    report(8, ok_a && ok_b,
           fmt("plan 13452 dv %.3f km/s (target 1.98 +-15%%, feasible: %s); "
               "2-debris front: %zu pts, min ToF %.2f vs bound sum %.2f d, "
               "non-dominated: %s, search %.0f s (limit 1800) [plan eval %.0f s]",
               seq.dv_tot, seq.feasible ? "yes" : "no", front.size(), min_tof,
               lb_sum, no_dominated ? "yes" : "no", search_s,
               std::chrono::duration<double>(tb - ta).count()));

    // ------------- criterion 10 rides on the evaluated five-debris chain
    auto mean_motion = [&](double a) { return std::sqrt(kC.mu / (a * a * a)); };
    std::vector<double> dep_a{sc.departure_a};
    std::vector<double> tgt_a;
    for (std::size_t k = 0; k < plan.order.size(); ++k) {
        const int idx = plan.order[k];
        tgt_a.push_back(cat[idx].a);
        if (k + 1 < plan.order.size() && k < seq.phases.size() &&
            seq.phases[k].feasible) {
            const SurrogateValue dq =
                query_surrogate(surs[idx], seq.phases[k].t_do_days * kSecondsPerDay,
                                seq.phases[k].m_after_rv);
            dep_a.push_back(dq.a_f);
        }
    }
    const std::size_t legs = std::min(dep_a.size(), tgt_a.size());

    // phasing applies to the de-orbit/rendezvous couplets: the launch leg's
    // phase is free (pick the launch epoch), so k starts at 1
    double t_apsidal = 0.0;
    for (std::size_t k = 1; k < legs; ++k)
        t_apsidal += apsidal_alignment_delay(mean_motion(dep_a[k]));

    double t_quasi = 0.0;
    for (std::size_t k = 1; k < legs; ++k)
        t_quasi = std::max(t_quasi,
                           quasi_circular_phasing_delay(
                               mean_motion(dep_a[k]), mean_motion(tgt_a[k]), kTwoPi));

    double t_ecc = 0.0;
    for (std::size_t k = 1; k < legs; ++k) {
        std::vector<double> profile;
        for (int s = 0; s <= 20; ++s)
            profile.push_back(mean_motion(
                dep_a[k] + (tgt_a[k] - dep_a[k]) * s / 20.0));
        t_ecc += eccentric_phasing_delay(profile, mean_motion(tgt_a[k])).t_total;
    }

    const double d_aps = t_apsidal / kSecondsPerDay;
    const double d_quasi = (t_apsidal + t_quasi) / kSecondsPerDay;
    const double d_ecc = (t_apsidal + t_ecc) / kSecondsPerDay;
    const double frac_quasi = d_quasi / 96.35;
    const double frac_ecc = d_ecc / 419.79;
    const bool ok10 = legs == 5 && std::fabs(d_aps - 0.14) / 0.14 <= 0.5 &&
                      std::fabs(d_quasi - 2.82) / 2.82 <= 0.5 &&
                      std::fabs(d_ecc - 4.72) / 4.72 <= 0.5 &&
                      frac_quasi < 0.05 && frac_ecc < 0.05;
    report(10, ok10,
           fmt("phasing delays: apsidal %.3f d (ref 0.14), quasi-circular "
               "total %.2f d (ref 2.82), coasting total %.2f d (ref 4.72), "
               "all +-50%%; nominal fractions %.4f / %.4f (tol 0.05)",
               d_aps, d_quasi, d_ecc, frac_quasi, frac_ecc));
}

// ---------------------------------------------------------------- 9
void criterion_conv_metric() {
    std::map<std::string, std::vector<ParetoPoint>> fronts;
    fronts["13452"] = {{100.0, 1.5, {}, "13452"}, {200.0, 1.2, {}, "13452"}};
    auto self = conv_rank(fronts);
    const bool zero_ok = self.size() == 1 && self[0].conv == 0.0;

    fronts.clear();
    fronts["A"] = {{0.0, 1.0, {}, "A"}, {1.0, 0.0, {}, "A"}};
    fronts["B"] = {{0.5, 1.5, {}, "B"}};
    fronts["C"] = {{2.0, 2.0, {}, "C"}};
    const auto ranks = conv_rank(fronts);
    const bool synth_ok =
        ranks.size() == 3 && ranks[0].order == "A" && ranks[0].rank == 1 &&
        std::fabs(ranks[0].conv) < 1e-9 &&
        std::fabs(ranks[1].conv - 100.0 * std::sqrt(0.5)) < 1e-9 &&
        std::fabs(ranks[2].conv - 100.0 * std::sqrt(5.0)) < 1e-9;
    report(9, zero_ok && synth_ok,
           fmt("conv = %.1e for the global front itself; synthetic 3-front "
               "ranking reproduced to 1e-9: %s",
               self.empty() ? -1.0 : self[0].conv, synth_ok ? "yes" : "no"));
}

// ---------------------------------------------------------------- 11
void criterion_property_suite(const DeorbitSurrogate& sur) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;

    // Pareto archive never holds a dominated pair
    {
        ParetoArchive arc;
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 400; ++k)
            arc.insert({u(rng) * 100.0, u(rng) * 2.0, {}, "p"});
        const auto& pts = arc.points();
        for (std::size_t i = 0; i < pts.size() && ok; ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (i != j && pts[i].tof_days <= pts[j].tof_days &&
                    pts[i].dv_kms <= pts[j].dv_kms) {
                    ok = false;
                    why = "archive holds a dominated pair";
                    break;
                }
    }

    // surrogate envelope monotone non-increasing in ToF
    if (ok)
        for (const auto& sl : sur.slices) {
            for (std::size_t k = 1; k < sl.dv.size(); ++k)
                if (sl.dv[k] > sl.dv[k - 1] + 1e-15) {
                    ok = false;
                    why = "envelope not monotone";
                }
        }

    // propellant mass never increases with burn time
    if (ok) {
        double prev = 1000.0;
        for (double t = 0.0; t <= 5e5; t += 5e4) {
            const double m =
                update_mass_shepherding({1000.0, 500.0}, 2e-7, t, kCfg, kC);
            if (m > prev + 1e-12) {
                ok = false;
                why = "mass increased";
            }
            prev = m;
        }
    }

    // beta = 0 leaves the orbit plane untouched
    if (ok) {
        EquinoctialState s;
        s.a = 7000.0;
        s.p2 = 0.05;
        s.q1 = 0.01;
        s.q2 = 0.02;
        const EquinoctialState out =
            propagate_first_order(s, 4.0, {1e-6, 0.7, 0.0}, kC);
        if (out.q1 != s.q1 || out.q2 != s.q2) {
            ok = false;
            why = "q1/q2 moved under beta = 0";
        }
    }

    // element conversions round-trip
    if (ok) {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 200 && ok; ++k) {
            KeplerianElements kep;
            kep.a = 6700.0 + 2000.0 * u(rng);
            kep.e = 0.4 * u(rng);
            kep.i = kPi * 0.9 * u(rng);
            kep.raan = kTwoPi * u(rng);
            kep.argp = kTwoPi * u(rng);
            kep.theta = kTwoPi * u(rng);
            const KeplerianElements back =
                equinoctial_to_kep(kep_to_equinoctial(kep));
            if (std::fabs(back.a - kep.a) > 1e-8 ||
                std::fabs(back.e - kep.e) > 1e-12 ||
                std::fabs(back.i - kep.i) > 1e-12) {
                ok = false;
                why = "element round-trip degraded";
            }
        }
    }

    const double t = elapsed_s(t0);
    report(11, ok && t < 300.0,
           ok ? fmt("property suite green in %.1f s (limit 300)", t)
              : fmt("property suite: %s", why.c_str()));
}

} // namespace

int main() {
    criterion_relative_inclination();
    criterion_beam_acceleration();
    criterion_integrals();
    criterion_order_of_accuracy();
    criterion_reference_transfers();
    criterion_min_deorbit_times();
    const DeorbitSurrogate sur = criterion_surrogate_fidelity();
    criteria_sequence_and_phasing(sur);
    criterion_conv_metric();
    criterion_property_suite(sur);
    std::printf("%d of 11 criteria failed\n", g_failures);
    return g_failures;
}
