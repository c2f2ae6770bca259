#include "ibsmp/sequence.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace ibsmp;

namespace {

// hand-built envelope so de-orbit costs are known exactly: two identical
// mass slices, so any m_ibs0 in [350, 1000] interpolates to the same curve
DeorbitSurrogate synthetic_surrogate(double debris_mass, double a0) {
    DeorbitSurrogate s;
    s.debris = {debris_mass, a0};
    s.spec.n_mibs = 2;
    SurrogateSlice sl;
    sl.available = true;
    for (double d : {5.0, 10.0, 20.0, 40.0}) sl.tof.push_back(d * kSecondsPerDay);
    sl.dv = {0.3, 0.2, 0.15, 0.1};
    sl.a_f = {6700.0, 6700.0, 6700.0, 6700.0};
    sl.argmin_i1 = {0, 0, 0, 0};
    sl.argmin_i2 = {0, 0, 0, 0};
    sl.tof_min = sl.tof.front();
    sl.tof_max = sl.tof.back();
    sl.m_ibs0 = 350.0;
    s.slices.push_back(sl);
    sl.m_ibs0 = 1000.0;
    s.slices.push_back(sl);
    return s;
}

Scenario two_debris_scenario() {
    Scenario sc;
    // chaser launches directly on the first target's orbit and both
    // targets share a plane, keeping the rendezvous legs cheap
    sc.departure_a = 7000.0;
    sc.departure_e = 0.0;
    sc.debris.push_back({"d1", 200.0, 7000.0, 0.0, 0.9, 1.0});
    sc.debris.push_back({"d2", 150.0, 6700.0, 0.0, 0.9, 1.0});
    return sc;
}

} // namespace

TEST_CASE("order enumeration is exhaustive and lexicographic") {
    const auto three = enumerate_orders(3);
    REQUIRE(three.size() == 6);
    CHECK(three[0] == std::vector<int>{0, 1, 2});
    CHECK(three[1] == std::vector<int>{0, 2, 1});
    CHECK(three[5] == std::vector<int>{2, 1, 0});

    const auto five = enumerate_orders(5);
    CHECK(five.size() == 120);
    CHECK(five.front() == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(five.back() == std::vector<int>{4, 3, 2, 1, 0});
    CHECK_THROWS_AS(enumerate_orders(0), std::invalid_argument);
}

TEST_CASE("sequence evaluation chains phases with exact bookkeeping") {
    const Scenario sc = two_debris_scenario();
    std::vector<DeorbitSurrogate> surs{synthetic_surrogate(200.0, 7000.0),
                                       synthetic_surrogate(150.0, 6700.0)};
    SequenceEvaluator ev(sc, surs);

    CHECK(ev.min_deorbit_days(0) == doctest::Approx(5.0));
    CHECK(ev.min_deorbit_days(1) == doctest::Approx(5.0));

    SequencePlan plan{{0, 1}, {5.0, 10.0, 10.0, 20.0}};
    const SequenceResult r = ev.evaluate(plan);

    CHECK(r.tof_tot_days == doctest::Approx(45.0).epsilon(1e-14));
    REQUIRE(r.phases.size() == 2);
    CHECK(r.feasible);

    // first leg departs on the target orbit: essentially free
    CHECK(r.phases[0].feasible);
    CHECK(r.phases[0].dv_rv == doctest::Approx(0.0).epsilon(5e-3));
    CHECK(r.phases[0].dv_do == doctest::Approx(0.2));  // envelope node at 10 d
    CHECK(r.phases[1].dv_do == doctest::Approx(0.15));  // node at 20 d

    // mass only ever decreases along the chain
    CHECK(r.phases[0].m_after_rv <= sc.spacecraft.m_launch + 1e-9);
    CHECK(r.phases[0].m_after_do < r.phases[0].m_after_rv);
    CHECK(r.phases[1].m_after_do < r.phases[1].m_after_rv);
    CHECK(r.phases[1].m_after_do > sc.spacecraft.m_dry);

    CHECK(r.dv_tot == doctest::Approx(r.phases[0].dv_rv + r.phases[0].dv_do +
                                      r.phases[1].dv_rv + r.phases[1].dv_do));

    // repeat evaluation reproduces the result bit for bit (memoized legs)
    const SequenceResult r2 = ev.evaluate(plan);
    CHECK(r2.dv_tot == r.dv_tot);
    CHECK(r2.tof_tot_days == r.tof_tot_days);
    CHECK(r2.feasible == r.feasible);
}

TEST_CASE("de-orbit budget below the surrogate domain is infeasible") {
    const Scenario sc = two_debris_scenario();
    std::vector<DeorbitSurrogate> surs{synthetic_surrogate(200.0, 7000.0),
                                       synthetic_surrogate(150.0, 6700.0)};
    SequenceEvaluator ev(sc, surs);

    SequencePlan plan{{0, 1}, {5.0, 2.0, 10.0, 20.0}};
    const SequenceResult r = ev.evaluate(plan);
    CHECK_FALSE(r.feasible);
    CHECK(r.violation >= 1.0);
    // total time is still the exact duration sum
    CHECK(r.tof_tot_days == doctest::Approx(37.0).epsilon(1e-14));
    REQUIRE(!r.phases.empty());
    CHECK_FALSE(r.phases.back().feasible);
    CHECK(r.phases.back().note.find("surrogate") != std::string::npos);
}

TEST_CASE("hopeless rendezvous budgets are rejected by the capacity filter") {
    Scenario sc = two_debris_scenario();
    sc.debris[1].a = 7478.16;  // far target
    std::vector<DeorbitSurrogate> surs{synthetic_surrogate(200.0, 7000.0),
                                       synthetic_surrogate(150.0, 7478.16)};
    SequenceEvaluator ev(sc, surs);

    // 0.05 days of thrust cannot buy a ~0.25 km/s transfer
    SequencePlan plan{{0, 1}, {5.0, 10.0, 0.05, 10.0}};
    const SequenceResult r = ev.evaluate(plan);
    CHECK_FALSE(r.feasible);
    REQUIRE(r.phases.size() == 2);
    CHECK(r.phases.back().note.find("rendezvous") != std::string::npos);
}

TEST_CASE("plan validation") {
    const Scenario sc = two_debris_scenario();
    std::vector<DeorbitSurrogate> surs{synthetic_surrogate(200.0, 7000.0),
                                       synthetic_surrogate(150.0, 6700.0)};
    SequenceEvaluator ev(sc, surs);
    SequencePlan bad{{0, 1}, {5.0, 10.0, 10.0}};
    CHECK_THROWS_AS(ev.evaluate(bad), std::invalid_argument);
}

TEST_CASE("duration search returns a labelled sorted front") {
    Scenario sc = two_debris_scenario();
    sc.debris.pop_back();  // single target keeps the search tiny
    std::vector<DeorbitSurrogate> surs{synthetic_surrogate(200.0, 7000.0)};
    SequenceEvaluator ev(sc, surs);

    SequenceBounds bounds;
    MoeaOptions opts;
    opts.population = 8;
    opts.budget = 16;
    opts.seed = 11;
    const auto front = pareto_optimize({0}, ev, bounds, opts);
    REQUIRE(!front.empty());
    for (std::size_t k = 0; k < front.size(); ++k) {
        CHECK(front[k].order == "1");
        CHECK(front[k].x.size() == 2);
        CHECK(front[k].tof_days ==
              doctest::Approx(front[k].x[0] + front[k].x[1]).epsilon(1e-12));
        if (k > 0) CHECK(front[k].tof_days >= front[k - 1].tof_days);
    }
}
