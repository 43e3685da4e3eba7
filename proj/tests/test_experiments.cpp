#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "anderson/errors.hpp"
#include "anderson/experiments.hpp"
#include "anderson/rng.hpp"
#include "anderson/stats.hpp"

using namespace anderson;

namespace {

HamiltonianSpec pair_spec(double strength, double bound = 1.0) {
    HamiltonianSpec spec;
    spec.particles = 2;
    spec.box = make_box(make_cube({2.0}, 2.0), make_cube({2.0}, 2.0));
    spec.spacing = 0.5;
    spec.interaction = make_interaction(InteractionKind::square_well, strength, 1.0);
    spec.profile = make_profile(BumpKind::tent, 1.0, 1.0);
    spec.ensemble = make_ensemble(EnsembleKind::iid_uniform, bound);
    if (strength == 0.0) spec.interaction = InteractionSpec{};
    return spec;
}

HamiltonianSpec split_spec() {
    // Disjoint factors so single-factor shifts stay clean.
    HamiltonianSpec spec = pair_spec(0.0);
    spec.box = make_box(make_cube({2.0}, 2.0), make_cube({12.0}, 2.0));
    return spec;
}

EngineOptions route_of(SpectrumRoute r) {
    EngineOptions eng;
    eng.route = r;
    return eng;
}

}  // namespace

TEST_CASE("factored route matches the dense route on interaction-free pairs") {
    const HamiltonianSpec spec = pair_spec(0.0);
    const auto sites = required_sites(spec);
    const double cutoff = 4.0;
    for (std::uint64_t trial = 0; trial < 4; ++trial) {
        const FieldRealization f = sample_amplitudes(spec.ensemble, sites, 11, trial);
        const Spectrum sep = spectrum_below(spec, f, cutoff, route_of(SpectrumRoute::separable));
        const Spectrum den = spectrum_below(spec, f, cutoff, route_of(SpectrumRoute::general_dense));
        REQUIRE(sep.complete);
        REQUIRE(den.complete);
        REQUIRE(sep.values.size() == den.values.size());
        for (std::size_t i = 0; i < sep.values.size(); ++i) {
            CHECK(sep.values[i] == doctest::Approx(den.values[i]).epsilon(1e-11));
        }

        const Spectrum lo_sep = lowest_k(spec, f, 6, route_of(SpectrumRoute::separable));
        const Spectrum lo_den = lowest_k(spec, f, 6, route_of(SpectrumRoute::general_dense));
        REQUIRE(lo_sep.values.size() == 6);
        REQUIRE(lo_den.values.size() == 6);
        for (int i = 0; i < 6; ++i) {
            CHECK(lo_sep.values[i] == doctest::Approx(lo_den.values[i]).epsilon(1e-11));
        }
    }

    // The automatic route picks the factored path for these specs and the
    // iterative path still agrees.
    const FieldRealization f = sample_amplitudes(spec.ensemble, sites, 11, 9);
    const Spectrum a = spectrum_below(spec, f, cutoff);
    const Spectrum b = spectrum_below(spec, f, cutoff, route_of(SpectrumRoute::general_iterative));
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-8));
    }
}

TEST_CASE("factored route refuses interacting pairs") {
    const HamiltonianSpec spec = pair_spec(-1.0);
    const FieldRealization f = sample_amplitudes(spec.ensemble, required_sites(spec), 1, 0);
    CHECK_THROWS_AS(spectrum_below(spec, f, 4.0, route_of(SpectrumRoute::separable)),
                    PreconditionError);
    // The automatic route handles the same spec without complaint.
    const Spectrum s = spectrum_below(spec, f, 4.0);
    CHECK(s.complete);
}

TEST_CASE("window probability reproduces the matching sweep row") {
    WegnerOneConfig cfg;
    cfg.spec = pair_spec(0.0);
    cfg.trials = 400;
    cfg.master_seed = 21;

    const auto grounds = ground_state_samples(cfg.spec, 200, 77, 1);
    REQUIRE(grounds.size() == 200);
    cfg.energy = quantile_sorted(grounds, 0.5);
    cfg.epsilon = 0.02;

    const ProbabilityEstimate single = one_volume_probability(cfg);
    const SweepResult sweep = one_volume_sweep(cfg, {0.04, 0.02});
    REQUIRE(sweep.rows.size() == 2);

    // Same seeds, same trials, same cutoff: the finer row is the single run.
    CHECK(sweep.rows[1].hits == single.hits);
    CHECK(sweep.rows[1].excluded == single.excluded);
    CHECK(sweep.rows[1].estimate == doctest::Approx(single.estimate).epsilon(1e-15));
    CHECK(sweep.rows[1].ci_hi == doctest::Approx(single.ci_hi).epsilon(1e-15));
    CHECK(sweep.rows[1].bound_rhs == doctest::Approx(single.bound_rhs).epsilon(1e-15));

    // Halving the window can only lose hits.
    CHECK(sweep.monotone_hits);
    CHECK(sweep.rows[0].hits >= sweep.rows[1].hits);
    CHECK(sweep.trials == 400);
    CHECK(sweep.valid);
    CHECK(sweep.hypothesis_ok);

    // There is real signal at the median of the ground distribution.
    CHECK(sweep.rows[0].hits > 0);
}

TEST_CASE("window bound arithmetic is the documented product") {
    WegnerOneConfig cfg;
    cfg.spec = pair_spec(0.0);
    cfg.trials = 10;
    cfg.energy = 1.3;
    cfg.epsilon = 0.04;

    // Factors [0,4] carry 5 lattice sites each: 5 * 5 * min = 125 copies.
    const ProbabilityEstimate p = one_volume_probability(cfg);
    const double expected = std::pow(1.0 + 1.3, 0.5) * 125.0 * 0.04;
    CHECK(p.bound_rhs == doctest::Approx(expected).epsilon(1e-13));

    // Explicit exponent override.
    cfg.energy_exponent = 2.0;
    const ProbabilityEstimate q = one_volume_probability(cfg);
    CHECK(q.bound_rhs == doctest::Approx(std::pow(2.3, 2.0) * 125.0 * 0.04).epsilon(1e-13));
}

TEST_CASE("zero width windows almost surely miss") {
    WegnerOneConfig cfg;
    cfg.spec = pair_spec(0.0);
    cfg.trials = 500;
    cfg.energy = 1.4;
    cfg.epsilon = 0.0;
    const ProbabilityEstimate p = one_volume_probability(cfg);
    CHECK(p.hits == 0);
    CHECK(p.excluded == 0);
    CHECK(p.valid);
    CHECK(p.bound_rhs == 0.0);
    CHECK(!p.hypothesis_ok);  // zero width is outside the sweep hypothesis
}

TEST_CASE("zero disorder turns the estimate into an indicator") {
    WegnerOneConfig cfg;
    cfg.spec = pair_spec(0.0, 0.0);
    cfg.trials = 60;
    cfg.epsilon = 0.02;

    const auto sites = required_sites(cfg.spec);
    const FieldRealization f = sample_amplitudes(cfg.spec.ensemble, sites, 1, 0);
    const double ground = lowest_k(cfg.spec, f, 1).values.at(0);

    cfg.energy = ground - 0.01;  // window straddles the deterministic level
    const ProbabilityEstimate hit = one_volume_probability(cfg);
    CHECK(hit.estimate == 1.0);
    CHECK(hit.hits == 60);
    CHECK(!hit.hypothesis_ok);  // flat ensemble has no density bound

    cfg.energy = ground - 1.0;
    cfg.epsilon = 0.5;  // still ends below the level
    const ProbabilityEstimate miss = one_volume_probability(cfg);
    CHECK(miss.estimate == 0.0);
    CHECK(miss.hits == 0);
}

TEST_CASE("sweeps demand halving window widths inside the unit interval") {
    WegnerOneConfig cfg;
    cfg.spec = pair_spec(0.0);
    cfg.trials = 10;
    cfg.energy = 1.0;
    CHECK_THROWS_AS(one_volume_sweep(cfg, {0.04, 0.03}), PreconditionError);
    CHECK_THROWS_AS(one_volume_sweep(cfg, {1.5, 0.75}), PreconditionError);
    CHECK_THROWS_AS(one_volume_sweep(cfg, {}), PreconditionError);
    CHECK_THROWS_AS(one_volume_sweep(cfg, {-0.1}), PreconditionError);
}

TEST_CASE("hypothesis flag reports covering failures") {
    WegnerOneConfig cfg;
    cfg.spec = pair_spec(0.0);
    cfg.spec.profile = make_profile(BumpKind::indicator, 0.4, 1.0);
    cfg.trials = 20;
    cfg.energy = 1.0;
    cfg.epsilon = 0.02;
    const ProbabilityEstimate p = one_volume_probability(cfg);
    CHECK(!p.hypothesis_ok);
}

TEST_CASE("two volume trials share one realization across both boxes") {
    WegnerTwoConfig cfg;
    cfg.spec = pair_spec(0.0);
    cfg.box2 = make_box(make_cube({102.0}, 2.0), make_cube({102.0}, 2.0));
    cfg.interval_lo = 1.2;
    cfg.interval_hi = 2.2;
    cfg.epsilon = 0.02;
    cfg.master_seed = 5;

    const TwoVolumeTrial t = two_volume_trial(cfg, 3);
    CHECK(t.field.master_seed == 5);
    CHECK(t.field.trial == 3);
    REQUIRE(!t.excluded);

    // The shared realization covers both assemblies.
    HamiltonianSpec spec2 = cfg.spec;
    spec2.box = cfg.box2;
    const DiscreteHamiltonian h1 = assemble(cfg.spec, t.field);
    const DiscreteHamiltonian h2 = assemble(spec2, t.field);
    CHECK(h1.provenance_trial == h2.provenance_trial);
    CHECK(h1.provenance_seed == h2.provenance_seed);

    // Restrictions stay inside the interval and the gap matches a direct scan.
    for (double v : t.first.values) {
        CHECK(v >= cfg.interval_lo);
        CHECK(v <= cfg.interval_hi);
    }
    double best = std::numeric_limits<double>::infinity();
    for (double x : t.first.values)
        for (double y : t.second.values) best = std::min(best, std::fabs(x - y));
    CHECK(t.distance == doctest::Approx(best));

    // An interval below the spectrum leaves both restrictions empty.
    WegnerTwoConfig low = cfg;
    low.interval_lo = -2.0;
    low.interval_hi = -1.0;
    const TwoVolumeTrial empty = two_volume_trial(low, 3);
    CHECK(empty.first.values.empty());
    CHECK(empty.second.values.empty());
    CHECK(std::isinf(empty.distance));
}

TEST_CASE("two volume estimates reproduce sweep rows and bound arithmetic") {
    WegnerTwoConfig cfg;
    cfg.spec = pair_spec(0.0);
    cfg.box2 = make_box(make_cube({102.0}, 2.0), make_cube({102.0}, 2.0));
    cfg.interval_lo = 1.2;
    cfg.interval_hi = 2.2;
    cfg.trials = 250;
    cfg.master_seed = 31;
    cfg.epsilon = 0.01;

    const ProbabilityEstimate single = two_volume_probability(cfg);
    const SweepResult sweep = two_volume_sweep(cfg, {0.02, 0.01});
    REQUIRE(sweep.rows.size() == 2);
    CHECK(sweep.rows[1].hits == single.hits);
    CHECK(sweep.rows[1].estimate == doctest::Approx(single.estimate).epsilon(1e-15));
    CHECK(sweep.monotone_hits);
    CHECK(sweep.valid);
    CHECK(sweep.hypothesis_ok);

    // 5^4 factor cardinalities times the largest, times nu(2 eps).
    const double expected = 625.0 * 5.0 * (2.0 * 0.01);
    CHECK(single.bound_rhs == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("two volume comparisons reject close or malformed boxes") {
    WegnerTwoConfig cfg;
    cfg.spec = pair_spec(0.0);
    cfg.box2 = make_box(make_cube({10.0}, 2.0), make_cube({10.0}, 2.0));
    cfg.trials = 10;
    CHECK_THROWS_AS(two_volume_probability(cfg), PreconditionError);

    cfg.box2 = make_box(make_cube({102.0}, 2.0), make_cube({102.0}, 2.0));
    cfg.interval_lo = 2.0;
    cfg.interval_hi = 1.0;
    CHECK_THROWS_AS(two_volume_probability(cfg), PreconditionError);
}

TEST_CASE("full support shifts move every level by the particle count times t") {
    const HamiltonianSpec spec = split_spec();
    const FieldRealization f = sample_amplitudes(spec.ensemble, required_sites(spec), 13, 2);
    const double t = 0.5;
    const DmCheckReport rep =
        dm_shift_check(spec, f, shift_sites(spec, ShiftSet::full_support), t, 5);
    REQUIRE(rep.deltas.size() == 5);
    CHECK(rep.min_delta == doctest::Approx(2.0 * t).epsilon(1e-9));
    CHECK(rep.max_delta == doctest::Approx(2.0 * t).epsilon(1e-9));

    // An interacting spec sees the same rigid move: the pair term does not
    // feel a constant potential shift.
    HamiltonianSpec inter = split_spec();
    inter.interaction = make_interaction(InteractionKind::square_well, -0.7, 1.0);
    const FieldRealization g = sample_amplitudes(inter.ensemble, required_sites(inter), 13, 2);
    const DmCheckReport rep2 =
        dm_shift_check(inter, g, shift_sites(inter, ShiftSet::full_support), t, 4);
    CHECK(rep2.min_delta == doctest::Approx(2.0 * t).epsilon(1e-9));
    CHECK(rep2.max_delta == doctest::Approx(2.0 * t).epsilon(1e-9));
}

TEST_CASE("single factor shifts move the spectrum by exactly t") {
    const HamiltonianSpec spec = split_spec();
    const FieldRealization f = sample_amplitudes(spec.ensemble, required_sites(spec), 29, 0);
    const double t = 0.375;
    for (ShiftSet set : {ShiftSet::projection_1, ShiftSet::projection_2}) {
        const DmCheckReport rep = dm_shift_check(spec, f, shift_sites(spec, set), t, 4);
        CHECK(rep.min_delta == doctest::Approx(t).epsilon(1e-9));
        CHECK(rep.max_delta == doctest::Approx(t).epsilon(1e-9));
    }
}

TEST_CASE("partial nonnegative shifts never lower an eigenvalue") {
    const HamiltonianSpec spec = pair_spec(0.0);
    for (std::uint64_t trial = 0; trial < 8; ++trial) {
        const FieldRealization f =
            sample_amplitudes(spec.ensemble, required_sites(spec), 41, trial);
        // A small random subset of the support.
        std::vector<Site> subset;
        Rng pick(99, trial, 0x7375620aULL);
        for (const Site& s : required_sites(spec))
            if (pick.uniform01() < 0.4) subset.push_back(s);
        if (subset.empty()) subset.push_back(required_sites(spec).front());
        const double t = 0.1 + 0.4 * pick.uniform01();
        const DmCheckReport rep = dm_shift_check(spec, f, subset, t, 6);
        CHECK(rep.min_delta >= -1e-10);
        CHECK(rep.max_delta <= 2.0 * t + 1e-9);
    }
}

TEST_CASE("shift check rejects bad arguments") {
    const HamiltonianSpec spec = pair_spec(0.0);
    const FieldRealization f = sample_amplitudes(spec.ensemble, required_sites(spec), 1, 0);
    CHECK_THROWS_AS(dm_shift_check(spec, f, required_sites(spec), -0.1, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(dm_shift_check(spec, f, required_sites(spec), 0.1, 0), PreconditionError);
    CHECK_THROWS_AS(shift_sites(spec, ShiftSet::custom), PreconditionError);
}

TEST_CASE("shift sweeps aggregate per trial minima") {
    DmShiftConfig cfg;
    cfg.spec = split_spec();
    cfg.set = ShiftSet::full_support;
    cfg.shift = 0.25;
    cfg.levels = 3;
    cfg.trials = 5;
    cfg.master_seed = 55;
    const DmShiftSummary sum = dm_shift_sweep(cfg);
    CHECK(sum.trials == 5);
    CHECK(sum.subset == "full_support");
    REQUIRE(sum.min_delta_per_trial.size() == 5);
    CHECK(sum.min_delta == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sum.max_delta == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("coordinate concentration bounds") {
    // Two coordinates, window [0.5, 0.6]: mass 0.36 - 0.25 under bound 0.2.
    ConcentrationConfig cfg;
    cfg.fn = ConcentrationFunction::coordinate_max;
    cfg.coords = 2;
    cfg.density = 1.0;
    cfg.window_lo = 0.5;
    cfg.epsilon = 0.1;
    const ConcentrationReport a = concentration_check(cfg);
    CHECK(a.has_exact);
    CHECK(a.exact_probability == doctest::Approx(0.11).epsilon(1e-12));
    CHECK(a.bound == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(a.holds);

    // One-coordinate sum saturates the bound exactly.
    ConcentrationConfig s;
    s.fn = ConcentrationFunction::coordinate_sum;
    s.coords = 1;
    s.window_lo = 0.3;
    s.epsilon = 0.05;
    const ConcentrationReport b = concentration_check(s);
    CHECK(b.has_exact);
    CHECK(b.exact_probability == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(b.bound == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(b.holds);

    // Zero width: zero mass against a zero bound.
    s.epsilon = 0.0;
    const ConcentrationReport c = concentration_check(s);
    CHECK(c.exact_probability == 0.0);
    CHECK(c.holds);

    // Nonunit density rescales both sides.
    ConcentrationConfig d;
    d.fn = ConcentrationFunction::coordinate_max;
    d.coords = 1;
    d.density = 2.0;
    d.window_lo = 0.2;
    d.epsilon = 0.1;
    const ConcentrationReport r = concentration_check(d);
    CHECK(r.exact_probability == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.bound == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.holds);
}

TEST_CASE("sampled concentration agrees with the closed form") {
    ConcentrationConfig cfg;
    cfg.fn = ConcentrationFunction::coordinate_max;
    cfg.coords = 2;
    cfg.window_lo = 0.5;
    cfg.epsilon = 0.1;
    cfg.trials = 20000;
    cfg.master_seed = 3;
    const ConcentrationReport rep = concentration_check(cfg);
    CHECK(rep.trials == 20000);
    CHECK(rep.ci_lo <= 0.11);
    CHECK(rep.ci_hi >= 0.11);
    CHECK(rep.estimate == doctest::Approx(0.11).epsilon(0.15));
}

TEST_CASE("statistics without a closed form need samples") {
    ConcentrationConfig cfg;
    cfg.fn = ConcentrationFunction::min_plus_mean;
    cfg.coords = 2;
    CHECK_THROWS_AS(concentration_check(cfg), PreconditionError);

    cfg.trials = 20000;
    const ConcentrationReport rep = concentration_check(cfg);
    CHECK(!rep.has_exact);
    CHECK(rep.holds);
    CHECK(rep.estimate > 0.005);
    CHECK(rep.estimate < 0.06);
}

TEST_CASE("ground state samples are sorted and reproducible") {
    const HamiltonianSpec spec = pair_spec(0.0);
    const auto a = ground_state_samples(spec, 50, 7, 1);
    const auto b = ground_state_samples(spec, 50, 7, 2);  // thread count is irrelevant
    REQUIRE(a.size() == 50);
    CHECK(a == b);
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] >= a[i - 1]);
    const auto c = ground_state_samples(spec, 50, 8, 1);
    CHECK(a != c);
}

TEST_CASE("trial runner is thread count invariant and propagates errors") {
    auto fn = [](long i) { return static_cast<double>(i * i % 101); };
    const auto one = run_trials<double>(300, 1, fn);
    const auto three = run_trials<double>(300, 3, fn);
    const auto eight = run_trials<double>(300, 8, fn);
    CHECK(one == three);
    CHECK(one == eight);

    CHECK(run_trials<double>(0, 4, fn).empty());
    // More threads than trials clamps cleanly.
    CHECK(run_trials<double>(3, 8, fn).size() == 3);

    auto bad = [](long i) -> double {
        if (i == 57) throw std::runtime_error("boom");
        return 0.0;
    };
    CHECK_THROWS_AS(run_trials<double>(100, 4, bad), std::runtime_error);
}
