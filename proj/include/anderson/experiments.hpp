#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "anderson/errors.hpp"
#include "anderson/geometry.hpp"
#include "anderson/operator.hpp"
#include "anderson/random_field.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

enum class SpectrumRoute { automatic, separable, general_dense, general_iterative };
std::string to_string(SpectrumRoute r);

struct EngineOptions {
    SpectrumRoute route = SpectrumRoute::automatic;
    SolverOptions solver;
};

// Spectrum of the described operator under one realization, everything at or
// below cutoff. Interaction-free pair problems split into factor problems
// whose eigenvalue sums are enumerated exactly.
Spectrum spectrum_below(const HamiltonianSpec& spec, const FieldRealization& field, double cutoff,
                        const EngineOptions& eng = {});
Spectrum lowest_k(const HamiltonianSpec& spec, const FieldRealization& field, int k,
                  const EngineOptions& eng = {});

// Runs fn(trial) for every index in [0, trials) and returns the results by
// slot, so the aggregate never depends on the thread count. fn must be safe
// to call concurrently on distinct indices.
template <typename R, typename F>
std::vector<R> run_trials(long trials, int threads, F&& fn) {
    if (trials < 0) throw PreconditionError("trial count must be nonnegative");
    std::vector<R> out(static_cast<std::size_t>(trials));
    int nt = threads < 1 ? 1 : (threads > 64 ? 64 : threads);
    if (nt > trials && trials > 0) nt = static_cast<int>(trials);
    if (nt <= 1) {
        for (long i = 0; i < trials; ++i) out[i] = fn(i);
        return out;
    }
    const long chunk = (trials + nt - 1) / nt;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    for (int w = 0; w < nt; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, &out, &errors, w, lo, hi] {
            try {
                for (long i = lo; i < hi; ++i) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

struct ProbabilityEstimate {
    long hits = 0;
    long trials = 0;    // total requested
    long excluded = 0;  // solver failures and boundary-ambiguous draws
    double estimate = 0.0;
    double ci_lo = 0.0;  // exact two-sided 95% binomial interval
    double ci_hi = 1.0;
    double bound_rhs = 0.0;   // product bound right-hand side with constant 1
    double implied_c = 0.0;   // upper CI over bound_rhs
    bool hypothesis_ok = true;
    bool valid = false;  // exclusions stayed within 1%
};

struct WegnerOneConfig {
    HamiltonianSpec spec;
    double energy = 0.0;  // window [energy, energy + epsilon]
    double epsilon = 0.01;
    long trials = 1000;
    std::uint64_t master_seed = 1;
    double margin_scale = 2.0;      // cutoff slack in units of the potential sup-norm
    double energy_exponent = -1.0;  // exponent on (1 + max(energy, 0)); -1 means dim/2
    int threads = 1;
    EngineOptions engine;
};

// Fraction of realizations whose spectrum meets the closed window, against
// the product bound (energy factor) x (box cardinality) x (smallest factor
// cardinality) x nu(epsilon).
ProbabilityEstimate one_volume_probability(const WegnerOneConfig& cfg);

struct WegnerTwoConfig {
    HamiltonianSpec spec;  // first box plus the shared single-particle model
    TwoParticleBox box2;
    double interval_lo = 0.0;
    double interval_hi = 1.0;
    double epsilon = 0.01;
    long trials = 1000;
    std::uint64_t master_seed = 1;
    double margin_scale = 2.0;
    double distance_multiplier = 8.0;
    int threads = 1;
    EngineOptions engine;
};

// Fraction of realizations where the two spectra, restricted to the closed
// interval, come within epsilon of each other. Both operators are built from
// one shared realization per trial. Requires the boxes to pass the distance
// test; bound uses nu(2 epsilon) and the largest factor cardinality.
ProbabilityEstimate two_volume_probability(const WegnerTwoConfig& cfg);

struct TwoVolumeTrial {
    Spectrum first;   // restricted to the interval
    Spectrum second;
    double distance = 0.0;  // +infinity when either restriction is empty
    bool excluded = false;
    FieldRealization field;  // the shared realization driving both operators
};

TwoVolumeTrial two_volume_trial(const WegnerTwoConfig& cfg, long trial_index);

struct SweepRow {
    double epsilon = 0.0;
    long hits = 0;
    long excluded = 0;
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    double bound_rhs = 0.0;
    double fitted_bound = 0.0;  // fitted constant times bound_rhs
    double implied_c = 0.0;
    bool dominated = false;  // upper CI under the fitted bound
};

struct SweepResult {
    std::vector<SweepRow> rows;  // epsilon descending
    long trials = 0;
    double fitted_c = 0.0;      // calibrated on the coarsest row only
    double loglog_slope = 0.0;  // NaN when fewer than two positive rows
    bool monotone_hits = true;
    bool all_dominated = false;
    bool hypothesis_ok = true;
    bool valid = false;
};

// Shared-seed dyadic sweep: every trial's spectrum is computed once and the
// window test is replayed per epsilon, so hit counts are nested by
// construction and each row reproduces the single-epsilon estimator exactly.
// Epsilons must lie in (0,1) and halve from entry to entry.
SweepResult one_volume_sweep(const WegnerOneConfig& base, const std::vector<double>& epsilons);
SweepResult two_volume_sweep(const WegnerTwoConfig& base, const std::vector<double>& epsilons);

enum class ShiftSet { full_support, projection_1, projection_2, custom };
std::string to_string(ShiftSet s);

// Lattice sites whose amplitudes a shift targets: the reach-enlarged box
// support, or one particle's factor only.
std::vector<Site> shift_sites(const HamiltonianSpec& spec, ShiftSet set);

struct DmCheckReport {
    double shift = 0.0;
    std::string subset;
    std::vector<double> deltas;  // per eigenvalue level, shifted minus base
    double min_delta = 0.0;
    double max_delta = 0.0;
};

// Raises the amplitudes on the subset by t and reports how the lowest
// eigenvalues moved. Shifting every supporting site of a partition-of-unity
// profile moves the whole potential by t per particle.
DmCheckReport dm_shift_check(const HamiltonianSpec& spec, const FieldRealization& field,
                             const std::vector<Site>& subset, double t, int levels,
                             const EngineOptions& eng = {});

struct DmShiftConfig {
    HamiltonianSpec spec;
    ShiftSet set = ShiftSet::full_support;
    std::vector<Site> custom_sites;
    double shift = 0.5;
    int levels = 8;
    long trials = 1;
    std::uint64_t master_seed = 1;
    int threads = 1;
    EngineOptions engine;
};

struct DmShiftSummary {
    double min_delta = 0.0;
    double max_delta = 0.0;
    std::vector<double> min_delta_per_trial;
    long trials = 0;
    std::string subset;
};

DmShiftSummary dm_shift_sweep(const DmShiftConfig& cfg);

enum class ConcentrationFunction { coordinate_max, coordinate_sum, min_plus_mean };
std::string to_string(ConcentrationFunction f);

struct ConcentrationConfig {
    ConcentrationFunction fn = ConcentrationFunction::coordinate_max;
    int coords = 4;
    double density = 1.0;  // coordinates are uniform on [0, 1/density]
    double window_lo = 0.25;
    double epsilon = 0.05;
    long trials = 0;  // 0 skips sampling; exact forms are reported regardless
    std::uint64_t master_seed = 1;
    int threads = 1;
};

struct ConcentrationReport {
    double bound = 0.0;  // coords x density x epsilon
    bool has_exact = false;
    double exact_probability = 0.0;
    long hits = 0;
    long trials = 0;
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    bool holds = false;
};

// Probability that the statistic of iid coordinates lands in the window,
// against the linear cardinality bound.
ConcentrationReport concentration_check(const ConcentrationConfig& cfg);

// Sorted ground-state samples, for placing windows and intervals.
std::vector<double> ground_state_samples(const HamiltonianSpec& spec, long trials,
                                         std::uint64_t master_seed, int threads,
                                         const EngineOptions& eng = {});

}  // namespace anderson
