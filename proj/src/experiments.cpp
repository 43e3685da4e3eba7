#include "anderson/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "anderson/rng.hpp"
#include "anderson/stats.hpp"

namespace anderson {

namespace {

constexpr std::uint64_t kConcentrationTag = 0x636f6e63ull;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool separable_ok(const HamiltonianSpec& s) {
    return s.particles == 2 &&
           (s.interaction.kind == InteractionKind::zero || s.interaction.strength == 0.0);
}

SolverOptions routed_solver(const EngineOptions& eng) {
    SolverOptions opt = eng.solver;
    if (eng.route == SpectrumRoute::general_dense)
        opt.dense_cutoff = std::numeric_limits<long>::max();
    if (eng.route == SpectrumRoute::general_iterative) opt.dense_cutoff = 0;
    return opt;
}

bool want_separable(const HamiltonianSpec& spec, const EngineOptions& eng) {
    if (eng.route == SpectrumRoute::separable) {
        if (!separable_ok(spec))
            throw PreconditionError("factored route needs two particles and no interaction");
        return true;
    }
    return eng.route == SpectrumRoute::automatic && separable_ok(spec);
}

bool dense_reachable(const DiscreteHamiltonian& h, const SolverOptions& opt) {
    return h.grid.axes() == 1 || h.dim() <= opt.dense_cutoff;
}

// Ascending pair sums lam_i + mu_j at or below cutoff, residuals added.
Spectrum pair_sums_below(const Spectrum& s1, const Spectrum& s2, double cutoff) {
    Spectrum out;
    out.converged = s1.converged && s2.converged;
    out.complete = s1.complete && s2.complete;
    std::vector<std::pair<double, double>> acc;
    for (std::size_t i = 0; i < s1.values.size(); ++i) {
        const double rem = cutoff - s1.values[i];
        if (!s2.values.empty() && s2.values.front() > rem) break;
        for (std::size_t j = 0; j < s2.values.size(); ++j) {
            if (s2.values[j] > rem) break;
            acc.emplace_back(s1.values[i] + s2.values[j], s1.residuals[i] + s2.residuals[j]);
        }
    }
    std::sort(acc.begin(), acc.end());
    out.values.reserve(acc.size());
    out.residuals.reserve(acc.size());
    for (const auto& [v, r] : acc) {
        out.values.push_back(v);
        out.residuals.push_back(r);
    }
    return out;
}

Spectrum full_dense(const DiscreteHamiltonian& h) {
    Spectrum s;
    s.values = dense_spectrum(h);
    s.residuals.assign(s.values.size(), 0.0);
    s.converged = true;
    s.complete = true;
    return s;
}

Spectrum factor_below(const DiscreteHamiltonian& h, double cutoff, const SolverOptions& opt,
                      double partner_ground) {
    if (dense_reachable(h, opt)) {
        Spectrum s = full_dense(h);
        while (!s.values.empty() && s.values.back() > cutoff - partner_ground) {
            s.values.pop_back();
            s.residuals.pop_back();
        }
        return s;
    }
    return eigenvalues_below(h, cutoff - partner_ground, opt);
}

Spectrum separable_below(const HamiltonianSpec& spec, const FieldRealization& field, double cutoff,
                         const SolverOptions& opt) {
    const auto h1 = assemble(spec.box.factor1, spec.spacing, spec.mass1, spec.profile, field);
    const auto h2 = assemble(spec.box.factor2, spec.spacing, spec.mass2, spec.profile, field);
    if (dense_reachable(h1, opt) && dense_reachable(h2, opt)) {
        // One solve per factor covers both the ground levels and the lists.
        Spectrum s1 = full_dense(h1);
        Spectrum s2 = full_dense(h2);
        return pair_sums_below(s1, s2, cutoff);
    }
    const double g1 = lowest_eigenvalues(h1, 1, opt).values.at(0);
    const double g2 = lowest_eigenvalues(h2, 1, opt).values.at(0);
    Spectrum s1 = factor_below(h1, cutoff, opt, g2);
    Spectrum s2 = factor_below(h2, cutoff, opt, g1);
    return pair_sums_below(s1, s2, cutoff);
}

Spectrum separable_lowest(const HamiltonianSpec& spec, const FieldRealization& field, int k,
                          const SolverOptions& opt) {
    const auto h1 = assemble(spec.box.factor1, spec.spacing, spec.mass1, spec.profile, field);
    const auto h2 = assemble(spec.box.factor2, spec.spacing, spec.mass2, spec.profile, field);
    const int k1 = static_cast<int>(std::min<long>(k, h1.dim()));
    const int k2 = static_cast<int>(std::min<long>(k, h2.dim()));
    Spectrum s1 = lowest_eigenvalues(h1, k1, opt);
    Spectrum s2 = lowest_eigenvalues(h2, k2, opt);
    // The k smallest sums live inside the top-k by top-k block.
    std::vector<std::pair<double, double>> acc;
    acc.reserve(s1.values.size() * s2.values.size());
    for (std::size_t i = 0; i < s1.values.size(); ++i)
        for (std::size_t j = 0; j < s2.values.size(); ++j)
            acc.emplace_back(s1.values[i] + s2.values[j], s1.residuals[i] + s2.residuals[j]);
    std::sort(acc.begin(), acc.end());
    const std::size_t keep = std::min<std::size_t>(acc.size(), static_cast<std::size_t>(k));
    Spectrum out;
    out.converged = s1.converged && s2.converged;
    out.complete = s1.complete && s2.complete;
    for (std::size_t i = 0; i < keep; ++i) {
        out.values.push_back(acc[i].first);
        out.residuals.push_back(acc[i].second);
    }
    return out;
}

}  // namespace

std::string to_string(SpectrumRoute r) {
    switch (r) {
        case SpectrumRoute::automatic: return "automatic";
        case SpectrumRoute::separable: return "separable";
        case SpectrumRoute::general_dense: return "general_dense";
        case SpectrumRoute::general_iterative: return "general_iterative";
    }
    return "?";
}

Spectrum spectrum_below(const HamiltonianSpec& spec, const FieldRealization& field, double cutoff,
                        const EngineOptions& eng) {
    const SolverOptions opt = routed_solver(eng);
    if (want_separable(spec, eng)) return separable_below(spec, field, cutoff, opt);
    return eigenvalues_below(assemble(spec, field), cutoff, opt);
}

Spectrum lowest_k(const HamiltonianSpec& spec, const FieldRealization& field, int k,
                  const EngineOptions& eng) {
    const SolverOptions opt = routed_solver(eng);
    if (want_separable(spec, eng)) return separable_lowest(spec, field, k, opt);
    return lowest_eigenvalues(assemble(spec, field), k, opt);
}

namespace {

struct TrialBits {
    std::uint32_t mask = 0;
    bool excluded = false;
};

void require_dyadic(const std::vector<double>& eps) {
    if (eps.empty()) throw PreconditionError("sweep needs at least one epsilon");
    for (double e : eps)
        if (!(e > 0.0) || !(e < 1.0))
            throw PreconditionError("sweep epsilons must lie in (0, 1)");
    for (std::size_t i = 1; i < eps.size(); ++i) {
        if (std::abs(eps[i] - 0.5 * eps[i - 1]) > 1e-12 * eps[i - 1])
            throw PreconditionError("sweep epsilons must halve from entry to entry");
    }
    if (eps.size() > 32) throw PreconditionError("sweep limited to 32 epsilons");
}

bool model_hypotheses_hold(const HamiltonianSpec& spec) {
    if (!std::isfinite(spec.ensemble.density_bound())) return false;
    if (!verify_covering(spec.profile, spec.box.factor1).holds) return false;
    if (spec.particles == 2 && !verify_covering(spec.profile, spec.box.factor2).holds)
        return false;
    return true;
}

// Assemble the per-epsilon rows out of shared trial bit masks.
SweepResult reduce_rows(const std::vector<TrialBits>& records, const std::vector<double>& eps,
                        const std::vector<double>& raw_bounds, long trials) {
    SweepResult res;
    res.trials = trials;
    long excluded = 0;
    std::vector<long> hits(eps.size(), 0);
    for (const TrialBits& r : records) {
        if (r.excluded) {
            ++excluded;
            continue;
        }
        for (std::size_t k = 0; k < eps.size(); ++k)
            if (r.mask & (1u << k)) ++hits[k];
    }
    const long included = trials - excluded;
    res.valid = (included > 0) && (excluded * 100 <= trials);
    for (std::size_t k = 0; k < eps.size(); ++k) {
        SweepRow row;
        row.epsilon = eps[k];
        row.hits = hits[k];
        row.excluded = excluded;
        const CpInterval ci = clopper_pearson(hits[k], std::max<long>(included, 1));
        row.estimate = included > 0 ? static_cast<double>(hits[k]) / included : 0.0;
        row.ci_lo = ci.lo;
        row.ci_hi = ci.hi;
        row.bound_rhs = raw_bounds[k];
        row.implied_c = row.bound_rhs > 0.0 ? row.ci_hi / row.bound_rhs : kInf;
        res.rows.push_back(row);
        if (k > 0 && hits[k] > hits[k - 1]) res.monotone_hits = false;
    }
    // Constant calibrated on the coarsest row with a three-halfwidth cushion,
    // then required to dominate every finer row without refitting.
    const SweepRow& head = res.rows.front();
    res.fitted_c = head.bound_rhs > 0.0
                       ? (head.estimate + 3.0 * (head.ci_hi - head.estimate)) / head.bound_rhs
                       : kInf;
    res.all_dominated = true;
    for (SweepRow& row : res.rows) {
        row.fitted_bound = res.fitted_c * row.bound_rhs;
        row.dominated = row.ci_hi <= row.fitted_bound * (1.0 + 1e-12);
        if (!row.dominated) res.all_dominated = false;
    }
    std::vector<double> lx, ly;
    for (const SweepRow& row : res.rows)
        if (row.estimate > 0.0) {
            lx.push_back(std::log(row.epsilon));
            ly.push_back(std::log(row.estimate));
        }
    res.loglog_slope = lx.size() >= 2 ? regression_slope(lx, ly)
                                      : std::numeric_limits<double>::quiet_NaN();
    return res;
}

SweepResult one_volume_core(const WegnerOneConfig& cfg, const std::vector<double>& eps) {
    if (cfg.trials <= 0) throw PreconditionError("need a positive trial count");
    const HamiltonianSpec& spec = cfg.spec;
    const auto sites = required_sites(spec);
    const double exponent = cfg.energy_exponent < 0.0 ? 0.5 * spec.dim() : cfg.energy_exponent;
    const double energy_factor = std::pow(1.0 + std::max(cfg.energy, 0.0), exponent);
    const long lat1 = lattice_count(spec.box.factor1);
    const long lat2 = spec.particles == 2 ? lattice_count(spec.box.factor2) : 1;
    const double volume_factor =
        static_cast<double>(lat1) * static_cast<double>(lat2) *
        static_cast<double>(spec.particles == 2 ? std::min(lat1, lat2) : lat1);
    std::vector<double> raw_bounds;
    for (double e : eps)
        raw_bounds.push_back(energy_factor * volume_factor * nu_ceiling(spec.ensemble, e));

    const double cutoff = cfg.energy + 1.0 + cfg.margin_scale * sup_norm_budget(spec);
    const double eps_top = *std::max_element(eps.begin(), eps.end());
    if (cfg.energy + eps_top > cutoff)
        throw PreconditionError("window exceeds the spectrum cutoff; raise margin_scale");

    auto records = run_trials<TrialBits>(cfg.trials, cfg.threads, [&](long trial) {
        TrialBits r;
        try {
            const auto field = sample_amplitudes(spec.ensemble, sites, cfg.master_seed,
                                                 static_cast<std::uint64_t>(trial));
            const Spectrum s = spectrum_below(spec, field, cutoff, cfg.engine);
            if (!s.converged || !s.complete) {
                r.excluded = true;
                return r;
            }
            for (std::size_t k = 0; k < eps.size(); ++k) {
                const IntervalCount c = count_in_interval(s, cfg.energy, cfg.energy + eps[k]);
                if (c.boundary_uncertain) {
                    r.excluded = true;
                    return r;
                }
                if (c.count > 0) r.mask |= (1u << k);
            }
        } catch (const std::runtime_error&) {
            r.excluded = true;
        }
        return r;
    });

    SweepResult res = reduce_rows(records, eps, raw_bounds, cfg.trials);
    res.hypothesis_ok = model_hypotheses_hold(spec);
    for (double e : eps)
        if (!(e > 0.0) || !(e < 1.0)) res.hypothesis_ok = false;
    return res;
}

ProbabilityEstimate row_to_estimate(const SweepResult& sweep) {
    const SweepRow& row = sweep.rows.front();
    ProbabilityEstimate p;
    p.hits = row.hits;
    p.trials = sweep.trials;
    p.excluded = row.excluded;
    p.estimate = row.estimate;
    p.ci_lo = row.ci_lo;
    p.ci_hi = row.ci_hi;
    p.bound_rhs = row.bound_rhs;
    p.implied_c = row.implied_c;
    p.hypothesis_ok = sweep.hypothesis_ok;
    p.valid = sweep.valid;
    return p;
}

}  // namespace

ProbabilityEstimate one_volume_probability(const WegnerOneConfig& cfg) {
    if (!(cfg.epsilon >= 0.0)) throw PreconditionError("window width must be nonnegative");
    return row_to_estimate(one_volume_core(cfg, {cfg.epsilon}));
}

SweepResult one_volume_sweep(const WegnerOneConfig& base, const std::vector<double>& epsilons) {
    require_dyadic(epsilons);
    return one_volume_core(base, epsilons);
}

namespace {

// Smallest gap between two ascending lists; +infinity when either is empty.
double min_gap(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return kInf;
    double best = kInf;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        best = std::min(best, std::abs(a[i] - b[j]));
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
    }
    return best;
}

Spectrum restrict_to(const Spectrum& s, double lo, double hi, bool* uncertain) {
    Spectrum out;
    out.converged = s.converged;
    out.complete = s.complete;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double v = s.values[i];
        const double r = i < s.residuals.size() ? s.residuals[i] : 0.0;
        if (std::abs(v - lo) <= r || std::abs(v - hi) <= r) *uncertain = true;
        if (v >= lo && v <= hi) {
            out.values.push_back(v);
            out.residuals.push_back(r);
        }
    }
    return out;
}

struct TwoVolumeSetup {
    HamiltonianSpec spec2;
    std::vector<Site> shared_sites;
    double cutoff = 0.0;
};

TwoVolumeSetup two_volume_setup(const WegnerTwoConfig& cfg) {
    if (!(cfg.interval_lo <= cfg.interval_hi))
        throw PreconditionError("interval endpoints out of order");
    if (!is_sufficiently_distant(cfg.spec.box, cfg.box2, cfg.spec.profile.range,
                                 cfg.distance_multiplier))
        throw PreconditionError("boxes fail the distance test for a shared-field comparison");
    TwoVolumeSetup s;
    s.spec2 = cfg.spec;
    s.spec2.box = cfg.box2;
    auto sites = required_sites(cfg.spec);
    auto more = required_sites(s.spec2);
    sites.insert(sites.end(), more.begin(), more.end());
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    s.shared_sites = std::move(sites);
    s.cutoff = cfg.interval_hi + 1.0 + cfg.margin_scale * sup_norm_budget(cfg.spec);
    return s;
}

TwoVolumeTrial two_volume_trial_impl(const WegnerTwoConfig& cfg, const TwoVolumeSetup& setup,
                                     long trial) {
    TwoVolumeTrial out;
    out.field = sample_amplitudes(cfg.spec.ensemble, setup.shared_sites, cfg.master_seed,
                                  static_cast<std::uint64_t>(trial));
    const Spectrum s1 = spectrum_below(cfg.spec, out.field, setup.cutoff, cfg.engine);
    const Spectrum s2 = spectrum_below(setup.spec2, out.field, setup.cutoff, cfg.engine);
    if (!s1.converged || !s1.complete || !s2.converged || !s2.complete) {
        out.excluded = true;
        return out;
    }
    bool uncertain = false;
    out.first = restrict_to(s1, cfg.interval_lo, cfg.interval_hi, &uncertain);
    out.second = restrict_to(s2, cfg.interval_lo, cfg.interval_hi, &uncertain);
    out.excluded = uncertain;
    out.distance = min_gap(out.first.values, out.second.values);
    return out;
}

SweepResult two_volume_core(const WegnerTwoConfig& cfg, const std::vector<double>& eps) {
    if (cfg.trials <= 0) throw PreconditionError("need a positive trial count");
    const TwoVolumeSetup setup = two_volume_setup(cfg);
    const long la1 = lattice_count(cfg.spec.box.factor1);
    const long la2 = lattice_count(cfg.spec.box.factor2);
    const long lb1 = lattice_count(cfg.box2.factor1);
    const long lb2 = lattice_count(cfg.box2.factor2);
    const double volume_factor = static_cast<double>(la1) * static_cast<double>(la2) *
                                 static_cast<double>(lb1) * static_cast<double>(lb2) *
                                 static_cast<double>(std::max({la1, la2, lb1, lb2}));
    std::vector<double> raw_bounds;
    for (double e : eps)
        raw_bounds.push_back(volume_factor * nu_ceiling(cfg.spec.ensemble, 2.0 * e));

    auto records = run_trials<TrialBits>(cfg.trials, cfg.threads, [&](long trial) {
        TrialBits r;
        try {
            const TwoVolumeTrial t = two_volume_trial_impl(cfg, setup, trial);
            if (t.excluded) {
                r.excluded = true;
                return r;
            }
            for (std::size_t k = 0; k < eps.size(); ++k)
                if (t.distance <= eps[k]) r.mask |= (1u << k);
        } catch (const std::runtime_error&) {
            r.excluded = true;
        }
        return r;
    });

    SweepResult res = reduce_rows(records, eps, raw_bounds, cfg.trials);
    res.hypothesis_ok = model_hypotheses_hold(cfg.spec);
    HamiltonianSpec probe = cfg.spec;
    probe.box = cfg.box2;
    res.hypothesis_ok = res.hypothesis_ok && model_hypotheses_hold(probe);
    for (double e : eps)
        if (!(e > 0.0) || !(e < 1.0)) res.hypothesis_ok = false;
    return res;
}

}  // namespace

ProbabilityEstimate two_volume_probability(const WegnerTwoConfig& cfg) {
    if (!(cfg.epsilon >= 0.0)) throw PreconditionError("window width must be nonnegative");
    return row_to_estimate(two_volume_core(cfg, {cfg.epsilon}));
}

SweepResult two_volume_sweep(const WegnerTwoConfig& base, const std::vector<double>& epsilons) {
    require_dyadic(epsilons);
    return two_volume_core(base, epsilons);
}

TwoVolumeTrial two_volume_trial(const WegnerTwoConfig& cfg, long trial_index) {
    return two_volume_trial_impl(cfg, two_volume_setup(cfg), trial_index);
}

std::string to_string(ShiftSet s) {
    switch (s) {
        case ShiftSet::full_support: return "full_support";
        case ShiftSet::projection_1: return "projection_1";
        case ShiftSet::projection_2: return "projection_2";
        case ShiftSet::custom: return "custom";
    }
    return "?";
}

std::vector<Site> shift_sites(const HamiltonianSpec& spec, ShiftSet set) {
    switch (set) {
        case ShiftSet::full_support: return required_sites(spec);
        case ShiftSet::projection_1: return required_sites(spec.box.factor1, spec.profile.range);
        case ShiftSet::projection_2: return required_sites(spec.box.factor2, spec.profile.range);
        case ShiftSet::custom: break;
    }
    throw PreconditionError("custom shift needs an explicit site list");
}

DmCheckReport dm_shift_check(const HamiltonianSpec& spec, const FieldRealization& field,
                             const std::vector<Site>& subset, double t, int levels,
                             const EngineOptions& eng) {
    if (t < 0.0) throw std::invalid_argument("shift must be nonnegative");
    if (levels < 1) throw PreconditionError("need at least one eigenvalue level");
    const Spectrum base = lowest_k(spec, field, levels, eng);
    const Spectrum moved = lowest_k(spec, with_shift(field, t, subset), levels, eng);
    if (!base.converged || !moved.converged)
        throw std::runtime_error("eigensolver did not converge during the shift check");
    DmCheckReport rep;
    rep.shift = t;
    rep.subset = "custom";
    const std::size_t n = std::min(base.values.size(), moved.values.size());
    rep.min_delta = kInf;
    rep.max_delta = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = moved.values[i] - base.values[i];
        rep.deltas.push_back(d);
        rep.min_delta = std::min(rep.min_delta, d);
        rep.max_delta = std::max(rep.max_delta, d);
    }
    return rep;
}

DmShiftSummary dm_shift_sweep(const DmShiftConfig& cfg) {
    if (cfg.trials <= 0) throw PreconditionError("need a positive trial count");
    const std::vector<Site> subset =
        cfg.set == ShiftSet::custom ? cfg.custom_sites : shift_sites(cfg.spec, cfg.set);
    if (subset.empty()) throw PreconditionError("shift site set is empty");
    const auto sites = required_sites(cfg.spec);
    auto mins = run_trials<std::pair<double, double>>(cfg.trials, cfg.threads, [&](long trial) {
        const auto field = sample_amplitudes(cfg.spec.ensemble, sites, cfg.master_seed,
                                             static_cast<std::uint64_t>(trial));
        const DmCheckReport rep =
            dm_shift_check(cfg.spec, field, subset, cfg.shift, cfg.levels, cfg.engine);
        return std::make_pair(rep.min_delta, rep.max_delta);
    });
    DmShiftSummary sum;
    sum.trials = cfg.trials;
    sum.subset = to_string(cfg.set);
    sum.min_delta = kInf;
    sum.max_delta = -kInf;
    for (const auto& [lo, hi] : mins) {
        sum.min_delta_per_trial.push_back(lo);
        sum.min_delta = std::min(sum.min_delta, lo);
        sum.max_delta = std::max(sum.max_delta, hi);
    }
    return sum;
}

std::string to_string(ConcentrationFunction f) {
    switch (f) {
        case ConcentrationFunction::coordinate_max: return "coordinate_max";
        case ConcentrationFunction::coordinate_sum: return "coordinate_sum";
        case ConcentrationFunction::min_plus_mean: return "min_plus_mean";
    }
    return "?";
}

namespace {

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

double statistic(ConcentrationFunction fn, const std::vector<double>& v) {
    switch (fn) {
        case ConcentrationFunction::coordinate_max:
            return *std::max_element(v.begin(), v.end());
        case ConcentrationFunction::coordinate_sum: {
            double s = 0.0;
            for (double x : v) s += x;
            return s;
        }
        case ConcentrationFunction::min_plus_mean: {
            double s = 0.0;
            for (double x : v) s += x;
            return *std::min_element(v.begin(), v.end()) + s / static_cast<double>(v.size());
        }
    }
    return 0.0;
}

}  // namespace

ConcentrationReport concentration_check(const ConcentrationConfig& cfg) {
    if (cfg.coords < 1) throw PreconditionError("need at least one coordinate");
    if (!(cfg.density > 0.0)) throw PreconditionError("density bound must be positive");
    if (cfg.epsilon < 0.0) throw PreconditionError("window width must be nonnegative");
    ConcentrationReport rep;
    rep.bound = cfg.coords * cfg.density * cfg.epsilon;
    const double a = cfg.window_lo;
    const double b = cfg.window_lo + cfg.epsilon;
    const double c = cfg.density;
    if (cfg.fn == ConcentrationFunction::coordinate_max) {
        rep.has_exact = true;
        rep.exact_probability =
            std::pow(clamp01(b * c), cfg.coords) - std::pow(clamp01(a * c), cfg.coords);
    } else if (cfg.fn == ConcentrationFunction::coordinate_sum && cfg.coords == 1) {
        rep.has_exact = true;
        rep.exact_probability = clamp01(b * c) - clamp01(a * c);
    }
    if (cfg.trials > 0) {
        auto flags = run_trials<unsigned char>(cfg.trials, cfg.threads, [&](long trial) {
            Rng rng(cfg.master_seed, static_cast<std::uint64_t>(trial), kConcentrationTag);
            std::vector<double> v(cfg.coords);
            for (double& x : v) x = rng.uniform(0.0, 1.0 / c);
            const double f = statistic(cfg.fn, v);
            return static_cast<unsigned char>(f >= a && f <= b);
        });
        rep.trials = cfg.trials;
        for (unsigned char f : flags) rep.hits += f;
        const CpInterval ci = clopper_pearson(rep.hits, rep.trials);
        rep.estimate = static_cast<double>(rep.hits) / static_cast<double>(rep.trials);
        rep.ci_lo = ci.lo;
        rep.ci_hi = ci.hi;
    }
    if (rep.has_exact) {
        rep.holds = rep.exact_probability <= rep.bound + 1e-12;
    } else if (rep.trials > 0) {
        // Sampled only: fail just when the cushioned lower end clears the bound.
        rep.holds = rep.estimate - 3.0 * (rep.estimate - rep.ci_lo) <= rep.bound;
    } else {
        throw PreconditionError("no exact form for this statistic; provide trials");
    }
    return rep;
}

std::vector<double> ground_state_samples(const HamiltonianSpec& spec, long trials,
                                         std::uint64_t master_seed, int threads,
                                         const EngineOptions& eng) {
    if (trials <= 0) throw PreconditionError("need a positive trial count");
    const auto sites = required_sites(spec);
    auto vals = run_trials<double>(trials, threads, [&](long trial) {
        const auto field =
            sample_amplitudes(spec.ensemble, sites, master_seed, static_cast<std::uint64_t>(trial));
        const Spectrum s = lowest_k(spec, field, 1, eng);
        if (!s.converged || s.values.empty())
            throw std::runtime_error("ground level did not converge");
        return s.values.front();
    });
    std::sort(vals.begin(), vals.end());
    return vals;
}

}  // namespace anderson
