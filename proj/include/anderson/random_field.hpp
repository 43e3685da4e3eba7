#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anderson/geometry.hpp"

namespace anderson {

enum class BumpKind { indicator, tent, smooth_compact };
std::string to_string(BumpKind k);

// Single-site profile. One copy is attached at every lattice site; the field
// is the amplitude-weighted sum of the copies. Support is the closed max-norm
// ball of radius `range`, value scales linearly with `scale`.
struct BumpProfile {
    BumpKind kind = BumpKind::tent;
    double range = 1.0;
    double scale = 1.0;
};

BumpProfile make_profile(BumpKind kind, double range, double scale);
double eval_bump(const BumpProfile& p, const std::vector<double>& y);

// Largest value of sum_s bump(x - s) over x in R^d (scanned over one lattice
// cell plus the profile's reach). Feeds sup-norm budgets.
double max_lattice_sum(const BumpProfile& p, int dim);

enum class EnsembleKind { iid_uniform, iid_bounded_density, markov_clipped };
std::string to_string(EnsembleKind k);

// Law of the site amplitudes. iid_uniform: uniform on the support.
// iid_bounded_density: symmetric triangular density on the support.
// markov_clipped: lexicographic nearest-neighbour autoregression
//   V_k = coupling * V_{k-1} + W_k with uniform innovations scaled so the
//   chain stays inside the support; the clamp never binds but stays as a
//   guard. With coupling 0 the draw path is identical to iid_uniform.
struct AmplitudeEnsemble {
    EnsembleKind kind = EnsembleKind::iid_uniform;
    double bound = 1.0;           // amplitudes take values in [support_lo, bound]
    bool signed_support = false;  // support [-bound, bound] instead of [0, bound]
    double coupling = 0.0;        // markov only, in [0, 1)

    double support_lo() const { return signed_support ? -bound : 0.0; }
    double width() const { return bound - support_lo(); }
    // Uniform ceiling on the sampling conditional density, conditioning on
    // the lexicographic past. Infinite when bound == 0.
    double density_bound() const;
};

AmplitudeEnsemble make_ensemble(EnsembleKind kind, double bound,
                                bool signed_support = false, double coupling = 0.0);

// Finite restriction of one disorder sample: amplitudes on an explicit,
// lexicographically sorted site list. A pure function of (ensemble, sites,
// master_seed, trial).
struct FieldRealization {
    std::vector<Site> sites;
    std::vector<double> values;
    std::uint64_t master_seed = 0;
    std::uint64_t trial = 0;

    const double* find(const Site& s) const;
    bool covers(const std::vector<Site>& wanted) const;
};

FieldRealization sample_amplitudes(const AmplitudeEnsemble& e, std::vector<Site> sites,
                                   std::uint64_t master_seed, std::uint64_t trial);

// Adds t to the amplitude at every listed site (missing sites are ignored).
FieldRealization with_shift(const FieldRealization& f, double t, const std::vector<Site>& where);

// Field value generated by this realization's sites. Sites absent from the
// realization contribute nothing.
double eval_potential_1p(const FieldRealization& f, const BumpProfile& p,
                         const std::vector<double>& x);
double eval_potential_2p(const FieldRealization& f, const BumpProfile& p,
                         const std::vector<double>& x1, const std::vector<double>& x2);

struct CoveringReport {
    double min_sum = 0.0;
    double max_sum = 0.0;
    bool holds = false;
    std::vector<double> argmin;
};

// Scans sum over in-cube sites of bump(x - s) for x in the cube: grid samples
// plus exact checks at lattice and half-integer points, where piecewise
// profiles kink or tie.
CoveringReport verify_covering(const BumpProfile& p, const Cube& cube, double grid_step = 0.1);

// Analytic ceiling for the probability mass any window of the given width can
// carry under every sampling conditional. Capped at 1.
struct NuValue {
    double value = 1.0;
};
NuValue nu_bound(const AmplitudeEnsemble& e, double eps);  // requires eps in (0, 1)
// Any window >= 0. Width zero carries mass only for the degenerate ensemble.
double nu_ceiling(const AmplitudeEnsemble& e, double window);

// Sampled maximum of the conditional window mass over a window grid and over
// sampled conditioning configurations. A lower bound for the exhaustive
// supremum, not an exact value.
struct NuEstimate {
    double value = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    long samples_per_window = 0;
};
NuEstimate estimate_nu(const AmplitudeEnsemble& e, double eps, long trials, std::uint64_t seed);

}  // namespace anderson
