#include "anderson/random_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "anderson/rng.hpp"
#include "anderson/stats.hpp"

namespace anderson {

namespace {

constexpr std::uint64_t kAmplitudeTag = 0x616d706cULL;  // stream tag for amplitude draws
constexpr std::uint64_t kNuTag = 0x6e754d43ULL;         // stream tag for window-mass sampling

double triangular_inverse_cdf(double u) {
    // Symmetric triangular density on [0, 1], peak 2 at 1/2.
    if (u < 0.5) return std::sqrt(u / 2.0);
    return 1.0 - std::sqrt((1.0 - u) / 2.0);
}

void validate_ensemble(const AmplitudeEnsemble& e) {
    if (e.bound < 0.0) throw std::invalid_argument("ensemble: bound must be nonnegative");
    if (e.coupling < 0.0 || e.coupling >= 1.0) throw std::invalid_argument("ensemble: coupling outside [0, 1)");
}

}  // namespace

std::string to_string(BumpKind k) {
    switch (k) {
        case BumpKind::indicator: return "indicator";
        case BumpKind::tent: return "tent";
        case BumpKind::smooth_compact: return "smooth_compact";
    }
    return "?";
}

std::string to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::iid_uniform: return "iid_uniform";
        case EnsembleKind::iid_bounded_density: return "iid_bounded_density";
        case EnsembleKind::markov_clipped: return "markov_clipped";
    }
    return "?";
}

BumpProfile make_profile(BumpKind kind, double range, double scale) {
    if (!(range > 0.0)) throw std::invalid_argument("make_profile: range must be positive");
    if (!(scale > 0.0)) throw std::invalid_argument("make_profile: scale must be positive");
    return BumpProfile{kind, range, scale};
}

double eval_bump(const BumpProfile& p, const std::vector<double>& y) {
    double prod = 1.0;
    for (double yi : y) {
        const double t = std::fabs(yi) / p.range;
        if (t > 1.0) return 0.0;
        switch (p.kind) {
            case BumpKind::indicator:
                break;
            case BumpKind::tent:
                prod *= 1.0 - t;
                break;
            case BumpKind::smooth_compact:
                if (t >= 1.0) return 0.0;
                prod *= std::exp(1.0 - 1.0 / (1.0 - t * t));
                break;
        }
    }
    return p.scale * prod;
}

double max_lattice_sum(const BumpProfile& p, int dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("max_lattice_sum: dimension outside 1..3");
    // The lattice sum is 1-periodic per axis; scan one cell.
    const double step = dim == 1 ? 1e-3 : (dim == 2 ? 1e-2 : 5e-2);
    const int reach = static_cast<int>(std::ceil(p.range)) + 1;
    const int samples = static_cast<int>(std::lround(1.0 / step));
    std::vector<int> idx(dim, 0);
    std::vector<double> x(dim), y(dim);
    double best = 0.0;
    while (true) {
        for (int i = 0; i < dim; ++i) x[i] = idx[i] * step;
        double sum = 0.0;
        std::vector<int> s(dim, -reach);
        while (true) {
            for (int i = 0; i < dim; ++i) y[i] = x[i] - s[i];
            sum += eval_bump(p, y);
            int axis = dim - 1;
            while (axis >= 0) {
                if (s[axis] < reach) {
                    ++s[axis];
                    break;
                }
                s[axis] = -reach;
                --axis;
            }
            if (axis < 0) break;
        }
        best = std::max(best, sum);
        int axis = dim - 1;
        while (axis >= 0) {
            if (idx[axis] < samples) {
                ++idx[axis];
                break;
            }
            idx[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return best;
}

double AmplitudeEnsemble::density_bound() const {
    if (bound == 0.0) return std::numeric_limits<double>::infinity();
    switch (kind) {
        case EnsembleKind::iid_uniform: return 1.0 / width();
        case EnsembleKind::iid_bounded_density: return 2.0 / width();
        case EnsembleKind::markov_clipped: return 1.0 / ((1.0 - coupling) * width());
    }
    return std::numeric_limits<double>::infinity();
}

AmplitudeEnsemble make_ensemble(EnsembleKind kind, double bound, bool signed_support, double coupling) {
    AmplitudeEnsemble e{kind, bound, signed_support, coupling};
    validate_ensemble(e);
    return e;
}

const double* FieldRealization::find(const Site& s) const {
    auto it = std::lower_bound(sites.begin(), sites.end(), s);
    if (it == sites.end() || *it != s) return nullptr;
    return &values[static_cast<size_t>(it - sites.begin())];
}

bool FieldRealization::covers(const std::vector<Site>& wanted) const {
    for (const auto& s : wanted) {
        if (find(s) == nullptr) return false;
    }
    return true;
}

FieldRealization sample_amplitudes(const AmplitudeEnsemble& e, std::vector<Site> sites,
                                   std::uint64_t master_seed, std::uint64_t trial) {
    validate_ensemble(e);
    if (sites.empty()) throw std::invalid_argument("sample_amplitudes: empty site list");
    const size_t d = sites.front().size();
    for (const auto& s : sites) {
        if (s.size() != d) throw std::invalid_argument("sample_amplitudes: mixed site dimensions");
    }
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end()) {
        throw std::invalid_argument("sample_amplitudes: duplicate site");
    }

    FieldRealization f;
    f.sites = std::move(sites);
    f.values.resize(f.sites.size());
    f.master_seed = master_seed;
    f.trial = trial;

    Rng rng(master_seed, trial, kAmplitudeTag);
    const double lo = e.support_lo();
    const double w = e.width();
    const double a = e.kind == EnsembleKind::markov_clipped ? e.coupling : 0.0;
    double prev = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i) {
        const double u = rng.uniform01();
        double v = 0.0;
        switch (e.kind) {
            case EnsembleKind::iid_uniform:
                v = lo + w * u;
                break;
            case EnsembleKind::iid_bounded_density:
                v = lo + w * triangular_inverse_cdf(u);
                break;
            case EnsembleKind::markov_clipped: {
                // Innovation uniform on a (1-a)-scaled copy of the support,
                // so the chain cannot leave [lo, bound].
                const double innovation = (1.0 - a) * (lo + w * u);
                v = a * prev + innovation;
                break;
            }
        }
        v = std::clamp(v, lo, e.bound);
        f.values[i] = v;
        prev = v;
    }
    return f;
}

FieldRealization with_shift(const FieldRealization& f, double t, const std::vector<Site>& where) {
    FieldRealization out = f;
    for (const auto& s : where) {
        auto it = std::lower_bound(out.sites.begin(), out.sites.end(), s);
        if (it != out.sites.end() && *it == s) {
            out.values[static_cast<size_t>(it - out.sites.begin())] += t;
        }
    }
    return out;
}

double eval_potential_1p(const FieldRealization& f, const BumpProfile& p,
                         const std::vector<double>& x) {
    const int d = static_cast<int>(x.size());
    std::vector<int> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        lo[i] = static_cast<int>(std::ceil(x[i] - p.range - 1e-9));
        hi[i] = static_cast<int>(std::floor(x[i] + p.range + 1e-9));
    }
    double sum = 0.0;
    Site s(lo.begin(), lo.end());
    std::vector<double> y(d);
    while (true) {
        if (const double* v = f.find(s)) {
            for (int i = 0; i < d; ++i) y[i] = x[i] - s[i];
            sum += *v * eval_bump(p, y);
        }
        int axis = d - 1;
        while (axis >= 0) {
            if (s[axis] < hi[axis]) {
                ++s[axis];
                break;
            }
            s[axis] = lo[axis];
            --axis;
        }
        if (axis < 0) break;
    }
    return sum;
}

double eval_potential_2p(const FieldRealization& f, const BumpProfile& p,
                         const std::vector<double>& x1, const std::vector<double>& x2) {
    return eval_potential_1p(f, p, x1) + eval_potential_1p(f, p, x2);
}

CoveringReport verify_covering(const BumpProfile& p, const Cube& cube, double grid_step) {
    if (!(grid_step > 0.0)) throw std::invalid_argument("verify_covering: grid_step must be positive");
    const int d = cube.dim();

    // Per-axis sample set: uniform grid plus integer and half-integer points.
    std::vector<std::vector<double>> axis_pts(d);
    for (int i = 0; i < d; ++i) {
        auto& pts = axis_pts[i];
        const double lo = cube.lo(i);
        const double hi = cube.hi(i);
        for (double x = lo; x < hi; x += grid_step) pts.push_back(x);
        pts.push_back(hi);
        for (double x = std::ceil(2.0 * lo) / 2.0; x <= hi + 1e-12; x += 0.5) {
            if (x >= lo) pts.push_back(x);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }

    // In-cube integer range per axis; sums run over these sites only.
    std::vector<int> slo(d), shi(d);
    for (int i = 0; i < d; ++i) {
        slo[i] = static_cast<int>(std::ceil(cube.lo(i) - 1e-9));
        shi[i] = static_cast<int>(std::floor(cube.hi(i) + 1e-9));
        if (shi[i] < slo[i]) throw std::invalid_argument("verify_covering: cube holds no lattice site");
    }

    CoveringReport rep;
    rep.min_sum = std::numeric_limits<double>::infinity();
    rep.max_sum = 0.0;

    std::vector<size_t> idx(d, 0);
    std::vector<double> x(d), y(d);
    while (true) {
        for (int i = 0; i < d; ++i) x[i] = axis_pts[i][idx[i]];
        double sum = 0.0;
        Site s(d);
        std::vector<int> klo(d), khi(d);
        for (int i = 0; i < d; ++i) {
            klo[i] = std::max(slo[i], static_cast<int>(std::ceil(x[i] - p.range - 1e-9)));
            khi[i] = std::min(shi[i], static_cast<int>(std::floor(x[i] + p.range + 1e-9)));
        }
        bool any = true;
        for (int i = 0; i < d; ++i) {
            if (khi[i] < klo[i]) any = false;
        }
        if (any) {
            for (int i = 0; i < d; ++i) s[i] = klo[i];
            while (true) {
                for (int i = 0; i < d; ++i) y[i] = x[i] - s[i];
                sum += eval_bump(p, y);
                int axis = d - 1;
                while (axis >= 0) {
                    if (s[axis] < khi[axis]) {
                        ++s[axis];
                        break;
                    }
                    s[axis] = klo[axis];
                    --axis;
                }
                if (axis < 0) break;
            }
        }
        if (sum < rep.min_sum) {
            rep.min_sum = sum;
            rep.argmin = x;
        }
        rep.max_sum = std::max(rep.max_sum, sum);

        int axis = d - 1;
        while (axis >= 0) {
            if (idx[axis] + 1 < axis_pts[axis].size()) {
                ++idx[axis];
                break;
            }
            idx[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    rep.holds = rep.min_sum >= 1.0 - 1e-12;
    return rep;
}

double nu_ceiling(const AmplitudeEnsemble& e, double window) {
    validate_ensemble(e);
    if (!(window >= 0.0)) throw std::invalid_argument("nu_ceiling: window must be nonnegative");
    if (e.bound == 0.0) return 1.0;  // degenerate ensemble: all mass at one point
    switch (e.kind) {
        case EnsembleKind::iid_uniform:
            return std::min(window / e.width(), 1.0);
        case EnsembleKind::iid_bounded_density:
        case EnsembleKind::markov_clipped:
            return std::min(e.density_bound() * window, 1.0);
    }
    return 1.0;
}

NuValue nu_bound(const AmplitudeEnsemble& e, double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("nu_bound: eps outside (0, 1)");
    return NuValue{nu_ceiling(e, eps)};
}

NuEstimate estimate_nu(const AmplitudeEnsemble& e, double eps, long trials, std::uint64_t seed) {
    validate_ensemble(e);
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("estimate_nu: eps outside (0, 1)");
    if (trials < 100) throw std::invalid_argument("estimate_nu: need at least 100 trials");
    if (e.bound == 0.0) return NuEstimate{1.0, 1.0, 1.0, trials};

    const bool markov = e.kind == EnsembleKind::markov_clipped && e.coupling > 0.0;
    const int n_cond = markov ? 8 : 1;
    const long per = std::max<long>(trials / n_cond, 50);

    Rng rng(seed, 0, kNuTag);
    const double lo = e.support_lo();
    const double w = e.width();
    const double a = markov ? e.coupling : 0.0;

    NuEstimate best;
    std::vector<double> sample(per);
    for (int c = 0; c < n_cond; ++c) {
        // Conditioning configuration: the lexicographic predecessor value,
        // reached by a short warm-up walk of the chain.
        double prev = 0.0;
        if (markov) {
            for (int k = 0; k < 16; ++k) {
                prev = a * prev + (1.0 - a) * (lo + w * rng.uniform01());
            }
        }
        for (long i = 0; i < per; ++i) {
            const double u = rng.uniform01();
            double v = 0.0;
            switch (e.kind) {
                case EnsembleKind::iid_uniform:
                    v = lo + w * u;
                    break;
                case EnsembleKind::iid_bounded_density:
                    v = lo + w * triangular_inverse_cdf(u);
                    break;
                case EnsembleKind::markov_clipped:
                    v = a * prev + (1.0 - a) * (lo + w * u);
                    break;
            }
            sample[i] = std::clamp(v, lo, e.bound);
        }
        std::sort(sample.begin(), sample.end());
        for (double y = lo - eps; y <= e.bound + 1e-12; y += eps / 4.0) {
            const auto first = std::lower_bound(sample.begin(), sample.end(), y);
            const auto last = std::upper_bound(sample.begin(), sample.end(), y + eps);
            const long hits = static_cast<long>(last - first);
            const double frac = static_cast<double>(hits) / static_cast<double>(per);
            if (frac > best.value || best.samples_per_window == 0) {
                const CpInterval ci = clopper_pearson(hits, per);
                best = NuEstimate{frac, ci.lo, ci.hi, per};
            }
        }
    }
    return best;
}

}  // namespace anderson
