#include "anderson/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "anderson/errors.hpp"
#include "anderson/rng.hpp"

namespace anderson {

namespace {

constexpr long kDenseHardCap = 4096;

Eigen::MatrixXd to_dense(const DiscreteHamiltonian& h) {
    const long n = h.dim();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    h.for_each_entry([&a](long i, long j, double v) { a(i, j) += v; });
    return a;
}

std::vector<double> dense_values(const DiscreteHamiltonian& h) {
    const long n = h.dim();
    if (n == 0) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (h.grid.axes() == 1) {
        Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(h.diag.data(), n);
        Eigen::VectorXd e = Eigen::VectorXd::Constant(std::max<long>(n - 1, 0), h.axis_coupling[0]);
        es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    } else {
        if (n > kDenseHardCap)
            throw PreconditionError("dense solve requested above the dimension cap");
        es.compute(to_dense(h), Eigen::EigenvaluesOnly);
    }
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolve failed");
    return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

// Crude scale for breakdown thresholds: max |diag| plus coupling magnitudes.
double operator_scale(const DiscreteHamiltonian& h) {
    double s = 1.0;
    for (double d : h.diag) s = std::max(s, std::abs(d));
    double c = 0.0;
    for (double v : h.axis_coupling) c += 2.0 * std::abs(v);
    return s + c;
}

void project_out(Eigen::VectorXd& w, const std::vector<Eigen::VectorXd>& basis) {
    for (const auto& q : basis) w -= q.dot(w) * q;
}

struct LanczosState {
    std::vector<Eigen::VectorXd> locked;
    std::vector<double> locked_values;
    std::vector<double> locked_residuals;
    bool space_exhausted = false;
};

enum class SweepGoal { count, threshold };

// One restarted sweep. Locks converged bottom Ritz pairs while the goal still
// wants them; returns true when the first converged pair beyond the goal
// certifies that nothing below it was missed.
bool lanczos_sweep(const DiscreteHamiltonian& h, const SolverOptions& opt, SweepGoal goal,
                   long want_count, double threshold, int sweep_index, LanczosState& st,
                   Eigen::VectorXd& warm_start) {
    const long n = h.dim();
    const double scale = operator_scale(h);
    const double breakdown = 1e-13 * scale;

    Eigen::VectorXd v(n);
    if (warm_start.size() == n) {
        v = warm_start;
    } else {
        Rng rng(opt.start_seed, static_cast<std::uint64_t>(sweep_index), 0x4c616e63ull);
        for (long i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
    }
    warm_start.resize(0);
    project_out(v, st.locked);
    project_out(v, st.locked);
    const double nrm0 = v.norm();
    if (nrm0 < 1e-10) {
        st.space_exhausted = static_cast<long>(st.locked.size()) >= n;
        return st.space_exhausted;
    }
    v /= nrm0;

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(opt.max_basis);
    basis.push_back(v);
    std::vector<double> alpha, beta;
    const int mb = std::min<long>(opt.max_basis, n - static_cast<long>(st.locked.size()));
    bool invariant = false;

    Eigen::VectorXd w(n);
    for (int m = 0; m < mb; ++m) {
        h.apply(basis[m].data(), w.data());
        const double a = basis[m].dot(w);
        alpha.push_back(a);
        w -= a * basis[m];
        if (m > 0) w -= beta[m - 1] * basis[m - 1];
        // Full reorthogonalization keeps locked directions out and the basis clean.
        project_out(w, st.locked);
        project_out(w, basis);
        project_out(w, basis);
        const double b = w.norm();
        if (b <= breakdown) {
            invariant = true;
            break;
        }
        if (m + 1 == mb) break;
        beta.push_back(b);
        basis.push_back(w / b);
    }

    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd td = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd te(std::max(m - 1, 0));
    for (int i = 0; i + 1 < m; ++i) te[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(td, te, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolve failed");
    // Residual estimate per Ritz pair: tail norm times the pair's last basis
    // component. w still holds the discarded continuation vector.
    const double tail = (!invariant && m == mb) ? w.norm() : 0.0;

    for (int i = 0; i < m; ++i) {
        const double theta = es.eigenvalues()[i];
        const double rest = std::abs(tail * es.eigenvectors()(m - 1, i));
        const double contract = opt.tol * std::max(1.0, std::abs(theta));
        if (rest > contract) {
            // First unconverged pair: warm-start the next sweep from it.
            warm_start = Eigen::VectorXd::Zero(n);
            for (int j = 0; j < m; ++j) warm_start += es.eigenvectors()(j, i) * basis[j];
            return false;
        }
        const bool wanted = (goal == SweepGoal::count)
                                ? static_cast<long>(st.locked.size()) < want_count
                                : theta <= threshold;
        if (!wanted) return true;  // converged witness beyond the goal

        Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < m; ++j) y += es.eigenvectors()(j, i) * basis[j];
        project_out(y, st.locked);
        const double ynrm = y.norm();
        if (ynrm < 0.5) continue;  // collapsed onto locked space, skip
        y /= ynrm;
        h.apply(y.data(), w.data());
        w -= theta * y;
        const double res = w.norm();
        if (res > 4.0 * contract) {
            warm_start = y;
            return false;
        }
        st.locked.push_back(std::move(y));
        st.locked_values.push_back(theta);
        st.locked_residuals.push_back(res);
    }
    // Every Ritz pair locked. Exhausted Krylov subspace without a witness.
    st.space_exhausted = static_cast<long>(st.locked.size()) >= n;
    return st.space_exhausted;
}

Spectrum iterate(const DiscreteHamiltonian& h, const SolverOptions& opt, SweepGoal goal,
                 long want_count, double threshold) {
    LanczosState st;
    Eigen::VectorXd warm;
    bool certified = false;
    for (int sweep = 0; sweep < opt.max_restarts; ++sweep) {
        certified = lanczos_sweep(h, opt, goal, want_count, threshold, sweep, st, warm);
        if (certified) break;
    }

    Spectrum out;
    std::vector<std::size_t> order(st.locked_values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&st](std::size_t a, std::size_t b) {
        return st.locked_values[a] < st.locked_values[b];
    });
    for (std::size_t i : order) {
        out.values.push_back(st.locked_values[i]);
        out.residuals.push_back(st.locked_residuals[i]);
    }
    if (goal == SweepGoal::count) {
        if (static_cast<long>(out.values.size()) > want_count) {
            out.values.resize(want_count);
            out.residuals.resize(want_count);
        }
        out.converged = static_cast<long>(out.values.size()) == want_count;
    } else {
        while (!out.values.empty() && out.values.back() > threshold) {
            out.values.pop_back();
            out.residuals.pop_back();
        }
        out.converged = certified;
    }
    out.complete = certified;
    return out;
}

Spectrum from_dense(const DiscreteHamiltonian& h) {
    Spectrum s;
    s.values = dense_values(h);
    s.residuals.assign(s.values.size(), 0.0);
    s.converged = true;
    s.complete = true;
    return s;
}

}  // namespace

std::vector<double> dense_spectrum(const DiscreteHamiltonian& h) { return dense_values(h); }

Spectrum lowest_eigenvalues(const DiscreteHamiltonian& h, int k, const SolverOptions& opt) {
    if (k < 0) throw PreconditionError("eigenvalue count must be nonnegative");
    const long n = h.dim();
    const long want = std::min<long>(k, n);
    if (n <= opt.dense_cutoff || h.grid.axes() == 1) {
        Spectrum s = from_dense(h);
        s.values.resize(want);
        s.residuals.resize(want);
        return s;
    }
    return iterate(h, opt, SweepGoal::count, want, 0.0);
}

Spectrum eigenvalues_below(const DiscreteHamiltonian& h, double threshold,
                           const SolverOptions& opt) {
    const long n = h.dim();
    if (n <= opt.dense_cutoff || h.grid.axes() == 1) {
        Spectrum s = from_dense(h);
        while (!s.values.empty() && s.values.back() > threshold) {
            s.values.pop_back();
            s.residuals.pop_back();
        }
        return s;
    }
    return iterate(h, opt, SweepGoal::threshold, 0, threshold);
}

IntervalCount count_in_interval(const Spectrum& s, double lo, double hi) {
    if (lo > hi) throw PreconditionError("interval endpoints out of order");
    IntervalCount out;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double v = s.values[i];
        const double r = i < s.residuals.size() ? s.residuals[i] : 0.0;
        if (v >= lo && v <= hi) ++out.count;
        if (std::abs(v - lo) <= r || std::abs(v - hi) <= r) out.boundary_uncertain = true;
    }
    return out;
}

namespace {

double unit_ball_volume(int dim) {
    return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

}  // namespace

double weyl_reference(const Cube& box, double energy, double mass) {
    if (mass <= 0.0) throw PreconditionError("mass must be positive");
    if (energy <= 0.0) return 0.0;
    const int d = box.dim();
    return unit_ball_volume(d) * std::pow(2.0 * mass * energy, 0.5 * d) * box.volume() /
           std::pow(2.0 * std::numbers::pi, d);
}

double weyl_reference(const TwoParticleBox& box, double energy, double mass1, double mass2) {
    if (mass1 <= 0.0 || mass2 <= 0.0) throw PreconditionError("masses must be positive");
    if (energy <= 0.0) return 0.0;
    const int d = box.dim();
    const int dd = 2 * d;
    const double mass_factor = std::pow(mass1, 0.5 * d) * std::pow(mass2, 0.5 * d);
    return unit_ball_volume(dd) * std::pow(2.0 * energy, 0.5 * dd) * mass_factor *
           box.factor1.volume() * box.factor2.volume() / std::pow(2.0 * std::numbers::pi, dd);
}

}  // namespace anderson
