#pragma once

#include <cstdint>
#include <vector>

#include "anderson/operator.hpp"

namespace anderson {

struct SolverOptions {
    // Residual contract for iterative eigenpairs: |H v - t v| <= tol * max(1, |t|).
    double tol = 1e-10;
    int max_basis = 320;
    int max_restarts = 200;
    std::uint64_t start_seed = 0x5eed;
    // At or below this dimension every request is answered densely.
    long dense_cutoff = 400;
};

struct Spectrum {
    std::vector<double> values;     // ascending
    std::vector<double> residuals;  // two-sided error radii, zero for dense results
    bool converged = false;         // every reported pair met the residual contract
    bool complete = false;          // the advertised set provably has no gaps
};

// All eigenvalues, ascending. Uses the tridiagonal solver for one-axis
// operators, otherwise a dense solve (dimension capped at 4096).
std::vector<double> dense_spectrum(const DiscreteHamiltonian& h);

// The k smallest eigenvalues. Deflated restarts recover degenerate clusters;
// completion is certified by converging one eigenvalue beyond the k-th.
Spectrum lowest_eigenvalues(const DiscreteHamiltonian& h, int k, const SolverOptions& opt = {});

// Every eigenvalue <= threshold. complete means the first eigenvalue above
// threshold was converged as a witness (or the whole space was exhausted).
Spectrum eigenvalues_below(const DiscreteHamiltonian& h, double threshold,
                           const SolverOptions& opt = {});

struct IntervalCount {
    long count = 0;
    // Some eigenvalue sits within its error radius of an endpoint.
    bool boundary_uncertain = false;
};

// Eigenvalues in the closed interval [lo, hi].
IntervalCount count_in_interval(const Spectrum& s, double lo, double hi);

// Phase-space eigenvalue-count estimate at the given energy for the Dirichlet
// kinetic-only problem: unit-ball volume times (2 m E)^(D/2) per particle
// factor, times box volume, over (2 pi)^D.
double weyl_reference(const Cube& box, double energy, double mass);
double weyl_reference(const TwoParticleBox& box, double energy, double mass1, double mass2);

}  // namespace anderson
