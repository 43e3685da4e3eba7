#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "anderson/geometry.hpp"
#include "anderson/random_field.hpp"

namespace anderson {

enum class InteractionKind { zero, square_well, smoothed_core };
std::string to_string(InteractionKind k);

// Pair potential depending on the Euclidean separation of the two particles.
// Symmetric under exchange, bounded by |strength|.
struct InteractionSpec {
    InteractionKind kind = InteractionKind::zero;
    double strength = 0.0;
    double range = 1.0;
};

InteractionSpec make_interaction(InteractionKind kind, double strength, double range);
double eval_interaction(const InteractionSpec& u, const std::vector<double>& x1,
                        const std::vector<double>& x2);

// Tensor grid of interior nodes. Axis a carries nodes origin[a] + (i+1) h for
// i in [0, nodes[a]); the boundary planes are excluded (Dirichlet). Flat
// indices are row-major with the last axis fastest.
struct Grid {
    std::vector<double> origin;
    std::vector<int> nodes;
    std::vector<int> axis_mass_index;  // selects mass1 (0) or mass2 (1) per axis
    double spacing = 0.0;

    int axes() const { return static_cast<int>(nodes.size()); }
    long total() const;
    std::vector<double> coord(long flat) const;
};

// Requires spacing to divide every edge length (to 1e-12 relative) and at
// least two cells per axis.
Grid build_grid(const Cube& c, double h);
Grid build_grid(const TwoParticleBox& b, double h);

// Second-order Dirichlet discretization: one constant neighbour coupling per
// axis plus a diagonal. Also represents synthetic pure-diagonal operators
// (empty axis list). Symmetric by construction.
struct DiscreteHamiltonian {
    Grid grid;
    std::vector<double> diag;
    std::vector<double> axis_coupling;
    std::uint64_t provenance_seed = 0;
    std::uint64_t provenance_trial = 0;

    long dim() const { return static_cast<long>(diag.size()); }
    void apply(const double* x, double* y) const;
    std::vector<double> apply(const std::vector<double>& x) const;
    // Visits every nonzero entry, both triangles plus the diagonal.
    void for_each_entry(const std::function<void(long, long, double)>& f) const;
    long nonzero_count() const;

    static DiscreteHamiltonian diagonal(std::vector<double> d);
};

// Lattice sites whose bump copy can touch the box: sites of the reach-
// enlarged cube (or, for a pair box, of both reach-enlarged factors).
std::vector<Site> required_sites(const Cube& c, double reach);
std::vector<Site> required_sites(const TwoParticleBox& b, double reach);

// Assembly requires the realization to cover required_sites of the box.
DiscreteHamiltonian assemble(const Cube& box, double h, double mass,
                             const BumpProfile& prof, const FieldRealization& field);
DiscreteHamiltonian assemble(const TwoParticleBox& box, double h, double mass1, double mass2,
                             const InteractionSpec& inter, const BumpProfile& prof,
                             const FieldRealization& field);

// Complete problem description used by the experiment drivers.
struct HamiltonianSpec {
    int particles = 2;
    TwoParticleBox box;  // factor2 is ignored when particles == 1
    double spacing = 0.25;
    double mass1 = 1.0;
    double mass2 = 1.0;
    InteractionSpec interaction;
    BumpProfile profile;
    AmplitudeEnsemble ensemble;

    int dim() const { return box.dim(); }
};

std::vector<Site> required_sites(const HamiltonianSpec& s);
DiscreteHamiltonian assemble(const HamiltonianSpec& s, const FieldRealization& f);

// Sup-norm ceiling for the full potential: interaction strength plus each
// particle's worst-case field value.
double sup_norm_budget(const HamiltonianSpec& s);

}  // namespace anderson
