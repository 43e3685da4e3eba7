#pragma once

#include <string>
#include <vector>

#include "anderson/errors.hpp"

namespace anderson {

using Site = std::vector<int>;  // lattice point in Z^d

// Closed axis-aligned cube {x : |x_i - center_i| <= half_width}.
struct Cube {
    std::vector<double> center;
    double half_width = 1.0;

    int dim() const { return static_cast<int>(center.size()); }
    double lo(int axis) const { return center[axis] - half_width; }
    double hi(int axis) const { return center[axis] + half_width; }
    bool contains(const std::vector<double>& x) const;
    // Closed boxes: boundary contact counts as intersection.
    bool intersects(const Cube& other) const;
    double volume() const;
};

Cube make_cube(std::vector<double> center, double half_width);

// Cartesian product of two cubes with a common ambient dimension d.
// Configurations of the pair live in R^(2d).
struct TwoParticleBox {
    Cube factor1;
    Cube factor2;

    int dim() const { return factor1.dim(); }
    double volume() const { return factor1.volume() * factor2.volume(); }
};

TwoParticleBox make_box(Cube factor1, Cube factor2);
TwoParticleBox swapped(const TwoParticleBox& b);

// Concatenated pair of factor centers, a point in R^(2d).
std::vector<double> center_point(const TwoParticleBox& b);
// Exchanges the two halves of a point in R^(2d).
std::vector<double> swap_halves(const std::vector<double>& x);
double dist_max(const std::vector<double>& a, const std::vector<double>& b);

// Integer points of the closed cube, lexicographic order.
std::vector<Site> lattice_sites(const Cube& c);
long lattice_count(const Cube& c);

// particle is 1 or 2.
Cube projection(const TwoParticleBox& b, int particle);

// Finite union of cubes in R^d.
struct CubeUnion {
    std::vector<Cube> parts;

    bool contains(const std::vector<double>& x) const;
    bool intersects(const Cube& c) const;
    bool intersects(const CubeUnion& o) const;
};

// Union of the two factor cubes: the subset of R^d the pair can touch.
CubeUnion shadow(const TwoParticleBox& b);

Cube enlarged(const Cube& c, double r);
TwoParticleBox enlarged(const TwoParticleBox& b, double r);

// True when both the direct and the factor-swapped center distance exceed
// multiplier * max over the four factors of (half_width + reach).
bool is_sufficiently_distant(const TwoParticleBox& a, const TwoParticleBox& b,
                             double reach, double multiplier = 8.0);

enum class SeparationCase { A, B, C, D, E };
std::string to_string(SeparationCase c);

struct SeparationVerdict {
    std::vector<SeparationCase> cases;  // every case that holds, in A..E order
    bool completely_separated = false;  // true iff case E holds

    std::string kind() const;
};

// Disjointness pattern of the reach-enlarged factor cubes. Requires
// is_sufficiently_distant(a, b, reach, multiplier); reports every case that
// holds, not just the first.
SeparationVerdict classify_separation(const TwoParticleBox& a, const TwoParticleBox& b,
                                      double reach, double multiplier = 8.0);

}  // namespace anderson
