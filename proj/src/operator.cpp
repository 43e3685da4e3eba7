#include "anderson/operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "anderson/errors.hpp"

namespace anderson {

std::string to_string(InteractionKind k) {
    switch (k) {
        case InteractionKind::zero: return "zero";
        case InteractionKind::square_well: return "square_well";
        case InteractionKind::smoothed_core: return "smoothed_core";
    }
    return "?";
}

InteractionSpec make_interaction(InteractionKind kind, double strength, double range) {
    if (kind != InteractionKind::zero && range <= 0.0)
        throw PreconditionError("interaction range must be positive");
    InteractionSpec u;
    u.kind = kind;
    u.strength = strength;
    u.range = range;
    return u;
}

double eval_interaction(const InteractionSpec& u, const std::vector<double>& x1,
                        const std::vector<double>& x2) {
    if (u.kind == InteractionKind::zero || u.strength == 0.0) return 0.0;
    if (x1.size() != x2.size())
        throw PreconditionError("interaction arguments must share a dimension");
    double r2 = 0.0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
        const double d = x1[i] - x2[i];
        r2 += d * d;
    }
    const double r = std::sqrt(r2);
    if (r >= u.range) return 0.0;
    if (u.kind == InteractionKind::square_well) return u.strength;
    // smoothed_core: C^infinity bump of the separation, value strength at r=0.
    const double t = r / u.range;
    return u.strength * std::exp(1.0 - 1.0 / (1.0 - t * t));
}

long Grid::total() const {
    long n = 1;
    for (int m : nodes) n *= m;
    return n;
}

std::vector<double> Grid::coord(long flat) const {
    std::vector<double> x(nodes.size());
    for (int a = axes() - 1; a >= 0; --a) {
        const long m = nodes[a];
        const long i = flat % m;
        flat /= m;
        x[a] = origin[a] + static_cast<double>(i + 1) * spacing;
    }
    return x;
}

namespace {

int cells_per_edge(double len, double h) {
    const double ratio = len / h;
    const double r = std::round(ratio);
    if (std::abs(ratio - r) > 1e-12 * std::max(1.0, std::abs(ratio)))
        throw PreconditionError("grid spacing must divide the box edge length");
    const long m = static_cast<long>(r);
    if (m < 2) throw PreconditionError("need at least two grid cells per axis");
    return static_cast<int>(m);
}

void append_axes(Grid& g, const Cube& c, double h, int mass_index) {
    for (int a = 0; a < c.dim(); ++a) {
        const int m = cells_per_edge(c.hi(a) - c.lo(a), h);
        g.origin.push_back(c.lo(a));
        g.nodes.push_back(m - 1);
        g.axis_mass_index.push_back(mass_index);
    }
}

}  // namespace

Grid build_grid(const Cube& c, double h) {
    if (h <= 0.0) throw PreconditionError("grid spacing must be positive");
    Grid g;
    g.spacing = h;
    append_axes(g, c, h, 0);
    return g;
}

Grid build_grid(const TwoParticleBox& b, double h) {
    if (h <= 0.0) throw PreconditionError("grid spacing must be positive");
    Grid g;
    g.spacing = h;
    append_axes(g, b.factor1, h, 0);
    append_axes(g, b.factor2, h, 1);
    return g;
}

void DiscreteHamiltonian::apply(const double* x, double* y) const {
    const long n = dim();
    for (long i = 0; i < n; ++i) y[i] = diag[i] * x[i];
    // Axis a couples flat indices differing by stride[a] unless the node sits
    // on that axis' edge. Strides: last axis fastest.
    const int na = grid.axes();
    long stride = 1;
    for (int a = na - 1; a >= 0; --a) {
        const long m = grid.nodes[a];
        const double c = axis_coupling[a];
        if (c != 0.0) {
            const long block = stride * m;
            for (long base = 0; base < n; base += block) {
                for (long off = 0; off + stride < block; ++off) {
                    const long i = base + off;
                    const long j = i + stride;
                    y[i] += c * x[j];
                    y[j] += c * x[i];
                }
            }
        }
        stride *= m;
    }
}

std::vector<double> DiscreteHamiltonian::apply(const std::vector<double>& x) const {
    if (static_cast<long>(x.size()) != dim())
        throw PreconditionError("vector length does not match operator dimension");
    std::vector<double> y(x.size());
    apply(x.data(), y.data());
    return y;
}

void DiscreteHamiltonian::for_each_entry(const std::function<void(long, long, double)>& f) const {
    const long n = dim();
    for (long i = 0; i < n; ++i) f(i, i, diag[i]);
    const int na = grid.axes();
    long stride = 1;
    for (int a = na - 1; a >= 0; --a) {
        const long m = grid.nodes[a];
        const double c = axis_coupling[a];
        if (c != 0.0) {
            const long block = stride * m;
            for (long base = 0; base < n; base += block) {
                for (long off = 0; off + stride < block; ++off) {
                    const long i = base + off;
                    const long j = i + stride;
                    f(i, j, c);
                    f(j, i, c);
                }
            }
        }
        stride *= m;
    }
}

long DiscreteHamiltonian::nonzero_count() const {
    long n = 0;
    for_each_entry([&n](long, long, double) { ++n; });
    return n;
}

DiscreteHamiltonian DiscreteHamiltonian::diagonal(std::vector<double> d) {
    DiscreteHamiltonian h;
    h.grid.spacing = 1.0;
    h.grid.origin = {0.0};
    h.grid.nodes = {static_cast<int>(d.size())};
    h.grid.axis_mass_index = {0};
    h.axis_coupling = {0.0};
    h.diag = std::move(d);
    return h;
}

std::vector<Site> required_sites(const Cube& c, double reach) {
    if (reach < 0.0) throw PreconditionError("reach must be nonnegative");
    return lattice_sites(enlarged(c, reach));
}

std::vector<Site> required_sites(const TwoParticleBox& b, double reach) {
    auto s1 = required_sites(b.factor1, reach);
    auto s2 = required_sites(b.factor2, reach);
    s1.insert(s1.end(), s2.begin(), s2.end());
    std::sort(s1.begin(), s1.end());
    s1.erase(std::unique(s1.begin(), s1.end()), s1.end());
    return s1;
}

namespace {

void check_coverage(const FieldRealization& field, const std::vector<Site>& needed) {
    if (!field.covers(needed))
        throw std::invalid_argument("field realization does not cover the box");
}

// Per-axis node potentials for one factor cube: the field restricted to a
// single particle, tabulated on the grid nodes of that factor.
std::vector<double> factor_potential(const Cube& c, const Grid& g, int axis_begin,
                                     const BumpProfile& prof, const FieldRealization& field) {
    const int d = c.dim();
    std::vector<int> nodes(g.nodes.begin() + axis_begin, g.nodes.begin() + axis_begin + d);
    long total = 1;
    for (int m : nodes) total *= m;
    std::vector<double> out(total);
    std::vector<double> x(d);
    for (long flat = 0; flat < total; ++flat) {
        long rem = flat;
        for (int a = d - 1; a >= 0; --a) {
            const long m = nodes[a];
            const long i = rem % m;
            rem /= m;
            x[a] = g.origin[axis_begin + a] + static_cast<double>(i + 1) * g.spacing;
        }
        out[flat] = eval_potential_1p(field, prof, x);
    }
    return out;
}

}  // namespace

DiscreteHamiltonian assemble(const Cube& box, double h, double mass, const BumpProfile& prof,
                             const FieldRealization& field) {
    if (mass <= 0.0) throw PreconditionError("mass must be positive");
    check_coverage(field, required_sites(box, prof.range));
    DiscreteHamiltonian op;
    op.grid = build_grid(box, h);
    op.provenance_seed = field.master_seed;
    op.provenance_trial = field.trial;
    const int d = box.dim();
    const double kin_diag = static_cast<double>(d) / (mass * h * h);
    op.axis_coupling.assign(d, -1.0 / (2.0 * mass * h * h));
    const auto v = factor_potential(box, op.grid, 0, prof, field);
    op.diag.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) op.diag[i] = kin_diag + v[i];
    return op;
}

DiscreteHamiltonian assemble(const TwoParticleBox& box, double h, double mass1, double mass2,
                             const InteractionSpec& inter, const BumpProfile& prof,
                             const FieldRealization& field) {
    if (mass1 <= 0.0 || mass2 <= 0.0) throw PreconditionError("masses must be positive");
    check_coverage(field, required_sites(box, prof.range));
    DiscreteHamiltonian op;
    op.grid = build_grid(box, h);
    op.provenance_seed = field.master_seed;
    op.provenance_trial = field.trial;
    const int d = box.dim();
    const double h2 = h * h;
    for (int a = 0; a < d; ++a) op.axis_coupling.push_back(-1.0 / (2.0 * mass1 * h2));
    for (int a = 0; a < d; ++a) op.axis_coupling.push_back(-1.0 / (2.0 * mass2 * h2));
    const double kin_diag =
        static_cast<double>(d) / (mass1 * h2) + static_cast<double>(d) / (mass2 * h2);

    const auto v1 = factor_potential(box.factor1, op.grid, 0, prof, field);
    const auto v2 = factor_potential(box.factor2, op.grid, d, prof, field);
    const long n1 = static_cast<long>(v1.size());
    const long n2 = static_cast<long>(v2.size());
    op.diag.resize(n1 * n2);

    const bool with_u = (inter.kind != InteractionKind::zero && inter.strength != 0.0);
    std::vector<double> x1(d), x2(d);
    for (long i1 = 0; i1 < n1; ++i1) {
        const double base = kin_diag + v1[i1];
        double* row = op.diag.data() + i1 * n2;
        if (!with_u) {
            for (long i2 = 0; i2 < n2; ++i2) row[i2] = base + v2[i2];
            continue;
        }
        long rem = i1;
        for (int a = d - 1; a >= 0; --a) {
            const long m = op.grid.nodes[a];
            x1[a] = op.grid.origin[a] + static_cast<double>(rem % m + 1) * h;
            rem /= m;
        }
        for (long i2 = 0; i2 < n2; ++i2) {
            long r2 = i2;
            for (int a = d - 1; a >= 0; --a) {
                const long m = op.grid.nodes[d + a];
                x2[a] = op.grid.origin[d + a] + static_cast<double>(r2 % m + 1) * h;
                r2 /= m;
            }
            row[i2] = base + v2[i2] + eval_interaction(inter, x1, x2);
        }
    }
    return op;
}

std::vector<Site> required_sites(const HamiltonianSpec& s) {
    if (s.particles == 1) return required_sites(s.box.factor1, s.profile.range);
    return required_sites(s.box, s.profile.range);
}

DiscreteHamiltonian assemble(const HamiltonianSpec& s, const FieldRealization& f) {
    if (s.particles == 1) return assemble(s.box.factor1, s.spacing, s.mass1, s.profile, f);
    if (s.particles != 2) throw PreconditionError("only one or two particles are supported");
    return assemble(s.box, s.spacing, s.mass1, s.mass2, s.interaction, s.profile, f);
}

double sup_norm_budget(const HamiltonianSpec& s) {
    const double per_particle = s.ensemble.bound * max_lattice_sum(s.profile, s.dim());
    const double u_part = (s.particles == 2) ? std::abs(s.interaction.strength) : 0.0;
    return u_part + static_cast<double>(s.particles) * per_particle;
}

}  // namespace anderson
