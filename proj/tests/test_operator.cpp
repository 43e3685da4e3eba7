#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <vector>

#include "anderson/errors.hpp"
#include "anderson/operator.hpp"

using namespace anderson;

namespace {

constexpr double kPi = 3.14159265358979323846;

FieldRealization zero_field(const std::vector<Site>& sites) {
    FieldRealization f;
    f.sites = sites;
    f.values.assign(sites.size(), 0.0);
    return f;
}

FieldRealization const_field(const std::vector<Site>& sites, double v) {
    FieldRealization f;
    f.sites = sites;
    f.values.assign(sites.size(), v);
    return f;
}

}  // namespace

TEST_CASE("interactions evaluate on the separation") {
    const InteractionSpec z = make_interaction(InteractionKind::zero, 0.0, 1.0);
    CHECK(eval_interaction(z, {0.0}, {0.0}) == 0.0);

    const InteractionSpec w = make_interaction(InteractionKind::square_well, -2.0, 1.5);
    CHECK(eval_interaction(w, {0.0}, {1.0}) == -2.0);
    CHECK(eval_interaction(w, {0.0}, {1.5}) == 0.0);  // support is open at the range
    CHECK(eval_interaction(w, {0.0}, {2.0}) == 0.0);
    // Euclidean separation in d = 2.
    CHECK(eval_interaction(w, {0.0, 0.0}, {1.0, 1.0}) == -2.0);   // r = sqrt(2) < 1.5
    CHECK(eval_interaction(w, {0.0, 0.0}, {1.1, 1.1}) == 0.0);    // r > 1.5
    // Exchange symmetry.
    CHECK(eval_interaction(w, {1.0}, {0.0}) == eval_interaction(w, {0.0}, {1.0}));

    const InteractionSpec s = make_interaction(InteractionKind::smoothed_core, 3.0, 2.0);
    CHECK(eval_interaction(s, {0.5}, {0.5}) == doctest::Approx(3.0));
    CHECK(eval_interaction(s, {0.0}, {1.0}) ==
          doctest::Approx(3.0 * std::exp(1.0 - 4.0 / 3.0)).epsilon(1e-12));
    CHECK(std::fabs(eval_interaction(s, {0.0}, {1.9})) <= 3.0);
    CHECK(eval_interaction(s, {0.0}, {2.0}) == 0.0);
}

TEST_CASE("grids enumerate interior nodes") {
    const Grid g = build_grid(make_cube({kPi / 2.0}, kPi / 2.0), kPi / 4.0);
    CHECK(g.axes() == 1);
    CHECK(g.total() == 3);
    CHECK(g.coord(0)[0] == doctest::Approx(kPi / 4.0));
    CHECK(g.coord(2)[0] == doctest::Approx(3.0 * kPi / 4.0));

    // Pair grid in d = 1: two axes, last axis fastest.
    const TwoParticleBox b = make_box(make_cube({1.0}, 1.0), make_cube({5.0}, 1.0));
    const Grid p = build_grid(b, 0.5);
    CHECK(p.axes() == 2);
    CHECK(p.total() == 9);
    CHECK(p.axis_mass_index == std::vector<int>{0, 1});
    CHECK(p.coord(0) == std::vector<double>{0.5, 4.5});
    CHECK(p.coord(1)[0] == doctest::Approx(0.5));
    CHECK(p.coord(1)[1] == doctest::Approx(5.0));
    CHECK(p.coord(3)[0] == doctest::Approx(1.0));

    // Spacing must divide the edge and leave at least two cells.
    CHECK_THROWS_AS(build_grid(make_cube({0.0}, 1.0), 0.3), PreconditionError);
    CHECK_THROWS_AS(build_grid(make_cube({0.0}, 1.0), 2.0), PreconditionError);
}

TEST_CASE("single particle assembly has the Dirichlet stencil") {
    // [0, 2] with h = 0.5: nodes 0.5, 1.0, 1.5.
    const Cube box = make_cube({1.0}, 1.0);
    const double h = 0.5;
    const double mass = 2.0;
    const auto sites = required_sites(box, 1.0);
    const DiscreteHamiltonian H = assemble(box, h, mass, make_profile(BumpKind::tent, 1.0, 1.0),
                                           zero_field(sites));
    REQUIRE(H.dim() == 3);
    const double couple = -1.0 / (2.0 * mass * h * h);
    const double kinetic_diag = 1.0 / (mass * h * h);
    for (double dv : H.diag) CHECK(dv == doctest::Approx(kinetic_diag));
    REQUIRE(H.axis_coupling.size() == 1);
    CHECK(H.axis_coupling[0] == doctest::Approx(couple));

    // Matrix-free apply against the explicit tridiagonal action.
    const std::vector<double> x{1.0, 2.0, -1.0};
    const auto y = H.apply(x);
    CHECK(y[0] == doctest::Approx(kinetic_diag * 1.0 + couple * 2.0));
    CHECK(y[1] == doctest::Approx(kinetic_diag * 2.0 + couple * (1.0 - 1.0)));
    CHECK(y[2] == doctest::Approx(kinetic_diag * -1.0 + couple * 2.0));

    // Halving the mass doubles the kinetic part.
    const DiscreteHamiltonian H2 = assemble(box, h, mass / 2.0,
                                            make_profile(BumpKind::tent, 1.0, 1.0),
                                            zero_field(sites));
    CHECK(H2.diag[0] == doctest::Approx(2.0 * kinetic_diag));
    CHECK(H2.axis_coupling[0] == doctest::Approx(2.0 * couple));
}

TEST_CASE("assembly samples the potential at the nodes") {
    const Cube box = make_cube({1.0}, 1.0);
    const auto sites = required_sites(box, 1.0);
    // Constant amplitude 1 under a unit tent cover gives potential 1 at
    // every node, on top of the kinetic diagonal.
    const DiscreteHamiltonian H = assemble(box, 0.5, 1.0, make_profile(BumpKind::tent, 1.0, 1.0),
                                           const_field(sites, 1.0));
    const double kinetic_diag = 1.0 / (1.0 * 0.25);
    for (double dv : H.diag) CHECK(dv == doctest::Approx(kinetic_diag + 1.0));
}

TEST_CASE("pair assembly sums kinetic, field and interaction terms") {
    const TwoParticleBox box = make_box(make_cube({1.0}, 1.0), make_cube({1.0}, 1.0));
    const double h = 0.5;
    const double m1 = 1.0, m2 = 2.0;
    const auto sites = required_sites(box, 1.0);
    const InteractionSpec inter = make_interaction(InteractionKind::square_well, -3.0, 0.6);
    const BumpProfile prof = make_profile(BumpKind::tent, 1.0, 1.0);
    const DiscreteHamiltonian H = assemble(box, h, m1, m2, inter, prof, const_field(sites, 1.0));
    REQUIRE(H.dim() == 9);
    REQUIRE(H.axis_coupling.size() == 2);
    CHECK(H.axis_coupling[0] == doctest::Approx(-1.0 / (2.0 * m1 * h * h)));
    CHECK(H.axis_coupling[1] == doctest::Approx(-1.0 / (2.0 * m2 * h * h)));

    const double kinetic = 1.0 / (m1 * h * h) + 1.0 / (m2 * h * h);
    // Node (0.5, 0.5): fields give 1 + 1, separation 0 turns the well on.
    CHECK(H.diag[0] == doctest::Approx(kinetic + 2.0 - 3.0));
    // Node (0.5, 1.5): separation 1 > 0.6, well off.
    CHECK(H.diag[2] == doctest::Approx(kinetic + 2.0));

    // Every off-diagonal entry is one of the two couplings; matrix symmetric.
    std::map<std::pair<long, long>, double> entries;
    H.for_each_entry([&](long i, long j, double v) { entries[{i, j}] = v; });
    CHECK(entries.size() == static_cast<size_t>(H.nonzero_count()));
    long offdiag = 0;
    for (const auto& [ij, v] : entries) {
        if (ij.first == ij.second) continue;
        ++offdiag;
        CHECK((v == doctest::Approx(H.axis_coupling[0]) || v == doctest::Approx(H.axis_coupling[1])));
        REQUIRE(entries.count({ij.second, ij.first}) == 1);
        CHECK(entries[{ij.second, ij.first}] == doctest::Approx(v));
    }
    // 2d grid of 3x3 nodes: 2 * (2 edges per row * 3 rows) twice (both triangles).
    CHECK(offdiag == 24);

    // apply agrees with the entry list on a random-ish vector.
    std::vector<double> x(9);
    for (int i = 0; i < 9; ++i) x[i] = std::sin(1.0 + i);
    const auto y = H.apply(x);
    std::vector<double> z(9, 0.0);
    for (const auto& [ij, v] : entries) z[ij.first] += v * x[ij.second];
    for (int i = 0; i < 9; ++i) CHECK(y[i] == doctest::Approx(z[i]).epsilon(1e-13));
}

TEST_CASE("assembly rejects fields that do not cover the box") {
    const Cube box = make_cube({1.0}, 1.0);
    const auto sites = required_sites(box, 1.0);
    REQUIRE(sites.size() >= 3);
    auto too_few = sites;
    too_few.pop_back();
    CHECK_THROWS_AS(assemble(box, 0.5, 1.0, make_profile(BumpKind::tent, 1.0, 1.0),
                             zero_field(too_few)),
                    std::invalid_argument);
}

TEST_CASE("required sites follow the profile reach") {
    // [0, 2] with reach 1 pulls in sites of [-1, 3].
    const auto s1 = required_sites(make_cube({1.0}, 1.0), 1.0);
    CHECK(s1.size() == 5);
    CHECK(s1.front() == Site{-1});
    CHECK(s1.back() == Site{3});

    // Pair boxes merge both factors' site lists without duplicates.
    const TwoParticleBox b = make_box(make_cube({1.0}, 1.0), make_cube({2.0}, 1.0));
    const auto s2 = required_sites(b, 1.0);
    CHECK(s2.size() == 6);  // [-1, 4]
    CHECK(s2.front() == Site{-1});
    CHECK(s2.back() == Site{4});
}

TEST_CASE("spec level assembly and budget") {
    HamiltonianSpec spec;
    spec.particles = 2;
    spec.box = make_box(make_cube({2.0}, 2.0), make_cube({2.0}, 2.0));
    spec.spacing = 0.5;
    spec.interaction = make_interaction(InteractionKind::square_well, 1.5, 1.0);
    spec.profile = make_profile(BumpKind::tent, 1.0, 1.0);
    spec.ensemble = make_ensemble(EnsembleKind::iid_uniform, 2.0);

    const auto sites = required_sites(spec);
    const FieldRealization f = sample_amplitudes(spec.ensemble, sites, 3, 1);
    const DiscreteHamiltonian H = assemble(spec, f);
    CHECK(H.dim() == 49);
    CHECK(H.provenance_seed == 3);
    CHECK(H.provenance_trial == 1);

    // Unit tent cover: max lattice sum 1, so the ceiling is |U| + 2 * bound.
    CHECK(sup_norm_budget(spec) == doctest::Approx(1.5 + 2.0 * 2.0).epsilon(1e-9));

    // Every diagonal entry respects kinetic + budget.
    const double kinetic = 2.0 / 0.25;
    for (double dv : H.diag) {
        CHECK(dv <= kinetic + sup_norm_budget(spec) + 1e-9);
        CHECK(dv >= kinetic - sup_norm_budget(spec) - 1e-9);
    }

    // One particle drops the interaction and the second factor.
    spec.particles = 1;
    const auto s1 = required_sites(spec);
    const FieldRealization f1 = sample_amplitudes(spec.ensemble, s1, 3, 1);
    CHECK(assemble(spec, f1).dim() == 7);
    CHECK(sup_norm_budget(spec) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("diagonal operators work without a grid") {
    const DiscreteHamiltonian D = DiscreteHamiltonian::diagonal({3.0, -1.0, 0.5});
    CHECK(D.dim() == 3);
    const auto y = D.apply({1.0, 1.0, 2.0});
    CHECK(y[0] == 3.0);
    CHECK(y[1] == -1.0);
    CHECK(y[2] == 1.0);
    CHECK(D.nonzero_count() == 3);
}
