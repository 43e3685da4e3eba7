#include "anderson/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anderson {

namespace {

void check_same_dim(const TwoParticleBox& a, const TwoParticleBox& b, const char* who) {
    if (a.dim() != b.dim()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

bool Cube::contains(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim()) throw std::invalid_argument("Cube::contains: dimension mismatch");
    for (int i = 0; i < dim(); ++i) {
        if (x[i] < lo(i) || x[i] > hi(i)) return false;
    }
    return true;
}

bool Cube::intersects(const Cube& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("Cube::intersects: dimension mismatch");
    for (int i = 0; i < dim(); ++i) {
        if (hi(i) < other.lo(i) || other.hi(i) < lo(i)) return false;
    }
    return true;
}

double Cube::volume() const {
    return std::pow(2.0 * half_width, dim());
}

Cube make_cube(std::vector<double> center, double half_width) {
    if (center.empty()) throw std::invalid_argument("make_cube: empty center");
    if (!(half_width > 0.0)) throw std::invalid_argument("make_cube: half_width must be positive");
    return Cube{std::move(center), half_width};
}

TwoParticleBox make_box(Cube factor1, Cube factor2) {
    if (factor1.dim() != factor2.dim()) throw std::invalid_argument("make_box: factor dimension mismatch");
    return TwoParticleBox{std::move(factor1), std::move(factor2)};
}

TwoParticleBox swapped(const TwoParticleBox& b) {
    return TwoParticleBox{b.factor2, b.factor1};
}

std::vector<double> center_point(const TwoParticleBox& b) {
    std::vector<double> u = b.factor1.center;
    u.insert(u.end(), b.factor2.center.begin(), b.factor2.center.end());
    return u;
}

std::vector<double> swap_halves(const std::vector<double>& x) {
    if (x.size() % 2 != 0) throw std::invalid_argument("swap_halves: odd length");
    const size_t d = x.size() / 2;
    std::vector<double> y(x.size());
    std::copy(x.begin() + d, x.end(), y.begin());
    std::copy(x.begin(), x.begin() + d, y.begin() + d);
    return y;
}

double dist_max(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dist_max: length mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

std::vector<Site> lattice_sites(const Cube& c) {
    // 1e-9 slack keeps integer-boundary cubes closed under rounding noise.
    const int d = c.dim();
    std::vector<int> lo(d), hi(d);
    long count = 1;
    for (int i = 0; i < d; ++i) {
        lo[i] = static_cast<int>(std::ceil(c.lo(i) - 1e-9));
        hi[i] = static_cast<int>(std::floor(c.hi(i) + 1e-9));
        if (hi[i] < lo[i]) return {};
        count *= hi[i] - lo[i] + 1;
    }
    std::vector<Site> out;
    out.reserve(count);
    Site s(lo.begin(), lo.end());
    while (true) {
        out.push_back(s);
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
    return out;
}

long lattice_count(const Cube& c) {
    long count = 1;
    for (int i = 0; i < c.dim(); ++i) {
        const int lo = static_cast<int>(std::ceil(c.lo(i) - 1e-9));
        const int hi = static_cast<int>(std::floor(c.hi(i) + 1e-9));
        if (hi < lo) return 0;
        count *= hi - lo + 1;
    }
    return count;
}

Cube projection(const TwoParticleBox& b, int particle) {
    if (particle == 1) return b.factor1;
    if (particle == 2) return b.factor2;
    throw std::invalid_argument("projection: particle index must be 1 or 2");
}

bool CubeUnion::contains(const std::vector<double>& x) const {
    for (const auto& p : parts) {
        if (p.contains(x)) return true;
    }
    return false;
}

bool CubeUnion::intersects(const Cube& c) const {
    for (const auto& p : parts) {
        if (p.intersects(c)) return true;
    }
    return false;
}

bool CubeUnion::intersects(const CubeUnion& o) const {
    for (const auto& p : o.parts) {
        if (intersects(p)) return true;
    }
    return false;
}

CubeUnion shadow(const TwoParticleBox& b) {
    return CubeUnion{{b.factor1, b.factor2}};
}

Cube enlarged(const Cube& c, double r) {
    if (r < 0.0) throw std::invalid_argument("enlarged: negative enlargement");
    Cube out = c;
    out.half_width += r;
    return out;
}

TwoParticleBox enlarged(const TwoParticleBox& b, double r) {
    return TwoParticleBox{enlarged(b.factor1, r), enlarged(b.factor2, r)};
}

bool is_sufficiently_distant(const TwoParticleBox& a, const TwoParticleBox& b,
                             double reach, double multiplier) {
    check_same_dim(a, b, "is_sufficiently_distant");
    if (!(reach >= 0.0)) throw std::invalid_argument("is_sufficiently_distant: negative reach");
    if (!(multiplier > 0.0)) throw std::invalid_argument("is_sufficiently_distant: multiplier must be positive");
    const std::vector<double> u = center_point(a);
    const std::vector<double> v = center_point(b);
    const double lhs = std::min(dist_max(u, v), dist_max(swap_halves(u), v));
    const double biggest = std::max(std::max(a.factor1.half_width, a.factor2.half_width),
                                    std::max(b.factor1.half_width, b.factor2.half_width));
    return lhs > multiplier * (biggest + reach);
}

std::string to_string(SeparationCase c) {
    switch (c) {
        case SeparationCase::A: return "A";
        case SeparationCase::B: return "B";
        case SeparationCase::C: return "C";
        case SeparationCase::D: return "D";
        case SeparationCase::E: return "E";
    }
    return "?";
}

std::string SeparationVerdict::kind() const {
    return completely_separated ? "completely_separated" : "partially_separated_only";
}

SeparationVerdict classify_separation(const TwoParticleBox& a, const TwoParticleBox& b,
                                      double reach, double multiplier) {
    check_same_dim(a, b, "classify_separation");
    if (!is_sufficiently_distant(a, b, reach, multiplier)) {
        throw PreconditionError("classify_separation: boxes are not sufficiently distant");
    }
    const TwoParticleBox ea = enlarged(a, reach);
    const TwoParticleBox eb = enlarged(b, reach);
    const Cube& a1 = ea.factor1;
    const Cube& a2 = ea.factor2;
    const Cube& b1 = eb.factor1;
    const Cube& b2 = eb.factor2;
    const CubeUnion sa = shadow(ea);
    const CubeUnion sb = shadow(eb);

    SeparationVerdict v;
    if (!a1.intersects(a2) && !sb.intersects(a1)) v.cases.push_back(SeparationCase::A);
    if (!a2.intersects(a1) && !sb.intersects(a2)) v.cases.push_back(SeparationCase::B);
    if (!b1.intersects(b2) && !sa.intersects(b1)) v.cases.push_back(SeparationCase::C);
    if (!b2.intersects(b1) && !sa.intersects(b2)) v.cases.push_back(SeparationCase::D);
    if (!sa.intersects(sb)) v.cases.push_back(SeparationCase::E);
    v.completely_separated =
        std::find(v.cases.begin(), v.cases.end(), SeparationCase::E) != v.cases.end();
    if (v.cases.empty()) {
        // Unreachable for sufficiently distant pairs; kept as a hard check.
        throw std::logic_error("classify_separation: no case holds");
    }
    return v;
}

}  // namespace anderson
