#pragma once

// Standard finite rotation groups in SO(3), exact over cyclotomic numbers:
// generator matrices, element sets, and identification of a matrix group
// against the standard copies (cyclic/dihedral about the z-axis, tetrahedral,
// octahedral, icosahedral in their coordinate-aligned positions).

#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "equivect/exact_linalg.hpp"
#include "equivect/group.hpp"

namespace equivect {

// Rotation by 2*pi/n about the z-axis.
inline ExactMat3 standard_rotation_a(long n, long conductor) {
    if (n < 1) throw std::invalid_argument("rotation order must be positive");
    if (conductor % 4 != 0 || conductor % n != 0)
        throw std::invalid_argument("conductor cannot express rotation a_" + std::to_string(n));
    const CycloNum c = cyclo_cos2pi_frac(1, n, conductor);
    const CycloNum s = cyclo_sin2pi_frac(1, n, conductor);
    ExactMat3 r = ExactMat3::zero(conductor);
    r.at(0, 0) = c;
    r.at(0, 1) = -s;
    r.at(1, 0) = s;
    r.at(1, 1) = c;
    r.at(2, 2) = CycloNum::one(conductor);
    return r;
}

// Rotation by pi about the x-axis: diag(1, -1, -1).
inline ExactMat3 standard_rotation_b(long conductor) {
    return ExactMat3::diag_rational(conductor, 1, -1, -1);
}

// Cyclic coordinate permutation x -> y -> z -> x (rotation by 2*pi/3 about
// the (1,1,1) axis).
inline ExactMat3 coordinate_cycle(long conductor) {
    ExactMat3 r = ExactMat3::zero(conductor);
    r.at(1, 0) = CycloNum::one(conductor);
    r.at(2, 1) = CycloNum::one(conductor);
    r.at(0, 2) = CycloNum::one(conductor);
    return r;
}

// Tetrahedral group generators: pi-rotation about z, plus the 3-cycle.
inline std::vector<ExactMat3> tetra_generators(long conductor) {
    return {ExactMat3::diag_rational(conductor, -1, -1, 1), coordinate_cycle(conductor)};
}

// Octahedral group generators: quarter turn about z, plus the 3-cycle.
inline std::vector<ExactMat3> octa_generators(long conductor) {
    return {standard_rotation_a(4, conductor), coordinate_cycle(conductor)};
}

// Icosahedral group generators: the 5-fold rotation about (0, 1, phi), plus
// the 3-cycle.  Entries lie in Q(sqrt 5), which needs 5 | conductor.
inline std::vector<ExactMat3> icosa_generators(long conductor) {
    if (conductor % 20 != 0)
        throw std::invalid_argument("icosahedral generators need a conductor divisible by 20");
    const CycloNum phi = cyclo_golden_ratio(conductor);
    const CycloNum one = CycloNum::one(conductor);
    const Rational half(1, 2);
    ExactMat3 r5 = ExactMat3::zero(conductor);
    r5.at(0, 0) = half * (phi - one);
    r5.at(0, 1) = half * (-phi);
    r5.at(0, 2) = half * one;
    r5.at(1, 0) = half * phi;
    r5.at(1, 1) = half * one;
    r5.at(1, 2) = half * (phi - one);
    r5.at(2, 0) = half * (-one);
    r5.at(2, 1) = half * (phi - one);
    r5.at(2, 2) = half * phi;
    return {r5, coordinate_cycle(conductor)};
}

enum class PointGroupKind { kCyclic, kDihedral, kTetrahedral, kOctahedral, kIcosahedral };

struct PointGroupTag {
    PointGroupKind kind = PointGroupKind::kCyclic;
    long n = 1;  // polygon order; meaningful for cyclic/dihedral only

    long order() const {
        switch (kind) {
            case PointGroupKind::kCyclic: return n;
            case PointGroupKind::kDihedral: return 2 * n;
            case PointGroupKind::kTetrahedral: return 12;
            case PointGroupKind::kOctahedral: return 24;
            case PointGroupKind::kIcosahedral: return 60;
        }
        throw std::logic_error("bad point group kind");
    }

    std::string to_string() const {
        switch (kind) {
            case PointGroupKind::kCyclic: return "Z" + std::to_string(n);
            case PointGroupKind::kDihedral: return "D" + std::to_string(n);
            case PointGroupKind::kTetrahedral: return "T";
            case PointGroupKind::kOctahedral: return "O";
            case PointGroupKind::kIcosahedral: return "I";
        }
        throw std::logic_error("bad point group kind");
    }

    friend bool operator==(const PointGroupTag& a, const PointGroupTag& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == PointGroupKind::kCyclic || a.kind == PointGroupKind::kDihedral)
            return a.n == b.n;
        return true;
    }
};

// Parse "Z7" / "D4" / "T" / "O" / "I".
inline std::optional<PointGroupTag> parse_point_group_tag(const std::string& s) {
    if (s == "T") return PointGroupTag{PointGroupKind::kTetrahedral, 0};
    if (s == "O") return PointGroupTag{PointGroupKind::kOctahedral, 0};
    if (s == "I") return PointGroupTag{PointGroupKind::kIcosahedral, 0};
    if (s.size() < 2 || (s[0] != 'Z' && s[0] != 'D')) return std::nullopt;
    long n = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
        n = 10 * n + (s[i] - '0');
    }
    if (n < 1) return std::nullopt;
    if (s[0] == 'Z') return PointGroupTag{PointGroupKind::kCyclic, n};
    return PointGroupTag{PointGroupKind::kDihedral, n};
}

inline std::vector<ExactMat3> point_group_generators(const PointGroupTag& tag, long conductor) {
    switch (tag.kind) {
        case PointGroupKind::kCyclic:
            if (tag.n == 1) return {ExactMat3::identity(conductor)};
            return {standard_rotation_a(tag.n, conductor)};
        case PointGroupKind::kDihedral:
            if (tag.n == 1) return {standard_rotation_b(conductor)};
            return {standard_rotation_a(tag.n, conductor), standard_rotation_b(conductor)};
        case PointGroupKind::kTetrahedral: return tetra_generators(conductor);
        case PointGroupKind::kOctahedral: return octa_generators(conductor);
        case PointGroupKind::kIcosahedral: return icosa_generators(conductor);
    }
    throw std::logic_error("bad point group kind");
}

using ExactMat3Set = std::set<ExactMat3, ExactMat3Less>;

// Closure of a generator list under multiplication.
inline ExactMat3Set matrix_group_closure(const std::vector<ExactMat3>& gens, long conductor,
                                         std::size_t cap = 10000) {
    ExactMat3Set seen;
    std::queue<ExactMat3> todo;
    seen.insert(ExactMat3::identity(conductor));
    todo.push(ExactMat3::identity(conductor));
    while (!todo.empty()) {
        const ExactMat3 cur = todo.front();
        todo.pop();
        for (const auto& g : gens) {
            ExactMat3 next = g * cur;
            if (seen.insert(next).second) {
                if (seen.size() > cap) throw std::runtime_error("matrix group too large");
                todo.push(next);
            }
        }
    }
    return seen;
}

inline ExactMat3Set point_group_elements(const PointGroupTag& tag, long conductor) {
    ExactMat3Set s = matrix_group_closure(point_group_generators(tag, conductor), conductor);
    if (static_cast<long>(s.size()) != tag.order())
        throw std::logic_error("standard group " + tag.to_string() + " has wrong order");
    return s;
}

// Match a matrix group against the standard copies.  Only groups in standard
// position are recognized; everything else returns nullopt.
inline std::optional<PointGroupTag> identify_standard_image(const ExactMat3Set& image,
                                                            long conductor) {
    const long n = static_cast<long>(image.size());
    std::vector<PointGroupTag> candidates;
    candidates.push_back({PointGroupKind::kCyclic, n});
    if (n % 2 == 0 && n >= 4) candidates.push_back({PointGroupKind::kDihedral, n / 2});
    if (n == 12) candidates.push_back({PointGroupKind::kTetrahedral, 0});
    if (n == 24) candidates.push_back({PointGroupKind::kOctahedral, 0});
    if (n == 60) candidates.push_back({PointGroupKind::kIcosahedral, 0});
    for (const auto& tag : candidates) {
        // A standard copy whose matrix entries do not live at this conductor
        // cannot equal the image (whose entries do), so it is safe to skip.
        if ((tag.kind == PointGroupKind::kCyclic || tag.kind == PointGroupKind::kDihedral) &&
            (conductor % 4 != 0 || conductor % tag.n != 0))
            continue;
        if (tag.kind == PointGroupKind::kIcosahedral && conductor % 20 != 0) continue;
        if (point_group_elements(tag, conductor) == image) return tag;
    }
    return std::nullopt;
}

// The one near-miss worth a dedicated diagnostic: {id, diag(1,-1,-1)} is a
// two-element rotation group about the x-axis, conjugate to the standard Z2
// but not equal to it.
inline bool is_x_axis_z2(const ExactMat3Set& image, long conductor) {
    ExactMat3Set d1;
    d1.insert(ExactMat3::identity(conductor));
    d1.insert(standard_rotation_b(conductor));
    return image == d1;
}

// A representation of a finite group by exact 3x3 matrices, stored per
// element and verified multiplicative on all pairs.
struct MatrixRep3 {
    const FiniteGroup* group = nullptr;
    long conductor = 1;
    std::vector<ExactMat3> images;

    const ExactMat3& operator()(int g) const { return images[g]; }

    void verify_multiplicative() const {
        for (int g = 0; g < group->order; ++g)
            for (int h = 0; h < group->order; ++h)
                if (images[g] * images[h] != images[group->mul(g, h)])
                    throw std::runtime_error("rotation assignment is not a homomorphism");
    }

    ExactMat3Set image_set() const {
        return {images.begin(), images.end()};
    }

    Subgroup kernel_subgroup() const {
        const ExactMat3 id = ExactMat3::identity(conductor);
        std::vector<int> members;
        for (int g = 0; g < group->order; ++g)
            if (images[g] == id) members.push_back(g);
        return make_subgroup(*group, members);
    }
};

inline MatrixRep3 extend_rotation_rep(const FiniteGroup& g,
                                      const std::vector<ExactMat3>& gen_images, long conductor) {
    MatrixRep3 rep;
    rep.group = &g;
    rep.conductor = conductor;
    rep.images = g.extend_from_generators<ExactMat3>(
        gen_images, ExactMat3::identity(conductor),
        [](const ExactMat3& a, const ExactMat3& b) { return a * b; });
    rep.verify_multiplicative();
    return rep;
}

}  // namespace equivect
