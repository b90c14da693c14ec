#pragma once

// End-to-end classification pipeline: from a finite permutation group with a
// rotation assignment on its generators to the compiled multiplicity-triple
// problem for one fiber character.
//
// Steps: build the group; extend the generator rotations to an exact matrix
// representation; take its kernel H and a character chi of H; pass to the
// stabilizer of chi; identify the rotation image against the standard point
// groups; build the matching cell model and the antipodal covering group;
// verify the cell action and the arc coverage; compute stabilizers on both
// the sphere and the projective plane side; compile the constraint system.

#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "equivect/characters.hpp"
#include "equivect/errors.hpp"
#include "equivect/group.hpp"
#include "equivect/polyhedra.hpp"
#include "equivect/rotations.hpp"
#include "equivect/semigroup.hpp"

namespace equivect {

struct RhoToken {
    enum class Kind { kAxisRotation, kFlip, kTetra, kOcta, kIcosa };
    Kind kind = Kind::kAxisRotation;
    long n = 1;     // axis rotation order
    int index = 0;  // generator index for the polyhedral families (0 or 1)
};

struct GroupSpec {
    std::string name;
    int points = 1;
    std::vector<Permutation> generators;
    std::vector<RhoToken> rho;
    std::optional<std::string> expected_image;
};

inline long token_conductor_need(const RhoToken& t) {
    switch (t.kind) {
        case RhoToken::Kind::kAxisRotation: return std::lcm(4L, t.n);
        case RhoToken::Kind::kIcosa: return 20;
        default: return 4;
    }
}

inline ExactMat3 token_matrix(const RhoToken& t, long conductor) {
    switch (t.kind) {
        case RhoToken::Kind::kAxisRotation: return standard_rotation_a(t.n, conductor);
        case RhoToken::Kind::kFlip: return standard_rotation_b(conductor);
        case RhoToken::Kind::kTetra: return tetra_generators(conductor).at(t.index);
        case RhoToken::Kind::kOcta: return octa_generators(conductor).at(t.index);
        case RhoToken::Kind::kIcosa: return icosa_generators(conductor).at(t.index);
    }
    throw InputError("unknown rotation token");
}

inline long model_conductor_need(const PointGroupTag& tag) {
    switch (tag.kind) {
        case PointGroupKind::kCyclic:
        case PointGroupKind::kDihedral:
            return std::lcm(4L, tag.n % 2 ? 2 * tag.n : tag.n);
        case PointGroupKind::kIcosahedral: return 20;
        default: return 4;
    }
}

struct ClassificationContext {
    GroupSpec spec;
    FiniteGroup G;
    long conductor = 4;
    MatrixRep3 rep;  // on G
    Subgroup H;
    MaterializedSubgroup Hm;
    CharacterTable h_table;
    int chi = 0;
    long chi_deg = 1;
    MaterializedSubgroup Gchi;
    MatrixRep3 rep_chi;  // restriction to Gchi.group
    PointGroupTag image;
    bool twin_regime = false;
    SurfaceModel model;
    CoveringGroup cover;  // over Gchi.group
    ArcStabilizers sphere;
    ArcStabilizers proj;
    std::vector<int> hhat_members;     // kernel of the covering action (cover indices)
    std::vector<CycloNum> chi_hat;     // fiber character on them
    std::vector<int> h_locals_chi;     // H as local indices of Gchi.group
    std::vector<CycloNum> chi_on_h;    // fiber character on those
    TripleProblem problem;             // projective-plane side
    int g1 = -1;                       // element of Gchi projecting to the basic rotation
};

namespace detail {

inline void validate_spec(const GroupSpec& spec) {
    if (spec.points < 1) throw InputError("spec: points must be positive");
    if (spec.generators.size() != spec.rho.size())
        throw InputError("spec: one rotation token per generator required");
    std::set<Permutation> distinct;
    for (const auto& p : spec.generators) {
        if (static_cast<int>(p.size()) != spec.points)
            throw InputError("spec: generator degree does not match points");
        std::vector<int> seen(p.size(), 0);
        for (int v : p)
            if (v < 0 || v >= spec.points || seen[v]++)
                throw InputError("spec: generator is not a permutation");
        if (!distinct.insert(p).second)
            throw InputError("spec: duplicate generator permutation");
    }
    for (const auto& t : spec.rho) {
        if (t.kind == RhoToken::Kind::kAxisRotation && t.n < 1)
            throw InputError("spec: rotation order must be positive");
        if (t.index < 0 || t.index > 1) throw InputError("spec: generator token index out of range");
    }
}

}  // namespace detail

inline std::unique_ptr<ClassificationContext> build_context(const GroupSpec& spec, int chi) {
    detail::validate_spec(spec);
    auto ctx = std::make_unique<ClassificationContext>();
    ctx->spec = spec;

    std::vector<Permutation> gens = spec.generators;
    std::vector<RhoToken> tokens = spec.rho;
    if (gens.empty()) {
        Permutation id(spec.points);
        std::iota(id.begin(), id.end(), 0);
        gens.push_back(id);
        tokens.push_back({RhoToken::Kind::kAxisRotation, 1, 0});
    }
    ctx->G = build_group(gens, 10000, spec.name);
    verify_group_axioms(ctx->G);

    long M = 4;
    for (const auto& t : tokens) M = std::lcm(M, token_conductor_need(t));

    auto extend_at = [&](long conductor) {
        std::vector<ExactMat3> gen_images;
        for (const auto& t : tokens) gen_images.push_back(token_matrix(t, conductor));
        try {
            return extend_rotation_rep(ctx->G, gen_images, conductor);
        } catch (const std::runtime_error& e) {
            throw InputError(std::string("spec: rotation tokens are inconsistent: ") + e.what());
        }
    };
    ctx->rep = extend_at(M);

    if (spec.expected_image) {
        // The declared image is a property of the whole group, independent of
        // the fiber character chosen below.
        const auto want = parse_point_group_tag(*spec.expected_image);
        if (!want) throw InputError("spec: unparseable expected_image");
        const auto got = identify_standard_image(ctx->rep.image_set(), M);
        if (!got || !(*got == *want))
            throw InputError("spec: expected image " + *spec.expected_image +
                             (got ? " but identified " + got->to_string()
                                  : " but the image is not in standard position"));
    }

    ctx->H = ctx->rep.kernel_subgroup();
    ctx->Hm = materialize(ctx->H);
    ctx->h_table = character_table(ctx->Hm.group);
    if (chi < 0 || chi >= ctx->h_table.irrep_count())
        throw InputError("chi index out of range: the kernel has " +
                         std::to_string(ctx->h_table.irrep_count()) + " characters");
    ctx->chi = chi;
    ctx->chi_deg = ctx->h_table.degrees[chi];

    ctx->Gchi = materialize(chi_stabilizer(ctx->G, ctx->Hm, ctx->h_table, chi));

    auto restrict_rep = [&]() {
        MatrixRep3 r;
        r.group = &ctx->Gchi.group;
        r.conductor = ctx->rep.conductor;
        for (int x : ctx->Gchi.embed) r.images.push_back(ctx->rep.images[x]);
        return r;
    };
    ctx->rep_chi = restrict_rep();

    const auto image_set = ctx->rep_chi.image_set();
    const auto tag = identify_standard_image(image_set, M);
    if (!tag) {
        if (is_x_axis_z2(image_set, M))
            throw ScopeError(
                "rotation image is the half-turn about the x-axis; pose the action with its "
                "half-turn about the z-axis (standard Z2)");
        throw ScopeError("rotation image of the character stabilizer is not in standard position");
    }
    ctx->image = *tag;
    if (ctx->image.kind == PointGroupKind::kDihedral && ctx->image.n < 2)
        throw ScopeError("dihedral image of order 2 is not in the supported table");
    ctx->twin_regime = ctx->image.kind == PointGroupKind::kCyclic && ctx->image.n % 2 == 1;

    const long Mfull = std::lcm(M, model_conductor_need(ctx->image));
    if (Mfull != M) {
        ctx->conductor = Mfull;
        ctx->rep = extend_at(Mfull);
        ctx->rep_chi = restrict_rep();
    } else {
        ctx->conductor = M;
    }

    ctx->model = model_for_tag(ctx->image, ctx->conductor);
    ctx->cover = build_covering_group(ctx->Gchi.group);

    const ActionFn sphere_act = rotation_action(ctx->rep_chi);
    const ActionFn cover_act = covering_action(ctx->cover, ctx->rep_chi);
    verify_model_action(ctx->model, ctx->cover.group, cover_act);
    verify_arc_coverage(ctx->model, ctx->cover.group, cover_act);
    ctx->sphere = compute_arc_stabilizers(ctx->Gchi.group, sphere_act, ctx->model);
    ctx->proj = compute_arc_stabilizers(ctx->cover.group, cover_act, ctx->model);

    // Kernel of the covering action and the fiber character on it.  The
    // antipodal element inverts no fiber direction here: -rho(g) = id is
    // impossible for rotations, so the kernel is H lifted with sign 0.
    auto chi_of_G_index = [&](int g_index) {
        return ctx->h_table.value(ctx->chi, ctx->Hm.local(g_index));
    };
    const ExactMat3 id3 = ExactMat3::identity(ctx->conductor);
    for (int x = 0; x < ctx->cover.group.order; ++x)
        if (cover_act(x) == id3) {
            ctx->hhat_members.push_back(x);
            ctx->chi_hat.push_back(chi_of_G_index(ctx->Gchi.embed[ctx->cover.p1[x]]));
        }
    if (static_cast<int>(ctx->hhat_members.size()) != ctx->Hm.group.order)
        throw std::logic_error("covering action kernel does not match H");

    for (int l = 0; l < ctx->Gchi.group.order; ++l)
        if (ctx->H.contains(ctx->Gchi.embed[l])) {
            ctx->h_locals_chi.push_back(l);
            ctx->chi_on_h.push_back(chi_of_G_index(ctx->Gchi.embed[l]));
        }

    ctx->problem = build_triple_problem(ctx->cover.group, ctx->proj, ctx->hhat_members,
                                        ctx->chi_hat, ctx->chi_deg);

    if (ctx->twin_regime) {
        const ExactMat3 a = standard_rotation_a(ctx->image.n, ctx->conductor);
        for (int g = 0; g < ctx->Gchi.group.order && ctx->g1 < 0; ++g)
            if (ctx->rep_chi.images[g] == a) ctx->g1 = g;
        if (ctx->g1 < 0) throw std::logic_error("basic rotation has no preimage");
    }
    return ctx;
}

}  // namespace equivect
