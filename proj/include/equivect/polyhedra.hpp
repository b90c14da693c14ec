#pragma once

// Invariant cell models of the sphere for the standard rotation groups:
// bipyramids over regular polygons (with a degenerate bigon for very small
// orders), the octahedron, and the icosahedron.  Each model carries the
// distinguished cells and points that drive the classification: an anchor
// point, a fundamental arc on the equator/1-skeleton, the two straight chains
// joining the anchor to the arc endpoints, and the edge subset the arc orbit
// must cover.
//
// The antipodal map is handled through a covering group: base x Z2 acting by
// g -> +/- rho(g).  Stabilizers on the projective plane side are ordinary
// pointwise stabilizers in the covering group.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "equivect/exact_linalg.hpp"
#include "equivect/group.hpp"
#include "equivect/rotations.hpp"

namespace equivect {

// ---------------------------------------------------------------------------
// Covering group: base x Z2 with the second factor acting as -id.

struct CoveringGroup {
    FiniteGroup group;
    const FiniteGroup* base = nullptr;
    std::vector<int> p1;     // covering index -> base index
    std::vector<int> eps;    // covering index -> 0 (+rho) or 1 (-rho)
    std::vector<int> lift0;  // base index -> covering index with eps = 0
    int central = -1;        // the (id, 1) element

    int lift(int g, int j) const { return j ? group.mul(central, lift0[g]) : lift0[g]; }
};

inline CoveringGroup build_covering_group(const FiniteGroup& base) {
    if (base.elements.empty())
        throw std::invalid_argument("covering group needs realizing permutations");
    const size_t deg = base.elements[0].size();
    auto lifted = [deg](const Permutation& p, int j) {
        Permutation q(2 * deg);
        for (size_t x = 0; x < deg; ++x) {
            q[x] = p[x] + (j ? static_cast<int>(deg) : 0);
            q[x + deg] = p[x] + (j ? 0 : static_cast<int>(deg));
        }
        return q;
    };

    std::vector<Permutation> gens;
    for (int gi : base.generators) gens.push_back(lifted(base.elements[gi], 0));
    gens.push_back(lifted(base.elements[base.id_index], 1));

    CoveringGroup cg;
    cg.base = &base;
    cg.group = build_group(gens, 2 * base.order + 1,
                           base.name.empty() ? "covering" : base.name + "-covering");
    if (cg.group.order != 2 * base.order)
        throw std::logic_error("covering group has wrong order");

    std::map<Permutation, int> base_index;
    for (int g = 0; g < base.order; ++g) base_index[base.elements[g]] = g;

    cg.p1.assign(cg.group.order, -1);
    cg.eps.assign(cg.group.order, 0);
    cg.lift0.assign(base.order, -1);
    for (int x = 0; x < cg.group.order; ++x) {
        const Permutation& q = cg.group.elements[x];
        const int j = q[0] >= static_cast<int>(deg) ? 1 : 0;
        Permutation p(deg);
        for (size_t y = 0; y < deg; ++y) p[y] = q[y] % static_cast<int>(deg);
        cg.p1[x] = base_index.at(p);
        cg.eps[x] = j;
        if (j == 0) cg.lift0[cg.p1[x]] = x;
        if (j == 1 && cg.p1[x] == base.id_index) cg.central = x;
    }
    if (cg.central < 0) throw std::logic_error("covering group: central element not found");
    return cg;
}

// ---------------------------------------------------------------------------
// Surface models.

struct SurfaceModel {
    std::string name;
    long conductor = 1;
    long polygon = 0;  // equator vertex count for bipyramids, 0 otherwise

    std::vector<ExactVec3> vertices;
    struct Edge {
        int a = -1, b = -1;
        // Interior point, stored when the endpoints do not determine the edge
        // (the bigon's two equator arcs share both endpoints).
        std::optional<ExactVec3> witness;
    };
    std::vector<Edge> edges;
    struct Face {
        std::vector<int> vertices;  // sorted
        std::optional<ExactVec3> witness;
    };
    std::vector<Face> faces;
    std::vector<int> coverage_edges;  // edge indices the arc orbit must cover

    int base_vertex = 0;
    int base_edge = -1;
    int base_face = -1;  // face containing the anchor side
    int top_face = -1;
    ExactVec3 anchor_point;
    ExactVec3 arc_start;
    ExactVec3 arc_end;
    std::optional<ExactVec3> arc_witness;  // set when arc endpoints are antipodal
    bool arc_is_full_edge = false;

    ExactVec3 edge_midpoint(int e) const {
        if (edges[e].witness) return *edges[e].witness;
        return Rational(1, 2) * (vertices[edges[e].a] + vertices[edges[e].b]);
    }

    std::vector<ExactVec3> chain_start_points() const { return {anchor_point, arc_start}; }
    std::vector<ExactVec3> chain_end_points() const { return {anchor_point, arc_end}; }
    std::vector<ExactVec3> arc_points() const {
        std::vector<ExactVec3> pts{arc_start, arc_end};
        if (arc_witness) pts.push_back(*arc_witness);
        return pts;
    }

    int vertex_index(const ExactVec3& p) const {
        for (size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == p) return static_cast<int>(i);
        return -1;
    }

    int find_edge(int a, int b) const {
        for (size_t e = 0; e < edges.size(); ++e)
            if ((edges[e].a == a && edges[e].b == b) || (edges[e].a == b && edges[e].b == a))
                return static_cast<int>(e);
        return -1;
    }

    int edge_image(int e, const ExactMat3& m) const {
        const ExactVec3 pa = m * vertices[edges[e].a];
        const ExactVec3 pb = m * vertices[edges[e].b];
        const int ia = vertex_index(pa), ib = vertex_index(pb);
        if (ia < 0 || ib < 0) return -1;
        std::optional<ExactVec3> w;
        if (edges[e].witness) w = m * *edges[e].witness;
        for (size_t f = 0; f < edges.size(); ++f) {
            const bool ends_match = (edges[f].a == ia && edges[f].b == ib) ||
                                    (edges[f].a == ib && edges[f].b == ia);
            if (!ends_match) continue;
            if (edges[f].witness.has_value() != w.has_value()) continue;
            if (w && !(*edges[f].witness == *w)) continue;
            return static_cast<int>(f);
        }
        return -1;
    }

    int face_image(int f, const ExactMat3& m) const {
        std::vector<int> img;
        for (int v : faces[f].vertices) {
            const int iv = vertex_index(m * vertices[v]);
            if (iv < 0) return -1;
            img.push_back(iv);
        }
        std::sort(img.begin(), img.end());
        std::optional<ExactVec3> w;
        if (faces[f].witness) w = m * *faces[f].witness;
        for (size_t g = 0; g < faces.size(); ++g) {
            if (faces[g].vertices != img) continue;
            if (faces[g].witness.has_value() != w.has_value()) continue;
            if (w && !(*faces[g].witness == *w)) continue;
            return static_cast<int>(g);
        }
        return -1;
    }
};

inline SurfaceModel make_bipyramid_model(long m, long conductor) {
    if (m < 2) throw std::invalid_argument("bipyramid needs at least a bigon");
    if (conductor % 4 != 0 || conductor % m != 0)
        throw std::invalid_argument("bipyramid conductor must allow the polygon angles");
    SurfaceModel M;
    M.name = "K" + std::to_string(m);
    M.conductor = conductor;
    M.polygon = m;

    const CycloNum zero = CycloNum::zero(conductor);
    const CycloNum one = CycloNum::one(conductor);
    for (long k = 0; k < m; ++k)
        M.vertices.push_back({{cyclo_cos2pi_frac(k, m, conductor),
                               cyclo_sin2pi_frac(k, m, conductor), zero}});
    M.vertices.push_back({{zero, zero, one}});    // north, index m
    M.vertices.push_back({{zero, zero, -one}});   // south, index m + 1
    const int north = static_cast<int>(m), south = static_cast<int>(m) + 1;

    if (m == 2) {
        const ExactVec3 wplus = exact_vec3_rational(conductor, 0, 1, 0);
        const ExactVec3 wminus = exact_vec3_rational(conductor, 0, -1, 0);
        M.edges.push_back({0, 1, wplus});
        M.edges.push_back({0, 1, wminus});
        for (int k = 0; k < 2; ++k) M.edges.push_back({k, north, std::nullopt});
        for (int k = 0; k < 2; ++k) M.edges.push_back({k, south, std::nullopt});
        M.faces.push_back({{0, 1, north}, exact_vec3_rational(conductor, 0, 1, 1)});
        M.faces.push_back({{0, 1, north}, exact_vec3_rational(conductor, 0, -1, 1)});
        M.faces.push_back({{0, 1, south}, exact_vec3_rational(conductor, 0, 1, -1)});
        M.faces.push_back({{0, 1, south}, exact_vec3_rational(conductor, 0, -1, -1)});
        M.base_face = 2;
        M.top_face = 0;
    } else {
        for (long k = 0; k < m; ++k)
            M.edges.push_back({static_cast<int>(k), static_cast<int>((k + 1) % m), std::nullopt});
        for (long k = 0; k < m; ++k) M.edges.push_back({static_cast<int>(k), north, std::nullopt});
        for (long k = 0; k < m; ++k) M.edges.push_back({static_cast<int>(k), south, std::nullopt});
        for (long k = 0; k < m; ++k) {
            std::vector<int> tri{static_cast<int>(k), static_cast<int>((k + 1) % m), north};
            std::sort(tri.begin(), tri.end());
            M.faces.push_back({tri, std::nullopt});
        }
        for (long k = 0; k < m; ++k) {
            std::vector<int> tri{static_cast<int>(k), static_cast<int>((k + 1) % m), south};
            std::sort(tri.begin(), tri.end());
            M.faces.push_back({tri, std::nullopt});
        }
        M.base_face = static_cast<int>(m);  // south face over the base edge
        M.top_face = 0;
    }

    for (long k = 0; k < m; ++k) M.coverage_edges.push_back(static_cast<int>(k));
    M.base_vertex = 0;
    M.base_edge = 0;
    M.anchor_point = M.vertices[south];
    return M;
}

inline SurfaceModel make_octahedron_model(long conductor) {
    SurfaceModel M;
    M.name = "octahedron";
    M.conductor = conductor;
    for (int axis = 0; axis < 3; ++axis)
        for (int sign = 0; sign < 2; ++sign) {
            Rational c[3] = {0, 0, 0};
            c[axis] = sign ? -1 : 1;
            M.vertices.push_back(exact_vec3_rational(conductor, c[0], c[1], c[2]));
        }
    const CycloNum zero = CycloNum::zero(conductor);
    const int n = static_cast<int>(M.vertices.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (M.vertices[i].dot(M.vertices[j]) == zero) M.edges.push_back({i, j, std::nullopt});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (M.vertices[i].dot(M.vertices[j]) == zero &&
                    M.vertices[i].dot(M.vertices[k]) == zero &&
                    M.vertices[j].dot(M.vertices[k]) == zero)
                    M.faces.push_back({{i, j, k}, std::nullopt});
    if (M.edges.size() != 12 || M.faces.size() != 8)
        throw std::logic_error("octahedron model has wrong cell counts");

    for (size_t e = 0; e < M.edges.size(); ++e) M.coverage_edges.push_back(static_cast<int>(e));
    // vertex order: +x 0, -x 1, +y 2, -y 3, +z 4, -z 5
    M.base_vertex = 0;
    M.base_edge = M.find_edge(0, 2);
    for (size_t f = 0; f < M.faces.size(); ++f) {
        if (M.faces[f].vertices == std::vector<int>{0, 2, 5}) M.base_face = static_cast<int>(f);
        if (M.faces[f].vertices == std::vector<int>{0, 2, 4}) M.top_face = static_cast<int>(f);
    }
    M.anchor_point = exact_vec3_rational(conductor, Rational(1, 3), Rational(1, 3), Rational(-1, 3));
    return M;
}

inline SurfaceModel make_icosahedron_model(long conductor) {
    if (conductor % 20 != 0)
        throw std::invalid_argument("icosahedron model needs a conductor divisible by 20");
    SurfaceModel M;
    M.name = "icosahedron";
    M.conductor = conductor;
    const CycloNum zero = CycloNum::zero(conductor);
    const CycloNum phi = cyclo_golden_ratio(conductor);
    // Blocks of cyclic coordinate shifts of (0, s1, s2*phi); this vertex order
    // is what the shipped icosahedral group specs are written against.
    for (int block = 0; block < 3; ++block)
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) {
                CycloNum a = zero;
                CycloNum b = s1 ? -CycloNum::one(conductor) : CycloNum::one(conductor);
                CycloNum c = s2 ? -phi : phi;
                if (block == 0) M.vertices.push_back({{a, b, c}});
                if (block == 1) M.vertices.push_back({{c, a, b}});
                if (block == 2) M.vertices.push_back({{b, c, a}});
            }
    const int n = static_cast<int>(M.vertices.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (M.vertices[i].dot(M.vertices[j]) == phi) M.edges.push_back({i, j, std::nullopt});
    auto adjacent = [&](int i, int j) { return M.vertices[i].dot(M.vertices[j]) == phi; };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (adjacent(i, j) && adjacent(i, k) && adjacent(j, k))
                    M.faces.push_back({{i, j, k}, std::nullopt});
    if (M.vertices.size() != 12 || M.edges.size() != 30 || M.faces.size() != 20)
        throw std::logic_error("icosahedron model has wrong cell counts");

    for (size_t e = 0; e < M.edges.size(); ++e) M.coverage_edges.push_back(static_cast<int>(e));
    // v0 = (0,1,phi), v4 = (phi,0,1), v2 = (0,-1,phi) span the base face.
    M.base_vertex = 0;
    M.base_edge = M.find_edge(0, 4);
    for (size_t f = 0; f < M.faces.size(); ++f) {
        if (M.faces[f].vertices == std::vector<int>{0, 2, 4}) M.base_face = static_cast<int>(f);
        if (M.faces[f].vertices == std::vector<int>{0, 4, 8}) M.top_face = static_cast<int>(f);
    }
    const Rational third(1, 3);
    M.anchor_point = {{third * phi, zero, third * (Rational(2) * phi + CycloNum::one(conductor))}};
    return M;
}

// The classification model for a standard rotation group, with the
// fundamental arc picked per group family: cyclic groups get a whole equator
// edge, dihedral and polyhedral "half-turn richer" groups get the half edge
// from the base vertex to the edge midpoint.
inline SurfaceModel model_for_tag(const PointGroupTag& tag, long conductor) {
    SurfaceModel M;
    switch (tag.kind) {
        case PointGroupKind::kCyclic: {
            const long m = tag.n % 2 ? 2 * tag.n : tag.n;
            M = make_bipyramid_model(m, conductor);
            M.arc_is_full_edge = true;
            break;
        }
        case PointGroupKind::kDihedral: {
            if (tag.n < 2)
                throw std::invalid_argument("dihedral model needs n >= 2");
            const long m = tag.n % 2 ? 2 * tag.n : tag.n;
            M = make_bipyramid_model(m, conductor);
            M.arc_is_full_edge = false;
            break;
        }
        case PointGroupKind::kTetrahedral:
            M = make_octahedron_model(conductor);
            M.arc_is_full_edge = true;
            break;
        case PointGroupKind::kOctahedral:
            M = make_octahedron_model(conductor);
            M.arc_is_full_edge = false;
            break;
        case PointGroupKind::kIcosahedral:
            M = make_icosahedron_model(conductor);
            M.arc_is_full_edge = false;
            break;
    }
    M.arc_start = M.vertices[M.edges[M.base_edge].a];
    if (M.arc_is_full_edge) {
        M.arc_end = M.vertices[M.edges[M.base_edge].b];
        M.arc_witness = M.edges[M.base_edge].witness;  // set only on the bigon
    } else {
        M.arc_end = M.edge_midpoint(M.base_edge);
    }
    return M;
}

// ---------------------------------------------------------------------------
// Group actions on a model.

using ActionFn = std::function<ExactMat3(int)>;

inline ActionFn rotation_action(const MatrixRep3& rep) {
    const MatrixRep3* r = &rep;
    return [r](int g) { return r->images[g]; };
}

inline ActionFn covering_action(const CoveringGroup& cg, const MatrixRep3& base_rep) {
    const CoveringGroup* c = &cg;
    const MatrixRep3* r = &base_rep;
    return [c, r](int x) {
        const ExactMat3& m = r->images[c->p1[x]];
        return c->eps[x] ? -m : m;
    };
}

// Every element must permute the cells of each dimension.  Vertices are
// matched exactly; edges and faces through the induced vertex permutation,
// with witness points breaking ties between cells sharing a vertex set.
inline void verify_model_action(const SurfaceModel& model, const FiniteGroup& A,
                                const ActionFn& act) {
    std::map<std::pair<int, int>, std::vector<int>> edges_by_ends;
    for (size_t e = 0; e < model.edges.size(); ++e)
        edges_by_ends[std::minmax(model.edges[e].a, model.edges[e].b)].push_back(
            static_cast<int>(e));
    std::map<std::vector<int>, std::vector<int>> faces_by_verts;
    for (size_t f = 0; f < model.faces.size(); ++f)
        faces_by_verts[model.faces[f].vertices].push_back(static_cast<int>(f));

    for (int g = 0; g < A.order; ++g) {
        const ExactMat3 m = act(g);
        std::vector<int> vimg(model.vertices.size());
        std::vector<bool> hit(model.vertices.size(), false);
        for (size_t v = 0; v < model.vertices.size(); ++v) {
            vimg[v] = model.vertex_index(m * model.vertices[v]);
            if (vimg[v] < 0 || hit[vimg[v]])
                throw std::runtime_error("model action does not permute vertices");
            hit[vimg[v]] = true;
        }
        auto witness_match = [&](const std::optional<ExactVec3>& from,
                                 const std::optional<ExactVec3>& to) {
            if (from.has_value() != to.has_value()) return false;
            return !from || m * *from == *to;
        };
        for (const auto& e : model.edges) {
            const auto it = edges_by_ends.find(std::minmax(vimg[e.a], vimg[e.b]));
            bool found = false;
            if (it != edges_by_ends.end())
                for (int cand : it->second)
                    found = found || witness_match(e.witness, model.edges[cand].witness);
            if (!found) throw std::runtime_error("model action does not permute edges");
        }
        for (const auto& f : model.faces) {
            std::vector<int> img;
            for (int v : f.vertices) img.push_back(vimg[v]);
            std::sort(img.begin(), img.end());
            const auto it = faces_by_verts.find(img);
            bool found = false;
            if (it != faces_by_verts.end())
                for (int cand : it->second)
                    found = found || witness_match(f.witness, model.faces[cand].witness);
            if (!found) throw std::runtime_error("model action does not permute faces");
        }
    }
}

inline Subgroup pointwise_stabilizer(const FiniteGroup& A, const ActionFn& act,
                                     const std::vector<ExactVec3>& points) {
    std::vector<int> members;
    for (int g = 0; g < A.order; ++g) {
        const ExactMat3 m = act(g);
        bool fixes = true;
        for (const auto& p : points)
            if (!(m * p == p)) {
                fixes = false;
                break;
            }
        if (fixes) members.push_back(g);
    }
    return make_subgroup(A, members);
}

inline std::vector<int> transporters(const FiniteGroup& A, const ActionFn& act,
                                     const ExactVec3& from, const ExactVec3& to) {
    std::vector<int> result;
    for (int g = 0; g < A.order; ++g)
        if (act(g) * from == to) result.push_back(g);
    return result;
}

// Stabilizers of the distinguished points/chains/arc under one acting group.
struct ArcStabilizers {
    Subgroup anchor;
    Subgroup arc_start;
    Subgroup arc_end;
    Subgroup chain_start;
    Subgroup chain_end;
    Subgroup arc;
    std::vector<int> transporter_elements;  // arc_start point -> arc_end point
};

inline ArcStabilizers compute_arc_stabilizers(const FiniteGroup& A, const ActionFn& act,
                                              const SurfaceModel& m) {
    ArcStabilizers s{
        pointwise_stabilizer(A, act, {m.anchor_point}),
        pointwise_stabilizer(A, act, {m.arc_start}),
        pointwise_stabilizer(A, act, {m.arc_end}),
        pointwise_stabilizer(A, act, m.chain_start_points()),
        pointwise_stabilizer(A, act, m.chain_end_points()),
        pointwise_stabilizer(A, act, m.arc_points()),
        transporters(A, act, m.arc_start, m.arc_end)};
    // Chains share the anchor with the anchor stabilizer and an endpoint with
    // the arc; sanity-check the containments the construction promises.
    for (int x : s.chain_start.members)
        if (!s.anchor.contains(x) || !s.arc_start.contains(x))
            throw std::logic_error("chain stabilizer not inside endpoint stabilizers");
    for (int x : s.chain_end.members)
        if (!s.anchor.contains(x) || !s.arc_end.contains(x))
            throw std::logic_error("chain stabilizer not inside endpoint stabilizers");
    for (int x : s.arc.members)
        if (!s.arc_start.contains(x) || !s.arc_end.contains(x))
            throw std::logic_error("arc stabilizer not inside endpoint stabilizers");
    return s;
}

// The orbit of the fundamental arc must cover the marked edges at half-edge
// granularity: each (vertex, midpoint) half of each coverage edge has to be
// the image of a half of the arc.
inline void verify_arc_coverage(const SurfaceModel& model, const FiniteGroup& A,
                                const ActionFn& act) {
    std::vector<std::pair<ExactVec3, ExactVec3>> arc_halves;
    if (model.arc_is_full_edge) {
        const ExactVec3 mid = model.edge_midpoint(model.base_edge);
        arc_halves.emplace_back(model.arc_start, mid);
        arc_halves.emplace_back(model.arc_end, mid);
    } else {
        arc_halves.emplace_back(model.arc_start, model.arc_end);
    }

    std::vector<std::pair<ExactVec3, ExactVec3>> targets;
    for (int e : model.coverage_edges) {
        const ExactVec3 mid = model.edge_midpoint(e);
        targets.emplace_back(model.vertices[model.edges[e].a], mid);
        targets.emplace_back(model.vertices[model.edges[e].b], mid);
    }

    std::vector<bool> covered(targets.size(), false);
    for (int g = 0; g < A.order; ++g) {
        const ExactMat3 mg = act(g);
        for (const auto& half : arc_halves) {
            const ExactVec3 pv = mg * half.first;
            const ExactVec3 pm = mg * half.second;
            for (size_t t = 0; t < targets.size(); ++t)
                if (!covered[t] && targets[t].first == pv && targets[t].second == pm)
                    covered[t] = true;
        }
    }
    for (bool c : covered)
        if (!c) throw std::runtime_error("fundamental arc orbit does not cover marked edges");
}

}  // namespace equivect
