#pragma once

// Finite group arithmetic on full multiplication tables.  Groups are built by
// breadth-first closure from generating permutations; the discovery order is
// the canonical element ordering used by every downstream module.

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace equivect {

using Permutation = std::vector<int>;

inline Permutation compose_perm(const Permutation& p, const Permutation& q) {
    // (p after q): x -> p[q[x]]
    Permutation r(p.size());
    for (size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
    return r;
}

struct FiniteGroup {
    int order = 0;
    int id_index = 0;
    std::vector<std::vector<int>> mult;  // mult[x][y] = x*y
    std::vector<int> inv;
    // BFS word data: element x == mult[parent[x]][gen_of[x]] with parent[id] = -1.
    // Lets homomorphisms and matrix representations be extended from generator
    // images and then verified.
    std::vector<int> parent;
    std::vector<int> gen_of;             // index into `generators`
    std::vector<int> generators;         // element indices of the input generators
    std::vector<Permutation> elements;   // realizing permutations (BFS order)
    std::string name;

    int mul(int x, int y) const { return mult[x][y]; }

    int conjugate(int g, int x) const {  // g x g^{-1}
        return mult[mult[g][x]][inv[g]];
    }

    int element_order(int x) const {
        int k = 1, y = x;
        while (y != id_index) {
            y = mult[y][x];
            ++k;
        }
        return k;
    }

    long exponent() const {
        long e = 1;
        for (int x = 0; x < order; ++x) e = std::lcm(e, static_cast<long>(element_order(x)));
        return e;
    }

    int power(int x, long k) const {
        const int n = element_order(x);
        k %= n;
        if (k < 0) k += n;
        int y = id_index;
        for (long j = 0; j < k; ++j) y = mult[y][x];
        return y;
    }

    // Extend a map defined on the generators to all elements along BFS words.
    // Multiply(a, b) must compose values the same way as the group product.
    template <typename T, typename Multiply>
    std::vector<T> extend_from_generators(const std::vector<T>& gen_values, const T& id_value,
                                          Multiply&& multiply) const {
        if (gen_values.size() != generators.size())
            throw std::invalid_argument("extend_from_generators: one value per generator required");
        std::vector<T> values(order, id_value);
        for (int x = 0; x < order; ++x) {
            if (x == id_index) continue;
            values[x] = multiply(values[parent[x]], gen_values[gen_of[x]]);
        }
        return values;
    }
};

inline FiniteGroup build_group(const std::vector<Permutation>& gens, int size_cap = 10000,
                               std::string name = "") {
    size_t degree = 1;
    for (const auto& g : gens) degree = std::max(degree, g.size());
    for (const auto& g : gens) {
        if (g.size() != degree)
            throw std::invalid_argument("build_group: generators act on different sets");
        Permutation seen(degree, 0);
        for (int v : g) {
            if (v < 0 || static_cast<size_t>(v) >= degree || seen[v]++)
                throw std::invalid_argument("build_group: not a permutation");
        }
    }

    Permutation id(degree);
    std::iota(id.begin(), id.end(), 0);

    FiniteGroup G;
    G.name = std::move(name);
    std::map<Permutation, int> index;
    index[id] = 0;
    G.elements.push_back(id);
    G.parent.push_back(-1);
    G.gen_of.push_back(-1);

    std::queue<int> todo;
    todo.push(0);
    while (!todo.empty()) {
        const int x = todo.front();
        todo.pop();
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            Permutation y = compose_perm(G.elements[x], gens[gi]);
            auto [it, fresh] = index.emplace(std::move(y), static_cast<int>(G.elements.size()));
            if (!fresh) continue;
            if (static_cast<int>(G.elements.size()) >= size_cap)
                throw std::runtime_error("build_group: group too large (cap " +
                                         std::to_string(size_cap) + ")");
            G.elements.push_back(it->first);
            G.parent.push_back(x);
            G.gen_of.push_back(static_cast<int>(gi));
            todo.push(it->second);
        }
    }

    G.order = static_cast<int>(G.elements.size());
    G.id_index = 0;
    for (const auto& g : gens) G.generators.push_back(index.at(g));

    G.mult.assign(G.order, std::vector<int>(G.order));
    for (int x = 0; x < G.order; ++x)
        for (int y = 0; y < G.order; ++y)
            G.mult[x][y] = index.at(compose_perm(G.elements[x], G.elements[y]));

    G.inv.assign(G.order, 0);
    for (int x = 0; x < G.order; ++x)
        for (int y = 0; y < G.order; ++y)
            if (G.mult[x][y] == G.id_index) {
                G.inv[x] = y;
                break;
            }
    return G;
}

struct GroupHom {
    const FiniteGroup* domain = nullptr;
    const FiniteGroup* codomain = nullptr;
    std::vector<int> images;

    void verify() const {
        for (int x = 0; x < domain->order; ++x)
            for (int y = 0; y < domain->order; ++y)
                if (images[domain->mult[x][y]] != codomain->mult[images[x]][images[y]])
                    throw std::runtime_error("GroupHom: multiplicativity violated");
    }
};

struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<int> members;  // sorted element indices

    bool contains(int x) const {
        return std::binary_search(members.begin(), members.end(), x);
    }

    void verify_closed() const {
        if (!contains(parent->id_index))
            throw std::runtime_error("Subgroup: missing identity");
        for (int x : members) {
            if (!contains(parent->inv[x])) throw std::runtime_error("Subgroup: not inverse-closed");
            for (int y : members)
                if (!contains(parent->mult[x][y]))
                    throw std::runtime_error("Subgroup: not closed under multiplication");
        }
        if (parent->order % static_cast<int>(members.size()) != 0)
            throw std::runtime_error("Subgroup: Lagrange violated");
    }

    bool is_normal() const {
        for (int g = 0; g < parent->order; ++g)
            for (int k : members)
                if (!contains(parent->conjugate(g, k))) return false;
        return true;
    }
};

inline Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Subgroup s{&G, std::move(members)};
    s.verify_closed();
    return s;
}

inline Subgroup kernel(const GroupHom& h) {
    std::vector<int> members;
    for (int x = 0; x < h.domain->order; ++x)
        if (h.images[x] == h.codomain->id_index) members.push_back(x);
    Subgroup k = make_subgroup(*h.domain, std::move(members));
    if (!k.is_normal()) throw std::logic_error("kernel: result not normal");
    return k;
}

// A subgroup materialized as a standalone FiniteGroup.  `embed` maps local
// element indices to parent indices; `local_of` is the partial inverse.
struct MaterializedSubgroup {
    FiniteGroup group;
    std::vector<int> embed;
    std::map<int, int> local_of;

    int local(int parent_index) const {
        auto it = local_of.find(parent_index);
        if (it == local_of.end())
            throw std::out_of_range("MaterializedSubgroup: element not in subgroup");
        return it->second;
    }
};

inline MaterializedSubgroup materialize(const Subgroup& s) {
    const FiniteGroup& P = *s.parent;
    MaterializedSubgroup m;
    m.embed = s.members;
    // Keep the identity first so id_index = 0 like every built group.
    auto it = std::find(m.embed.begin(), m.embed.end(), P.id_index);
    std::rotate(m.embed.begin(), it, it + 1);
    for (size_t i = 0; i < m.embed.size(); ++i) m.local_of[m.embed[i]] = static_cast<int>(i);

    FiniteGroup& G = m.group;
    G.order = static_cast<int>(m.embed.size());
    G.id_index = 0;
    G.name = P.name.empty() ? "" : P.name + "-sub";
    G.mult.assign(G.order, std::vector<int>(G.order));
    G.inv.assign(G.order, 0);
    for (int x = 0; x < G.order; ++x) {
        G.inv[x] = m.local_of.at(P.inv[m.embed[x]]);
        for (int y = 0; y < G.order; ++y)
            G.mult[x][y] = m.local_of.at(P.mult[m.embed[x]][m.embed[y]]);
    }
    // Word data: treat every element as its own generator so that
    // extend_from_generators still works on materialized subgroups.
    G.parent.assign(G.order, 0);
    G.gen_of.assign(G.order, 0);
    G.parent[0] = -1;
    G.gen_of[0] = -1;
    for (int x = 1; x < G.order; ++x) {
        G.generators.push_back(x);
        G.gen_of[x] = static_cast<int>(G.generators.size()) - 1;
    }
    if (!P.elements.empty()) {
        for (int x = 0; x < G.order; ++x) G.elements.push_back(P.elements[m.embed[x]]);
    }
    return m;
}

struct ConjugacyClasses {
    std::vector<std::vector<int>> classes;  // each sorted; ordered by smallest member
    std::vector<int> class_of;

    int count() const { return static_cast<int>(classes.size()); }
};

inline ConjugacyClasses conjugacy_classes(const FiniteGroup& G) {
    ConjugacyClasses cc;
    cc.class_of.assign(G.order, -1);
    for (int x = 0; x < G.order; ++x) {
        if (cc.class_of[x] >= 0) continue;
        std::vector<int> cls;
        for (int g = 0; g < G.order; ++g) {
            const int y = G.conjugate(g, x);
            if (cc.class_of[y] < 0) {
                cc.class_of[y] = static_cast<int>(cc.classes.size());
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        cc.classes.push_back(std::move(cls));
    }
    return cc;
}

// Centralizer-free brute-force check used by tests and `check`.
inline void verify_group_axioms(const FiniteGroup& G, int sample_cap = 10000) {
    for (int x = 0; x < G.order; ++x) {
        if (G.mult[G.id_index][x] != x || G.mult[x][G.id_index] != x)
            throw std::runtime_error("group axioms: identity law violated");
        if (G.mult[x][G.inv[x]] != G.id_index)
            throw std::runtime_error("group axioms: inverse law violated");
    }
    const long full = static_cast<long>(G.order) * G.order * G.order;
    if (full <= static_cast<long>(sample_cap) || G.order <= 64) {
        for (int x = 0; x < G.order; ++x)
            for (int y = 0; y < G.order; ++y)
                for (int z = 0; z < G.order; ++z)
                    if (G.mult[G.mult[x][y]][z] != G.mult[x][G.mult[y][z]])
                        throw std::runtime_error("group axioms: associativity violated");
    } else {
        unsigned long state = 0x9e3779b97f4a7c15ULL;
        auto next = [&state](int n) {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return static_cast<int>(state % n);
        };
        for (int t = 0; t < sample_cap; ++t) {
            const int x = next(G.order), y = next(G.order), z = next(G.order);
            if (G.mult[G.mult[x][y]][z] != G.mult[x][G.mult[y][z]])
                throw std::runtime_error("group axioms: associativity violated");
        }
    }
}

}  // namespace equivect
