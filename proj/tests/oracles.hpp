#pragma once

// Independent numeric oracles used by the tests.  The character-table oracle
// recovers the table from the class algebra: a random linear combination of
// the class-sum multiplication matrices has the central characters as its
// common eigenvectors, and degrees follow from the second orthogonality
// relation.  It shares no code with the exact table construction.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "equivect/characters.hpp"
#include "equivect/group.hpp"
#include "equivect/spec_io.hpp"

namespace oracles {

using complexd = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;

inline equivect::GroupSpec spec(const std::string& name) {
    return equivect::load_spec_file(std::string(EQUIVECT_SPEC_DIR) + "/" + name + ".json");
}

// Numeric character table: rows[chi][class], rows unordered.
struct NumericTable {
    std::vector<std::vector<int>> classes;
    std::vector<std::vector<complexd>> rows;
    std::vector<long> degrees;
};

inline NumericTable numeric_character_table(const equivect::FiniteGroup& G, unsigned seed) {
    const auto cc = equivect::conjugacy_classes(G);
    const int nc = cc.count();

    // Class-sum multiplication matrices: S_i S_j = sum_k a[i][j][k] S_k where
    // a[i][j][k] counts pairs (x, y) in C_i x C_j with x y equal to a fixed
    // representative of C_k.
    // From S_i S_j = sum_k a[i][j][k] S_k the vector w_j = omega(S_j) is an
    // eigenvector of each M[i] with (M[i])(j, k) = a[i][j][k], eigenvalue
    // omega(S_i).
    std::vector<MatrixXcd> M(nc, MatrixXcd::Zero(nc, nc));
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) {
            std::vector<long> cnt(nc, 0);
            for (int x : cc.classes[i])
                for (int y : cc.classes[j]) ++cnt[cc.class_of[G.mul(x, y)]];
            for (int k = 0; k < nc; ++k) {
                // a[i][j][k]: pairs landing on a fixed representative of C_k
                M[i](j, k) = static_cast<double>(cnt[k]) / static_cast<double>(cc.classes[k].size());
            }
        }

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.25, 1.0);
    MatrixXcd T = MatrixXcd::Zero(nc, nc);
    for (int i = 0; i < nc; ++i) T += unif(rng) * M[i];

    Eigen::ComplexEigenSolver<MatrixXcd> es(T);
    const MatrixXcd V = es.eigenvectors();

    int id_class = cc.class_of[G.id_index];
    NumericTable out;
    out.classes = cc.classes;
    for (int c = 0; c < nc; ++c) {
        Eigen::VectorXcd w = V.col(c);
        w /= w(id_class);  // omega at the identity class is 1
        double s = 0.0;
        for (int k = 0; k < nc; ++k)
            s += std::norm(w(k)) / static_cast<double>(cc.classes[k].size());
        const double deg = std::sqrt(static_cast<double>(G.order) / s);
        std::vector<complexd> row(nc);
        for (int k = 0; k < nc; ++k)
            row[k] = deg * w(k) / static_cast<double>(cc.classes[k].size());
        out.rows.push_back(std::move(row));
        out.degrees.push_back(std::lround(deg));
    }
    return out;
}

// Greedy multiset match between the exact table and the numeric oracle.
inline bool tables_match(const equivect::CharacterTable& T, const NumericTable& N, double tol) {
    const int nc = T.class_count();
    if (static_cast<int>(N.rows.size()) != T.irrep_count()) return false;
    std::vector<bool> used(N.rows.size(), false);
    for (int chi = 0; chi < T.irrep_count(); ++chi) {
        bool found = false;
        for (std::size_t r = 0; r < N.rows.size() && !found; ++r) {
            if (used[r]) continue;
            double worst = 0.0;
            for (int c = 0; c < nc; ++c)
                worst = std::max(worst, std::abs(T.rows[chi][c].eval() - N.rows[r][c]));
            if (worst < tol) {
                used[r] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace oracles
