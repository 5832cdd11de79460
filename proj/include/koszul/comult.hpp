/**
 * @file comult.hpp
 * @brief Comultiplicative structure constants c_pq(n,i,r) and the left resolution of Λ_0.
 *
 * For a Koszul algebra every f^n_i splits as
 *
 *     f^n_i = Σ_{p,q} c_pq(n,i,r) f^r_p f^{n-r}_q        (0 <= r <= n).
 *
 * The constants are found by solving against the vertex-compatible products,
 * taken in (p,q) lexicographic order; the canonical pivot solution is
 * published together with the nullity of the system. Because each level is
 * linearly independent the products are independent too, so in practice the
 * nullity is always 0.
 */
#pragma once

#include "field.hpp"
#include "linalg.hpp"
#include "path_vector.hpp"
#include "presentation.hpp"
#include "quotient.hpp"
#include "resolution.hpp"

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace koszul {

struct ComultKey {
    std::size_t n, i, r;
    friend auto operator<=>(const ComultKey&, const ComultKey&) = default;
};

template <Field K>
struct ComultEntry {
    std::map<std::pair<std::size_t, std::size_t>, typename K::value_type> coefficients;  // (p,q) -> c, nonzero only
    std::size_t nullity = 0;
    std::size_t candidates = 0;  // vertex-compatible (p,q) pairs
};

template <Field K>
struct ComultTable {
    std::size_t max_level = 0;
    std::map<ComultKey, ComultEntry<K>> entries;

    const ComultEntry<K>& at(std::size_t n, std::size_t i, std::size_t r) const {
        auto it = entries.find({n, i, r});
        if (it == entries.end()) throw std::out_of_range("no comult entry");
        return it->second;
    }
    typename K::value_type coefficient(const K& field, std::size_t n, std::size_t i, std::size_t r, std::size_t p,
                                       std::size_t q) const {
        const auto& c = at(n, i, r).coefficients;
        auto it = c.find({p, q});
        return it == c.end() ? field.zero() : it->second;
    }
};

template <Field K>
ComultEntry<K> compute_comult(const ResolutionData<K>& data, std::size_t n, std::size_t i, std::size_t r) {
    if (n > data.max_level() || r > n || i >= data.level(n).size())
        throw std::out_of_range("compute_comult: index out of range");
    const K& field = data.presentation.field;
    const auto& target = data.level(n).f[i];
    const auto& left = data.level(r).f;
    const auto& right = data.level(n - r).f;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<PathVector<K>> columns;
    for (std::size_t p = 0; p < left.size(); ++p) {
        if (left[p].origin != target.origin) continue;
        for (std::size_t q = 0; q < right.size(); ++q) {
            if (right[q].origin != left[p].terminus || right[q].terminus != target.terminus) continue;
            pairs.emplace_back(p, q);
            columns.push_back(multiply(field, left[p].vector, right[q].vector));
        }
    }
    auto all = columns;
    all.push_back(target.vector);
    Ambient ambient = Ambient::support_of(all);
    Matrix<K> a(field, ambient.size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        auto coords = ambient.coordinates(field, columns[c]);
        for (std::size_t row = 0; row < ambient.size(); ++row) a(row, c) = coords[row];
    }
    auto sol = solve(field, a, ambient.coordinates(field, target.vector));
    if (!sol.x)
        throw std::logic_error("no comultiplicative splitting for (n=" + std::to_string(n) + ", i=" +
                               std::to_string(i) + ", r=" + std::to_string(r) + ")");
    ComultEntry<K> entry;
    entry.nullity = sol.nullity;
    entry.candidates = pairs.size();
    for (std::size_t c = 0; c < pairs.size(); ++c)
        if (!field.is_zero((*sol.x)[c])) entry.coefficients.emplace(pairs[c], (*sol.x)[c]);
    return entry;
}

/// All entries (n, i, r) with 1 <= n <= N.
template <Field K>
ComultTable<K> comult_table(const ResolutionData<K>& data, std::size_t max_level) {
    if (max_level > data.max_level()) throw std::out_of_range("comult_table: resolution too short");
    ComultTable<K> table;
    table.max_level = max_level;
    for (std::size_t n = 1; n <= max_level; ++n)
        for (std::size_t i = 0; i < data.level(n).size(); ++i)
            for (std::size_t r = 0; r <= n; ++r) table.entries.emplace(ComultKey{n, i, r}, compute_comult(data, n, i, r));
    return table;
}

/// Failing (n, i, r) triples of Σ c_pq f^r_p f^{n-r}_q = f^n_i.
template <Field K>
std::vector<ComultKey> reconstruction_failures(const ComultTable<K>& table, const ResolutionData<K>& data) {
    const K& field = data.presentation.field;
    std::vector<ComultKey> bad;
    for (const auto& [key, entry] : table.entries) {
        PathVector<K> sum(key.n);
        for (const auto& [pq, c] : entry.coefficients)
            sum.add_scaled(field, c,
                           multiply(field, data.level(key.r).f[pq.first].vector, data.level(key.n - key.r).f[pq.second].vector));
        if (!(sum == data.level(key.n).f[key.i].vector)) bad.push_back(key);
    }
    return bad;
}

/// Nonzero coefficients whose (p,q) violates the vertex-compatibility support condition.
template <Field K>
std::vector<ComultKey> support_violations(const ComultTable<K>& table, const ResolutionData<K>& data) {
    std::vector<ComultKey> bad;
    for (const auto& [key, entry] : table.entries) {
        const auto& t = data.level(key.n).f[key.i];
        for (const auto& [pq, c] : entry.coefficients) {
            const auto& a = data.level(key.r).f[pq.first];
            const auto& b = data.level(key.n - key.r).f[pq.second];
            if (a.origin != t.origin || a.terminus != b.origin || b.terminus != t.terminus) {
                bad.push_back(key);
                break;
            }
        }
    }
    return bad;
}

struct IdentityReport {
    bool holds = true;
    std::size_t checked = 0;
    std::vector<std::array<std::size_t, 3>> failures;  // (n, i, j)
};

/// h^{n-1,n}_{ji} = Σ_l f^1_l c_jl(n,i,n-1).
template <Field K>
IdentityReport verify_h_identity(const ComultTable<K>& table, const ResolutionData<K>& data) {
    const K& field = data.presentation.field;
    const auto& arrows = data.level(1).f;
    IdentityReport rep;
    for (std::size_t n = 1; n <= table.max_level; ++n)
        for (std::size_t i = 0; i < data.level(n).size(); ++i) {
            const auto& entry = table.at(n, i, n - 1);
            for (std::size_t j = 0; j < data.level(n - 1).size(); ++j) {
                PathVector<K> rhs(1);
                for (std::size_t l = 0; l < arrows.size(); ++l) {
                    auto it = entry.coefficients.find({j, l});
                    if (it != entry.coefficients.end()) rhs.add_scaled(field, it->second, arrows[l].vector);
                }
                ++rep.checked;
                if (!(rhs == data.level(n).h[j][i])) {
                    rep.holds = false;
                    rep.failures.push_back({n, i, j});
                }
            }
        }
    return rep;
}

/// The f-sets reused as generators of the left resolution, with left differentials
/// maps[n][q][i] = Σ_p c_pq(n,i,1) f^1_p acting by right multiplication on Λ·o(f^n_i).
template <Field K>
struct LeftResolutionData {
    std::vector<std::vector<UniformBlock<K>>> levels;
    std::vector<PathMatrix<K>> maps;

    std::size_t max_level() const { return levels.size() - 1; }

    LinearComplex<K> complex() const {
        LinearComplex<K> c;
        c.side = Side::left;
        for (const auto& l : levels) {
            std::vector<VertexId> anchors;
            for (const auto& f : l) anchors.push_back(f.origin);
            c.anchors.push_back(std::move(anchors));
        }
        c.maps = maps;
        return c;
    }
};

template <Field K>
LeftResolutionData<K> build_left_resolution(const ComultTable<K>& table, const ResolutionData<K>& data) {
    const K& field = data.presentation.field;
    const auto& arrows = data.level(1).f;
    LeftResolutionData<K> left;
    for (std::size_t n = 0; n <= table.max_level; ++n) left.levels.push_back(data.level(n).f);
    left.maps.emplace_back();
    for (std::size_t n = 1; n <= table.max_level; ++n) {
        PathMatrix<K> m(data.level(n - 1).size(), std::vector<PathVector<K>>(data.level(n).size(), PathVector<K>(1)));
        for (std::size_t i = 0; i < data.level(n).size(); ++i)
            for (const auto& [pq, c] : table.at(n, i, 1).coefficients) m[pq.second][i].add_scaled(field, c, arrows[pq.first].vector);
        left.maps.push_back(std::move(m));
    }
    return left;
}

/// First (n, k, i) at which the composite of two consecutive differentials is nonzero in Λ.
template <Field K>
std::optional<std::array<std::size_t, 3>> square_zero_failure(const GradedQuotient<K>& quot, const LinearComplex<K>& cx) {
    const K& field = quot.field();
    for (std::size_t n = 2; n <= cx.max_level(); ++n) {
        const auto& upper = cx.maps[n];
        const auto& lower = cx.maps[n - 1];
        for (std::size_t i = 0; i < cx.anchors[n].size(); ++i)
            for (std::size_t k = 0; k < cx.anchors[n - 2].size(); ++k) {
                PathVector<K> composite(2);
                for (std::size_t j = 0; j < cx.anchors[n - 1].size(); ++j) {
                    // right: gen_i x -> gen_j (h_ji x) -> gen_k (h_kj h_ji x); left mirrors it
                    if (cx.side == Side::right)
                        composite.add_scaled(field, field.one(), multiply(field, lower[k][j], upper[j][i]));
                    else
                        composite.add_scaled(field, field.one(), multiply(field, upper[j][i], lower[k][j]));
                }
                if (!composite.is_zero() && !quot.reduce(composite).empty()) return std::array{n, k, i};
            }
    }
    return std::nullopt;
}

struct LeftVerdict {
    bool pass = true;
    bool counts_match = true, spans_match = true, squares_to_zero = true, exact = true, opposite_agrees = true;
    std::vector<std::size_t> right_betti, left_betti;
    std::string witness;
};

/// Runs the right-side construction on the opposite algebra, reads it backwards and checks
/// it against the f-sets and the left differentials derived from the comult table.
template <Field K>
LeftVerdict verify_left_resolution(const Presentation<K>& p, std::size_t max_level, std::size_t max_degree,
                                   Limits limits = {}) {
    const K& field = p.field;
    LeftVerdict v;
    auto fail = [&](bool& flag, const std::string& why) {
        flag = false;
        v.pass = false;
        if (v.witness.empty()) v.witness = why;
    };

    auto data = compute_resolution(p, max_level + 1, limits);
    auto op = opposite(p);
    auto op_data = compute_resolution(op, max_level + 1, limits);

    for (std::size_t n = 0; n <= max_level; ++n) {
        v.right_betti.push_back(data.level(n).size());
        v.left_betti.push_back(op_data.level(n).size());
        if (data.level(n).size() != op_data.level(n).size()) {
            fail(v.counts_match, "s_" + std::to_string(n) + " != t_" + std::to_string(n));
            continue;
        }
        std::vector<PathVector<K>> f, g;
        for (const auto& x : data.level(n).f) f.push_back(x.vector);
        for (const auto& x : op_data.level(n).f) g.push_back(reversed(field, x.vector));
        if (!Subspace<K>::span(field, f).equals(field, Subspace<K>::span(field, g)))
            fail(v.spans_match, "left and right generators span different spaces at level " + std::to_string(n));
    }

    auto table = comult_table(data, max_level + 1);
    auto left = build_left_resolution(table, data);
    auto cx = left.complex();
    GradedQuotient<K> quot(p, std::max<std::size_t>(max_degree, 2), limits);
    if (auto bad = square_zero_failure(quot, cx))
        fail(v.squares_to_zero, "left differential squares to a nonzero map at level " + std::to_string((*bad)[0]));

    auto table_h = homology_dimensions(quot, cx, max_level, max_degree);
    if (auto bad = table_h.first_nonzero())
        fail(v.exact, "left complex has homology at (n=" + std::to_string(bad->first.first) +
                          ", d=" + std::to_string(bad->first.second) + ")");

    // The opposite algebra's h, computed for the reversed f-sets, read backwards.
    ResolutionData<K> mirrored{op, {}};
    for (std::size_t n = 0; n <= max_level; ++n) {
        ResolutionLevel<K> level;
        level.n = n;
        for (const auto& x : data.level(n).f) level.f.push_back({x.terminus, x.origin, reversed(field, x.vector)});
        mirrored.levels.push_back(std::move(level));
        if (n >= 1) {
            mirrored.levels[n].h = compute_h(mirrored, n);
            for (std::size_t q = 0; q < data.level(n - 1).size(); ++q)
                for (std::size_t i = 0; i < data.level(n).size(); ++i)
                    if (!(reversed(field, mirrored.levels[n].h[q][i]) == left.maps[n][q][i]))
                        fail(v.opposite_agrees, "opposite-algebra differential differs at level " + std::to_string(n));
        }
    }
    return v;
}

}  // namespace koszul
