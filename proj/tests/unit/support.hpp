// Shared fixtures for the unit tests: corpus presentations, random generators
// and brute-force oracles that avoid the normal-word machinery.
#pragma once

#include "koszul/presentation.hpp"
#include "koszul/quotient.hpp"
#include "koszul/resolution.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace koszul;

inline const std::string DN = "field Q\nvertices v\narrows x: v -> v\nrelations x*x\n";
inline const std::string POLY2 = "vertices 1\narrows x: 1 -> 1, y: 1 -> 1\nrelations x*y - y*x\n";
inline const std::string POLY3 =
    "vertices 1\narrows x: 1 -> 1, y: 1 -> 1, z: 1 -> 1\nrelations\n x*y - y*x\n x*z - z*x\n y*z - z*y\n";
inline const std::string QP2 = "vertices 1\narrows x: 1 -> 1, y: 1 -> 1\nrelations x*y - 2*y*x\n";
inline const std::string QP3 =
    "vertices 1\narrows x: 1 -> 1, y: 1 -> 1, z: 1 -> 1\nrelations\n x*y - 2*y*x\n x*z - 2*z*x\n y*z - 2*z*y\n";
inline const std::string A4Z = "vertices 1, 2, 3, 4\narrows a: 1 -> 2, b: 2 -> 3, c: 3 -> 4\nrelations a*b, b*c\n";
inline const std::string A3 = "vertices 1, 2, 3\narrows a: 1 -> 2, b: 2 -> 3\nrelations\n";
inline const std::string KR3 = "vertices 1\narrows x: 1 -> 1\nrelations x*x*x\n";
inline const std::string NK3 = "vertices 1\narrows x: 1 -> 1, y: 1 -> 1, z: 1 -> 1\nrelations z*z, y*z, x*z + x*x\n";

inline const std::vector<std::pair<std::string, std::string>>& koszul_corpus() {
    static const std::vector<std::pair<std::string, std::string>> c{
        {"DN", DN}, {"POLY2", POLY2}, {"POLY3", POLY3}, {"QP2", QP2}, {"QP3", QP3}, {"A4Z", A4Z}, {"A3", A3}};
    return c;
}

template <Field K>
Presentation<K> load(const std::string& text, const K& field = K{}) {
    return parse_presentation<K>(text, field);
}

inline PrimeField gf(std::uint64_t p) { return PrimeField(p); }

/// Random quiver with 1..max_vertices vertices and 1..max_arrows arrows.
inline Quiver random_quiver(std::mt19937& rng, std::size_t max_vertices, std::size_t max_arrows) {
    Quiver q;
    const std::size_t nv = 1 + rng() % max_vertices;
    for (std::size_t v = 0; v < nv; ++v) q.add_vertex("v" + std::to_string(v));
    const std::size_t na = 1 + rng() % max_arrows;
    for (std::size_t a = 0; a < na; ++a)
        q.add_arrow("a" + std::to_string(a), static_cast<VertexId>(rng() % nv), static_cast<VertexId>(rng() % nv));
    return q;
}

/// A random scalar drawn from {-2,...,2}; zero with some probability.
template <Field K>
typename K::value_type random_scalar(const K& field, std::mt19937& rng) {
    return field.from_rational(mpq_class(static_cast<long>(rng() % 5) - 2));
}

template <Field K>
PathVector<K> random_vector(const K& field, std::mt19937& rng, const std::vector<Path>& paths, std::size_t degree,
                            std::size_t max_terms) {
    PathVector<K> v(degree);
    if (paths.empty()) return v;
    const std::size_t terms = 1 + rng() % max_terms;
    for (std::size_t t = 0; t < terms; ++t) v.add_term(field, paths[rng() % paths.size()], random_scalar(field, rng));
    return v;
}

/// A random quadratic presentation; each relation is supported in one vertex block.
template <Field K>
Presentation<K> random_quadratic(const K& field, std::mt19937& rng, std::size_t max_vertices = 2,
                                 std::size_t max_arrows = 3, std::size_t max_relations = 3) {
    Quiver q = random_quiver(rng, max_vertices, max_arrows);
    std::map<Block, std::vector<Path>> by_block;
    for (const auto& p : enumerate_paths(q, 2)) by_block[p.block()].push_back(p);
    std::vector<PathVector<K>> rels;
    if (!by_block.empty()) {
        const std::size_t count = rng() % (max_relations + 1);
        for (std::size_t r = 0; r < count; ++r) {
            auto it = by_block.begin();
            std::advance(it, rng() % by_block.size());
            auto v = random_vector(field, rng, it->second, 2, 3);
            if (!v.is_zero()) rels.push_back(std::move(v));
        }
    }
    return Presentation<K>{field, q, canonicalize_relations(field, rels)};
}

/// dim Λ_d per block from the brute-force ideal I_d inside B_d.
template <Field K>
std::map<Block, std::size_t> brute_force_lambda(const Presentation<K>& p, std::size_t d) {
    std::map<Block, std::size_t> out;
    if (d == 0) {
        for (VertexId v = 0; v < p.quiver.num_vertices(); ++v) out[{v, v}] = 1;
        return out;
    }
    for (const auto& [b, sub] : ideal_degree_component(p, d))
        if (sub.ambient().size() > sub.dimension()) out[b] = sub.ambient().size() - sub.dimension();
    return out;
}

template <Field K>
std::size_t brute_force_lambda_total(const Presentation<K>& p, std::size_t d) {
    std::size_t t = 0;
    for (const auto& [b, n] : brute_force_lambda(p, d)) t += n;
    return t;
}

/// Homology of the augmented right complex built from `data`, computed in path
/// coordinates: (L^n)_d = ⊕_i t(f^n_i)B_{d-n} / t(f^n_i)I_{d-n}, and the rank of a map
/// between such quotients is dim(image + target ideal) - dim(target ideal).
template <Field K>
HomologyTable oracle_homology(const ResolutionData<K>& data, std::size_t N, std::size_t D) {
    const auto& p = data.presentation;
    const K& field = p.field;
    const Quiver& q = p.quiver;
    std::map<std::size_t, std::map<Block, Subspace<K>>> ideal;
    for (std::size_t e = 2; e <= D; ++e) ideal.emplace(e, ideal_degree_component(p, e));

    struct Slice {
        std::vector<std::pair<std::size_t, Path>> coords;  // (generator, path)
        std::vector<std::vector<typename K::value_type>> ideal_rows;
    };
    auto slice = [&](std::size_t n, std::size_t d) {
        Slice s;
        if (d < n || n >= data.levels.size()) return s;
        const std::size_t e = d - n;
        for (std::size_t i = 0; i < data.level(n).size(); ++i)
            for (const auto& w : enumerate_paths(q, e))
                if (w.origin == data.level(n).f[i].terminus) s.coords.emplace_back(i, w);
        if (e >= 2)
            for (std::size_t i = 0; i < data.level(n).size(); ++i)
                for (const auto& [b, sub] : ideal.at(e)) {
                    if (b.first != data.level(n).f[i].terminus) continue;
                    for (const auto& g : sub.basis(field)) {
                        std::vector<typename K::value_type> row(s.coords.size(), field.zero());
                        for (std::size_t k = 0; k < s.coords.size(); ++k)
                            if (s.coords[k].first == i) row[k] = g.coefficient(field, s.coords[k].second);
                        s.ideal_rows.push_back(std::move(row));
                    }
                }
        return s;
    };
    auto index = [](const Slice& s, std::size_t gen, const Path& w) {
        for (std::size_t k = 0; k < s.coords.size(); ++k)
            if (s.coords[k].first == gen && s.coords[k].second == w) return k;
        throw std::logic_error("oracle: coordinate missing");
    };
    auto induced_rank = [&](std::size_t n, std::size_t d) -> std::size_t {
        Slice src = slice(n, d), dst = slice(n - 1, d);
        if (src.coords.empty() || dst.coords.empty()) return 0;
        Matrix<K> m(dst.coords.size());
        for (const auto& row : dst.ideal_rows) m.append_row(row);
        const std::size_t base = rank(field, m);
        for (const auto& [i, w] : src.coords) {
            std::vector<typename K::value_type> row(dst.coords.size(), field.zero());
            for (std::size_t j = 0; j < data.level(n - 1).size(); ++j) {
                auto image = multiply(field, data.level(n).h[j][i], PathVector<K>::monomial(field, w));
                for (const auto& [path, c] : image.terms()) {
                    auto k = index(dst, j, path);
                    row[k] = field.add(row[k], c);
                }
            }
            m.append_row(std::move(row));
        }
        return rank(field, m) - base;
    };
    auto dimension = [&](std::size_t n, std::size_t d) -> std::size_t {
        Slice s = slice(n, d);
        if (s.coords.empty()) return 0;
        return s.coords.size() - rank(field, Matrix<K>::from_rows(s.coords.size(), s.ideal_rows));
    };

    HomologyTable t{N, D, {}};
    for (std::size_t d = 0; d <= D; ++d) {
        std::vector<std::size_t> ranks(N + 2, 0);
        ranks[0] = d == 0 ? q.num_vertices() : 0;
        for (std::size_t n = 1; n <= N + 1; ++n) ranks[n] = n <= d ? induced_rank(n, d) : 0;
        for (std::size_t n = 0; n <= N; ++n) t.entries[{n, d}] = dimension(n, d) - ranks[n] - ranks[n + 1];
    }
    return t;
}

/// Quadratic dual presentation for a one-vertex quadratic algebra: R^⊥ under the
/// pairing <a*b, c*d> = δ_ac δ_bd.
template <Field K>
Presentation<K> quadratic_dual(const Presentation<K>& p) {
    const K& field = p.field;
    auto paths = enumerate_paths(p.quiver, 2);
    Matrix<K> rel(paths.size());
    for (const auto& g : p.relations) {
        std::vector<typename K::value_type> row;
        for (const auto& w : paths) row.push_back(g.coefficient(field, w));
        rel.append_row(std::move(row));
    }
    auto perp = nullspace(field, rel);
    std::vector<PathVector<K>> dual;
    for (std::size_t r = 0; r < perp.rows(); ++r) {
        PathVector<K> v(2);
        for (std::size_t k = 0; k < paths.size(); ++k) v.add_term(field, paths[k], perp(r, k));
        dual.push_back(std::move(v));
    }
    return Presentation<K>{field, p.quiver, canonicalize_relations(field, dual)};
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace testing_support
