/**
 * @file resolution.hpp
 * @brief The elements f^n_i of a minimal right resolution of Λ_0 and its differential.
 *
 * Level 0 holds the vertices, level 1 the arrows and level 2 the canonical
 * relation basis. For n >= 3 and each vertex block, level n is the RREF basis of
 *
 *     span{ f^{n-1}_i · a : a an arrow }  ∩  span{ f^{n-2}_j · g : g a relation }
 *
 * inside the paths of length n. For a quadratic algebra this is the degree-n
 * part of (⊕ f^{n-1}R) ∩ (⊕ f^{n-2}I); generators of that intersection in
 * higher degree never belong to a linear resolution and are not built. Whether
 * the resulting complex is actually exact (i.e. Λ is Koszul) is decided
 * separately, degree by degree, by `homology_dimensions`.
 */
#pragma once

#include "field.hpp"
#include "linalg.hpp"
#include "path_vector.hpp"
#include "presentation.hpp"
#include "quotient.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace koszul {

class not_quadratic_error : public std::invalid_argument {
public:
    explicit not_quadratic_error(std::size_t degree)
        : std::invalid_argument("relation of degree " + std::to_string(degree) + ": algebra is not quadratic"),
          degree_(degree) {}
    std::size_t degree() const { return degree_; }

private:
    std::size_t degree_;
};

template <Field K>
using PathMatrix = std::vector<std::vector<PathVector<K>>>;  // [row][column]

template <Field K>
struct ResolutionLevel {
    std::size_t n = 0;
    std::vector<UniformBlock<K>> f;
    PathMatrix<K> h;  // h[j][i] = h^{n-1,n}_{ji}; empty at level 0

    std::size_t size() const { return f.size(); }
};

template <Field K>
struct ResolutionData {
    Presentation<K> presentation;
    std::vector<ResolutionLevel<K>> levels;

    std::size_t max_level() const { return levels.size() - 1; }
    const ResolutionLevel<K>& level(std::size_t n) const { return levels.at(n); }

    std::vector<std::size_t> betti() const {
        std::vector<std::size_t> out;
        for (const auto& l : levels) out.push_back(l.size());
        return out;
    }
};

namespace detail {

template <Field K>
UniformBlock<K> tagged(const PathVector<K>& v) {
    auto b = uniform_block(v);
    if (!b) throw std::logic_error("resolution element is not uniform");
    return {b->first, b->second, v};
}

template <Field K>
void sort_by_leading_path(std::vector<UniformBlock<K>>& xs) {
    std::sort(xs.begin(), xs.end(), [](const UniformBlock<K>& a, const UniformBlock<K>& b) {
        return a.vector.leading_path() < b.vector.leading_path();
    });
}

inline void check_ambient(std::size_t size, const Limits& limits) {
    if (size > limits.max_dimension)
        throw resource_limit_error("intersection needs " + std::to_string(size) + " coordinates (limit " +
                                   std::to_string(limits.max_dimension) + ")");
}

template <Field K>
std::vector<UniformBlock<K>> next_level(const Presentation<K>& p, const ResolutionLevel<K>& prev,
                                        const ResolutionLevel<K>& prev2, const Limits& limits) {
    const K& field = p.field;
    const Quiver& q = p.quiver;
    std::map<Block, std::vector<PathVector<K>>> by_arrow, by_relation;
    for (const auto& f : prev.f)
        for (ArrowId a : q.arrows_from(f.terminus))
            by_arrow[{f.origin, q.arrow(a).terminus}].push_back(
                multiply(field, f.vector, PathVector<K>::monomial(field, q.arrow_path(a))));
    for (const auto& f : prev2.f)
        for (const auto& g : p.relations) {
            auto b = uniform_block(g);
            if (b->first != f.terminus) continue;
            by_relation[{f.origin, b->second}].push_back(multiply(field, f.vector, g));
        }
    std::vector<UniformBlock<K>> out;
    for (const auto& [block, xs] : by_arrow) {
        auto it = by_relation.find(block);
        if (it == by_relation.end()) continue;
        std::vector<PathVector<K>> all = xs;
        all.insert(all.end(), it->second.begin(), it->second.end());
        Ambient ambient = Ambient::support_of(all);
        check_ambient(ambient.size(), limits);
        auto meet = intersect(field, Subspace<K>::span(field, ambient, xs),
                              Subspace<K>::span(field, ambient, it->second));
        for (auto& v : meet.basis(field)) out.push_back({block.first, block.second, std::move(v)});
    }
    sort_by_leading_path(out);
    return out;
}

}  // namespace detail

/// Solves f^n_i = Σ_j f^{n-1}_j h_{ji} with each h_{ji} a combination of arrows, and checks it.
template <Field K>
PathMatrix<K> compute_h(const ResolutionData<K>& data, std::size_t n) {
    if (n == 0 || n > data.max_level()) throw std::out_of_range("compute_h: level out of range");
    const K& field = data.presentation.field;
    const Quiver& q = data.presentation.quiver;
    const auto& lower = data.level(n - 1).f;
    const auto& upper = data.level(n).f;
    PathMatrix<K> h(lower.size(), std::vector<PathVector<K>>(upper.size(), PathVector<K>(1)));
    for (std::size_t i = 0; i < upper.size(); ++i) {
        const auto& target = upper[i];
        std::vector<std::pair<std::size_t, ArrowId>> unknowns;
        std::vector<PathVector<K>> columns;
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (lower[j].origin != target.origin) continue;
            for (ArrowId a : q.arrows_from(lower[j].terminus)) {
                if (q.arrow(a).terminus != target.terminus) continue;
                unknowns.emplace_back(j, a);
                columns.push_back(multiply(field, lower[j].vector, PathVector<K>::monomial(field, q.arrow_path(a))));
            }
        }
        auto cols_and_target = columns;
        cols_and_target.push_back(target.vector);
        Ambient ambient = Ambient::support_of(cols_and_target);
        Matrix<K> a(field, ambient.size(), columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto coords = ambient.coordinates(field, columns[c]);
            for (std::size_t r = 0; r < ambient.size(); ++r) a(r, c) = coords[r];
        }
        auto sol = solve(field, a, ambient.coordinates(field, target.vector));
        if (!sol.x)
            throw std::logic_error("f^" + std::to_string(n) + "_" + std::to_string(i) +
                                   " is not in the span of the previous level times arrows");
        for (std::size_t c = 0; c < unknowns.size(); ++c) {
            auto [j, arrow] = unknowns[c];
            h[j][i].add_term(field, q.arrow_path(arrow), (*sol.x)[c]);
        }
        PathVector<K> check(n);
        for (std::size_t j = 0; j < lower.size(); ++j) check.add_scaled(field, field.one(), multiply(field, lower[j].vector, h[j][i]));
        if (!(check == target.vector)) throw std::logic_error("h identity failed after solving");
    }
    return h;
}

/// Levels 0..N of the linear part of the minimal right resolution of Λ_0.
template <Field K>
ResolutionData<K> compute_resolution(const Presentation<K>& p, std::size_t max_level, Limits limits = {}) {
    if (!p.is_quadratic()) throw not_quadratic_error(p.max_relation_degree());
    if (max_level > limits.max_level)
        throw resource_limit_error("level " + std::to_string(max_level) + " exceeds limit " +
                                   std::to_string(limits.max_level));
    const K& field = p.field;
    const Quiver& q = p.quiver;
    ResolutionData<K> data{p, {}};
    for (std::size_t n = 0; n <= max_level; ++n) {
        ResolutionLevel<K> level;
        level.n = n;
        if (n == 0) {
            for (VertexId v = 0; v < q.num_vertices(); ++v)
                level.f.push_back({v, v, PathVector<K>::monomial(field, q.trivial_path(v))});
        } else if (n == 1) {
            for (ArrowId a = 0; a < q.num_arrows(); ++a)
                level.f.push_back(detail::tagged(PathVector<K>::monomial(field, q.arrow_path(a))));
        } else if (n == 2) {
            for (const auto& r : p.relations) level.f.push_back(detail::tagged(r));
            detail::sort_by_leading_path(level.f);
        } else {
            level.f = detail::next_level(p, data.levels[n - 1], data.levels[n - 2], limits);
        }
        data.levels.push_back(std::move(level));
        if (n >= 1) data.levels[n].h = compute_h(data, n);
    }
    return data;
}

enum class Side { right, left };

/// A complex of graded projectives whose differentials have degree-1 entries.
/// Right: generator i spans anchor·Λ and entry (j,i) multiplies from the left.
/// Left: generator i spans Λ·anchor and entry (j,i) multiplies from the right.
template <Field K>
struct LinearComplex {
    Side side = Side::right;
    std::vector<std::vector<VertexId>> anchors;  // per level, per generator
    std::vector<PathMatrix<K>> maps;             // maps[n][j][i] for n >= 1; maps[0] empty

    std::size_t max_level() const { return anchors.size() - 1; }
};

template <Field K>
LinearComplex<K> right_complex(const ResolutionData<K>& data) {
    LinearComplex<K> c;
    c.side = Side::right;
    for (const auto& l : data.levels) {
        std::vector<VertexId> anchors;
        for (const auto& f : l.f) anchors.push_back(f.terminus);
        c.anchors.push_back(std::move(anchors));
        c.maps.push_back(l.h);
    }
    return c;
}

struct HomologyTable {
    std::size_t max_level = 0, max_degree = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> entries;  // (n, d) -> dim H

    bool all_zero() const {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.second == 0; });
    }
    /// First nonzero entry in (n, d) order.
    std::optional<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> first_nonzero() const {
        for (const auto& [key, dim] : entries)
            if (dim != 0) return std::make_pair(key, dim);
        return std::nullopt;
    }
    std::size_t at(std::size_t n, std::size_t d) const { return entries.at({n, d}); }
};

namespace detail {

template <Field K>
class ComplexInDegree {
public:
    ComplexInDegree(const GradedQuotient<K>& quot, const LinearComplex<K>& cx) : quot_(quot), cx_(cx) {}

    /// Basis of (L^n)_d: (generator, normal word index), offsets per generator.
    std::vector<std::size_t> offsets(std::size_t n, std::size_t d) const {
        std::vector<std::size_t> off{0};
        for (VertexId v : cx_.anchors[n]) off.push_back(off.back() + words(v, n, d).size());
        return off;
    }
    std::size_t dimension(std::size_t n, std::size_t d) const { return offsets(n, d).back(); }

    Matrix<K> differential(std::size_t n, std::size_t d) const {
        const K& field = quot_.field();
        auto src = offsets(n, d), dst = offsets(n - 1, d);
        Matrix<K> m(field, dst.back(), src.back());
        if (d < n) return m;
        const std::size_t e = d - n;
        for (std::size_t i = 0; i < cx_.anchors[n].size(); ++i) {
            const auto& ws = words(cx_.anchors[n][i], n, d);
            for (std::size_t k = 0; k < ws.size(); ++k) {
                const std::size_t col = src[i] + k;
                for (std::size_t j = 0; j < cx_.anchors[n - 1].size(); ++j) {
                    const auto& entry = cx_.maps[n][j][i];
                    if (entry.is_zero()) continue;
                    const auto& target_words = words(cx_.anchors[n - 1][j], n - 1, d);
                    for (const auto& [path, c] : entry.terms()) {
                        ArrowId a = path.arrows.front();
                        const auto& image = cx_.side == Side::right ? quot_.left_multiply_arrow(a, e, ws[k])
                                                                    : quot_.right_multiply_arrow(e, ws[k], a);
                        for (const auto& [t, val] : image) {
                            auto pos = std::lower_bound(target_words.begin(), target_words.end(), t);
                            if (pos == target_words.end() || *pos != t)
                                throw std::logic_error("differential leaves its target summand");
                            const std::size_t row = dst[j] + static_cast<std::size_t>(pos - target_words.begin());
                            m(row, col) = field.add(m(row, col), field.mul(c, val));
                        }
                    }
                }
            }
        }
        return m;
    }

private:
    const std::vector<std::size_t>& words(VertexId v, std::size_t n, std::size_t d) const {
        static const std::vector<std::size_t> none;
        if (d < n) return none;
        return cx_.side == Side::right ? quot_.words_from(v, d - n) : quot_.words_to(v, d - n);
    }

    const GradedQuotient<K>& quot_;
    const LinearComplex<K>& cx_;
};

}  // namespace detail

/// dim H at (n, d) of the augmented complex ... -> L^1 -> L^0 -> Λ_0 -> 0, for n <= N, d <= D.
/// The complex must carry level N+1 and the quotient must reach degree D.
template <Field K>
HomologyTable homology_dimensions(const GradedQuotient<K>& quot, const LinearComplex<K>& cx, std::size_t max_level,
                                  std::size_t max_degree) {
    if (cx.max_level() < max_level + 1)
        throw std::invalid_argument("homology at level N needs the complex through level N+1");
    if (quot.max_degree() < max_degree) throw std::invalid_argument("quotient does not reach the degree bound");
    const K& field = quot.field();
    detail::ComplexInDegree<K> deg(quot, cx);
    HomologyTable table{max_level, max_degree, {}};
    for (std::size_t d = 0; d <= max_degree; ++d) {
        std::vector<std::size_t> ranks(max_level + 2, 0);
        ranks[0] = d == 0 ? deg.dimension(0, 0) : 0;  // augmentation onto Λ_0
        for (std::size_t n = 1; n <= max_level + 1; ++n)
            ranks[n] = n <= d ? rank(field, deg.differential(n, d)) : 0;
        for (std::size_t n = 0; n <= max_level; ++n)
            table.entries[{n, d}] = deg.dimension(n, d) - ranks[n] - ranks[n + 1];
    }
    return table;
}

template <Field K>
HomologyTable homology_dimensions(const ResolutionData<K>& data, std::size_t max_level, std::size_t max_degree,
                                  Limits limits = {}) {
    GradedQuotient<K> quot(data.presentation, max_degree, limits);
    return homology_dimensions(quot, right_complex(data), max_level, max_degree);
}

/// Σ_i dim (f^n_i Λ)_d, the dimension of the degree-d part of L^n.
template <Field K>
std::size_t free_module_dimension(const GradedQuotient<K>& quot, const LinearComplex<K>& cx, std::size_t n,
                                  std::size_t d) {
    return detail::ComplexInDegree<K>(quot, cx).dimension(n, d);
}

/// Verdict of a bounded Koszulity check.
struct KoszulVerdict {
    enum class Status { koszul_up_to, not_koszul };
    struct Witness {
        std::string kind;          // "nonquadratic_generator" or "homology"
        std::size_t level = 0;     // homological degree n of a homology witness
        std::size_t degree = 0;    // internal degree d, or the generator degree
        std::size_t dimension = 0; // dim H, or number of such generators
        std::string detail;
    };

    Status status = Status::koszul_up_to;
    std::size_t max_level = 0, max_degree = 0;
    std::optional<Witness> witness;

    bool koszul() const { return status == Status::koszul_up_to; }
    std::string describe() const {
        if (koszul())
            return "koszul_up_to(" + std::to_string(max_level) + "," + std::to_string(max_degree) + ")";
        if (witness->kind == "homology")
            return "not_koszul: homology of dimension " + std::to_string(witness->dimension) + " at (n=" +
                   std::to_string(witness->level) + ", d=" + std::to_string(witness->degree) + ")";
        return "not_koszul: degree-" + std::to_string(witness->degree) + " relation is a minimal generator of I (" +
               witness->detail + ")";
    }
};

/// Relations of degree > 2 that lie in the ideal generated by lower-degree relations are
/// dropped; the remaining higher-degree relations are minimal generators. Returns the reduced
/// presentation and, if any, the smallest degree of a non-quadratic minimal generator.
template <Field K>
std::pair<Presentation<K>, std::optional<std::pair<std::size_t, PathVector<K>>>> minimal_relations(
    const Presentation<K>& p, Limits limits = {}) {
    Presentation<K> kept{p.field, p.quiver, {}};
    std::optional<std::pair<std::size_t, PathVector<K>>> first;
    const std::size_t top = p.max_relation_degree();
    for (std::size_t k = 0; k <= top; ++k) {
        auto rels = p.relations_of_degree(k);
        if (rels.empty()) continue;
        if (k <= 2) {
            kept.relations.insert(kept.relations.end(), rels.begin(), rels.end());
            continue;
        }
        GradedQuotient<K> quot(kept, k, limits);
        std::vector<PathVector<K>> residues;
        for (const auto& g : rels) residues.push_back(quot.residue(g));
        // Minimal generators in degree k: a basis of the residues' span, lifted back.
        auto essential = Subspace<K>::span(p.field, residues);
        if (essential.dimension() > 0) {
            for (std::size_t r = 0; r < rels.size(); ++r)
                if (!residues[r].is_zero()) {
                    if (!first) first = std::make_pair(k, rels[r]);
                    break;
                }
            kept.relations.insert(kept.relations.end(), rels.begin(), rels.end());
        }
    }
    kept.relations = canonicalize_relations(p.field, kept.relations);
    return {kept, first};
}

/// Koszul up to (N, D), or a witness against it.
template <Field K>
KoszulVerdict certify_koszul_up_to(const Presentation<K>& p, std::size_t max_level, std::size_t max_degree,
                                   Limits limits = {}) {
    KoszulVerdict v;
    v.max_level = max_level;
    v.max_degree = max_degree;
    auto [reduced, nonquadratic] = minimal_relations(p, limits);
    if (nonquadratic) {
        v.status = KoszulVerdict::Status::not_koszul;
        v.witness = KoszulVerdict::Witness{"nonquadratic_generator", 2, nonquadratic->first, 1,
                                           to_string(p.field, p.quiver, nonquadratic->second)};
        return v;
    }
    auto data = compute_resolution(reduced, max_level + 1, limits);
    auto table = homology_dimensions(data, max_level, max_degree, limits);
    if (auto bad = table.first_nonzero()) {
        v.status = KoszulVerdict::Status::not_koszul;
        v.witness = KoszulVerdict::Witness{"homology", bad->first.first, bad->first.second, bad->second, ""};
    }
    return v;
}

}  // namespace koszul
