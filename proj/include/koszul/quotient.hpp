/**
 * @file quotient.hpp
 * @brief Degree-wise normal forms in Λ = kQ/I.
 *
 * For each degree d, the coordinates of Λ_d are the paths of length d that are
 * not the leading (lexicographically smallest) path of any element of I_d,
 * i.e. the complement of the pivot set of the RREF basis of I_d in B_d.
 * These "normal words" are built one degree at a time: every normal word of
 * degree d is a normal word of degree d-1 followed by an arrow, and
 *
 *     Λ_d = (Λ_{d-1} ⊗ kQ_1) / span{ m·g : m normal of degree d-k, g a relation of degree k }
 *
 * so only matrices of size about dim Λ_{d-1} · #arrows are ever reduced. The
 * brute-force route `ideal_degree_component` builds I_d inside B_d directly
 * and is kept for cross-checking.
 */
#pragma once

#include "field.hpp"
#include "linalg.hpp"
#include "path_vector.hpp"
#include "presentation.hpp"
#include "quiver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace koszul {

class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Limits {
    std::size_t max_dimension = 250000;  // largest coordinate space any single step may use
    std::size_t max_level = 64;
};

template <Field K>
using Coords = std::vector<std::pair<std::size_t, typename K::value_type>>;

template <Field K>
class GradedQuotient {
public:
    using value_type = typename K::value_type;
    using Vec = Coords<K>;
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    GradedQuotient(const Presentation<K>& p, std::size_t max_degree, Limits limits = {})
        : field_(p.field), quiver_(p.quiver), max_degree_(max_degree), limits_(limits) {
        words_.resize(max_degree + 1);
        cand_.resize(max_degree + 1);
        nf_.resize(max_degree + 1);
        for (VertexId v = 0; v < quiver_.num_vertices(); ++v) words_[0].push_back(quiver_.trivial_path(v));
        for (std::size_t d = 1; d <= max_degree; ++d) build_degree(d, p.relations);
        index_words();
        build_left_tables();
    }

    const K& field() const { return field_; }
    const Quiver& quiver() const { return quiver_; }
    std::size_t max_degree() const { return max_degree_; }

    std::size_t dimension(std::size_t d) const { return d <= max_degree_ ? words_[d].size() : check(d); }
    const std::vector<Path>& normal_words(std::size_t d) const {
        check(d);
        return words_[d];
    }
    std::optional<std::size_t> index_of(std::size_t d, const Path& w) const {
        check(d);
        const auto& ws = words_[d];
        auto it = std::lower_bound(ws.begin(), ws.end(), w);
        if (it == ws.end() || !(*it == w)) return std::nullopt;
        return static_cast<std::size_t>(it - ws.begin());
    }
    /// Normal words of degree d with the given origin (resp. terminus), in canonical order.
    const std::vector<std::size_t>& words_from(VertexId v, std::size_t d) const {
        check(d);
        return from_[d][v];
    }
    const std::vector<std::size_t>& words_to(VertexId v, std::size_t d) const {
        check(d);
        return to_[d][v];
    }

    std::map<Block, std::size_t> block_dimensions(std::size_t d) const {
        std::map<Block, std::size_t> out;
        for (const auto& w : normal_words(d)) ++out[w.block()];
        return out;
    }

    /// NF(w·a) for the normal word `word` of degree d; empty when not composable.
    const Vec& right_multiply_arrow(std::size_t d, std::size_t word, ArrowId a) const {
        check(d + 1);
        std::size_t s = cand_[d + 1][word * quiver_.num_arrows() + a];
        return s == npos ? empty_ : nf_[d + 1][s];
    }
    /// NF(a·w) for the normal word `word` of degree d.
    const Vec& left_multiply_arrow(ArrowId a, std::size_t d, std::size_t word) const {
        check(d + 1);
        return left_[d][word * quiver_.num_arrows() + a];
    }

    Vec right_multiply(std::size_t d, const Vec& x, ArrowId a) const {
        std::vector<value_type> acc(dimension(d + 1), field_.zero());
        for (const auto& [w, c] : x)
            for (const auto& [t, e] : right_multiply_arrow(d, w, a)) acc[t] = field_.add(acc[t], field_.mul(c, e));
        return compress(acc);
    }
    Vec left_multiply(ArrowId a, std::size_t d, const Vec& x) const {
        std::vector<value_type> acc(dimension(d + 1), field_.zero());
        for (const auto& [w, c] : x)
            for (const auto& [t, e] : left_multiply_arrow(a, d, w)) acc[t] = field_.add(acc[t], field_.mul(c, e));
        return compress(acc);
    }

    /// Coordinates of the residue class of a path.
    Vec reduce(const Path& p) const {
        check(p.length());
        Vec x{{p.origin, field_.one()}};
        for (std::size_t k = 0; k < p.length(); ++k) {
            x = right_multiply(k, x, p.arrows[k]);
            if (x.empty()) break;
        }
        return x;
    }

    Vec reduce(const PathVector<K>& v) const {
        const std::size_t d = v.degree();
        std::vector<value_type> acc(dimension(d), field_.zero());
        for (const auto& [p, c] : v.terms())
            for (const auto& [t, e] : reduce(p)) acc[t] = field_.add(acc[t], field_.mul(c, e));
        return compress(acc);
    }

    /// Canonical representative of the residue class, as a combination of normal words.
    PathVector<K> residue(const PathVector<K>& v) const { return to_vector(v.degree(), reduce(v)); }

    PathVector<K> to_vector(std::size_t d, const Vec& x) const {
        PathVector<K> out(d);
        for (const auto& [w, c] : x) out.add_term(field_, words_[d][w], c);
        return out;
    }

    /// Product of residue classes given in coordinates.
    Vec multiply(std::size_t dx, const Vec& x, std::size_t dy, const Vec& y) const {
        std::vector<value_type> acc(dimension(dx + dy), field_.zero());
        for (const auto& [w, c] : y) {
            Vec prod = x;
            for (std::size_t k = 0; k < dy && !prod.empty(); ++k) prod = right_multiply(dx + k, prod, words_[dy][w].arrows[k]);
            if (dy == 0) {
                // right multiplication by a vertex idempotent
                Vec kept;
                for (const auto& [t, e] : prod)
                    if (words_[dx][t].terminus == words_[0][w].origin) kept.emplace_back(t, e);
                prod = std::move(kept);
            }
            for (const auto& [t, e] : prod) acc[t] = field_.add(acc[t], field_.mul(c, e));
        }
        return compress(acc);
    }

private:
    std::size_t check(std::size_t d) const {
        if (d > max_degree_)
            throw std::out_of_range("degree " + std::to_string(d) + " beyond quotient bound " +
                                    std::to_string(max_degree_));
        return 0;
    }

    Vec compress(const std::vector<value_type>& dense) const {
        Vec out;
        for (std::size_t k = 0; k < dense.size(); ++k)
            if (!field_.is_zero(dense[k])) out.emplace_back(k, dense[k]);
        return out;
    }

    void build_degree(std::size_t d, const std::vector<PathVector<K>>& relations) {
        const std::size_t A = quiver_.num_arrows();
        const auto& prev = words_[d - 1];
        // Candidates m·a, sorted into canonical path order (already sorted for d >= 2).
        std::vector<std::tuple<Path, std::size_t, ArrowId>> raw;
        for (std::size_t m = 0; m < prev.size(); ++m)
            for (ArrowId a : quiver_.arrows_from(prev[m].terminus))
                raw.emplace_back(*compose_paths(prev[m], quiver_.arrow_path(a)), m, a);
        std::sort(raw.begin(), raw.end(),
                  [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });
        std::vector<Path> cand;
        cand_[d].assign(prev.size() * A, npos);
        for (auto& [path, m, a] : raw) {
            cand_[d][m * A + a] = cand.size();
            cand.push_back(std::move(path));
        }
        if (cand.size() > limits_.max_dimension)
            throw resource_limit_error("degree " + std::to_string(d) + " needs " + std::to_string(cand.size()) +
                                       " coordinates (limit " + std::to_string(limits_.max_dimension) + ")");

        Matrix<K> images(cand.size());
        for (const auto& g : relations) {
            const std::size_t k = g.degree();
            if (k > d) continue;
            const VertexId start = g.leading_path().origin;
            for (std::size_t m : words_ending_at(d - k, start)) {
                std::vector<value_type> row(cand.size(), field_.zero());
                for (const auto& [path, c] : g.terms()) {
                    Vec x{{m, field_.one()}};
                    for (std::size_t s = 0; s + 1 < k && !x.empty(); ++s)
                        x = right_multiply(d - k + s, x, path.arrows[s]);
                    const ArrowId last = path.arrows.back();
                    for (const auto& [w, e] : x) {
                        std::size_t col = cand_[d][w * A + last];
                        row[col] = field_.add(row[col], field_.mul(c, e));
                    }
                }
                images.append_row(std::move(row));
            }
        }
        auto red = rref(field_, images);
        std::vector<std::size_t> pivot_row(cand.size(), npos);
        for (std::size_t r = 0; r < red.rank; ++r) pivot_row[red.pivots[r]] = r;
        std::vector<std::size_t> new_index(cand.size(), npos);
        for (std::size_t s = 0; s < cand.size(); ++s)
            if (pivot_row[s] == npos) {
                new_index[s] = words_[d].size();
                words_[d].push_back(cand[s]);
            }
        nf_[d].resize(cand.size());
        for (std::size_t s = 0; s < cand.size(); ++s) {
            if (pivot_row[s] == npos) {
                nf_[d][s] = {{new_index[s], field_.one()}};
                continue;
            }
            const auto& row = red.reduced.row(pivot_row[s]);
            for (std::size_t c = 0; c < cand.size(); ++c)
                if (pivot_row[c] == npos && !field_.is_zero(row[c])) nf_[d][s].emplace_back(new_index[c], field_.neg(row[c]));
        }
    }

    std::vector<std::size_t> words_ending_at(std::size_t d, VertexId v) const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < words_[d].size(); ++k)
            if (words_[d][k].terminus == v) out.push_back(k);
        return out;
    }

    void index_words() {
        const std::size_t n = quiver_.num_vertices();
        from_.assign(max_degree_ + 1, std::vector<std::vector<std::size_t>>(n));
        to_.assign(max_degree_ + 1, std::vector<std::vector<std::size_t>>(n));
        for (std::size_t d = 0; d <= max_degree_; ++d)
            for (std::size_t k = 0; k < words_[d].size(); ++k) {
                from_[d][words_[d][k].origin].push_back(k);
                to_[d][words_[d][k].terminus].push_back(k);
            }
    }

    void build_left_tables() {
        const std::size_t A = quiver_.num_arrows();
        left_.resize(max_degree_);
        for (std::size_t d = 0; d < max_degree_; ++d) {
            left_[d].resize(words_[d].size() * A);
            for (std::size_t w = 0; w < words_[d].size(); ++w)
                for (ArrowId a = 0; a < A; ++a) {
                    if (quiver_.arrow(a).terminus != words_[d][w].origin) continue;
                    Vec x{{a, field_.one()}};
                    // a is itself a normal word of degree 1 with index a
                    for (std::size_t s = 0; s < d && !x.empty(); ++s) x = right_multiply(1 + s, x, words_[d][w].arrows[s]);
                    left_[d][w * A + a] = std::move(x);
                }
        }
    }

    K field_;
    Quiver quiver_;
    std::size_t max_degree_;
    Limits limits_;
    std::vector<std::vector<Path>> words_;
    std::vector<std::vector<std::size_t>> cand_;  // cand_[d][m*A + a] = candidate index of m·a
    std::vector<std::vector<Vec>> nf_;            // nf_[d][s] = NF of candidate s
    std::vector<std::vector<Vec>> left_;          // left_[d][w*A + a] = NF(a·w)
    std::vector<std::vector<std::vector<std::size_t>>> from_, to_;
    Vec empty_;
};

/// dim Λ_d, total and per (origin, terminus) block.
struct LambdaDimension {
    std::size_t total = 0;
    std::map<Block, std::size_t> per_block;
};

template <Field K>
LambdaDimension lambda_dimension(const Presentation<K>& p, std::size_t d, Limits limits = {}) {
    GradedQuotient<K> q(p, d, limits);
    return {q.dimension(d), q.block_dimensions(d)};
}

/// I_d inside each block of B_d, by iterated one-step extension
/// I_d = B_1·I_{d-1} + I_{d-1}·B_1 + (relations of degree d).
template <Field K>
std::map<Block, Subspace<K>> ideal_degree_component(const Presentation<K>& p, std::size_t d) {
    const K& field = p.field;
    const Quiver& q = p.quiver;
    auto blocks_of = [&](std::size_t e, const std::vector<PathVector<K>>& gens) {
        std::map<Block, std::vector<PathVector<K>>> grouped;
        for (const auto& g : gens)
            for (auto& part : uniform_components(field, g)) grouped[part.block()].push_back(std::move(part.vector));
        std::map<Block, Subspace<K>> out;
        for (VertexId u = 0; u < q.num_vertices(); ++u)
            for (VertexId v = 0; v < q.num_vertices(); ++v) {
                auto paths = enumerate_paths(q, e, Block{u, v});
                if (paths.empty()) continue;
                out.emplace(Block{u, v}, Subspace<K>::span(field, Ambient(std::move(paths)), grouped[{u, v}]));
            }
        return out;
    };
    std::map<Block, Subspace<K>> current = blocks_of(std::min<std::size_t>(d, 1), {});
    if (d < 2) return blocks_of(d, {});
    for (std::size_t e = 2; e <= d; ++e) {
        std::vector<PathVector<K>> gens = p.relations_of_degree(e);
        for (const auto& [b, sub] : current)
            for (const auto& x : sub.basis(field))
                for (ArrowId a = 0; a < q.num_arrows(); ++a) {
                    auto arrow = PathVector<K>::monomial(field, q.arrow_path(a));
                    if (auto l = multiply(field, arrow, x); !l.is_zero()) gens.push_back(std::move(l));
                    if (auto r = multiply(field, x, arrow); !r.is_zero()) gens.push_back(std::move(r));
                }
        current = blocks_of(e, gens);
    }
    return current;
}

}  // namespace koszul
