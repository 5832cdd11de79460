/**
 * @file bimodule.hpp
 * @brief The minimal projective resolution of Λ over Λ^e = Λ^op ⊗ Λ.
 *
 *     P^n = ⊕_i Λ o(f^n_i) ⊗ t(f^n_i) Λ
 *
 * with the j-th component of δ^n on the i-th generator
 *
 *     Σ_p c_pj(n,i,1) f¹_p ⊗ t(f^{n-1}_j)  +  (-1)^n Σ_q c_jq(n,i,n-1) o(f^{n-1}_j) ⊗ f¹_q
 *
 * and δ^0 the multiplication map. Tensors are stored as sums of pairs of
 * normal words, so two tensors are equal exactly when their terms agree.
 */
#pragma once

#include "comult.hpp"
#include "field.hpp"
#include "path_vector.hpp"
#include "quotient.hpp"
#include "resolution.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

template <Field K>
class TensorElement {
public:
    using value_type = typename K::value_type;
    using Terms = std::map<std::pair<Path, Path>, value_type>;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const K& field, const Path& left, const Path& right, const value_type& c) {
        if (field.is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace({left, right}, c);
        if (!inserted) {
            it->second = field.add(it->second, c);
            if (field.is_zero(it->second)) terms_.erase(it);
        }
    }

    friend bool operator==(const TensorElement&, const TensorElement&) = default;

private:
    Terms terms_;
};

template <Field K>
std::string to_string(const K& field, const Quiver& q, const TensorElement<K>& t) {
    if (t.is_zero()) return "0";
    std::string s;
    for (const auto& [lr, c] : t.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + field.to_string(c) + ")" + q.to_string(lr.first) + "|" + q.to_string(lr.second);
    }
    return s;
}

struct BimoduleGenerator {
    VertexId origin, terminus;
    std::size_t degree;
};

template <Field K>
struct BimoduleResolution {
    Presentation<K> presentation;
    std::vector<std::vector<BimoduleGenerator>> generators;
    std::vector<std::vector<std::vector<TensorElement<K>>>> delta;  // delta[n][j][i], n >= 1

    std::size_t max_level() const { return generators.size() - 1; }
};

template <Field K>
BimoduleResolution<K> build_bimodule_resolution(const ComultTable<K>& table, const ResolutionData<K>& data,
                                                std::size_t max_level) {
    if (max_level > table.max_level || max_level > data.max_level())
        throw std::out_of_range("bimodule resolution beyond computed levels");
    const K& field = data.presentation.field;
    const Quiver& quiver = data.presentation.quiver;
    BimoduleResolution<K> res{data.presentation, {}, {}};
    for (std::size_t n = 0; n <= max_level; ++n) {
        std::vector<BimoduleGenerator> gens;
        for (const auto& f : data.level(n).f) gens.push_back({f.origin, f.terminus, n});
        res.generators.push_back(std::move(gens));
    }
    res.delta.emplace_back();
    const auto& arrows = data.level(1).f;
    for (std::size_t n = 1; n <= max_level; ++n) {
        const auto& lower = data.level(n - 1).f;
        std::vector<std::vector<TensorElement<K>>> d(lower.size(), std::vector<TensorElement<K>>(data.level(n).size()));
        const auto sign = n % 2 == 0 ? field.one() : field.neg(field.one());
        for (std::size_t i = 0; i < data.level(n).size(); ++i) {
            for (const auto& [pq, c] : table.at(n, i, 1).coefficients) {
                const auto& [p, j] = pq;
                d[j][i].add_term(field, arrows[p].vector.leading_path(), quiver.trivial_path(lower[j].terminus), c);
            }
            for (const auto& [jq, c] : table.at(n, i, n - 1).coefficients) {
                const auto& [j, q] = jq;
                d[j][i].add_term(field, quiver.trivial_path(lower[j].origin), arrows[q].vector.leading_path(),
                                 field.mul(sign, c));
            }
        }
        res.delta.push_back(std::move(d));
    }
    return res;
}

struct DeltaSquaredReport {
    bool holds = true;
    std::size_t checked_levels = 0;
    std::string witness;
};

namespace detail {

template <Field K>
void add_tensor_product(const GradedQuotient<K>& quot, TensorElement<K>& acc, const typename K::value_type& c,
                        const Path& left, const Path& right) {
    const K& field = quot.field();
    if (field.is_zero(c)) return;
    auto l = quot.reduce(left);
    if (l.empty()) return;
    auto r = quot.reduce(right);
    for (const auto& [a, x] : l)
        for (const auto& [b, y] : r)
            acc.add_term(field, quot.normal_words(left.length())[a], quot.normal_words(right.length())[b],
                         field.mul(c, field.mul(x, y)));
}

}  // namespace detail

/// δ^{n-1} δ^n = 0 for 1 <= n <= N, with δ^0 the multiplication map.
template <Field K>
DeltaSquaredReport verify_delta_squared(const BimoduleResolution<K>& res, const Presentation<K>& p) {
    const K& field = p.field;
    const Quiver& q = p.quiver;
    GradedQuotient<K> quot(p, 2);
    DeltaSquaredReport rep;
    for (std::size_t n = 1; n <= res.max_level(); ++n) {
        ++rep.checked_levels;
        const auto& upper = res.delta[n];
        for (std::size_t i = 0; i < res.generators[n].size(); ++i) {
            if (n == 1) {
                PathVector<K> image(1);
                for (std::size_t j = 0; j < res.generators[0].size(); ++j)
                    for (const auto& [lr, c] : upper[j][i].terms())
                        if (auto prod = compose_paths(lr.first, lr.second)) image.add_term(field, *prod, c);
                if (!quot.reduce(image).empty()) {
                    rep.holds = false;
                    rep.witness = "multiplication after delta^1 is nonzero on generator " + std::to_string(i);
                    return rep;
                }
                continue;
            }
            const auto& lower = res.delta[n - 1];
            for (std::size_t k = 0; k < res.generators[n - 2].size(); ++k) {
                TensorElement<K> composite;
                for (std::size_t j = 0; j < res.generators[n - 1].size(); ++j)
                    for (const auto& [lr, c] : upper[j][i].terms())
                        for (const auto& [lr2, c2] : lower[k][j].terms()) {
                            auto left = compose_paths(lr.first, lr2.first);
                            auto right = compose_paths(lr2.second, lr.second);
                            if (!left || !right) continue;
                            detail::add_tensor_product(quot, composite, field.mul(c, c2), *left, *right);
                        }
                if (!composite.is_zero()) {
                    rep.holds = false;
                    rep.witness = "delta^" + std::to_string(n - 1) + " delta^" + std::to_string(n) + " (" +
                                  std::to_string(k) + "," + std::to_string(i) + ") = " + to_string(field, q, composite);
                    return rep;
                }
            }
        }
    }
    return rep;
}

/// Λ_0 ⊗_Λ P: left factors of positive degree die, leaving a complex of right modules.
template <Field K>
LinearComplex<K> tensor_down_right(const BimoduleResolution<K>& res) {
    const K& field = res.presentation.field;
    LinearComplex<K> cx;
    cx.side = Side::right;
    for (const auto& gens : res.generators) {
        std::vector<VertexId> anchors;
        for (const auto& g : gens) anchors.push_back(g.terminus);
        cx.anchors.push_back(std::move(anchors));
    }
    cx.maps.emplace_back();
    for (std::size_t n = 1; n <= res.max_level(); ++n) {
        PathMatrix<K> m(res.delta[n].size(), std::vector<PathVector<K>>(res.generators[n].size(), PathVector<K>(1)));
        for (std::size_t j = 0; j < m.size(); ++j)
            for (std::size_t i = 0; i < m[j].size(); ++i)
                for (const auto& [lr, c] : res.delta[n][j][i].terms())
                    if (lr.first.trivial()) m[j][i].add_term(field, lr.second, c);
        cx.maps.push_back(std::move(m));
    }
    return cx;
}

/// P ⊗_Λ Λ_0: right factors of positive degree die, leaving a complex of left modules.
template <Field K>
LinearComplex<K> tensor_down_left(const BimoduleResolution<K>& res) {
    const K& field = res.presentation.field;
    LinearComplex<K> cx;
    cx.side = Side::left;
    for (const auto& gens : res.generators) {
        std::vector<VertexId> anchors;
        for (const auto& g : gens) anchors.push_back(g.origin);
        cx.anchors.push_back(std::move(anchors));
    }
    cx.maps.emplace_back();
    for (std::size_t n = 1; n <= res.max_level(); ++n) {
        PathMatrix<K> m(res.delta[n].size(), std::vector<PathVector<K>>(res.generators[n].size(), PathVector<K>(1)));
        for (std::size_t j = 0; j < m.size(); ++j)
            for (std::size_t i = 0; i < m[j].size(); ++i)
                for (const auto& [lr, c] : res.delta[n][j][i].terms())
                    if (lr.second.trivial()) m[j][i].add_term(field, lr.first, c);
        cx.maps.push_back(std::move(m));
    }
    return cx;
}

struct TensorDownVerdict {
    bool holds = true;
    std::vector<int> signs;  // per level n >= 1: down = sign * reference
    std::string witness;
};

/// Compares level by level; each differential must equal ±(the reference one).
template <Field K>
TensorDownVerdict compare_differentials(const K& field, const LinearComplex<K>& down, const LinearComplex<K>& ref) {
    TensorDownVerdict v;
    v.signs.push_back(1);
    const std::size_t top = std::min(down.max_level(), ref.max_level());
    if (down.side != ref.side || down.anchors.size() < top + 1) {
        v.holds = false;
        v.witness = "complexes have different shapes";
        return v;
    }
    for (std::size_t n = 0; n <= top; ++n)
        if (down.anchors[n] != ref.anchors[n]) {
            v.holds = false;
            v.witness = "generators differ at level " + std::to_string(n);
            return v;
        }
    const auto minus = field.neg(field.one());
    for (std::size_t n = 1; n <= top; ++n) {
        bool plus_ok = true, minus_ok = true;
        for (std::size_t j = 0; j < ref.maps[n].size(); ++j)
            for (std::size_t i = 0; i < ref.maps[n][j].size(); ++i) {
                const auto& a = down.maps[n][j][i];
                const auto& b = ref.maps[n][j][i];
                plus_ok = plus_ok && a == b;
                minus_ok = minus_ok && a == b.scaled(field, minus);
            }
        if (plus_ok)
            v.signs.push_back(1);
        else if (minus_ok)
            v.signs.push_back(-1);
        else {
            v.signs.push_back(0);
            v.holds = false;
            if (v.witness.empty()) v.witness = "induced differential differs at level " + std::to_string(n);
        }
    }
    return v;
}

/// Λ_0 ⊗_Λ P against the right resolution: δ^n induces (-1)^n e^n.
template <Field K>
TensorDownVerdict check_tensor_down_right(const BimoduleResolution<K>& res, const ResolutionData<K>& data) {
    auto v = compare_differentials(res.presentation.field, tensor_down_right(res), right_complex(data));
    for (std::size_t n = 1; n < v.signs.size(); ++n)
        if (v.signs[n] != (n % 2 == 0 ? 1 : -1) && !(v.signs[n] == 1 && data.level(n).size() == 0)) {
            v.holds = false;
            if (v.witness.empty()) v.witness = "unexpected sign at level " + std::to_string(n);
        }
    return v;
}

/// P ⊗_Λ Λ_0 against the left resolution: δ^n induces the left differential itself.
template <Field K>
TensorDownVerdict check_tensor_down_left(const BimoduleResolution<K>& res, const LeftResolutionData<K>& left) {
    auto v = compare_differentials(res.presentation.field, tensor_down_left(res), left.complex());
    for (std::size_t n = 1; n < v.signs.size(); ++n)
        if (v.signs[n] != 1) {
            v.holds = false;
            if (v.witness.empty()) v.witness = "unexpected sign at level " + std::to_string(n);
        }
    return v;
}

struct LinearityReport {
    bool linear = true;
    std::string witness;
};

/// Generators of P^n sit in degree n and every δ term has bidegree (1,0) or (0,1).
template <Field K>
LinearityReport check_linear_over_enveloping(const BimoduleResolution<K>& res) {
    LinearityReport rep;
    for (std::size_t n = 0; n <= res.max_level(); ++n)
        for (const auto& g : res.generators[n])
            if (g.degree != n) {
                rep.linear = false;
                rep.witness = "generator of P^" + std::to_string(n) + " in degree " + std::to_string(g.degree);
                return rep;
            }
    for (std::size_t n = 1; n <= res.max_level(); ++n)
        for (const auto& row : res.delta[n])
            for (const auto& entry : row)
                for (const auto& [lr, c] : entry.terms())
                    if (lr.first.length() + lr.second.length() != 1) {
                        rep.linear = false;
                        rep.witness = "delta^" + std::to_string(n) + " has a term of total degree " +
                                      std::to_string(lr.first.length() + lr.second.length());
                        return rep;
                    }
    return rep;
}

namespace detail {

/// Degree-d slices of the bimodule complex: basis (generator, left word, right word).
template <Field K>
class BimoduleInDegree {
public:
    BimoduleInDegree(const GradedQuotient<K>& quot, const BimoduleResolution<K>& res) : quot_(quot), res_(res) {}

    struct Slot {
        std::size_t gen, left_degree, offset;
        const std::vector<std::size_t>* left;
        const std::vector<std::size_t>* right;
    };

    std::vector<Slot> slots(std::size_t n, std::size_t d) const {
        std::vector<Slot> out;
        if (d < n) return out;
        std::size_t offset = 0;
        for (std::size_t i = 0; i < res_.generators[n].size(); ++i) {
            const auto& g = res_.generators[n][i];
            for (std::size_t a = 0; a <= d - n; ++a) {
                const auto* l = &quot_.words_to(g.origin, a);
                const auto* r = &quot_.words_from(g.terminus, d - n - a);
                out.push_back({i, a, offset, l, r});
                offset += l->size() * r->size();
            }
        }
        return out;
    }
    static std::size_t size(const std::vector<Slot>& s) {
        return s.empty() ? 0 : s.back().offset + s.back().left->size() * s.back().right->size();
    }

    std::size_t dimension(std::size_t n, std::size_t d) const { return size(slots(n, d)); }

    Matrix<K> differential(std::size_t n, std::size_t d) const {
        const K& field = quot_.field();
        auto src = slots(n, d), dst = slots(n - 1, d);
        Matrix<K> m(field, size(dst), size(src));
        auto position = [&](std::size_t gen, std::size_t a, std::size_t lw, std::size_t rw) {
            for (const auto& s : dst)
                if (s.gen == gen && s.left_degree == a) {
                    auto li = std::lower_bound(s.left->begin(), s.left->end(), lw) - s.left->begin();
                    auto ri = std::lower_bound(s.right->begin(), s.right->end(), rw) - s.right->begin();
                    return s.offset + static_cast<std::size_t>(li) * s.right->size() + static_cast<std::size_t>(ri);
                }
            throw std::logic_error("bimodule differential leaves its target");
        };
        for (const auto& s : src) {
            const std::size_t b = d - n - s.left_degree;
            for (std::size_t li = 0; li < s.left->size(); ++li)
                for (std::size_t ri = 0; ri < s.right->size(); ++ri) {
                    const std::size_t col = s.offset + li * s.right->size() + ri;
                    const std::size_t lw = (*s.left)[li], rw = (*s.right)[ri];
                    for (std::size_t j = 0; j < res_.generators[n - 1].size(); ++j)
                        for (const auto& [lr, c] : res_.delta[n][j][s.gen].terms()) {
                            // λ·λ' ⊗ ρ'·ρ with one of λ', ρ' an arrow and the other a vertex
                            Coords<K> lvec, rvec;
                            std::size_t a2 = s.left_degree, b2 = b;
                            if (lr.first.trivial())
                                lvec = {{lw, field.one()}};
                            else {
                                lvec = quot_.right_multiply_arrow(s.left_degree, lw, lr.first.arrows[0]);
                                ++a2;
                            }
                            if (lr.second.trivial())
                                rvec = {{rw, field.one()}};
                            else {
                                rvec = quot_.left_multiply_arrow(lr.second.arrows[0], b, rw);
                                ++b2;
                            }
                            for (const auto& [x, cx] : lvec)
                                for (const auto& [y, cy] : rvec) {
                                    std::size_t row = position(j, a2, x, y);
                                    m(row, col) = field.add(m(row, col), field.mul(c, field.mul(cx, cy)));
                                }
                        }
                }
        }
        return m;
    }

    /// δ^0 in degree d: λ ⊗ ρ ↦ λρ ∈ Λ_d.
    Matrix<K> multiplication(std::size_t d) const {
        const K& field = quot_.field();
        auto src = slots(0, d);
        Matrix<K> m(field, quot_.dimension(d), size(src));
        for (const auto& s : src) {
            const std::size_t b = d - s.left_degree;
            for (std::size_t li = 0; li < s.left->size(); ++li)
                for (std::size_t ri = 0; ri < s.right->size(); ++ri) {
                    const std::size_t col = s.offset + li * s.right->size() + ri;
                    auto prod = quot_.multiply(s.left_degree, {{(*s.left)[li], field.one()}}, b,
                                               {{(*s.right)[ri], field.one()}});
                    for (const auto& [t, c] : prod) m(t, col) = c;
                }
        }
        return m;
    }

private:
    const GradedQuotient<K>& quot_;
    const BimoduleResolution<K>& res_;
};

}  // namespace detail

/// Homology of the augmented complex ... -> P^1 -> P^0 -> Λ -> 0 in total degrees d <= D.
/// Needs the resolution through level N+1. This is the slow path: slices grow like dim Λ_a · dim Λ_b.
template <Field K>
HomologyTable bimodule_homology(const GradedQuotient<K>& quot, const BimoduleResolution<K>& res,
                                std::size_t max_level, std::size_t max_degree) {
    if (res.max_level() < max_level + 1) throw std::invalid_argument("bimodule homology needs level N+1");
    const K& field = quot.field();
    detail::BimoduleInDegree<K> deg(quot, res);
    HomologyTable table{max_level, max_degree, {}};
    for (std::size_t d = 0; d <= max_degree; ++d) {
        std::vector<std::size_t> ranks(max_level + 2, 0);
        ranks[0] = rank(field, deg.multiplication(d));
        for (std::size_t n = 1; n <= max_level + 1; ++n) ranks[n] = n <= d ? rank(field, deg.differential(n, d)) : 0;
        for (std::size_t n = 0; n <= max_level; ++n)
            table.entries[{n, d}] = deg.dimension(n, d) - ranks[n] - ranks[n + 1];
    }
    return table;
}

template <Field K>
std::size_t bimodule_dimension(const GradedQuotient<K>& quot, const BimoduleResolution<K>& res, std::size_t n,
                               std::size_t d) {
    return detail::BimoduleInDegree<K>(quot, res).dimension(n, d);
}

}  // namespace koszul
