/**
 * @file path_vector.hpp
 * @brief Homogeneous elements of the path algebra kQ.
 */
#pragma once

#include "field.hpp"
#include "quiver.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace koszul {

/// A finite k-linear combination of paths, all of the same length. Zero
/// coefficients are never stored.
template <Field K>
class PathVector {
public:
    using value_type = typename K::value_type;
    using Terms = std::map<Path, value_type>;

    PathVector() = default;
    explicit PathVector(std::size_t degree) : degree_(degree) {}

    static PathVector monomial(const K& field, const Path& p, value_type c) {
        PathVector v(p.length());
        v.add_term(field, p, std::move(c));
        return v;
    }
    static PathVector monomial(const K& field, const Path& p) { return monomial(field, p, field.one()); }

    std::size_t degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    value_type coefficient(const K& field, const Path& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? field.zero() : it->second;
    }

    /// The smallest path with a nonzero coefficient.
    const Path& leading_path() const {
        if (terms_.empty()) throw std::logic_error("leading path of zero vector");
        return terms_.begin()->first;
    }

    void add_term(const K& field, const Path& p, const value_type& c) {
        if (p.length() != degree_) {
            if (terms_.empty())
                degree_ = p.length();
            else
                throw std::invalid_argument("PathVector is homogeneous; term of wrong length");
        }
        if (field.is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(p, c);
        if (!inserted) {
            it->second = field.add(it->second, c);
            if (field.is_zero(it->second)) terms_.erase(it);
        }
    }

    void add_scaled(const K& field, const value_type& c, const PathVector& other) {
        if (field.is_zero(c)) return;
        for (const auto& [p, a] : other.terms_) add_term(field, p, field.mul(c, a));
    }

    PathVector scaled(const K& field, const value_type& c) const {
        PathVector r(degree_);
        r.add_scaled(field, c, *this);
        return r;
    }

    friend bool operator==(const PathVector& a, const PathVector& b) {
        // Degree of a zero vector is not meaningful for equality.
        if (a.terms_.empty() && b.terms_.empty()) return true;
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    std::size_t degree_ = 0;
    Terms terms_;
};

template <Field K>
PathVector<K> sum(const K& field, const PathVector<K>& x, const PathVector<K>& y) {
    PathVector<K> r = x;
    r.add_scaled(field, field.one(), y);
    return r;
}

template <Field K>
PathVector<K> difference(const K& field, const PathVector<K>& x, const PathVector<K>& y) {
    PathVector<K> r = x;
    r.add_scaled(field, field.neg(field.one()), y);
    return r;
}

/// Bilinear extension of path composition; non-composable pairs contribute zero.
template <Field K>
PathVector<K> multiply(const K& field, const PathVector<K>& x, const PathVector<K>& y) {
    PathVector<K> r(x.degree() + y.degree());
    for (const auto& [p, a] : x.terms())
        for (const auto& [q, b] : y.terms())
            if (auto pq = compose_paths(p, q)) r.add_term(field, *pq, field.mul(a, b));
    return r;
}

template <Field K>
struct UniformBlock {
    VertexId origin;
    VertexId terminus;
    PathVector<K> vector;

    Block block() const { return {origin, terminus}; }
};

/// Splits x by (origin, terminus); blocks ordered by (origin index, terminus index).
template <Field K>
std::vector<UniformBlock<K>> uniform_components(const K& field, const PathVector<K>& x) {
    std::map<Block, PathVector<K>> parts;
    for (const auto& [p, c] : x.terms()) {
        auto [it, _] = parts.try_emplace(p.block(), PathVector<K>(x.degree()));
        it->second.add_term(field, p, c);
    }
    std::vector<UniformBlock<K>> out;
    out.reserve(parts.size());
    for (auto& [b, v] : parts) out.push_back({b.first, b.second, std::move(v)});
    return out;
}

/// The block of a uniform nonzero vector, or nullopt if x is zero or not uniform.
template <Field K>
std::optional<Block> uniform_block(const PathVector<K>& x) {
    if (x.is_zero()) return std::nullopt;
    Block b = x.terms().begin()->first.block();
    for (const auto& [p, c] : x.terms())
        if (p.block() != b) return std::nullopt;
    return b;
}

/// Reverses every path: the image of x in the opposite path algebra.
template <Field K>
PathVector<K> reversed(const K& field, const PathVector<K>& x) {
    PathVector<K> r(x.degree());
    for (const auto& [p, c] : x.terms()) r.add_term(field, reversed(p), c);
    return r;
}

template <Field K>
std::string to_string(const K& field, const Quiver& q, const PathVector<K>& x) {
    if (x.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, c] : x.terms()) {
        std::string coeff = field.to_string(c);
        bool negative = !coeff.empty() && coeff[0] == '-';
        if (negative) coeff.erase(0, 1);
        if (first)
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        if (coeff != "1") s += coeff + "*";
        s += q.to_string(p);
        first = false;
    }
    return s;
}

}  // namespace koszul
