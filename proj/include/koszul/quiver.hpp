/**
 * @file quiver.hpp
 * @brief Finite quivers and their paths.
 *
 * Paths compose left to right: `p*q` means "p then q" and needs
 * terminus(p) == origin(q). Paths are ordered by length, then
 * lexicographically by arrow-declaration index, then by origin vertex (which
 * only matters for the trivial paths).
 */
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace koszul {

using VertexId = std::uint32_t;
using ArrowId = std::uint32_t;
using Block = std::pair<VertexId, VertexId>;  // (origin, terminus)

struct Arrow {
    std::string name;
    VertexId origin;
    VertexId terminus;
};

struct Path {
    VertexId origin = 0;
    VertexId terminus = 0;
    std::vector<ArrowId> arrows;

    std::size_t length() const { return arrows.size(); }
    bool trivial() const { return arrows.empty(); }
    Block block() const { return {origin, terminus}; }

    friend bool operator==(const Path&, const Path&) = default;
    friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
        if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
        if (auto c = a.arrows <=> b.arrows; c != 0) return c;
        return a.origin <=> b.origin;
    }
};

class Quiver {
public:
    Quiver() = default;

    VertexId add_vertex(const std::string& name) {
        if (vertex_index_.count(name)) throw std::invalid_argument("duplicate vertex '" + name + "'");
        vertex_index_.emplace(name, static_cast<VertexId>(vertices_.size()));
        vertices_.push_back(name);
        out_.emplace_back();
        return static_cast<VertexId>(vertices_.size() - 1);
    }

    ArrowId add_arrow(const std::string& name, VertexId origin, VertexId terminus) {
        if (arrow_index_.count(name)) throw std::invalid_argument("duplicate arrow '" + name + "'");
        if (origin >= vertices_.size() || terminus >= vertices_.size())
            throw std::invalid_argument("arrow '" + name + "' has an undeclared endpoint");
        auto id = static_cast<ArrowId>(arrows_.size());
        arrow_index_.emplace(name, id);
        arrows_.push_back({name, origin, terminus});
        out_[origin].push_back(id);
        return id;
    }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }
    const std::vector<std::string>& vertex_names() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
    const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
    /// Arrows leaving `v`, in declaration order.
    const std::vector<ArrowId>& arrows_from(VertexId v) const { return out_.at(v); }

    std::optional<VertexId> find_vertex(const std::string& name) const {
        auto it = vertex_index_.find(name);
        if (it == vertex_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<ArrowId> find_arrow(const std::string& name) const {
        auto it = arrow_index_.find(name);
        if (it == arrow_index_.end()) return std::nullopt;
        return it->second;
    }

    Path trivial_path(VertexId v) const { return Path{v, v, {}}; }
    Path arrow_path(ArrowId a) const { return Path{arrows_.at(a).origin, arrows_.at(a).terminus, {a}}; }

    /// Same vertices and arrow names, every arrow reversed.
    Quiver opposite() const {
        Quiver q;
        for (const auto& v : vertices_) q.add_vertex(v);
        for (const auto& a : arrows_) q.add_arrow(a.name, a.terminus, a.origin);
        return q;
    }

    /// "a*b*c" for nontrivial paths, "e_v" for the trivial path at v.
    std::string to_string(const Path& p) const {
        if (p.trivial()) return "e_" + vertices_.at(p.origin);
        std::string s;
        for (std::size_t k = 0; k < p.arrows.size(); ++k) {
            if (k) s += '*';
            s += arrows_.at(p.arrows[k]).name;
        }
        return s;
    }

    friend bool operator==(const Quiver& a, const Quiver& b) {
        if (a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size()) return false;
        for (std::size_t k = 0; k < a.arrows_.size(); ++k) {
            const auto &x = a.arrows_[k], &y = b.arrows_[k];
            if (x.name != y.name || x.origin != y.origin || x.terminus != y.terminus) return false;
        }
        return true;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<ArrowId>> out_;
    std::map<std::string, VertexId> vertex_index_;
    std::map<std::string, ArrowId> arrow_index_;
};

/// Concatenation p*q, or nullopt when terminus(p) != origin(q).
inline std::optional<Path> compose_paths(const Path& p, const Path& q) {
    if (p.terminus != q.origin) return std::nullopt;
    Path r{p.origin, q.terminus, p.arrows};
    r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
    return r;
}

/// The path read backwards, as a path of the opposite quiver.
inline Path reversed(const Path& p) {
    return Path{p.terminus, p.origin, {p.arrows.rbegin(), p.arrows.rend()}};
}

/// All paths of length d in canonical order, optionally restricted to one (origin, terminus) block.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t d,
                                         std::optional<Block> block = std::nullopt) {
    std::vector<Path> out;
    if (d == 0) {
        for (VertexId v = 0; v < q.num_vertices(); ++v)
            if (!block || (block->first == v && block->second == v)) out.push_back(q.trivial_path(v));
        return out;
    }
    // Depth-first over arrow indices yields lexicographic order directly.
    std::vector<ArrowId> stack;
    auto extend = [&](auto&& self, VertexId origin, VertexId at) -> void {
        if (stack.size() == d) {
            if (!block || (block->first == origin && block->second == at))
                out.push_back(Path{origin, at, stack});
            return;
        }
        for (ArrowId a : q.arrows_from(at)) {
            stack.push_back(a);
            self(self, origin, q.arrow(a).terminus);
            stack.pop_back();
        }
    };
    // Start arrows must be visited in global index order, not grouped by vertex.
    for (ArrowId a = 0; a < q.num_arrows(); ++a) {
        const auto& arr = q.arrow(a);
        if (block && arr.origin != block->first) continue;
        stack.push_back(a);
        extend(extend, arr.origin, arr.terminus);
        stack.pop_back();
    }
    return out;
}

}  // namespace koszul
