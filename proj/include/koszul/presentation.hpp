/**
 * @file presentation.hpp
 * @brief The presentation language for quotients kQ/I of path algebras.
 *
 * A presentation is line oriented:
 *
 *     # dual numbers
 *     field Q              # or GF(p)
 *     vertices v
 *     arrows
 *       x : v -> v
 *     relations
 *       x*x
 *
 * Items inside a section are separated by newlines or commas, and may also
 * follow the section keyword on the same line. A relation is a signed sum of
 * terms `[coeff *] arrow (* arrow)*` where coeff is an integer or, for
 * rational input, `num/den`. Relations are split into uniform summands and
 * stored as a reduced row echelon basis per (degree, vertex block).
 */
#pragma once

#include "field.hpp"
#include "linalg.hpp"
#include "path_vector.hpp"
#include "quiver.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace koszul {

class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                             what),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

struct RawRelation {
    std::size_t line = 0, column = 0;
    std::vector<std::pair<mpq_class, Path>> terms;
    std::size_t degree = 0;
};

/// Syntactically valid presentation with coefficients not yet mapped into a field.
struct RawPresentation {
    FieldSpec field;
    Quiver quiver;
    std::vector<RawRelation> relations;
};

template <Field K>
struct Presentation {
    K field;
    Quiver quiver;
    std::vector<PathVector<K>> relations;  // by degree, then leading path

    std::size_t max_relation_degree() const {
        std::size_t d = 0;
        for (const auto& r : relations) d = std::max(d, r.degree());
        return d;
    }
    std::vector<PathVector<K>> relations_of_degree(std::size_t d) const {
        std::vector<PathVector<K>> out;
        for (const auto& r : relations)
            if (r.degree() == d) out.push_back(r);
        return out;
    }
    bool is_quadratic() const { return max_relation_degree() <= 2; }

    friend bool operator==(const Presentation& a, const Presentation& b) {
        return a.field.spec() == b.field.spec() && a.quiver == b.quiver && a.relations == b.relations;
    }
};

namespace detail {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t column = 1;  // 1-based column of text[pos] in the source line

    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }
    void advance(std::size_t n = 1) {
        pos += n;
        column += n;
    }
    void skip_blanks() {
        while (!done() && (text[pos] == ' ' || text[pos] == '\t')) advance();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(line, column, msg); }
    bool try_consume(std::string_view tok) {
        skip_blanks();
        if (text.substr(pos, tok.size()) == tok) {
            advance(tok.size());
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!try_consume(tok)) fail("expected '" + std::string(tok) + "'");
    }
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::string read_name(Cursor& cur, bool allow_leading_digit, const char* what) {
    cur.skip_blanks();
    const std::size_t start = cur.pos;
    char c = cur.peek();
    if (!(ident_start(c) || (allow_leading_digit && std::isdigit(static_cast<unsigned char>(c)))))
        cur.fail(std::string("expected ") + what);
    while (!cur.done() && ident_char(cur.peek())) cur.advance();
    return std::string(cur.text.substr(start, cur.pos - start));
}

inline mpz_class read_integer(Cursor& cur) {
    cur.skip_blanks();
    const std::size_t start = cur.pos;
    while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.advance();
    if (cur.pos == start) cur.fail("expected integer");
    return mpz_class(std::string(cur.text.substr(start, cur.pos - start)));
}

inline void expect_end(Cursor& cur) {
    cur.skip_blanks();
    if (!cur.done()) cur.fail("unexpected '" + std::string(1, cur.peek()) + "'");
}

struct Item {
    std::string_view text;
    std::size_t line, column;
};

inline RawRelation parse_relation(const Item& item, const Quiver& q, FieldSpec field) {
    Cursor cur{item.text, 0, item.line, item.column};
    RawRelation rel;
    rel.line = item.line;
    rel.column = item.column;
    bool first = true;
    std::optional<std::size_t> degree;
    while (true) {
        cur.skip_blanks();
        if (cur.done()) {
            if (first) cur.fail("empty relation");
            break;
        }
        int sign = 1;
        if (cur.try_consume("+")) {
        } else if (cur.try_consume("-")) {
            sign = -1;
        } else if (!first) {
            cur.fail("expected '+' or '-'");
        }
        first = false;
        cur.skip_blanks();
        const std::size_t term_col = cur.column;
        mpq_class coeff(sign);
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            mpz_class num = read_integer(cur);
            mpz_class den = 1;
            if (cur.try_consume("/")) {
                if (field.kind == FieldSpec::Kind::prime_field)
                    cur.fail("coefficients over GF(p) are integers");
                den = read_integer(cur);
                if (den == 0) cur.fail("zero denominator");
            }
            mpq_class c(num, den);
            c.canonicalize();
            coeff *= c;
            cur.expect("*");
        }
        std::optional<Path> path;
        do {
            cur.skip_blanks();
            const std::size_t name_col = cur.column;
            std::string name = read_name(cur, false, "arrow name");
            auto a = q.find_arrow(name);
            if (!a) throw parse_error(cur.line, name_col, "unknown arrow '" + name + "'");
            Path step = q.arrow_path(*a);
            if (!path) {
                path = step;
            } else {
                auto composed = compose_paths(*path, step);
                if (!composed)
                    throw parse_error(cur.line, name_col,
                                      "arrow '" + name + "' does not compose with the preceding path");
                path = std::move(composed);
            }
        } while (cur.try_consume("*"));
        if (degree && *degree != path->length())
            throw parse_error(cur.line, term_col,
                              "mixed-degree relation (degree " + std::to_string(*degree) + " and " +
                                  std::to_string(path->length()) + ")");
        degree = path->length();
        rel.terms.emplace_back(coeff, *path);
    }
    if (*degree < 2)
        throw parse_error(item.line, item.column,
                          "relation of degree " + std::to_string(*degree) + "; relations must have degree >= 2");
    rel.degree = *degree;
    return rel;
}

inline FieldSpec parse_field(const Item& item) {
    Cursor cur{item.text, 0, item.line, item.column};
    cur.skip_blanks();
    if (cur.try_consume("GF")) {
        cur.expect("(");
        cur.skip_blanks();
        const std::size_t col = cur.column;
        mpz_class p = read_integer(cur);
        cur.expect(")");
        expect_end(cur);
        if (!p.fits_ulong_p() || !is_prime(p.get_ui()) || p.get_ui() >= (1ul << 31))
            throw parse_error(item.line, col, "characteristic " + p.get_str() + " is not a supported prime");
        return FieldSpec::prime(p.get_ui());
    }
    if (cur.try_consume("Q")) {
        expect_end(cur);
        return FieldSpec::rationals();
    }
    cur.fail("expected field 'Q' or 'GF(p)'");
}

}  // namespace detail

/// Parses the text into a quiver plus relations with rational coefficients.
inline RawPresentation parse_raw_presentation(std::string_view text) {
    using detail::Item;
    enum class Section { none, field, vertices, arrows, relations };
    std::map<Section, std::vector<Item>> items;
    Section current = Section::none;
    bool seen_field = false;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        std::size_t col = 0;
        while (col < line.size() && (line[col] == ' ' || line[col] == '\t')) ++col;
        std::string_view rest = line.substr(col);
        static const std::pair<std::string_view, Section> keywords[] = {
            {"field", Section::field},
            {"vertices", Section::vertices},
            {"arrows", Section::arrows},
            {"relations", Section::relations}};
        for (auto [kw, sec] : keywords) {
            if (rest.substr(0, kw.size()) == kw &&
                (rest.size() == kw.size() || !detail::ident_char(rest[kw.size()]))) {
                current = sec;
                col += kw.size();
                if (sec == Section::field) {
                    if (seen_field) throw parse_error(line_no, col - kw.size() + 1, "duplicate field section");
                    seen_field = true;
                }
                break;
            }
        }
        // Split the remainder of the line into comma separated items.
        std::size_t item_start = col;
        for (std::size_t k = col; k <= line.size(); ++k) {
            if (k == line.size() || line[k] == ',') {
                std::string_view piece = line.substr(item_start, k - item_start);
                std::size_t lead = 0;
                while (lead < piece.size() && (piece[lead] == ' ' || piece[lead] == '\t')) ++lead;
                piece.remove_prefix(lead);
                while (!piece.empty() && (piece.back() == ' ' || piece.back() == '\t')) piece.remove_suffix(1);
                if (!piece.empty()) {
                    if (current == Section::none)
                        throw parse_error(line_no, item_start + lead + 1, "content outside of any section");
                    items[current].push_back({piece, line_no, item_start + lead + 1});
                }
                item_start = k + 1;
            }
        }
        if (end == text.size()) break;
        start = end + 1;
    }

    RawPresentation out;
    const auto& field_items = items[Section::field];
    if (field_items.size() > 1)
        throw parse_error(field_items[1].line, field_items[1].column, "field section takes one value");
    out.field = field_items.empty() ? FieldSpec::rationals() : detail::parse_field(field_items.front());

    for (const auto& item : items[Section::vertices]) {
        detail::Cursor cur{item.text, 0, item.line, item.column};
        while (true) {
            cur.skip_blanks();
            if (cur.done()) break;
            const std::size_t c = cur.column;
            std::string name = detail::read_name(cur, true, "vertex name");
            if (out.quiver.find_vertex(name)) throw parse_error(item.line, c, "duplicate vertex '" + name + "'");
            out.quiver.add_vertex(name);
        }
    }
    if (out.quiver.num_vertices() == 0) throw parse_error(1, 1, "no vertices declared");

    for (const auto& item : items[Section::arrows]) {
        detail::Cursor cur{item.text, 0, item.line, item.column};
        cur.skip_blanks();
        const std::size_t name_col = cur.column;
        std::string name = detail::read_name(cur, false, "arrow name");
        if (out.quiver.find_arrow(name)) throw parse_error(item.line, name_col, "duplicate arrow '" + name + "'");
        cur.expect(":");
        cur.skip_blanks();
        const std::size_t from_col = cur.column;
        std::string from = detail::read_name(cur, true, "vertex name");
        cur.expect("->");
        cur.skip_blanks();
        const std::size_t to_col = cur.column;
        std::string to = detail::read_name(cur, true, "vertex name");
        detail::expect_end(cur);
        auto u = out.quiver.find_vertex(from);
        if (!u) throw parse_error(item.line, from_col, "unknown vertex '" + from + "'");
        auto v = out.quiver.find_vertex(to);
        if (!v) throw parse_error(item.line, to_col, "unknown vertex '" + to + "'");
        out.quiver.add_arrow(name, *u, *v);
    }

    for (const auto& item : items[Section::relations])
        out.relations.push_back(detail::parse_relation(item, out.quiver, out.field));
    return out;
}

/// Per (degree, block) RREF basis of the span, ordered by degree then leading path.
template <Field K>
std::vector<PathVector<K>> canonicalize_relations(const K& field, const std::vector<PathVector<K>>& rels) {
    std::map<std::pair<std::size_t, Block>, std::vector<PathVector<K>>> groups;
    for (const auto& r : rels)
        for (auto& part : uniform_components(field, r))
            groups[{r.degree(), part.block()}].push_back(std::move(part.vector));
    std::vector<PathVector<K>> out;
    for (const auto& [key, vs] : groups)
        for (auto& b : Subspace<K>::span(field, vs).basis(field)) out.push_back(std::move(b));
    std::stable_sort(out.begin(), out.end(), [](const PathVector<K>& a, const PathVector<K>& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.leading_path() < b.leading_path();
    });
    return out;
}

/// Maps coefficients into `field` and canonicalizes. The field named in the text is ignored.
template <Field K>
Presentation<K> instantiate(const RawPresentation& raw, const K& field) {
    Presentation<K> p{field, raw.quiver, {}};
    std::vector<PathVector<K>> rels;
    for (const auto& rr : raw.relations) {
        PathVector<K> v(rr.degree);
        try {
            for (const auto& [c, path] : rr.terms) v.add_term(field, path, field.from_rational(c));
        } catch (const std::domain_error& e) {
            throw parse_error(rr.line, rr.column, e.what());
        }
        if (v.is_zero()) throw parse_error(rr.line, rr.column, "relation is zero after reduction");
        rels.push_back(std::move(v));
    }
    p.relations = canonicalize_relations(field, rels);
    return p;
}

template <Field K>
Presentation<K> parse_presentation(std::string_view text, const K& field) {
    return instantiate(parse_raw_presentation(text), field);
}

/// The opposite algebra: arrows reversed, relation paths read backwards.
template <Field K>
Presentation<K> opposite(const Presentation<K>& p) {
    Presentation<K> op{p.field, p.quiver.opposite(), {}};
    std::vector<PathVector<K>> rels;
    for (const auto& r : p.relations) rels.push_back(reversed(p.field, r));
    op.relations = canonicalize_relations(p.field, rels);
    return op;
}

/// Text in the presentation language that parses back to `p`.
template <Field K>
std::string to_text(const Presentation<K>& p) {
    std::ostringstream os;
    os << "field " << p.field.spec().to_string() << "\n";
    os << "vertices";
    for (const auto& v : p.quiver.vertex_names()) os << ' ' << v;
    os << "\narrows\n";
    for (const auto& a : p.quiver.arrows())
        os << "  " << a.name << " : " << p.quiver.vertex_name(a.origin) << " -> "
           << p.quiver.vertex_name(a.terminus) << "\n";
    os << "relations\n";
    for (const auto& r : p.relations) os << "  " << to_string(p.field, p.quiver, r) << "\n";
    return os.str();
}

struct Diagnostic {
    enum class Severity { info, warning };
    Severity severity;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Warnings about the grading assumptions; never modifies the presentation.
template <Field K>
std::vector<Diagnostic> validate_presentation(const Presentation<K>& p) {
    std::vector<Diagnostic> out;
    std::map<std::size_t, std::size_t> by_degree;
    for (const auto& r : p.relations) ++by_degree[r.degree()];
    for (auto [d, count] : by_degree)
        if (d > 2)
            out.push_back({Diagnostic::Severity::warning,
                           "relation of degree " + std::to_string(d) + ": algebra is not quadratic"});
    if (p.relations.empty())
        out.push_back({Diagnostic::Severity::info, "hereditary: resolution terminates at level 1"});
    for (VertexId v = 0; v < p.quiver.num_vertices(); ++v) {
        bool touched = false;
        for (const auto& a : p.quiver.arrows()) touched |= a.origin == v || a.terminus == v;
        if (!touched && p.quiver.num_vertices() > 1)
            out.push_back({Diagnostic::Severity::info, "vertex '" + p.quiver.vertex_name(v) + "' is isolated"});
    }
    return out;
}

}  // namespace koszul
