/**
 * @file linalg.hpp
 * @brief Dense exact linear algebra over a Field context.
 *
 * Everything here is deterministic: Gauss-Jordan elimination scans columns
 * left to right, takes the topmost usable row as pivot and normalizes the
 * leading entry to 1. Reduced row echelon form is therefore a canonical
 * representative of a row space, and subspaces are compared by comparing
 * their RREF bases.
 */
#pragma once

#include "field.hpp"
#include "path_vector.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace koszul {

template <Field K>
class Matrix {
public:
    using value_type = typename K::value_type;
    using Row = std::vector<value_type>;

    Matrix() = default;
    Matrix(const K& field, std::size_t rows, std::size_t cols)
        : cols_(cols), rows_(rows, Row(cols, field.zero())) {}
    explicit Matrix(std::size_t cols) : cols_(cols) {}

    static Matrix from_rows(std::size_t cols, std::vector<Row> rows) {
        Matrix m(cols);
        for (auto& r : rows) m.append_row(std::move(r));
        return m;
    }
    static Matrix identity(const K& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    value_type& operator()(std::size_t r, std::size_t c) { return rows_[r][c]; }
    const value_type& operator()(std::size_t r, std::size_t c) const { return rows_[r][c]; }
    const Row& row(std::size_t r) const { return rows_[r]; }
    Row& row(std::size_t r) { return rows_[r]; }
    const std::vector<Row>& row_data() const { return rows_; }

    void append_row(Row r) {
        if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
        rows_.push_back(std::move(r));
    }

    Matrix transposed(const K& field) const {
        Matrix t(field, cols_, rows());
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = rows_[r][c];
        return t;
    }

    bool equals(const K& field, const Matrix& o) const {
        if (rows() != o.rows() || cols_ != o.cols_) return false;
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!field.equal(rows_[r][c], o.rows_[r][c])) return false;
        return true;
    }

private:
    std::size_t cols_ = 0;
    std::vector<Row> rows_;
};

template <Field K>
struct RrefResult {
    Matrix<K> reduced;  // nonzero rows only
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

template <Field K>
RrefResult<K> rref(const K& field, Matrix<K> m) {
    using Row = typename Matrix<K>::Row;
    const std::size_t cols = m.cols();
    std::vector<Row> rows = m.row_data();
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
        std::size_t r = top;
        while (r < rows.size() && field.is_zero(rows[r][c])) ++r;
        if (r == rows.size()) continue;
        std::swap(rows[top], rows[r]);
        const auto inv = field.inv(rows[top][c]);
        for (std::size_t k = c; k < cols; ++k) rows[top][k] = field.mul(rows[top][k], inv);
        for (std::size_t o = 0; o < rows.size(); ++o) {
            if (o == top || field.is_zero(rows[o][c])) continue;
            const auto factor = rows[o][c];
            for (std::size_t k = c; k < cols; ++k)
                if (!field.is_zero(rows[top][k]))
                    rows[o][k] = field.sub(rows[o][k], field.mul(factor, rows[top][k]));
        }
        pivots.push_back(c);
        ++top;
    }
    rows.resize(top);
    RrefResult<K> out{Matrix<K>::from_rows(cols, std::move(rows)), std::move(pivots), top};
    return out;
}

template <Field K>
std::size_t rank(const K& field, const Matrix<K>& m) {
    return rref(field, m).rank;
}

template <Field K>
struct SolveResult {
    std::optional<std::vector<typename K::value_type>> x;  // nullopt when inconsistent
    std::size_t nullity = 0;
};

/// Canonical pivot solution of A x = b: free variables are set to zero.
template <Field K>
SolveResult<K> solve(const K& field, const Matrix<K>& a, const std::vector<typename K::value_type>& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve: rows(A) != len(b)");
    const std::size_t n = a.cols();
    Matrix<K> aug(n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto row = a.row(r);
        row.push_back(b[r]);
        aug.append_row(std::move(row));
    }
    auto red = rref(field, std::move(aug));
    SolveResult<K> out;
    std::size_t rank_a = red.rank;
    if (!red.pivots.empty() && red.pivots.back() == n) {
        --rank_a;
        out.nullity = n - rank_a;
        return out;
    }
    out.nullity = n - rank_a;
    std::vector<typename K::value_type> x(n, field.zero());
    for (std::size_t r = 0; r < red.rank; ++r) x[red.pivots[r]] = red.reduced(r, n);
    out.x = std::move(x);
    return out;
}

/// Basis (as rows) of {x : A x = 0}, one vector per free column.
template <Field K>
Matrix<K> nullspace(const K& field, const Matrix<K>& a) {
    auto red = rref(field, a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : red.pivots) is_pivot[p] = true;
    Matrix<K> basis(n);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        typename Matrix<K>::Row v(n, field.zero());
        v[f] = field.one();
        for (std::size_t r = 0; r < red.rank; ++r) v[red.pivots[r]] = field.neg(red.reduced(r, f));
        basis.append_row(std::move(v));
    }
    return basis;
}

/// Ordered list of paths serving as coordinates.
class Ambient {
public:
    Ambient() = default;
    explicit Ambient(std::vector<Path> paths) : paths_(std::move(paths)) {
        std::sort(paths_.begin(), paths_.end());
        paths_.erase(std::unique(paths_.begin(), paths_.end()), paths_.end());
    }

    template <Field K>
    static Ambient support_of(const std::vector<PathVector<K>>& vs) {
        std::set<Path> all;
        for (const auto& v : vs)
            for (const auto& [p, c] : v.terms()) all.insert(p);
        return Ambient(std::vector<Path>(all.begin(), all.end()));
    }

    std::size_t size() const { return paths_.size(); }
    const std::vector<Path>& paths() const { return paths_; }
    const Path& operator[](std::size_t k) const { return paths_[k]; }

    std::optional<std::size_t> index_of(const Path& p) const {
        auto it = std::lower_bound(paths_.begin(), paths_.end(), p);
        if (it == paths_.end() || !(*it == p)) return std::nullopt;
        return static_cast<std::size_t>(it - paths_.begin());
    }

    template <Field K>
    std::vector<typename K::value_type> coordinates(const K& field, const PathVector<K>& v) const {
        std::vector<typename K::value_type> row(paths_.size(), field.zero());
        for (const auto& [p, c] : v.terms()) {
            auto idx = index_of(p);
            if (!idx) throw std::invalid_argument("vector not supported on ambient basis");
            row[*idx] = c;
        }
        return row;
    }

    template <Field K>
    PathVector<K> vector(const K& field, const std::vector<typename K::value_type>& row) const {
        PathVector<K> v(paths_.empty() ? 0 : paths_.front().length());
        for (std::size_t k = 0; k < row.size(); ++k) v.add_term(field, paths_[k], row[k]);
        return v;
    }

    friend bool operator==(const Ambient&, const Ambient&) = default;

private:
    std::vector<Path> paths_;
};

/// A subspace of span(ambient) held by its RREF basis.
template <Field K>
class Subspace {
public:
    Subspace() = default;
    Subspace(const K& field, Ambient ambient, const Matrix<K>& generators)
        : ambient_(std::move(ambient)), basis_(rref(field, generators).reduced) {
        if (generators.cols() != ambient_.size()) throw std::invalid_argument("generator width mismatch");
    }

    static Subspace span(const K& field, Ambient ambient, const std::vector<PathVector<K>>& vs) {
        Matrix<K> m(ambient.size());
        for (const auto& v : vs) m.append_row(ambient.coordinates(field, v));
        return Subspace(field, std::move(ambient), m);
    }
    static Subspace span(const K& field, const std::vector<PathVector<K>>& vs) {
        return span(field, Ambient::support_of(vs), vs);
    }

    const Ambient& ambient() const { return ambient_; }
    const Matrix<K>& basis_matrix() const { return basis_; }
    std::size_t dimension() const { return basis_.rows(); }

    std::vector<PathVector<K>> basis(const K& field) const {
        std::vector<PathVector<K>> out;
        for (std::size_t r = 0; r < basis_.rows(); ++r) out.push_back(ambient_.vector(field, basis_.row(r)));
        return out;
    }

    /// Columns of the leading ones.
    std::vector<std::size_t> pivots(const K& field) const {
        std::vector<std::size_t> out;
        for (std::size_t r = 0; r < basis_.rows(); ++r)
            for (std::size_t c = 0; c < basis_.cols(); ++c)
                if (!field.is_zero(basis_(r, c))) {
                    out.push_back(c);
                    break;
                }
        return out;
    }

    bool contains(const K& field, const PathVector<K>& v) const {
        for (const auto& [p, c] : v.terms())
            if (!ambient_.index_of(p)) return false;
        return contains_row(field, ambient_.coordinates(field, v));
    }

    bool contains_row(const K& field, const std::vector<typename K::value_type>& row) const {
        return solve(field, basis_.transposed(field), row).x.has_value();
    }

    /// The same subspace over a larger ambient basis.
    Subspace embedded(const K& field, const Ambient& bigger) const {
        return span(field, bigger, basis(field));
    }

    bool equals(const K& field, const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_.equals(field, o.basis_);
    }

private:
    Ambient ambient_;
    Matrix<K> basis_;
};

/// U ∩ V via the nullspace of [U-rows | V-rows] as columns.
template <Field K>
Subspace<K> intersect(const K& field, const Subspace<K>& u, const Subspace<K>& v) {
    if (!(u.ambient() == v.ambient())) throw std::invalid_argument("intersect: ambient mismatch");
    const std::size_t du = u.dimension(), dv = v.dimension(), n = u.ambient().size();
    Matrix<K> stacked(field, n, du + dv);
    for (std::size_t i = 0; i < du; ++i)
        for (std::size_t c = 0; c < n; ++c) stacked(c, i) = u.basis_matrix()(i, c);
    for (std::size_t j = 0; j < dv; ++j)
        for (std::size_t c = 0; c < n; ++c) stacked(c, du + j) = v.basis_matrix()(j, c);
    auto kernel = nullspace(field, stacked);
    Matrix<K> gens(n);
    for (std::size_t k = 0; k < kernel.rows(); ++k) {
        typename Matrix<K>::Row row(n, field.zero());
        for (std::size_t i = 0; i < du; ++i) {
            const auto& a = kernel(k, i);
            if (field.is_zero(a)) continue;
            for (std::size_t c = 0; c < n; ++c)
                row[c] = field.add(row[c], field.mul(a, u.basis_matrix()(i, c)));
        }
        gens.append_row(std::move(row));
    }
    return Subspace<K>(field, u.ambient(), gens);
}

template <Field K>
Subspace<K> subspace_sum(const K& field, const Subspace<K>& u, const Subspace<K>& v) {
    if (!(u.ambient() == v.ambient())) throw std::invalid_argument("sum: ambient mismatch");
    Matrix<K> gens = u.basis_matrix();
    for (std::size_t r = 0; r < v.dimension(); ++r) gens.append_row(v.basis_matrix().row(r));
    return Subspace<K>(field, u.ambient(), gens);
}

}  // namespace koszul
