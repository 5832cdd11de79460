#include "koszul/path_vector.hpp"
#include "koszul/quiver.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace koszul;
using namespace testing_support;

namespace {

Quiver a3() {
    Quiver q;
    auto v1 = q.add_vertex("1"), v2 = q.add_vertex("2"), v3 = q.add_vertex("3");
    q.add_arrow("a", v1, v2);
    q.add_arrow("b", v2, v3);
    return q;
}

Quiver two_loops() {
    Quiver q;
    auto v = q.add_vertex("1");
    q.add_arrow("x", v, v);
    q.add_arrow("y", v, v);
    return q;
}

Path path_of(const Quiver& q, const std::string& word) {
    std::optional<Path> p;
    for (char c : word) {
        Path a = q.arrow_path(*q.find_arrow(std::string(1, c)));
        p = p ? compose_paths(*p, a) : a;
        if (!p) throw std::logic_error("not a path");
    }
    return *p;
}

}  // namespace

TEST(Quiver, RejectsBadDeclarations) {
    Quiver q;
    auto v = q.add_vertex("1");
    EXPECT_THROW(q.add_vertex("1"), std::invalid_argument);
    q.add_arrow("x", v, v);
    EXPECT_THROW(q.add_arrow("x", v, v), std::invalid_argument);
    EXPECT_THROW(q.add_arrow("y", v, 7), std::invalid_argument);
}

TEST(ComposePaths, Examples) {
    Quiver q;
    for (auto n : {"1", "2", "3", "4"}) q.add_vertex(n);
    auto a = q.add_arrow("a", 0, 1), b = q.add_arrow("b", 1, 2), c = q.add_arrow("c", 2, 3);
    auto ab = compose_paths(q.arrow_path(a), q.arrow_path(b));
    ASSERT_TRUE(ab);
    EXPECT_EQ(ab->length(), 2u);
    EXPECT_EQ(q.to_string(*ab), "a*b");
    EXPECT_FALSE(compose_paths(q.arrow_path(a), q.arrow_path(c)));
    EXPECT_EQ(*compose_paths(q.trivial_path(0), q.arrow_path(a)), q.arrow_path(a));
    EXPECT_EQ(q.to_string(q.trivial_path(2)), "e_3");
}

TEST(EnumeratePaths, Examples) {
    auto q = a3();
    auto d2 = enumerate_paths(q, 2);
    ASSERT_EQ(d2.size(), 1u);
    EXPECT_EQ(q.to_string(d2[0]), "a*b");
    EXPECT_TRUE(enumerate_paths(q, 3).empty());
    auto d0 = enumerate_paths(q, 0);
    ASSERT_EQ(d0.size(), 3u);
    EXPECT_EQ(d0[1], q.trivial_path(1));

    auto loops = two_loops();
    std::vector<std::string> words;
    for (const auto& p : enumerate_paths(loops, 2)) words.push_back(loops.to_string(p));
    EXPECT_EQ(words, (std::vector<std::string>{"x*x", "x*y", "y*x", "y*y"}));
}

TEST(EnumeratePaths, BlockRestriction) {
    auto q = a3();
    EXPECT_EQ(enumerate_paths(q, 1, Block{0, 1}).size(), 1u);
    EXPECT_TRUE(enumerate_paths(q, 1, Block{0, 2}).empty());
    EXPECT_EQ(enumerate_paths(q, 0, Block{1, 1}).size(), 1u);
}

// Oracle: the number of paths u -> v of length d is the (u,v) entry of A^d.
TEST(EnumeratePathsProperty, CountsMatchAdjacencyPowers) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        Quiver q = random_quiver(rng, 4, 6);
        const std::size_t n = q.num_vertices();
        std::vector<std::vector<std::size_t>> adj(n, std::vector<std::size_t>(n, 0)), power(n, std::vector<std::size_t>(n, 0));
        for (const auto& a : q.arrows()) ++adj[a.origin][a.terminus];
        for (std::size_t v = 0; v < n; ++v) power[v][v] = 1;
        for (std::size_t d = 0; d <= 4; ++d) {
            auto paths = enumerate_paths(q, d);
            ASSERT_TRUE(std::is_sorted(paths.begin(), paths.end()));
            for (VertexId u = 0; u < n; ++u)
                for (VertexId v = 0; v < n; ++v)
                    ASSERT_EQ(enumerate_paths(q, d, Block{u, v}).size(), power[u][v]) << "d=" << d;
            std::size_t total = 0;
            for (const auto& row : power)
                for (auto x : row) total += x;
            ASSERT_EQ(paths.size(), total);
            std::vector<std::vector<std::size_t>> next(n, std::vector<std::size_t>(n, 0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t j = 0; j < n; ++j) next[i][j] += power[i][k] * adj[k][j];
            power = next;
        }
    }
}

TEST(PathOrder, LengthThenArrowIndices) {
    auto q = two_loops();
    EXPECT_LT(path_of(q, "y"), path_of(q, "xx"));
    EXPECT_LT(path_of(q, "xy"), path_of(q, "yx"));
    EXPECT_LT(q.trivial_path(0), path_of(q, "x"));
}

TEST(ComposePathsProperty, Associative) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Quiver q = random_quiver(rng, 3, 4);
        std::vector<Path> pool;
        for (std::size_t d = 0; d <= 2; ++d)
            for (auto& p : enumerate_paths(q, d)) pool.push_back(p);
        for (int k = 0; k < 50; ++k) {
            const auto& p = pool[rng() % pool.size()];
            const auto& r = pool[rng() % pool.size()];
            const auto& s = pool[rng() % pool.size()];
            auto left = compose_paths(p, r);
            auto right = compose_paths(r, s);
            auto lhs = left ? compose_paths(*left, s) : std::nullopt;
            auto rhs = right ? compose_paths(p, *right) : std::nullopt;
            ASSERT_EQ(lhs.has_value(), rhs.has_value());
            if (lhs) {
                ASSERT_EQ(*lhs, *rhs);
            }
        }
    }
}

TEST(PathVector, MultiplyExamples) {
    Rationals f;
    auto q = two_loops();
    auto x = PathVector<Rationals>::monomial(f, path_of(q, "x"));
    auto y = PathVector<Rationals>::monomial(f, path_of(q, "y"));
    EXPECT_EQ(to_string(f, q, multiply(f, x, y)), "x*y");
    auto comm = difference(f, multiply(f, x, y), multiply(f, y, x));
    EXPECT_EQ(to_string(f, q, multiply(f, comm, x)), "x*y*x - y*x*x");

    auto line = a3();
    auto a = PathVector<Rationals>::monomial(f, line.arrow_path(0));
    auto aa = multiply(f, a, a);
    EXPECT_TRUE(aa.is_zero());
    EXPECT_EQ(aa.degree(), 2u);
}

TEST(PathVector, RejectsMixedDegrees) {
    Rationals f;
    auto q = two_loops();
    PathVector<Rationals> v(1);
    v.add_term(f, path_of(q, "x"), f.one());
    EXPECT_THROW(v.add_term(f, path_of(q, "xy"), f.one()), std::invalid_argument);
}

TEST(PathVector, ZeroCoefficientsArePruned) {
    PrimeField f(3);
    auto q = two_loops();
    PathVector<PrimeField> v(1);
    v.add_term(f, path_of(q, "x"), 1);
    v.add_term(f, path_of(q, "x"), 2);
    EXPECT_TRUE(v.is_zero());
    EXPECT_EQ(to_string(f, q, v), "0");
}

TEST(UniformComponents, Examples) {
    Rationals f;
    Quiver q;
    for (auto n : {"1", "2", "3", "4"}) q.add_vertex(n);
    q.add_arrow("a", 0, 1);
    q.add_arrow("b", 1, 2);
    q.add_arrow("c", 1, 3);
    q.add_arrow("d", 3, 3);
    // a*b : 1 -> 3 and c*d : 2 -> 4
    PathVector<Rationals> v(2);
    v.add_term(f, path_of(q, "ab"), 1);
    v.add_term(f, path_of(q, "cd"), 1);
    auto blocks = uniform_components(f, v);
    ASSERT_EQ(blocks.size(), 2u);
    EXPECT_EQ(blocks[0].block(), (Block{0, 2}));
    EXPECT_EQ(blocks[1].block(), (Block{1, 3}));

    auto loops = two_loops();
    auto comm = difference(f, PathVector<Rationals>::monomial(f, path_of(loops, "xy")),
                           PathVector<Rationals>::monomial(f, path_of(loops, "yx")));
    EXPECT_EQ(uniform_components(f, comm).size(), 1u);
    EXPECT_TRUE(uniform_components(f, PathVector<Rationals>(2)).empty());
}

template <class K>
void multiply_properties(const K& f, std::uint32_t seed) {
    std::mt19937 rng(seed);
    for (int trial = 0; trial < 30; ++trial) {
        Quiver q = random_quiver(rng, 3, 4);
        auto p1 = enumerate_paths(q, 1), p2 = enumerate_paths(q, 2);
        for (int k = 0; k < 10; ++k) {
            auto x = random_vector(f, rng, p1, 1, 3), y = random_vector(f, rng, p2, 2, 3),
                 z = random_vector(f, rng, p1, 1, 3), w = random_vector(f, rng, p2, 2, 3);
            ASSERT_EQ(multiply(f, multiply(f, x, y), z), multiply(f, x, multiply(f, y, z)));
            ASSERT_EQ(multiply(f, x, sum(f, y, w)), sum(f, multiply(f, x, y), multiply(f, x, w)));
            ASSERT_EQ(multiply(f, sum(f, y, w), z), sum(f, multiply(f, y, z), multiply(f, w, z)));
            PathVector<K> rebuilt(2);
            std::set<Path> seen;
            for (const auto& part : uniform_components(f, y)) {
                for (const auto& [path, c] : part.vector.terms()) {
                    ASSERT_EQ(path.block(), part.block());
                    ASSERT_TRUE(seen.insert(path).second);
                }
                rebuilt.add_scaled(f, f.one(), part.vector);
            }
            ASSERT_EQ(rebuilt, y);
        }
    }
}

TEST(PathVectorProperty, MultiplyIsAssociativeAndBilinear) {
    multiply_properties(Rationals{}, 21);
    multiply_properties(PrimeField(5), 22);
}

TEST(PathVector, ReversalIsAnInvolutionIntoTheOpposite) {
    Rationals f;
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Quiver q = random_quiver(rng, 3, 4);
        const Quiver op = q.opposite();
        auto v = random_vector(f, rng, enumerate_paths(q, 2), 2, 4);
        ASSERT_EQ(reversed(f, reversed(f, v)), v);
        auto op_paths = enumerate_paths(op, 2);
        const auto rv = reversed(f, v);
        for (const auto& [p, c] : rv.terms())
            ASSERT_TRUE(std::binary_search(op_paths.begin(), op_paths.end(), p));
    }
}
