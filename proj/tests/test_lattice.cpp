#include "fec/lattice.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace fec;

TEST(Lattice, EnumerateSmallCases)
{
    std::vector<Node> expect = {{2, 0}, {1, 1}, {0, 2}};
    EXPECT_EQ(enumerate_lattice(1, 2), expect);
    EXPECT_EQ(enumerate_lattice(3, 3).size(), 20u);
    EXPECT_EQ(enumerate_lattice(0, 5), std::vector<Node>{{5}});
    EXPECT_EQ(enumerate_lattice(3, 0), std::vector<Node>{Node(4, 0)});
    EXPECT_TRUE(enumerate_lattice(2, -1).empty());
}

TEST(Lattice, SizeMatchesBinomialAndNoDuplicates)
{
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= 7; ++k) {
            const auto& l = lattice(n, k);
            ASSERT_EQ(l.size(), static_cast<std::size_t>(binom(n + k, k)));
            std::set<Node> s(l.begin(), l.end());
            EXPECT_EQ(s.size(), l.size());
            for (const auto& a : l) {
                EXPECT_EQ(degree(a), k);
                EXPECT_TRUE(std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; }));
            }
        }
}

TEST(Lattice, NodeIndexInvertsEnumeration)
{
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= 6; ++k) {
            const auto& l = lattice(n, k);
            for (std::size_t i = 0; i < l.size(); ++i) ASSERT_EQ(node_index(l[i]), i);
            EXPECT_TRUE(std::is_sorted(l.rbegin(), l.rend()));
        }
}

TEST(SubSimplex, Complement)
{
    EXPECT_EQ(complement({1, 3, 4}, 4), (SubSimplex{0, 2}));
    EXPECT_TRUE(complement({0, 1, 2, 3}, 3).empty());
    EXPECT_EQ(complement({0}, 3), (SubSimplex{1, 2, 3}));
    EXPECT_THROW(check_subsimplex({2, 1}, 3), std::invalid_argument);
    EXPECT_THROW(check_subsimplex({0, 4}, 3), std::invalid_argument);
}

TEST(SubSimplex, ExtendAndRestrict)
{
    EXPECT_EQ(extend({7, 8, 9}, {1, 3, 4}, 5), (Node{0, 7, 0, 8, 9, 0}));
    EXPECT_EQ(extend({1, 2, 3, 4}, {0, 1, 2, 3}, 3), (Node{1, 2, 3, 4}));
    for (int l = 0; l <= 3; ++l)
        for (const auto& f : subsimplices(3, l))
            for (const auto& a : lattice(l, 3)) EXPECT_EQ(restrict_node(extend(a, f, 3), f), a);
    EXPECT_THROW(extend({1, 2}, {0, 4}, 3), std::invalid_argument);
}

TEST(SubSimplex, Counts)
{
    for (int n = 1; n <= 5; ++n)
        for (int l = 0; l <= n; ++l) EXPECT_EQ(subsimplices(n, l).size(), static_cast<std::size_t>(binom(n + 1, l + 1)));
    EXPECT_EQ(faces_of({0, 1, 2}, 1).size(), 3u);
}

TEST(Distance, Examples)
{
    EXPECT_EQ(dist({2, 1, 1, 1}, {0, 1}), 2);
    EXPECT_EQ(dist({0, 0, 2, 3}, {0, 1}), 5);
    EXPECT_EQ(dist({4, 1, 0, 0}, {0, 1}), 0);
}

TEST(Distance, DualityAndCharacterization)
{
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= 8; ++k)
            for (int l = 0; l < n; ++l)
                for (const auto& f : subsimplices(n, l)) {
                    auto fs = complement(f, n);
                    for (const auto& a : lattice(n, k)) {
                        ASSERT_EQ(dist(a, f) + dist(a, fs), k);
                        int on_f = 0;
                        for (int i : f) on_f += a[i];
                        for (int r = -1; r <= k; ++r) ASSERT_EQ(dist(a, f) <= r, on_f >= k - r);
                    }
                }
}

TEST(TubesAndPlanes, Properties)
{
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= 6; ++k)
            for (int l = 0; l < n; ++l)
                for (const auto& f : subsimplices(n, l)) {
                    EXPECT_TRUE(tube(f, -1, n, k).empty());
                    std::size_t total = 0;
                    for (int s = 0; s <= k; ++s) {
                        auto p = plane(f, s, n, k);
                        total += p.size();
                        auto q = plane(complement(f, n), k - s, n, k);
                        std::sort(p.begin(), p.end());
                        std::sort(q.begin(), q.end());
                        EXPECT_EQ(p, q);
                    }
                    EXPECT_EQ(total, lattice_size(n, k));
                    for (int r = 0; r <= k; ++r) {
                        std::size_t u = 0;
                        for (int s = 0; s <= r; ++s) u += plane(f, s, n, k).size();
                        EXPECT_EQ(tube(f, r, n, k).size(), u);
                    }
                }
}

TEST(TubesAndPlanes, VertexTubeIsALattice)
{
    for (int n = 1; n <= 4; ++n)
        for (int r = 0; r <= 4; ++r) {
            const int k = r + 3;
            EXPECT_EQ(tube({0}, r, n, k).size(), static_cast<std::size_t>(binom(r + n, n)));
        }
    // L(f, k) consists of the nodes supported on f*.
    for (const auto& a : plane({0, 1}, 4, 3, 4)) {
        EXPECT_EQ(a[0], 0);
        EXPECT_EQ(a[1], 0);
    }
}

TEST(Graph, IntervalOfDegreeTwo)
{
    auto g = lattice_graph(1, 2);
    ASSERT_EQ(g.edges.size(), 2u);
    EXPECT_EQ(g.nodes[g.edges[0].first], (Node{2, 0}));
    EXPECT_EQ(g.nodes[g.edges[0].second], (Node{1, 1}));
    EXPECT_EQ(g.nodes[g.edges[1].second], (Node{0, 2}));
    auto t = spanning_tree(g);
    EXPECT_EQ(t.edges.size(), 2u);
    EXPECT_EQ(lattice_distance({1, 1, 0, 0}, {0, 2, 0, 0}), 1);
    EXPECT_TRUE(adjacent({1, 1, 0, 0}, {0, 2, 0, 0}));
    EXPECT_FALSE(adjacent({2, 0, 0, 0}, {0, 2, 0, 0}));
}

TEST(Graph, EdgesAreExactlyUnitMoves)
{
    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= 4; ++k) {
            auto g = lattice_graph(n, k);
            std::set<std::pair<std::size_t, std::size_t>> es(g.edges.begin(), g.edges.end());
            for (std::size_t a = 0; a < g.nodes.size(); ++a)
                for (std::size_t b = a + 1; b < g.nodes.size(); ++b) {
                    int l1 = 0;
                    for (std::size_t i = 0; i < g.nodes[a].size(); ++i) l1 += std::abs(g.nodes[a][i] - g.nodes[b][i]);
                    ASSERT_EQ(es.count({a, b}) == 1, l1 == 2);
                }
        }
}

TEST(Graph, SpanningTreeProperties)
{
    for (int n = 1; n <= 4; ++n)
        for (int k = 1; k <= 5; ++k) {
            auto g = lattice_graph(n, k);
            auto t = spanning_tree(g);
            EXPECT_TRUE(t.connected());
            EXPECT_EQ(t.roots, std::vector<std::size_t>{0});
            EXPECT_EQ(t.edges.size(), lattice_size(n, k) - 1);
            std::vector<char> reached(g.nodes.size(), 0);
            reached[0] = 1;
            for (auto [p, c] : t.edges) {
                EXPECT_TRUE(adjacent(g.nodes[p], g.nodes[c]));
                EXPECT_TRUE(reached[p]);
                EXPECT_FALSE(reached[c]);
                reached[c] = 1;
            }
            // Deterministic.
            auto again = spanning_tree(lattice_graph(n, k));
            EXPECT_EQ(again.edges, t.edges);
        }
}

TEST(Graph, DisconnectedSubsetGivesForest)
{
    auto g = induced_graph({{3, 0, 0}, {0, 3, 0}, {0, 2, 1}});
    auto t = spanning_tree(g);
    EXPECT_FALSE(t.connected());
    EXPECT_EQ(t.roots.size(), 2u);
    EXPECT_EQ(t.edges.size(), 1u);
}
