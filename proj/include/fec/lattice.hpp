#pragma once

#include "fec/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fec {

/// Multi-index alpha in N^{0:n}; its degree is the entry sum.
using Node = std::vector<int>;

/// Sorted vertex index set of a sub-simplex.
using SubSimplex = std::vector<int>;

inline int degree(const Node& a) { return std::accumulate(a.begin(), a.end(), 0); }

inline std::size_t lattice_size(int n, int k)
{
    if (n < 0 || k < 0) return 0;
    return static_cast<std::size_t>(binom(n + k, n));
}

namespace detail {
inline void enumerate_rec(int pos, int remaining, Node& cur, std::vector<Node>& out)
{
    const int n1 = static_cast<int>(cur.size());
    if (pos == n1 - 1) {
        cur[pos] = remaining;
        out.push_back(cur);
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[pos] = v;
        enumerate_rec(pos + 1, remaining - v, cur, out);
    }
}
} // namespace detail

/// All nodes of T^n_k in canonical (descending lexicographic) order.
inline std::vector<Node> enumerate_lattice(int n, int k)
{
    if (n < 0) throw std::invalid_argument("enumerate_lattice: negative dimension");
    std::vector<Node> out;
    if (k < 0) return out;
    out.reserve(lattice_size(n, k));
    Node cur(n + 1, 0);
    detail::enumerate_rec(0, k, cur, out);
    return out;
}

/// Cached canonical enumeration; the returned reference stays valid for the program lifetime.
inline const std::vector<Node>& lattice(int n, int k)
{
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::unique_ptr<std::vector<Node>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{n, k}];
    if (!slot) slot = std::make_unique<std::vector<Node>>(enumerate_lattice(n, k));
    return *slot;
}

/// Position of a node in the canonical order of T^n_{|a|}.
inline std::size_t node_index(const Node& a)
{
    const int n = static_cast<int>(a.size()) - 1;
    int rem = degree(a);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int v = a[i] + 1; v <= rem; ++v) idx += static_cast<std::size_t>(binom(rem - v + n - i - 1, n - i - 1));
        rem -= a[i];
    }
    return idx;
}

inline void check_subsimplex(const SubSimplex& f, int n)
{
    if (f.empty() || static_cast<int>(f.size()) > n + 1) throw std::invalid_argument("invalid sub-simplex size");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0 || f[i] > n) throw std::invalid_argument("invalid sub-simplex: index out of range");
        if (i > 0 && f[i] <= f[i - 1]) throw std::invalid_argument("invalid sub-simplex: indices not increasing");
    }
}

/// f* = {0..n} \ f.
inline SubSimplex complement(const SubSimplex& f, int n)
{
    SubSimplex c;
    for (int i = 0; i <= n; ++i)
        if (!std::binary_search(f.begin(), f.end(), i)) c.push_back(i);
    return c;
}

/// Extension E(alpha_f): places the entries of alpha_f at the positions of f.
inline Node extend(const Node& af, const SubSimplex& f, int n)
{
    if (af.size() != f.size()) throw std::invalid_argument("extend: size mismatch");
    check_subsimplex(f, n);
    Node a(n + 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) a[f[i]] = af[i];
    return a;
}

/// Restriction alpha_f = (alpha_{f(0)}, ..., alpha_{f(l)}).
inline Node restrict_node(const Node& a, const SubSimplex& f)
{
    Node r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = a[f[i]];
    return r;
}

/// dist(alpha, f) = |alpha_{f*}|.
inline int dist(const Node& a, const SubSimplex& f)
{
    int s = 0;
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        if (!std::binary_search(f.begin(), f.end(), i)) s += a[i];
    return s;
}

/// Tube D(f, r) = {alpha : dist(alpha, f) <= r}; empty for r < 0.
inline std::vector<Node> tube(const SubSimplex& f, int r, int n, int k)
{
    std::vector<Node> out;
    if (r < 0) return out;
    for (const auto& a : lattice(n, k))
        if (dist(a, f) <= r) out.push_back(a);
    return out;
}

/// Plane L(f, s) = {alpha : dist(alpha, f) = s}.
inline std::vector<Node> plane(const SubSimplex& f, int s, int n, int k)
{
    std::vector<Node> out;
    for (const auto& a : lattice(n, k))
        if (dist(a, f) == s) out.push_back(a);
    return out;
}

/// All l-dimensional sub-simplices of {0..n}, lexicographic.
inline std::vector<SubSimplex> subsimplices(int n, int l)
{
    std::vector<SubSimplex> out;
    if (l < 0 || l > n) return out;
    std::vector<int> sel(n + 1, 0);
    std::fill(sel.begin(), sel.begin() + l + 1, 1);
    do {
        SubSimplex f;
        for (int i = 0; i <= n; ++i)
            if (sel[i]) f.push_back(i);
        out.push_back(f);
    } while (std::prev_permutation(sel.begin(), sel.end()));
    return out;
}

/// Sub-simplices of f (as subsets of f) of dimension l.
inline std::vector<SubSimplex> faces_of(const SubSimplex& f, int l)
{
    std::vector<SubSimplex> out;
    const int m = static_cast<int>(f.size()) - 1;
    for (const auto& loc : subsimplices(m, l)) {
        SubSimplex g;
        for (int i : loc) g.push_back(f[i]);
        out.push_back(g);
    }
    return out;
}

/// Graph distance on the lattice: half the l1 distance.
inline int lattice_distance(const Node& a, const Node& b)
{
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s / 2;
}

/// True iff b = a + eps_i - eps_j for some i != j.
inline bool adjacent(const Node& a, const Node& b)
{
    if (a.size() != b.size() || degree(a) != degree(b)) return false;
    return lattice_distance(a, b) == 1;
}

struct LatticeGraph {
    std::vector<Node> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // indices into nodes, first < second
};

/// Induced adjacency graph on the given node list (order preserved).
inline LatticeGraph induced_graph(const std::vector<Node>& nodes)
{
    LatticeGraph g;
    g.nodes = nodes;
    std::map<Node, std::size_t> where;
    for (std::size_t i = 0; i < nodes.size(); ++i) where[nodes[i]] = i;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        const Node& x = nodes[a];
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (i == j || x[j] == 0) continue;
                Node y = x;
                ++y[i];
                --y[j];
                auto it = where.find(y);
                if (it != where.end() && it->second > a) g.edges.emplace_back(a, it->second);
            }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

inline LatticeGraph lattice_graph(int n, int k) { return induced_graph(lattice(n, k)); }

struct SpanningForest {
    std::vector<std::pair<std::size_t, std::size_t>> edges; // (parent, child) indices into the node list
    std::vector<std::size_t> roots;                          // one root per connected component
    bool connected() const { return roots.size() <= 1; }
};

/// Breadth-first spanning forest; each component is rooted at its first node in list order.
inline SpanningForest spanning_tree(const LatticeGraph& g)
{
    SpanningForest t;
    const std::size_t n = g.nodes.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        t.roots.push_back(s);
        seen[s] = 1;
        std::queue<std::size_t> q;
        q.push(s);
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            for (auto v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    t.edges.emplace_back(u, v);
                    q.push(v);
                }
        }
    }
    return t;
}

} // namespace fec
