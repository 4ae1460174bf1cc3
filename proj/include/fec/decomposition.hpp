#pragma once

#include "fec/bernstein.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fec {

/// Smoothness orders at vertices, edges and faces of a tetrahedron; -1 means discontinuous.
struct Smooth3 {
    int v = 0, e = 0, f = 0;

    Smooth3 plus() const { return {std::max(v, 0), std::max(e, 0), std::max(f, 0)}; }
    /// Componentwise max(r - m, -1).
    Smooth3 minus(int m = 1) const { return {std::max(v - m, -1), std::max(e - m, -1), std::max(f - m, -1)}; }
    Smooth3 shift(int m) const { return {v + m, e + m, f + m}; }
    std::vector<int> as_vector() const { return {v, e, f}; }
    std::string str() const
    {
        std::ostringstream os;
        os << "(" << v << "," << e << "," << f << ")";
        return os.str();
    }
    friend bool operator==(const Smooth3& a, const Smooth3& b) { return a.v == b.v && a.e == b.e && a.f == b.f; }
    friend bool operator<=(const Smooth3& a, const Smooth3& b) { return a.v <= b.v && a.e <= b.e && a.f <= b.f; }
};

inline Smooth3 uniform(int r) { return {r, r, r}; }

/// Chain inequalities of a smoothness vector (k-independent part).
inline std::vector<std::string> chain_violations(const Smooth3& r)
{
    std::vector<std::string> v;
    if (r.f < -1) v.push_back("r_f >= -1");
    if (r.e < std::max(2 * r.f, -1)) v.push_back("r_e >= max(2 r_f, -1)");
    if (r.v < std::max(2 * r.e, -1)) v.push_back("r_v >= max(2 r_e, -1)");
    return v;
}

/// Empty result means valid; otherwise each entry names a violated inequality.
inline std::vector<std::string> validate_smoothness3(const Smooth3& r, int k)
{
    auto v = chain_violations(r);
    if (k < std::max(2 * r.v + 1, 0)) v.push_back("k >= max(2 r_v + 1, 0)");
    return v;
}

/// Validity of (r_0..r_n): r_n = 0 and r_l >= 2 r_{l+1}, plus k >= 2 r_0 + 1.
inline std::vector<std::string> validate_smoothness_nd(const std::vector<int>& r, int k)
{
    std::vector<std::string> v;
    const int n = static_cast<int>(r.size()) - 1;
    if (n < 1) {
        v.push_back("need at least r_0 and r_n");
        return v;
    }
    if (r[n] != 0) v.push_back("r_n = 0");
    for (int l = 0; l < n; ++l)
        if (r[l] < 2 * r[l + 1]) v.push_back("r_" + std::to_string(l) + " >= 2 r_" + std::to_string(l + 1));
    for (int x : r)
        if (x < 0) {
            v.push_back("entries non-negative");
            break;
        }
    if (k < 2 * r[0] + 1) v.push_back("k >= 2 r_0 + 1");
    return v;
}

struct Piece {
    int dim = 0;
    SubSimplex simplex;
    std::vector<Node> nodes;
};

struct LatticeDecomposition {
    int n = 3, k = 0;
    std::vector<int> r;
    std::vector<Piece> pieces;

    const Piece& find(const SubSimplex& f) const
    {
        for (const auto& p : pieces)
            if (p.simplex == f) return p;
        throw std::out_of_range("decomposition: no such sub-simplex");
    }
    std::size_t total() const
    {
        std::size_t s = 0;
        for (const auto& p : pieces) s += p.nodes.size();
        return s;
    }
};

/// Set-difference form: S_l(f) = D(f, r_l) minus the tubes D(e, r_i) of sub-simplices e of f with i < l;
/// S_n(T) takes the rest. Entries r_l < 0 give empty tubes.
inline LatticeDecomposition decompose_setdiff(int n, int k, const std::vector<int>& r)
{
    LatticeDecomposition d;
    d.n = n;
    d.k = k;
    d.r = r;
    std::vector<char> used(lattice_size(n, k), 0);
    const auto& all = lattice(n, k);
    for (int l = 0; l < n; ++l)
        for (const auto& f : subsimplices(n, l)) {
            Piece p{l, f, {}};
            for (std::size_t t = 0; t < all.size(); ++t) {
                const Node& a = all[t];
                if (dist(a, f) > r[l]) continue;
                bool removed = false;
                for (int i = 0; i < l && !removed; ++i)
                    for (const auto& e : faces_of(f, i))
                        if (dist(a, e) <= r[i]) {
                            removed = true;
                            break;
                        }
                if (!removed) p.nodes.push_back(a);
            }
            for (const auto& a : p.nodes) used[node_index(a)] = 1;
            d.pieces.push_back(std::move(p));
        }
    SubSimplex whole;
    for (int i = 0; i <= n; ++i) whole.push_back(i);
    Piece interior{n, whole, {}};
    for (std::size_t t = 0; t < all.size(); ++t) {
        bool in_tube = false;
        for (int l = 0; l < n && !in_tube; ++l)
            for (const auto& f : subsimplices(n, l))
                if (dist(all[t], f) <= r[l]) {
                    in_tube = true;
                    break;
                }
        if (!in_tube) interior.nodes.push_back(all[t]);
    }
    d.pieces.push_back(std::move(interior));
    return d;
}

inline LatticeDecomposition decompose3(int k, const Smooth3& r)
{
    auto v = validate_smoothness3(r, k);
    if (!v.empty()) throw std::invalid_argument("decompose3: invalid smoothness " + r.str() + ": " + v.front());
    return decompose_setdiff(3, k, {r.v, r.e, r.f});
}

/// n-dimensional decomposition using the inequality form
/// S_l(f) = {alpha : |alpha_{f*}| <= r_l, |alpha_e| <= k - r_i - 1 for e in Delta_i(f), i < l}.
inline LatticeDecomposition decompose_nd(int n, int k, const std::vector<int>& r)
{
    if (static_cast<int>(r.size()) != n + 1) throw std::invalid_argument("decompose_nd: need n+1 smoothness entries");
    auto v = validate_smoothness_nd(r, k);
    if (!v.empty()) throw std::invalid_argument("decompose_nd: " + v.front());
    LatticeDecomposition d;
    d.n = n;
    d.k = k;
    d.r = r;
    const auto& all = lattice(n, k);
    auto sum_on = [](const Node& a, const SubSimplex& e) {
        int s = 0;
        for (int i : e) s += a[i];
        return s;
    };
    for (int l = 0; l < n; ++l)
        for (const auto& f : subsimplices(n, l)) {
            Piece p{l, f, {}};
            for (const auto& a : all) {
                if (dist(a, f) > r[l]) continue;
                bool ok = true;
                for (int i = 0; i < l && ok; ++i)
                    for (const auto& e : faces_of(f, i))
                        if (sum_on(a, e) > k - r[i] - 1) {
                            ok = false;
                            break;
                        }
                if (ok) p.nodes.push_back(a);
            }
            d.pieces.push_back(std::move(p));
        }
    SubSimplex whole;
    for (int i = 0; i <= n; ++i) whole.push_back(i);
    Piece interior{n, whole, {}};
    for (const auto& a : all) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (const auto& e : subsimplices(n, i))
                if (sum_on(a, e) > k - r[i] - 1) {
                    ok = false;
                    break;
                }
        if (ok) interior.nodes.push_back(a);
    }
    d.pieces.push_back(std::move(interior));
    return d;
}

/// Partition check: pieces pairwise disjoint and their union is T^n_k.
inline bool is_partition(const LatticeDecomposition& d)
{
    std::vector<int> hits(lattice_size(d.n, d.k), 0);
    for (const auto& p : d.pieces)
        for (const auto& a : p.nodes) ++hits[node_index(a)];
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

/// Node set of B_k(T; r), i.e. S_3(T, r).
inline std::vector<Node> bubble_nodes(int k, const Smooth3& r)
{
    if (k < 0) return {};
    return decompose_setdiff(3, k, {r.v, r.e, r.f}).pieces.back().nodes;
}

/// Face-local nodes of B_k(f; (a, b)): T^2_k minus vertex tubes of radius a and edge tubes of radius b.
inline std::vector<Node> face_bubble_nodes(int k, int a, int b)
{
    std::vector<Node> out;
    if (k < 0) return out;
    for (const auto& x : lattice(2, k)) {
        bool keep = true;
        for (int i = 0; i < 3; ++i) {
            if (a >= 0 && k - x[i] <= a) keep = false;
            if (b >= 0 && x[i] <= b) keep = false; // distance to the opposite edge
        }
        if (keep) out.push_back(x);
    }
    return out;
}

/// Edge-local nodes of B_k(e; a).
inline std::vector<Node> edge_bubble_nodes(int k, int a)
{
    std::vector<Node> out;
    if (k < 0) return out;
    for (const auto& x : lattice(1, k)) {
        if (a >= 0 && (x[0] <= a || x[1] <= a)) continue;
        out.push_back(x);
    }
    return out;
}

/// Layered description of S_3(T, r) through the face f = {0,1,2}: the union over
/// j = r_f+1 .. k-r_v-1 of nodes with alpha_3 = j whose face part lies in B_{k-j}(f; (r_v-j, r_e-j)).
inline std::vector<Node> slice_union(int k, const Smooth3& r)
{
    std::vector<Node> out;
    for (int j = r.f + 1; j <= k - r.v - 1; ++j)
        for (const auto& b : face_bubble_nodes(k - j, r.v - j, r.e - j)) out.push_back({b[0], b[1], b[2], j});
    std::sort(out.begin(), out.end());
    return out;
}

struct SliceCheck {
    bool equal = false;
    std::vector<Node> only_in_bubble; // in S_3 but not in the slice union
    std::vector<Node> only_in_slices; // in the slice union but not in S_3
};

inline SliceCheck check_slice_identity(int k, const Smooth3& r)
{
    auto s3 = bubble_nodes(k, r);
    std::sort(s3.begin(), s3.end());
    auto sl = slice_union(k, r);
    SliceCheck c;
    std::set_difference(s3.begin(), s3.end(), sl.begin(), sl.end(), std::back_inserter(c.only_in_bubble));
    std::set_difference(sl.begin(), sl.end(), s3.begin(), s3.end(), std::back_inserter(c.only_in_slices));
    c.equal = c.only_in_bubble.empty() && c.only_in_slices.empty();
    return c;
}

/// Basis of B_k^div(T; r) for r_f = -1 (or of B_k^3(T; r) when r_f >= 0), grouped by origin.
struct DivBubbleBasis {
    std::vector<Field> interior;
    std::vector<Field> face;
    std::vector<Field> edge;
    std::vector<FormalField> face_formal; // same members as `face`, as barycentric terms
    std::vector<FormalField> edge_formal;

    std::vector<Field> all() const
    {
        std::vector<Field> r = interior;
        r.insert(r.end(), face.begin(), face.end());
        r.insert(r.end(), edge.begin(), edge.end());
        return r;
    }
    std::size_t size() const { return interior.size() + face.size() + edge.size(); }
};

inline DivBubbleBasis div_bubble_basis(int k, const Smooth3& r, const Geometry& g)
{
    DivBubbleBasis b;
    if (g.n != 3) throw std::invalid_argument("div_bubble_basis: three dimensions only");
    if (k < 0) return b;
    if (r.f >= 0) {
        for (const auto& a : bubble_nodes(k, r))
            for (int c = 0; c < 3; ++c) {
                Field u = zero_field(3, k);
                u[c][a] = 1;
                b.interior.push_back(std::move(u));
            }
        return b;
    }
    if (!chain_violations(r).empty()) throw std::invalid_argument("div_bubble_basis: invalid smoothness " + r.str());
    Smooth3 rp = r.plus();
    for (const auto& a : bubble_nodes(k, rp))
        for (int c = 0; c < 3; ++c) {
            Field u = zero_field(3, k);
            u[c][a] = 1;
            b.interior.push_back(std::move(u));
        }
    for (const auto& f : subsimplices(3, 2))
        for (const auto& beta : face_bubble_nodes(k, rp.v, rp.e)) {
            Node a = extend(beta, f, 3);
            for (int t = 1; t <= 2; ++t) {
                FormalField ff{FieldTerm{1, a, f[0], f[t]}};
                b.face.push_back(to_cartesian(ff, g, k));
                b.face_formal.push_back(ff);
            }
        }
    if (r.e == -1)
        for (const auto& e : subsimplices(3, 1))
            for (const auto& beta : edge_bubble_nodes(k, rp.v)) {
                FormalField ff{FieldTerm{1, extend(beta, e, 3), e[0], e[1]}};
                b.edge.push_back(to_cartesian(ff, g, k));
                b.edge_formal.push_back(ff);
            }
    return b;
}

/// Matrix whose columns are the flattened members of a list of fields.
inline Matrix field_columns(const std::vector<Field>& fs, int n, int k)
{
    const std::size_t dimp = lattice_size(n, k);
    Matrix m(static_cast<std::size_t>(n) * dimp, fs.size());
    for (std::size_t j = 0; j < fs.size(); ++j) {
        Vec v = flatten(fs[j]);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, j) = v[i];
    }
    return m;
}

/// Outward-agnostic face normal (t1 x t2) of face f in geometry g.
inline Vec face_normal(const Geometry& g, const SubSimplex& f)
{
    return cross(g.edge(f[0], f[1]), g.edge(f[0], f[2]));
}

/// True if u . n_f vanishes on every face of the tetrahedron.
inline bool normal_trace_zero(const Field& u, const Geometry& g)
{
    for (const auto& f : subsimplices(3, 2))
        if (!restrict_poly(field_dot(face_normal(g, f), u), f).is_zero()) return false;
    return true;
}

} // namespace fec
