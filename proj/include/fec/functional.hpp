#pragma once

#include "fec/bernstein.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace fec {

/// One term of a degree of freedom:
///   q -> integral over `site` of (d/d dirs[0] ... d/d dirs[m-1] (weight . v)) restricted to the site, times `test`.
/// Integrals use the measure normalized to |site| = 1; on a vertex the value is the point value times `test`.
struct Atom {
    Vec weight;              // one entry per component of the shape space
    std::vector<Vec> dirs;   // Cartesian directions, applied in any order
    SubSimplex site;         // local vertex indices, sorted
    Poly test;               // polynomial on the site in its own barycentric coordinates
};

enum class SiteKind { Vertex = 0, Edge = 1, Face = 2, Interior = 3 };

/// A linear functional on P_K(T; R^m), expressed as a sum of atoms.
struct Dof {
    std::string group;  // family tag such as "V1", "E2", "F3", "T1"
    SubSimplex site;    // sub-simplex the functional is attached to
    std::vector<Atom> atoms;
    std::string label;
};

/// Derived quantity of a field v (or scalar u) as a sum of (weight, extra derivative) pairs.
struct QuantityTerm {
    Vec weight;
    std::vector<Vec> dirs;
};
using Quantity = std::vector<QuantityTerm>;

/// u itself for scalar spaces.
inline Quantity q_scalar() { return {{Vec{Rational(1)}, {}}}; }

/// w . v for vector spaces.
inline Quantity q_component(const Vec& w) { return {{w, {}}}; }

/// d u / d a for scalar spaces.
inline Quantity q_directional(const Vec& a) { return {{Vec{Rational(1)}, {a}}}; }

/// div v in R^n.
inline Quantity q_div(int n)
{
    Quantity q;
    for (int c = 0; c < n; ++c) q.push_back({unit_vector(n, c), {unit_vector(n, c)}});
    return q;
}

/// a . curl v, using a . (e_b x d_b v) = (a x e_b) . d_b v.
inline Quantity q_curl_dot(const Vec& a)
{
    Quantity q;
    for (int b = 0; b < 3; ++b) {
        Vec w = cross(a, unit_vector(3, b));
        if (!is_zero(w)) q.push_back({w, {unit_vector(3, b)}});
    }
    return q;
}

/// Applies extra derivatives `d` to a quantity and tests it on `site` against `test`.
inline Dof make_dof(std::string group, const Quantity& quantity, const std::vector<Vec>& d, const SubSimplex& site,
                    const Poly& test, std::string label = {})
{
    Dof dof;
    dof.group = std::move(group);
    dof.site = site;
    dof.label = std::move(label);
    for (const auto& t : quantity) {
        Atom a;
        a.weight = t.weight;
        a.dirs = d;
        a.dirs.insert(a.dirs.end(), t.dirs.begin(), t.dirs.end());
        a.site = site;
        a.test = test;
        dof.atoms.push_back(std::move(a));
    }
    return dof;
}

/// Normalized integral over an l-simplex of lambda^gamma * q.
inline Rational site_moment(const Node& gamma, const Poly& q)
{
    const int l = q.n;
    const int g = degree(gamma);
    Rational s = 0;
    const auto& nodes = q.nodes();
    Rational base = ratio(factorial(l), factorial(g + q.k + l));
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (sgn(q.c[t]) == 0) continue;
        Node a = nodes[t];
        for (int i = 0; i <= l; ++i) a[i] += gamma[i];
        s += q.c[t] * Rational(multi_factorial(a)) * base;
    }
    return s;
}

/// Coefficient functional of one atom on scalar Bernstein coefficients of degree K.
inline Vec atom_scalar_row(const Atom& a, const Geometry& g, int K)
{
    const int n = g.n;
    const int m = static_cast<int>(a.dirs.size());
    if (K < m) return Vec(lattice_size(n, K));
    int deg = K - m;
    const auto& base_nodes = lattice(n, deg);
    Vec phi(base_nodes.size());
    for (std::size_t t = 0; t < base_nodes.size(); ++t) {
        const Node& gam = base_nodes[t];
        if (dist(gam, a.site) != 0) continue;
        phi[t] = site_moment(restrict_node(gam, a.site), a.test);
    }
    // Pull back through each derivative: d_w lambda^alpha = sum_i alpha_i (w . grad lambda_i) lambda^{alpha - eps_i}.
    for (const auto& d : a.dirs) {
        Vec w(n + 1);
        for (int i = 0; i <= n; ++i) w[i] = dot(d, g.grad_lambda[i]);
        ++deg;
        const auto& nodes = lattice(n, deg);
        Vec psi(nodes.size());
        for (std::size_t t = 0; t < nodes.size(); ++t) {
            Node al = nodes[t];
            Rational s = 0;
            for (int i = 0; i <= n; ++i) {
                if (al[i] == 0 || sgn(w[i]) == 0) continue;
                --al[i];
                const Rational& p = phi[node_index(al)];
                if (sgn(p) != 0) s += (al[i] + 1) * w[i] * p;
                ++al[i];
            }
            psi[t] = s;
        }
        phi = std::move(psi);
    }
    return phi;
}

/// Row of a DoF on P_K(T; R^m) in the component-major Bernstein basis.
inline Vec dof_row(const Dof& dof, const Geometry& g, int K, int components)
{
    const std::size_t dimp = lattice_size(g.n, K);
    Vec row(components * dimp);
    for (const auto& a : dof.atoms) {
        if (static_cast<int>(a.weight.size()) != components) throw std::invalid_argument("dof_row: component mismatch");
        Vec s = atom_scalar_row(a, g, K);
        for (int c = 0; c < components; ++c) {
            if (sgn(a.weight[c]) == 0) continue;
            for (std::size_t t = 0; t < dimp; ++t)
                if (sgn(s[t]) != 0) row[c * dimp + t] += a.weight[c] * s[t];
        }
    }
    return row;
}

/// Value of a DoF on a scalar polynomial.
inline Rational apply_dof(const Dof& dof, const Geometry& g, const Poly& u)
{
    return dot(dof_row(dof, g, u.k, 1), u.c);
}

/// Value of a DoF on a vector field.
inline Rational apply_dof(const Dof& dof, const Geometry& g, const Field& v)
{
    return dot(dof_row(dof, g, v.at(0).k, static_cast<int>(v.size())), flatten(v));
}

/// Rewrites a DoF of the target space so that it acts on the source of grad: L(grad u).
inline Dof pullback_grad(const Dof& d, int n)
{
    Dof r = d;
    r.atoms.clear();
    for (const auto& a : d.atoms) {
        if (static_cast<int>(a.weight.size()) != n) throw std::invalid_argument("pullback_grad: weight size");
        Atom x = a;
        x.weight = Vec{Rational(1)};
        x.dirs.push_back(a.weight); // w . grad u = d_w u
        r.atoms.push_back(std::move(x));
    }
    return r;
}

/// L(curl v): w . curl v = sum_b (w x e_b) . d_b v.
inline Dof pullback_curl(const Dof& d)
{
    Dof r = d;
    r.atoms.clear();
    for (const auto& a : d.atoms)
        for (int b = 0; b < 3; ++b) {
            Vec w = cross(a.weight, unit_vector(3, b));
            if (is_zero(w)) continue;
            Atom x = a;
            x.weight = w;
            x.dirs.push_back(unit_vector(3, b));
            r.atoms.push_back(std::move(x));
        }
    return r;
}

/// L(div v) for a scalar target functional L.
inline Dof pullback_div(const Dof& d, int n)
{
    Dof r = d;
    r.atoms.clear();
    for (const auto& a : d.atoms)
        for (int c = 0; c < n; ++c) {
            Atom x = a;
            x.weight = a.weight[0] * unit_vector(n, c);
            x.dirs.push_back(unit_vector(n, c));
            r.atoms.push_back(std::move(x));
        }
    return r;
}

// ---------------------------------------------------------------------------
// Frames attached to global sub-simplices.
// ---------------------------------------------------------------------------

struct FrameOptions {
    /// Edge normals from the two coordinate axes least aligned with t (instead of cross products).
    bool axis_edge_normals = false;
    /// n-dimensional DoFs: use normals depending on f only (needed for conforming assembly)
    /// instead of transversal vectors dual to the gradients of the opposite barycentric coordinates.
    bool nd_global_frames = false;
    Rational scale_t = 1, scale_n1 = 1, scale_n2 = 1;  // edge frame
    Rational scale_t1 = 1, scale_t2 = 1, scale_n = 1;  // face frame
};

struct EdgeFrame {
    Vec t, n1, n2;
};

struct FaceFrame {
    Vec t1, t2, n;
};

/// Edge frame from the two vertex coordinates (lower global id first).
inline EdgeFrame edge_frame(const Vec& a, const Vec& b, const FrameOptions& opt = {})
{
    EdgeFrame f;
    f.t = b - a;
    std::vector<int> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return abs(f.t[x]) < abs(f.t[y]); });
    if (opt.axis_edge_normals) {
        int p = std::min(order[0], order[1]), q = std::max(order[0], order[1]);
        f.n1 = unit_vector(3, p);
        f.n2 = unit_vector(3, q);
    } else {
        f.n1 = cross(f.t, unit_vector(3, order[0]));
        f.n2 = cross(f.t, f.n1);
    }
    f.t = opt.scale_t * f.t;
    f.n1 = opt.scale_n1 * f.n1;
    f.n2 = opt.scale_n2 * f.n2;
    return f;
}

inline EdgeFrame edge_frame(const Geometry& g, const SubSimplex& e, const FrameOptions& opt = {})
{
    return edge_frame(g.vertices[e[0]], g.vertices[e[1]], opt);
}

inline FaceFrame face_frame(const Geometry& g, const SubSimplex& f, const FrameOptions& opt = {})
{
    FaceFrame fr;
    fr.t1 = g.edge(f[0], f[1]);
    fr.t2 = g.edge(f[0], f[2]);
    fr.n = opt.scale_n * cross(fr.t1, fr.t2);
    fr.t1 = opt.scale_t1 * fr.t1;
    fr.t2 = opt.scale_t2 * fr.t2;
    return fr;
}

/// Projection onto the plane with normal n: w - (w.n) n / |n|^2.
inline Vec tangential_part(const Vec& w, const Vec& n) { return w - (dot(w, n) / dot(n, n)) * n; }

/// Transversal frame of f dual to the gradients of the opposite barycentric coordinates:
/// n_i = v_{f*(i)} - v_{f(0)}, so n_i . grad lambda_{f*(j)} = delta_ij.
inline std::vector<Vec> dual_transversal_frame(const Geometry& g, const SubSimplex& f)
{
    std::vector<Vec> out;
    for (int i : complement(f, g.n)) out.push_back(g.edge(f[0], i));
    return out;
}

/// Normal basis of f that depends only on the vertices of f: reduced nullspace of the tangent vectors.
inline std::vector<Vec> intrinsic_normal_frame(const Geometry& g, const SubSimplex& f)
{
    const int n = g.n;
    Matrix tan(f.size() - 1, n);
    for (std::size_t q = 1; q < f.size(); ++q) tan.set_row(q - 1, g.edge(f[0], f[q]));
    Matrix ns = nullspace(tan);
    std::vector<Vec> out;
    for (std::size_t j = 0; j < ns.cols(); ++j) out.push_back(ns.col(j));
    return out;
}

// ---------------------------------------------------------------------------
// Test-function helpers.
// ---------------------------------------------------------------------------

/// Bernstein basis lambda^alpha of P_m on an l-simplex; empty when m < 0.
inline std::vector<Poly> bernstein_tests(int l, int m)
{
    std::vector<Poly> out;
    if (m < 0) return out;
    for (const auto& a : lattice(l, m)) out.push_back(Poly::monomial(a));
    return out;
}

inline std::vector<Poly> monomial_tests(const std::vector<Node>& nodes)
{
    std::vector<Poly> out;
    for (const auto& a : nodes) out.push_back(Poly::monomial(a));
    return out;
}

/// span{lambda^alpha : alpha in S} / R via differences along a spanning forest.
inline std::vector<Poly> quotient_tests(const std::vector<Node>& nodes) { return l20_basis(nodes).all(); }

/// Cartesian derivative directions for D^beta, beta a multi-index over the n axes.
inline std::vector<Vec> axis_dirs(const Node& beta)
{
    std::vector<Vec> d;
    const int n = static_cast<int>(beta.size());
    for (int a = 0; a < n; ++a)
        for (int t = 0; t < beta[a]; ++t) d.push_back(unit_vector(n, a));
    return d;
}

/// Mixed normal derivative directions: i copies of n1 and j-i copies of n2.
inline std::vector<Vec> mixed_dirs(const Vec& n1, const Vec& n2, int i, int j)
{
    std::vector<Vec> d(i, n1);
    d.insert(d.end(), j - i, n2);
    return d;
}

inline std::string node_str(const std::vector<int>& a)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

} // namespace fec
