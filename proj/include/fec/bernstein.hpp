#pragma once

#include "fec/lattice.hpp"
#include "fec/linalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fec {

// ---------------------------------------------------------------------------
// Geometry of an n-simplex with rational vertices.
// ---------------------------------------------------------------------------

struct Geometry {
    int n = 0;
    std::vector<Vec> vertices;    // n+1 points in R^n
    std::vector<Vec> grad_lambda; // gradient of each barycentric coordinate
    Rational volume;              // positive

    /// t_{i,j} = v_j - v_i
    Vec edge(int i, int j) const { return vertices[j] - vertices[i]; }

    Vec barycentric(const Vec& x) const
    {
        Vec lam(n + 1);
        for (int i = 0; i <= n; ++i) lam[i] = dot(grad_lambda[i], x - vertices[0]) + (i == 0 ? Rational(1) : Rational(0));
        return lam;
    }
};

inline Geometry make_geometry(const std::vector<Vec>& verts)
{
    const int n = static_cast<int>(verts.size()) - 1;
    if (n < 0) throw std::invalid_argument("make_geometry: no vertices");
    for (const auto& v : verts)
        if (static_cast<int>(v.size()) != n) throw std::invalid_argument("make_geometry: coordinate dimension mismatch");
    Geometry g;
    g.n = n;
    g.vertices = verts;
    Matrix a(n + 1, n + 1);
    for (int m = 0; m <= n; ++m) {
        a(m, 0) = 1;
        for (int d = 0; d < n; ++d) a(m, d + 1) = verts[m][d];
    }
    auto c = inverse(a);
    if (!c) throw std::invalid_argument("make_geometry: degenerate simplex");
    g.grad_lambda.assign(n + 1, Vec(n));
    for (int i = 0; i <= n; ++i)
        for (int d = 0; d < n; ++d) g.grad_lambda[i][d] = (*c)(d + 1, i);
    Matrix e(n, n);
    for (int i = 0; i < n; ++i)
        for (int d = 0; d < n; ++d) e(i, d) = verts[i + 1][d] - verts[0][d];
    Rational det = n == 0 ? Rational(1) : determinant(e);
    g.volume = abs(det) / Rational(factorial(n));
    return g;
}

/// Reference simplex with vertices 0, e_1, ..., e_n.
inline Geometry reference_simplex(int n)
{
    std::vector<Vec> v(n + 1, Vec(n, Rational(0)));
    for (int i = 1; i <= n; ++i) v[i][i - 1] = 1;
    return make_geometry(v);
}

// ---------------------------------------------------------------------------
// Bernstein polynomials sum_alpha c_alpha lambda^alpha on T^n_k.
// ---------------------------------------------------------------------------

struct Poly {
    int n = 0, k = 0;
    Vec c;

    Poly() = default;
    Poly(int n_, int k_) : n(n_), k(k_), c(lattice_size(n_, k_)) {}

    static Poly monomial(const Node& a, const Rational& coef = 1)
    {
        Poly p(static_cast<int>(a.size()) - 1, degree(a));
        p.c[node_index(a)] = coef;
        return p;
    }

    const std::vector<Node>& nodes() const { return lattice(n, k); }
    Rational& operator[](const Node& a) { return c[node_index(a)]; }
    const Rational& operator[](const Node& a) const { return c[node_index(a)]; }

    bool is_zero() const { return fec::is_zero(c); }

    Poly& operator+=(const Poly& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (sgn(o.c[i]) != 0) c[i] += o.c[i];
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (sgn(o.c[i]) != 0) c[i] -= o.c[i];
        return *this;
    }
    Poly& operator*=(const Rational& s)
    {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.n == b.n && a.k == b.k && a.c == b.c; }

private:
    void check_same(const Poly& o) const
    {
        if (o.n != n || o.k != k) throw std::invalid_argument("Poly: dimension/degree mismatch");
    }
};

/// Degree raising via lambda^alpha = lambda^alpha (lambda_0 + ... + lambda_n) = sum_i lambda^{alpha+eps_i}.
inline Poly raise(const Poly& p)
{
    Poly q(p.n, p.k + 1);
    const auto& nodes = p.nodes();
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (sgn(p.c[t]) == 0) continue;
        Node a = nodes[t];
        for (int i = 0; i <= p.n; ++i) {
            ++a[i];
            q[a] += p.c[t];
            --a[i];
        }
    }
    return q;
}

inline Poly raise_to(Poly p, int k)
{
    if (k < p.k) throw std::invalid_argument("raise_to: target degree below current degree");
    while (p.k < k) p = raise(p);
    return p;
}

inline Poly multiply(const Poly& p, const Poly& q)
{
    if (p.n != q.n) throw std::invalid_argument("multiply: dimension mismatch");
    Poly r(p.n, p.k + q.k);
    const auto& np = p.nodes();
    const auto& nq = q.nodes();
    for (std::size_t s = 0; s < np.size(); ++s) {
        if (sgn(p.c[s]) == 0) continue;
        for (std::size_t t = 0; t < nq.size(); ++t) {
            if (sgn(q.c[t]) == 0) continue;
            Node a = np[s];
            for (int i = 0; i <= p.n; ++i) a[i] += nq[t][i];
            r[a] += p.c[s] * q.c[t];
        }
    }
    return r;
}

/// Integral divided by |T|: sum_alpha c_alpha alpha! n!/(k+n)!.
inline Rational integrate_normalized(const Poly& p)
{
    Rational s = 0;
    const auto& nodes = p.nodes();
    Rational base = ratio(factorial(p.n), factorial(p.k + p.n));
    for (std::size_t t = 0; t < nodes.size(); ++t)
        if (sgn(p.c[t]) != 0) s += p.c[t] * Rational(multi_factorial(nodes[t])) * base;
    return s;
}

inline Rational integrate(const Poly& p, const Geometry& g)
{
    if (p.n != g.n) throw std::invalid_argument("integrate: dimension mismatch");
    return integrate_normalized(p) * g.volume;
}

/// Cartesian directional derivative d . grad p, of degree k-1.
inline Poly derivative(const Poly& p, const Vec& d, const Geometry& g)
{
    if (p.k == 0) return Poly(p.n, 0);
    Poly q(p.n, p.k - 1);
    Vec w(p.n + 1);
    for (int i = 0; i <= p.n; ++i) w[i] = dot(d, g.grad_lambda[i]);
    const auto& nodes = p.nodes();
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (sgn(p.c[t]) == 0) continue;
        Node a = nodes[t];
        for (int i = 0; i <= p.n; ++i) {
            if (a[i] == 0 || sgn(w[i]) == 0) continue;
            Rational f = a[i] * w[i] * p.c[t];
            --a[i];
            q[a] += f;
            ++a[i];
        }
    }
    return q;
}

/// t_{i,j} . grad p using t_{i,j} . grad lambda^alpha = alpha_j lambda^{alpha-eps_j} - alpha_i lambda^{alpha-eps_i}.
inline Poly directional_derivative(const Poly& p, int i, int j)
{
    if (i == j) throw std::invalid_argument("directional_derivative: i == j is not a direction");
    if (i < 0 || j < 0 || i > p.n || j > p.n) throw std::invalid_argument("directional_derivative: vertex out of range");
    if (p.k == 0) return Poly(p.n, 0);
    Poly q(p.n, p.k - 1);
    const auto& nodes = p.nodes();
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (sgn(p.c[t]) == 0) continue;
        Node a = nodes[t];
        if (a[j] > 0) {
            --a[j];
            q[a] += (a[j] + 1) * p.c[t];
            ++a[j];
        }
        if (a[i] > 0) {
            --a[i];
            q[a] -= (a[i] + 1) * p.c[t];
            ++a[i];
        }
    }
    return q;
}

/// Restriction to the sub-simplex f: lambda^alpha|_f = lambda_f^{alpha_f} if alpha_{f*} = 0, else 0.
inline Poly restrict_poly(const Poly& p, const SubSimplex& f)
{
    check_subsimplex(f, p.n);
    Poly q(static_cast<int>(f.size()) - 1, p.k);
    const auto& nodes = p.nodes();
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (sgn(p.c[t]) == 0 || dist(nodes[t], f) != 0) continue;
        q[restrict_node(nodes[t], f)] += p.c[t];
    }
    return q;
}

/// Extension of a polynomial on f: lambda_f^beta -> lambda^{E(beta)}.
inline Poly extend_poly(const Poly& pf, const SubSimplex& f, int n)
{
    Poly q(n, pf.k);
    const auto& nodes = pf.nodes();
    for (std::size_t t = 0; t < nodes.size(); ++t)
        if (sgn(pf.c[t]) != 0) q[extend(nodes[t], f, n)] += pf.c[t];
    return q;
}

inline Rational evaluate(const Poly& p, const Vec& lam)
{
    Rational s = 0;
    const auto& nodes = p.nodes();
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (sgn(p.c[t]) == 0) continue;
        Rational m = p.c[t];
        for (int i = 0; i <= p.n; ++i)
            for (int e = 0; e < nodes[t][i]; ++e) m *= lam[i];
        s += m;
    }
    return s;
}

inline double evaluate_double(const Poly& p, const std::vector<double>& lam)
{
    double s = 0;
    const auto& nodes = p.nodes();
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (sgn(p.c[t]) == 0) continue;
        double m = p.c[t].get_d();
        for (int i = 0; i <= p.n; ++i)
            for (int e = 0; e < nodes[t][i]; ++e) m *= lam[i];
        s += m;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Vector fields in a fixed Cartesian frame.
// ---------------------------------------------------------------------------

using Field = std::vector<Poly>;

inline Field zero_field(int n, int k) { return Field(n, Poly(n, k)); }

inline Field gradient(const Poly& p, const Geometry& g)
{
    Field f;
    for (int d = 0; d < g.n; ++d) f.push_back(derivative(p, unit_vector(g.n, d), g));
    return f;
}

inline Poly divergence(const Field& u, const Geometry& g)
{
    Poly s(g.n, u.at(0).k > 0 ? u[0].k - 1 : 0);
    for (int d = 0; d < g.n; ++d) s += derivative(u[d], unit_vector(g.n, d), g);
    return s;
}

inline Field curl(const Field& u, const Geometry& g)
{
    if (g.n != 3) throw std::invalid_argument("curl: only defined in three dimensions");
    auto D = [&](int comp, int axis) { return derivative(u[comp], unit_vector(3, axis), g); };
    return {D(2, 1) - D(1, 2), D(0, 2) - D(2, 0), D(1, 0) - D(0, 1)};
}

/// w . u for a constant vector w.
inline Poly field_dot(const Vec& w, const Field& u)
{
    Poly s(u.at(0).n, u[0].k);
    for (std::size_t d = 0; d < u.size(); ++d)
        if (sgn(w[d]) != 0) s += w[d] * u[d];
    return s;
}

inline bool is_zero(const Field& u)
{
    for (const auto& p : u)
        if (!p.is_zero()) return false;
    return true;
}

/// Concatenated Bernstein coefficients (component-major).
inline Vec flatten(const Field& u)
{
    Vec v;
    for (const auto& p : u) v.insert(v.end(), p.c.begin(), p.c.end());
    return v;
}

// ---------------------------------------------------------------------------
// Formal barycentric fields: sums of coef * lambda^node * t_{i,j}.
// ---------------------------------------------------------------------------

struct FieldTerm {
    Rational coef;
    Node node;
    int i = 0, j = 0; // direction t_{i,j} = v_j - v_i
};

using FormalField = std::vector<FieldTerm>;

inline Field to_cartesian(const FormalField& terms, const Geometry& g, int k)
{
    Field f = zero_field(g.n, k);
    for (const auto& t : terms) {
        if (degree(t.node) != k) throw std::invalid_argument("to_cartesian: degree mismatch");
        Vec dir = g.edge(t.i, t.j);
        for (int d = 0; d < g.n; ++d)
            if (sgn(dir[d]) != 0) f[d][t.node] += t.coef * dir[d];
    }
    return f;
}

/// Divergence evaluated term by term: div(lambda^gamma t_{i,j}) = t_{i,j} . grad lambda^gamma.
inline Poly formal_divergence(const FormalField& terms, int n, int k)
{
    Poly s(n, k > 0 ? k - 1 : 0);
    for (const auto& t : terms) s += t.coef * directional_derivative(Poly::monomial(t.node), t.i, t.j);
    return s;
}

/// lambda^alpha/alpha! - lambda^beta/beta!
inline Poly l20_member(const Node& a, const Node& b)
{
    Poly p = Poly::monomial(a, Rational(1) / Rational(multi_factorial(a)));
    p -= Poly::monomial(b, Rational(1) / Rational(multi_factorial(b)));
    return p;
}

/// Divergence preimage along a direct lattice edge: beta = alpha + eps_i - eps_j,
/// u = lambda^{alpha+eps_i} t_{j,i} / (beta! alpha_j), div u = lambda^alpha/alpha! - lambda^beta/beta!.
inline FormalField preimage_direct(const Node& alpha, int i, int j)
{
    const int n = static_cast<int>(alpha.size()) - 1;
    if (i == j || i < 0 || j < 0 || i > n || j > n) throw std::invalid_argument("preimage_direct: invalid direction");
    if (alpha[j] < 1) throw std::invalid_argument("preimage_direct: nodes not adjacent (alpha_j = 0)");
    Node beta = alpha;
    ++beta[i];
    --beta[j];
    Node lift = alpha;
    ++lift[i];
    Rational coef = Rational(1) / (Rational(multi_factorial(beta)) * alpha[j]);
    return {FieldTerm{coef, lift, j, i}};
}

/// Adjacency-checked overload taking the two pressure nodes.
inline FormalField preimage_direct(const Node& alpha, const Node& beta)
{
    if (!adjacent(alpha, beta)) throw std::invalid_argument("preimage_direct: nodes not adjacent");
    int i = -1, j = -1;
    for (std::size_t t = 0; t < alpha.size(); ++t) {
        if (beta[t] == alpha[t] + 1) i = static_cast<int>(t);
        if (beta[t] == alpha[t] - 1) j = static_cast<int>(t);
    }
    return preimage_direct(alpha, i, j);
}

/// Detour through vertex l: gamma = alpha + eps_l - eps_j; the divergence telescopes through gamma.
inline FormalField preimage_detour(const Node& alpha, int i, int j, int l)
{
    const int n = static_cast<int>(alpha.size()) - 1;
    if (l == i || l == j || l < 0 || l > n) throw std::invalid_argument("preimage_detour: l must differ from i and j");
    if (alpha[j] < 1) throw std::invalid_argument("preimage_detour: detour not available (alpha_j = 0)");
    Node gamma = alpha;
    ++gamma[l];
    --gamma[j];
    FormalField u = preimage_direct(alpha, l, j);
    FormalField v = preimage_direct(gamma, i, l);
    u.insert(u.end(), v.begin(), v.end());
    return u;
}

/// L^2_0 basis of span{lambda^alpha : alpha in S} from a BFS spanning forest of G(S).
struct L20Basis {
    std::vector<Poly> members;      // one per forest edge
    std::vector<Poly> root_links;   // joins component roots when G(S) is disconnected
    SpanningForest forest;
    bool connected = true;

    std::vector<Poly> all() const
    {
        std::vector<Poly> r = members;
        r.insert(r.end(), root_links.begin(), root_links.end());
        return r;
    }
};

inline L20Basis l20_basis(const std::vector<Node>& s)
{
    L20Basis b;
    if (s.empty()) return b;
    LatticeGraph g = induced_graph(s);
    b.forest = spanning_tree(g);
    b.connected = b.forest.connected();
    for (auto [p, c] : b.forest.edges) b.members.push_back(l20_member(s[p], s[c]));
    for (std::size_t r = 1; r < b.forest.roots.size(); ++r)
        b.root_links.push_back(l20_member(s[b.forest.roots[0]], s[b.forest.roots[r]]));
    return b;
}

} // namespace fec
