#pragma once

#include "fec/elements.hpp"
#include "fec/mesh.hpp"
#include "fec/parallel.hpp"

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fec {

/// Global finite element space on a mesh. Degrees of freedom attached to a sub-simplex are
/// identified across cells by (sorted global vertex ids, index within the sub-simplex); interior
/// DoFs are keyed by the cell itself and therefore never shared.
struct GlobalSpace {
    ElementSpec spec;
    const Mesh* mesh = nullptr;
    FrameOptions options;
    std::vector<Geometry> geometry;
    std::vector<DofTable> tables;
    std::vector<Matrix> inverse;                      // per cell: DoF values -> Bernstein coefficients
    std::vector<std::vector<std::size_t>> local_to_global;
    std::vector<std::pair<std::vector<int>, std::size_t>> keys;
    /// Shared DoFs whose functional differs between neighbouring cells.
    std::size_t inconsistent_shared = 0;

    std::size_t dim() const { return keys.size(); }

    /// Bernstein coefficients on cell t of the global function with DoF values c.
    Vec local_coefficients(std::size_t t, const Vec& c) const
    {
        const auto& l2g = local_to_global[t];
        Vec x(l2g.size());
        for (std::size_t i = 0; i < l2g.size(); ++i) x[i] = c[l2g[i]];
        return multiply(inverse[t], x);
    }

    /// Global DoF count per dimension of the attached sub-simplex.
    std::vector<std::size_t> per_dimension() const
    {
        std::vector<std::size_t> out(mesh->n + 1, 0);
        for (const auto& k : keys) ++out[k.first.size() - 1];
        return out;
    }
};

namespace detail {

inline bool same_functional(const Dof& a, const Dof& b)
{
    if (a.group != b.group || a.atoms.size() != b.atoms.size()) return false;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        const Atom &x = a.atoms[i], &y = b.atoms[i];
        if (x.weight != y.weight || x.dirs != y.dirs || !(x.test == y.test)) return false;
    }
    return true;
}

inline std::vector<int> global_site(const Mesh& m, std::size_t t, const SubSimplex& s)
{
    std::vector<int> out;
    for (int i : s) out.push_back(m.cells[t][i]);
    return out;
}

} // namespace detail

/// Builds tables and local inverses for every cell. Throws if some local DoF matrix is singular.
inline GlobalSpace build_space(const ElementSpec& spec, const Mesh& mesh, const FrameOptions& opt = {})
{
    GlobalSpace s;
    s.spec = spec;
    s.mesh = &mesh;
    s.options = opt;
    const std::size_t nc = mesh.cells.size();
    s.geometry.resize(nc);
    s.tables.resize(nc);
    s.inverse.resize(nc);
    parallel_for(nc, [&](std::size_t t) {
        s.geometry[t] = mesh.cell_geometry(t);
        s.tables[t] = build_table(spec, s.geometry[t], opt);
        if (s.tables[t].size() != s.tables[t].shape_dim())
            throw std::runtime_error("space " + spec.str() + ": " + std::to_string(s.tables[t].size()) + " DoFs for a " +
                                     std::to_string(s.tables[t].shape_dim()) + "-dimensional shape space");
        auto inv = fec::inverse(assemble_dof_matrix(s.tables[t], s.geometry[t]));
        if (!inv) throw std::runtime_error("space " + spec.str() + ": local DoF matrix is singular");
        s.inverse[t] = std::move(*inv);
    });
    std::map<std::pair<std::vector<int>, std::size_t>, std::size_t> index;
    std::map<std::pair<std::vector<int>, std::size_t>, std::pair<std::size_t, std::size_t>> origin;
    s.local_to_global.resize(nc);
    for (std::size_t t = 0; t < nc; ++t) {
        std::map<std::vector<int>, std::size_t> seen;
        for (std::size_t i = 0; i < s.tables[t].size(); ++i) {
            const Dof& d = s.tables[t].dofs[i];
            auto site = detail::global_site(mesh, t, d.site);
            auto key = std::make_pair(site, seen[site]++);
            auto [it, fresh] = index.emplace(key, s.keys.size());
            if (fresh) {
                s.keys.push_back(key);
                origin[key] = {t, i};
            } else {
                auto [t0, i0] = origin[key];
                if (!detail::same_functional(s.tables[t0].dofs[i0], d)) ++s.inconsistent_shared;
            }
            s.local_to_global[t].push_back(it->second);
        }
    }
    return s;
}

enum class DiffOp { Identity, Grad, Curl, Div };

inline std::string op_name(DiffOp op)
{
    switch (op) {
    case DiffOp::Identity: return "id";
    case DiffOp::Grad: return "grad";
    case DiffOp::Curl: return "curl";
    case DiffOp::Div: return "div";
    }
    return "?";
}

inline Dof pullback(const Dof& d, DiffOp op, int n)
{
    switch (op) {
    case DiffOp::Identity: return d;
    case DiffOp::Grad: return pullback_grad(d, n);
    case DiffOp::Curl: return pullback_curl(d);
    case DiffOp::Div: return pullback_div(d, n);
    }
    return d;
}

struct GlobalOperator {
    Matrix matrix;                 // target DoF values of op(u) in terms of source DoF values of u
    std::size_t mismatched_rows = 0; // shared target DoFs computed differently from two cells
};

/// Matrix of `op` from source to target: row (target DoF L) = L(op u) pulled back to the source
/// shape space and composed with the local inverse, scattered by global numbering.
inline GlobalOperator assemble_operator(const GlobalSpace& src, const GlobalSpace& tgt, DiffOp op)
{
    const Mesh& m = *src.mesh;
    const std::size_t nc = m.cells.size();
    std::vector<Matrix> local(nc);
    const int n = m.n;
    parallel_for(nc, [&](std::size_t t) {
        const auto& tt = tgt.tables[t];
        const int K = src.spec.degree, comp = src.spec.components();
        Matrix p(tt.size(), src.tables[t].size());
        for (std::size_t j = 0; j < tt.size(); ++j)
            p.set_row(j, dof_row(pullback(tt.dofs[j], op, n), src.geometry[t], K, comp));
        local[t] = multiply(p, src.inverse[t]);
    });
    GlobalOperator out;
    out.matrix = Matrix(tgt.dim(), src.dim());
    std::vector<char> filled(tgt.dim(), 0);
    for (std::size_t t = 0; t < nc; ++t)
        for (std::size_t j = 0; j < local[t].rows(); ++j) {
            Vec row(src.dim());
            for (std::size_t i = 0; i < local[t].cols(); ++i) row[src.local_to_global[t][i]] += local[t](j, i);
            std::size_t g = tgt.local_to_global[t][j];
            if (!filled[g]) {
                out.matrix.set_row(g, row);
                filled[g] = 1;
            } else if (out.matrix.row(g) != row) {
                ++out.mismatched_rows;
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Cartesian polynomials and interpolation.
// ---------------------------------------------------------------------------

/// Polynomial in Cartesian coordinates: exponent tuple -> coefficient.
struct CartesianPoly {
    int n = 3;
    std::map<std::vector<int>, Rational> terms;

    int degree() const
    {
        int d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, fec::degree(e));
        return d;
    }
};

/// Bernstein form of degree K >= deg(p) on the cell with geometry g (x_d = sum_i v_i[d] lambda_i).
inline Poly to_bernstein(const CartesianPoly& p, const Geometry& g, int K)
{
    const int n = g.n;
    std::vector<Poly> x(n, Poly(n, 1));
    for (int d = 0; d < n; ++d)
        for (int i = 0; i <= n; ++i) {
            Node e(n + 1, 0);
            e[i] = 1;
            x[d][e] = g.vertices[i][d];
        }
    Poly out(n, K);
    for (const auto& [e, c] : p.terms) {
        Poly m(n, 0);
        m.c[0] = 1;
        for (int d = 0; d < n; ++d)
            for (int t = 0; t < e[d]; ++t) m = multiply(m, x[d]);
        out += c * raise_to(m, K);
    }
    return out;
}

/// Seeded random polynomial of total degree <= deg with coefficients in {-3..3}.
inline CartesianPoly random_poly(int n, int deg, std::mt19937& rng)
{
    std::uniform_int_distribution<int> dist(-3, 3);
    CartesianPoly p;
    p.n = n;
    for (int d = 0; d <= deg; ++d)
        for (const auto& a : lattice(n - 1, d)) {
            int c = dist(rng);
            if (c != 0) p.terms[a] = c;
        }
    return p;
}

/// Input to interpolation: per-cell Bernstein components of one global (piecewise) polynomial.
using CellFunction = std::vector<Field>;

inline CellFunction cell_function(const Mesh& m, const std::vector<CartesianPoly>& comps, int K)
{
    CellFunction f;
    for (std::size_t t = 0; t < m.cells.size(); ++t) {
        Geometry g = m.cell_geometry(t);
        Field u;
        for (const auto& c : comps) u.push_back(to_bernstein(c, g, K));
        f.push_back(std::move(u));
    }
    return f;
}

inline CellFunction apply_op(const Mesh& m, const CellFunction& f, DiffOp op)
{
    CellFunction out;
    for (std::size_t t = 0; t < f.size(); ++t) {
        Geometry g = m.cell_geometry(t);
        switch (op) {
        case DiffOp::Identity: out.push_back(f[t]); break;
        case DiffOp::Grad: out.push_back(gradient(f[t].at(0), g)); break;
        case DiffOp::Curl: out.push_back(curl(f[t], g)); break;
        case DiffOp::Div: out.push_back({divergence(f[t], g)}); break;
        }
    }
    return out;
}

struct Interpolant {
    Vec values;
    std::size_t inconsistent = 0; // shared DoFs evaluated differently from two cells
};

/// Canonical interpolant: the DoF values of f. Shared DoFs are evaluated from every cell and compared.
inline Interpolant interpolate(const GlobalSpace& s, const CellFunction& f)
{
    Interpolant r;
    r.values.assign(s.dim(), 0);
    std::vector<char> set(s.dim(), 0);
    for (std::size_t t = 0; t < f.size(); ++t)
        for (std::size_t i = 0; i < s.tables[t].size(); ++i) {
            Rational v = apply_dof(s.tables[t].dofs[i], s.geometry[t], f[t]);
            std::size_t g = s.local_to_global[t][i];
            if (!set[g]) {
                r.values[g] = v;
                set[g] = 1;
            } else if (r.values[g] != v) {
                ++r.inconsistent;
            }
        }
    return r;
}

/// The global function with DoF values c, as per-cell Bernstein fields.
inline CellFunction reconstruct(const GlobalSpace& s, const Vec& c)
{
    CellFunction out;
    const int comp = s.spec.components(), n = s.mesh->n, K = s.spec.degree;
    const std::size_t dimp = lattice_size(n, K);
    for (std::size_t t = 0; t < s.tables.size(); ++t) {
        Vec x = s.local_coefficients(t, c);
        Field u;
        for (int q = 0; q < comp; ++q) {
            Poly p(n, K);
            for (std::size_t i = 0; i < dimp; ++i) p.c[i] = x[q * dimp + i];
            u.push_back(std::move(p));
        }
        out.push_back(std::move(u));
    }
    return out;
}

} // namespace fec
