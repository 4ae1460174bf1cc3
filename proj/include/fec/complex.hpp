#pragma once

#include "fec/assembly.hpp"

#include <array>
#include <chrono>
#include <random>
#include <string>
#include <vector>

namespace fec {

/// Smoothness chain and degree of grad -> curl -> div -> L2 with degrees k+2, k+1, k, k-1.
struct ComplexSpec {
    std::string name;
    int k = 1;
    Smooth3 r0, r1, r2, r3;

    ElementSpec grad_space() const { return make_spec(Family::GradMod, k + 2, r0); }
    ElementSpec curl_space() const { return make_spec(Family::CurlPair, k + 1, r1, r2); }
    ElementSpec div_space() const { return make_spec(Family::DivPair, k, r2, r3); }
    ElementSpec l2_space() const { return make_spec(Family::L2, k - 1, r3); }
    std::array<ElementSpec, 4> spaces() const { return {grad_space(), curl_space(), div_space(), l2_space()}; }
};

inline ComplexSpec hermite_complex()
{
    return {"hermite", 1, {1, 0, 0}, {0, -1, -1}, uniform(-1), uniform(-1)};
}

inline ComplexSpec argyris_complex()
{
    return {"argyris", 3, {2, 1, 0}, {1, 0, -1}, {0, -1, -1}, uniform(-1)};
}

inline ComplexSpec stokes_complex()
{
    return {"stokes", 6, uniform(0), uniform(-1), {2, 1, 0}, {1, 0, -1}};
}

inline std::optional<ComplexSpec> named_complex(const std::string& s)
{
    if (s == "hermite") return hermite_complex();
    if (s == "argyris") return argyris_complex();
    if (s == "stokes") return stokes_complex();
    return std::nullopt;
}

/// Hypotheses under which the complex is exact. Empty means admitted.
inline std::vector<std::string> validate_complex(const ComplexSpec& c)
{
    std::vector<std::string> v;
    const int k = c.k;
    if (k < std::max({2 * c.r1.v + 1, 2 * c.r2.v + 1, 2 * c.r3.v + 2, 1}))
        v.push_back("k >= max(2 r1_v + 1, 2 r2_v + 1, 2 r3_v + 2, 1)");
    if (!(c.r0.minus() <= c.r1)) v.push_back("r1 >= r0 (-) 1");
    if (!(c.r1.minus() <= c.r2)) v.push_back("r2 >= r1 (-) 1");
    if (!(c.r2.minus() <= c.r3)) v.push_back("r3 >= r2 (-) 1");
    if (c.r0.f < 0) v.push_back("r0 >= 0");
    if (bubble_nodes(k - 1, c.r3).empty()) v.push_back("dim B_{k-1}(T; r3) >= 1");
    if (face_bubble_nodes(k, c.r2.v, c.r2.e).empty()) v.push_back("dim B_k(f; (r2_v, r2_e)) >= 1");
    for (const auto& s : c.spaces())
        for (const auto& w : validate_spec(s)) v.push_back(family_name(s.family) + ": " + w);
    return v;
}

struct ComplexReport {
    ComplexSpec spec;
    std::string mesh;
    std::array<std::size_t, 4> dims{};
    std::array<std::size_t, 3> ranks{};          // grad, curl, div
    std::array<std::size_t, 3> mismatched_rows{};
    std::array<std::size_t, 4> inconsistent_shared{};
    std::array<bool, 4> dim_matches_entity_count{};
    bool curl_grad_zero = false, div_curl_zero = false;
    long alternating_sum = 0;                     // dim V0 - dim V1 + dim V2 - dim V3
    bool ker_grad_constants = false, exact_curl = false, exact_div = false, div_onto = false;
    bool identity = false;                        // 1 - V0 + V1 - V2 + V3 = 0
    double seconds = 0;

    bool exact() const
    {
        bool ok = curl_grad_zero && div_curl_zero && ker_grad_constants && exact_curl && exact_div && div_onto && identity;
        for (auto m : mismatched_rows) ok = ok && m == 0;
        for (auto m : inconsistent_shared) ok = ok && m == 0;
        for (auto m : dim_matches_entity_count) ok = ok && m;
        return ok;
    }
};

/// The four global spaces and the three differential operators of a complex on a mesh.
struct AssembledComplex {
    std::array<GlobalSpace, 4> spaces;
    std::array<GlobalOperator, 3> ops;
};

inline AssembledComplex assemble_complex(const ComplexSpec& c, const Mesh& mesh, const FrameOptions& opt = {})
{
    AssembledComplex a;
    auto specs = c.spaces();
    for (int i = 0; i < 4; ++i) a.spaces[i] = build_space(specs[i], mesh, opt);
    const std::array<DiffOp, 3> ops{DiffOp::Grad, DiffOp::Curl, DiffOp::Div};
    for (int i = 0; i < 3; ++i) a.ops[i] = assemble_operator(a.spaces[i], a.spaces[i + 1], ops[i]);
    return a;
}

/// Sum over sub-simplex dimensions of (DoFs per sub-simplex) x (number of sub-simplices).
inline std::size_t entity_count_dimension(const GlobalSpace& s)
{
    auto per = s.tables.at(0).per_entity();
    auto counts = s.mesh->counts();
    std::size_t total = 0;
    for (std::size_t l = 0; l < per.size(); ++l) total += per[l] * counts[l];
    return total;
}

inline ComplexReport check_exactness(const ComplexSpec& c, const Mesh& mesh, const std::string& mesh_name = {},
                                     const FrameOptions& opt = {})
{
    auto t0 = std::chrono::steady_clock::now();
    ComplexReport r;
    r.spec = c;
    r.mesh = mesh_name;
    AssembledComplex a = assemble_complex(c, mesh, opt);
    for (int i = 0; i < 4; ++i) {
        r.dims[i] = a.spaces[i].dim();
        r.inconsistent_shared[i] = a.spaces[i].inconsistent_shared;
        r.dim_matches_entity_count[i] = entity_count_dimension(a.spaces[i]) == r.dims[i];
    }
    std::array<Matrix, 2> composite;
    parallel_for(5, [&](std::size_t job) {
        if (job < 3)
            r.ranks[job] = rank(a.ops[job].matrix);
        else
            composite[job - 3] = multiply(a.ops[job - 2].matrix, a.ops[job - 3].matrix);
    });
    for (int i = 0; i < 3; ++i) r.mismatched_rows[i] = a.ops[i].mismatched_rows;
    r.curl_grad_zero = composite[0].is_zero();
    r.div_curl_zero = composite[1].is_zero();
    r.alternating_sum = static_cast<long>(r.dims[0]) - static_cast<long>(r.dims[1]) + static_cast<long>(r.dims[2]) -
                        static_cast<long>(r.dims[3]);
    r.ker_grad_constants = r.dims[0] - r.ranks[0] == 1;
    r.exact_curl = r.dims[1] - r.ranks[1] == r.ranks[0];
    r.exact_div = r.dims[2] - r.ranks[2] == r.ranks[1];
    r.div_onto = r.ranks[2] == r.dims[3];
    r.identity = 1 - r.alternating_sum == 0;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ---------------------------------------------------------------------------
// Commuting interpolation.
// ---------------------------------------------------------------------------

struct CommuteSample {
    int degree = 0;
    bool grad_zero = false, curl_zero = false, div_zero = false;
    std::size_t inconsistent = 0; // interpolated shared DoFs that disagree between cells
    bool ok() const { return grad_zero && curl_zero && div_zero && inconsistent == 0; }
};

struct CommuteReport {
    ComplexSpec spec;
    std::string mesh;
    unsigned seed = 0;
    std::vector<CommuteSample> samples;
    double seconds = 0;
    bool ok() const
    {
        for (const auto& s : samples)
            if (!s.ok()) return false;
        return !samples.empty();
    }
};

/// For seeded random polynomials u (scalar) and v (vector) of the given degrees checks exactly
///   grad I u = I grad u,  curl I v = I curl v,  div I v = I div v.
inline CommuteReport check_commuting(const ComplexSpec& c, const Mesh& mesh, const std::vector<int>& degrees,
                                     unsigned seed = 2024, const std::string& mesh_name = {},
                                     const FrameOptions& opt = {})
{
    auto t0 = std::chrono::steady_clock::now();
    CommuteReport rep;
    rep.spec = c;
    rep.mesh = mesh_name;
    rep.seed = seed;
    AssembledComplex a = assemble_complex(c, mesh, opt);
    std::mt19937 rng(seed);
    std::vector<std::pair<CartesianPoly, std::vector<CartesianPoly>>> inputs;
    for (int d : degrees) {
        CartesianPoly u = random_poly(3, d, rng);
        std::vector<CartesianPoly> v;
        for (int q = 0; q < 3; ++q) v.push_back(random_poly(3, d, rng));
        inputs.emplace_back(u, v);
    }
    rep.samples.resize(degrees.size());
    parallel_for(degrees.size(), [&](std::size_t s) {
        const int d = degrees[s];
        CommuteSample& out = rep.samples[s];
        out.degree = d;
        CellFunction u = cell_function(mesh, {inputs[s].first}, d);
        CellFunction v = cell_function(mesh, inputs[s].second, d);
        auto Iu = interpolate(a.spaces[0], u);
        auto Igu = interpolate(a.spaces[1], apply_op(mesh, u, DiffOp::Grad));
        auto Iv1 = interpolate(a.spaces[1], v);
        auto Icv = interpolate(a.spaces[2], apply_op(mesh, v, DiffOp::Curl));
        auto Iv2 = interpolate(a.spaces[2], v);
        auto Idv = interpolate(a.spaces[3], apply_op(mesh, v, DiffOp::Div));
        out.inconsistent = Iu.inconsistent + Igu.inconsistent + Iv1.inconsistent + Icv.inconsistent +
                           Iv2.inconsistent + Idv.inconsistent;
        out.grad_zero = multiply(a.ops[0].matrix, Iu.values) == Igu.values;
        out.curl_zero = multiply(a.ops[1].matrix, Iv1.values) == Icv.values;
        out.div_zero = multiply(a.ops[2].matrix, Iv2.values) == Idv.values;
    });
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Alternating dimension sums.
// ---------------------------------------------------------------------------

struct AlternatingSum {
    int k = 0;
    Smooth3 r2;
    std::array<std::array<std::int64_t, 4>, 4> C{};   // C[i][j]: space i, sub-simplex dimension j
    std::array<std::int64_t, 4> sums{};
    bool hypotheses = false;                          // r2_f >= 0, r2_e >= 2 r2_f + 2, r2_v >= 2 r2_e + 2, k >= 2 r2_v + 3
    bool matches() const { return sums == std::array<std::int64_t, 4>{1, -1, 1, -1}; }
};

/// C_ij = binom(3, i) C_j(k + 2 - i, r_i) for the decay chain r0 = r2 + 2, r1 = r2 + 1, r3 = r2 (-) 1.
/// `enumerate` uses lattice counts instead of the closed-form formulas.
inline AlternatingSum alternating_sum(int k, const Smooth3& r2, bool enumerate = false)
{
    AlternatingSum a;
    a.k = k;
    a.r2 = r2;
    a.hypotheses = r2.f >= 0 && r2.e >= 2 * r2.f + 2 && r2.v >= 2 * r2.e + 2 && k >= 2 * r2.v + 3;
    const std::array<Smooth3, 4> r{r2.shift(2), r2.shift(1), r2, r2.minus()};
    const std::array<int, 4> mult{1, 3, 3, 1};
    for (int i = 0; i < 4; ++i) {
        EntityCounts c = enumerate ? enumerated_counts(k + 2 - i, r[i]) : dimension_formula_scalar(k + 2 - i, r[i]);
        auto arr = c.as_array();
        for (int j = 0; j < 4; ++j) a.C[i][j] = mult[i] * arr[j];
    }
    for (int j = 0; j < 4; ++j) a.sums[j] = a.C[0][j] - a.C[1][j] + a.C[2][j] - a.C[3][j];
    return a;
}

/// 1 - dim P_{k+2} + 3 dim P_{k+1} - 3 dim P_k + dim P_{k-1} (trivariate): zero for exact polynomial complexes.
inline std::int64_t polynomial_alternating_sum(int k)
{
    return 1 - binom(k + 5, 3) + 3 * binom(k + 4, 3) - 3 * binom(k + 3, 3) + binom(k + 2, 3);
}

// ---------------------------------------------------------------------------
// Smoothness across the shared facet of two n-simplices.
// ---------------------------------------------------------------------------

struct TraceReport {
    int n = 0, m = 0;
    std::size_t dim = 0;
    std::size_t closure_dofs = 0;      // per cell, DoFs attached to the closure of the shared facet
    bool kernel_traces_vanish = false; // closure-DoF kernel has vanishing derivatives up to order m on the facet
    bool basis_traces_agree = false;   // every global basis function has matching traces from both sides
    std::size_t inconsistent_shared = 0;
    bool ok() const { return kernel_traces_vanish && basis_traces_agree && inconsistent_shared == 0; }
};

namespace detail {

/// All Cartesian partial derivatives of order <= m of p, restricted to the facet (local ids).
inline std::vector<Poly> facet_jets(const Poly& p, const Geometry& g, const SubSimplex& f, int m)
{
    std::vector<Poly> out;
    for (int o = 0; o <= m; ++o)
        for (const auto& beta : lattice(g.n - 1, o)) {
            Poly q = p;
            for (const auto& d : axis_dirs(beta)) q = derivative(q, d, g);
            out.push_back(restrict_poly(q, f));
        }
    return out;
}

inline std::vector<int> local_ids(const std::vector<int>& cell, const std::vector<int>& global)
{
    std::vector<int> out;
    for (int v : global) out.push_back(static_cast<int>(std::find(cell.begin(), cell.end(), v) - cell.begin()));
    return out;
}

} // namespace detail

/// Mesh of exactly two n-simplices sharing a facet; scalar n-dimensional element with smoothness r.
inline TraceReport check_facet_smoothness(const Mesh& mesh, int k, const std::vector<int>& r, const FrameOptions& opt)
{
    if (mesh.cells.size() != 2) throw std::invalid_argument("check_facet_smoothness: need two cells");
    TraceReport rep;
    const int n = mesh.n;
    rep.n = n;
    rep.m = r.at(n - 1);
    ElementSpec spec;
    spec.family = Family::ND;
    spec.n = n;
    spec.degree = k;
    spec.rnd = r;
    GlobalSpace s = build_space(spec, mesh, opt);
    rep.dim = s.dim();
    rep.inconsistent_shared = s.inconsistent_shared;
    std::vector<int> shared;
    std::set_intersection(mesh.cells[0].begin(), mesh.cells[0].end(), mesh.cells[1].begin(), mesh.cells[1].end(),
                          std::back_inserter(shared));
    if (static_cast<int>(shared.size()) != n) throw std::invalid_argument("check_facet_smoothness: cells do not share a facet");

    rep.kernel_traces_vanish = true;
    for (std::size_t t = 0; t < 2; ++t) {
        SubSimplex f = detail::local_ids(mesh.cells[t], shared);
        const Geometry& g = s.geometry[t];
        std::vector<Vec> rows;
        for (const auto& d : s.tables[t].dofs)
            if (std::includes(f.begin(), f.end(), d.site.begin(), d.site.end()))
                rows.push_back(dof_row(d, g, k, 1));
        rep.closure_dofs = rows.size();
        Matrix ker = nullspace(Matrix::from_rows(rows, lattice_size(n, k)));
        for (std::size_t j = 0; j < ker.cols(); ++j) {
            Poly p(n, k);
            p.c = ker.col(j);
            for (const auto& q : detail::facet_jets(p, g, f, rep.m))
                if (!q.is_zero()) rep.kernel_traces_vanish = false;
        }
    }

    rep.basis_traces_agree = true;
    std::array<SubSimplex, 2> f{detail::local_ids(mesh.cells[0], shared), detail::local_ids(mesh.cells[1], shared)};
    for (std::size_t b = 0; b < s.dim(); ++b) {
        Vec c(s.dim());
        c[b] = 1;
        std::array<std::vector<Poly>, 2> jets;
        for (std::size_t t = 0; t < 2; ++t) {
            Poly p(n, k);
            p.c = s.local_coefficients(t, c);
            jets[t] = detail::facet_jets(p, s.geometry[t], f[t], rep.m);
        }
        if (jets[0] != jets[1]) rep.basis_traces_agree = false;
    }
    return rep;
}

} // namespace fec
