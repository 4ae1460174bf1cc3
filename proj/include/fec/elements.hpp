#pragma once

#include "fec/decomposition.hpp"
#include "fec/functional.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fec {

enum class Family { Grad, L2, Div, Curl, DivPair, CurlPair, GradMod, ND };

inline std::string family_name(Family f)
{
    switch (f) {
    case Family::Grad: return "grad";
    case Family::L2: return "l2";
    case Family::Div: return "div";
    case Family::Curl: return "curl";
    case Family::DivPair: return "div-pair";
    case Family::CurlPair: return "curl-pair";
    case Family::GradMod: return "grad-mod";
    case Family::ND: return "nd";
    }
    return "?";
}

inline std::optional<Family> parse_family(const std::string& s)
{
    for (Family f : {Family::Grad, Family::L2, Family::Div, Family::Curl, Family::DivPair, Family::CurlPair,
                     Family::GradMod, Family::ND})
        if (family_name(f) == s) return f;
    return std::nullopt;
}

/// `degree` is always the polynomial degree of the shape space.
/// Pairs: div-pair uses (r, second) = (r2, r3); curl-pair uses (r1, r2).
struct ElementSpec {
    Family family = Family::Grad;
    int degree = 1;
    Smooth3 r{0, 0, 0};
    Smooth3 second{-1, -1, -1};
    int n = 3;
    std::vector<int> rnd; // smoothness (r_0..r_n) for the n-dimensional family

    int components() const
    {
        switch (family) {
        case Family::Div:
        case Family::Curl:
        case Family::DivPair:
        case Family::CurlPair: return 3;
        default: return 1;
        }
    }
    int dim() const { return family == Family::ND ? n : 3; }
    std::size_t shape_dim() const { return components() * lattice_size(dim(), degree); }
    std::string str() const
    {
        std::string s = family_name(family) + " K=" + std::to_string(degree);
        if (family == Family::ND) return s + " n=" + std::to_string(n) + " r=" + node_str(rnd);
        s += " r=" + r.str();
        if (family == Family::DivPair || family == Family::CurlPair) s += "/" + second.str();
        return s;
    }
};

inline ElementSpec make_spec(Family f, int degree, const Smooth3& r, const Smooth3& second = uniform(-1))
{
    ElementSpec s;
    s.family = f;
    s.degree = degree;
    s.r = r;
    s.second = second;
    return s;
}

struct DofTable {
    ElementSpec spec;
    std::vector<Dof> dofs;

    std::size_t size() const { return dofs.size(); }
    std::size_t shape_dim() const { return spec.shape_dim(); }

    /// Number of DoFs attached to the first sub-simplex of each dimension.
    std::vector<std::size_t> per_entity() const
    {
        const int n = spec.dim();
        std::vector<std::size_t> c(n + 1, 0);
        for (int l = 0; l <= n; ++l) {
            SubSimplex f = subsimplices(n, l).front();
            for (const auto& d : dofs)
                if (d.site == f) ++c[l];
        }
        return c;
    }

    /// Total number of DoFs on all sub-simplices of each dimension.
    std::vector<std::size_t> per_dimension() const
    {
        std::vector<std::size_t> c(spec.dim() + 1, 0);
        for (const auto& d : dofs) ++c[d.site.size() - 1];
        return c;
    }

    std::vector<std::pair<std::string, std::size_t>> group_counts() const
    {
        std::vector<std::pair<std::string, std::size_t>> out;
        for (const auto& d : dofs) {
            auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == d.group; });
            if (it == out.end())
                out.emplace_back(d.group, 1);
            else
                ++it->second;
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Hypotheses.
// ---------------------------------------------------------------------------

inline std::vector<std::string> validate_spec(const ElementSpec& s)
{
    std::vector<std::string> v;
    auto add = [&](const std::vector<std::string>& w, const std::string& prefix) {
        for (const auto& x : w) v.push_back(prefix + x);
    };
    const int K = s.degree;
    switch (s.family) {
    case Family::Grad:
    case Family::L2: add(validate_smoothness3(s.r, K), ""); break;
    case Family::Div: {
        add(chain_violations(s.r), "");
        if (s.r.f >= 0)
            add(validate_smoothness3(s.r, K), "");
        else if (K < 2 * std::max(s.r.v, 0) + 1)
            v.push_back("k >= 2 max(r_v,0) + 1");
        break;
    }
    case Family::DivPair: {
        add(chain_violations(s.r), "r2: ");
        add(chain_violations(s.second), "r3: ");
        if (!(s.r.minus() <= s.second)) v.push_back("r3 >= r2 (-) 1");
        if (K < std::max({2 * s.r.v + 1, 2 * s.second.v + 2, 1})) v.push_back("k >= max(2 r2_v + 1, 2 r3_v + 2, 1)");
        break;
    }
    case Family::Curl:
    case Family::CurlPair: {
        Smooth3 r2 = s.family == Family::Curl ? s.r.minus() : s.second;
        add(chain_violations(s.r), "r1: ");
        add(chain_violations(r2), "r2: ");
        if (!(s.r.minus() <= r2)) v.push_back("r2 >= r1 (-) 1");
        const int k = K - 1;
        if (k < std::max({2 * s.r.v + 1, 2 * r2.v + 1, 1})) v.push_back("k >= max(2 r1_v + 1, 2 r2_v + 1, 1) with degree k+1");
        break;
    }
    case Family::GradMod: {
        add(chain_violations(s.r), "");
        if (s.r.f < 0) v.push_back("r0 >= 0");
        const int k = K - 2;
        if (k < std::max(2 * s.r.v - 1, 1)) v.push_back("k >= max(2 r0_v - 1, 1) with degree k+2");
        break;
    }
    case Family::ND: {
        if (static_cast<int>(s.rnd.size()) != s.n + 1)
            v.push_back("need n+1 smoothness entries");
        else
            add(validate_smoothness_nd(s.rnd, K), "");
        break;
    }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Building blocks shared by the families.
// ---------------------------------------------------------------------------

namespace detail {

inline const SubSimplex& whole3()
{
    static const SubSimplex t{0, 1, 2, 3};
    return t;
}

inline Poly one_on(int l)
{
    Poly p(l, 0);
    p.c[0] = 1;
    return p;
}

inline std::vector<Quantity> component_quantities(int m)
{
    if (m == 1) return {q_scalar()};
    std::vector<Quantity> qs;
    for (int c = 0; c < m; ++c) qs.push_back(q_component(unit_vector(m, c)));
    return qs;
}

inline Dof merged(std::string group, const SubSimplex& site, std::vector<Dof> parts, std::string label)
{
    Dof d;
    d.group = std::move(group);
    d.site = site;
    d.label = std::move(label);
    for (auto& p : parts)
        for (auto& a : p.atoms) d.atoms.push_back(std::move(a));
    return d;
}

/// D^beta applied to each quantity at each vertex, |beta| = j for j in [jlo, jhi].
inline void vertex_block(std::vector<Dof>& out, const std::string& group, const std::vector<Quantity>& qs, int jlo,
                         int jhi, int n = 3)
{
    for (int v = 0; v <= n; ++v)
        for (int j = std::max(jlo, 0); j <= jhi; ++j)
            for (const auto& beta : lattice(n - 1, j))
                for (std::size_t c = 0; c < qs.size(); ++c)
                    out.push_back(make_dof(group, qs[c], axis_dirs(beta), {v}, one_on(0),
                                           "D" + node_str(beta) + " q" + std::to_string(c)));
}

/// Moment of v . b over T for each field b (used for interior vector moments).
inline Dof field_moment(const std::string& group, const Field& b, const std::function<Quantity(const Vec&)>& qty,
                        const std::string& label)
{
    std::vector<Dof> parts;
    for (int c = 0; c < 3; ++c)
        if (!b[c].is_zero()) parts.push_back(make_dof(group, qty(unit_vector(3, c)), {}, whole3(), b[c]));
    return merged(group, whole3(), std::move(parts), label);
}

/// Basis of B^div_k(T; r) (r_f = -1) or B^3_k(T; r) (r_f >= 0) intersected with ker div.
inline std::vector<Field> div_free_bubbles(int k, const Smooth3& r, const Geometry& g)
{
    std::vector<Field> fields = div_bubble_basis(k, r, g).all();
    if (fields.empty() || k < 1) return fields;
    std::vector<Vec> cols;
    for (const auto& u : fields) cols.push_back(divergence(u, g).c);
    Matrix d = Matrix::from_cols(cols, lattice_size(3, k - 1));
    Matrix ns = nullspace(d);
    std::vector<Field> out;
    for (std::size_t j = 0; j < ns.cols(); ++j) {
        Field u = zero_field(3, k);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (sgn(ns(i, j)) == 0) continue;
            for (int c = 0; c < 3; ++c) u[c] += ns(i, j) * fields[i][c];
        }
        out.push_back(std::move(u));
    }
    return out;
}

/// Tests for P_0 (+) B/R on a face: the constant plus mean-free bubble differences; empty if B is empty.
inline std::vector<Poly> constant_plus_quotient(const std::vector<Node>& bubble)
{
    std::vector<Poly> out;
    if (bubble.empty()) return out;
    out.push_back(one_on(2));
    for (auto& p : quotient_tests(bubble)) out.push_back(std::move(p));
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Families.
// ---------------------------------------------------------------------------

/// C^r scalar element (or vector copies of it when `components` = 3).
inline std::vector<Dof> scalar_family(int k, const Smooth3& r, const Geometry& g, const FrameOptions& opt,
                                      int components = 1)
{
    using namespace detail;
    auto qs = component_quantities(components);
    std::vector<Dof> out;
    vertex_block(out, "V", qs, 0, r.v);
    for (const auto& e : subsimplices(3, 1)) {
        EdgeFrame fr = edge_frame(g, e, opt);
        for (int j = 0; j <= r.e; ++j)
            for (int i = 0; i <= j; ++i)
                for (const auto& t : bernstein_tests(1, k - 2 * (r.v + 1) + j))
                    for (const auto& q : qs) out.push_back(make_dof("E", q, mixed_dirs(fr.n1, fr.n2, i, j), e, t));
    }
    for (const auto& f : subsimplices(3, 2)) {
        FaceFrame fr = face_frame(g, f, opt);
        for (int j = 0; j <= r.f; ++j)
            for (const auto& t : monomial_tests(face_bubble_nodes(k - j, r.v - j, r.e - j)))
                for (const auto& q : qs) out.push_back(make_dof("F", q, std::vector<Vec>(j, fr.n), f, t));
    }
    for (const auto& t : monomial_tests(bubble_nodes(k, r)))
        for (const auto& q : qs) out.push_back(make_dof("T", q, {}, whole3(), t));
    return out;
}

/// H(div) element with r_f = -1; r_f >= 0 is routed to three copies of the scalar element.
inline std::vector<Dof> hdiv_family(int k, const Smooth3& r, const Geometry& g, const FrameOptions& opt)
{
    using namespace detail;
    if (r.f >= 0) return scalar_family(k, r, g, opt, 3);
    auto qs = component_quantities(3);
    std::vector<Dof> out;
    vertex_block(out, "V", qs, 0, r.v);
    for (const auto& e : subsimplices(3, 1)) {
        EdgeFrame fr = edge_frame(g, e, opt);
        for (int j = 0; j <= r.e; ++j)
            for (int i = 0; i <= j; ++i)
                for (const auto& t : bernstein_tests(1, k - 2 * (r.v + 1) + j))
                    for (const auto& q : qs) out.push_back(make_dof("E", q, mixed_dirs(fr.n1, fr.n2, i, j), e, t));
    }
    for (const auto& f : subsimplices(3, 2)) {
        FaceFrame fr = face_frame(g, f, opt);
        for (const auto& t : monomial_tests(face_bubble_nodes(k, r.v, r.e)))
            out.push_back(make_dof("F", q_component(fr.n), {}, f, t));
    }
    auto basis = div_bubble_basis(k, r, g).all();
    for (std::size_t i = 0; i < basis.size(); ++i)
        out.push_back(field_moment("T", basis[i], q_component, "b" + std::to_string(i)));
    return out;
}

/// H(div) element whose divergence lies in the r3-smooth scalar space.
inline std::vector<Dof> hdiv_pair_family(int k, const Smooth3& r2, const Smooth3& r3, const Geometry& g,
                                         const FrameOptions& opt)
{
    using namespace detail;
    auto qs = component_quantities(3);
    std::vector<Quantity> dq = {q_div(3)};
    std::vector<Dof> out;
    vertex_block(out, "V1", qs, 0, r2.v);
    vertex_block(out, "V2", dq, std::max(r2.v, 0), r3.v);
    for (const auto& e : subsimplices(3, 1)) {
        EdgeFrame fr = edge_frame(g, e, opt);
        auto tests = [&](int j) { return bernstein_tests(1, k - 2 * (r2.v + 1) + j); };
        for (int j = 0; j <= r2.e; ++j)
            for (const auto& t : tests(j))
                out.push_back(make_dof("E1", q_component(fr.n2), std::vector<Vec>(j, fr.n1), e, t));
        for (int j = 0; j <= r2.e; ++j)
            for (int i = 0; i <= j; ++i)
                for (const auto& t : tests(j))
                    out.push_back(make_dof("E2", q_component(fr.t), mixed_dirs(fr.n1, fr.n2, i, j), e, t));
        for (int j = 0; j <= r2.e; ++j)
            for (int i = 0; i <= j; ++i)
                for (const auto& t : tests(j))
                    out.push_back(make_dof("E3", q_component(fr.n1), mixed_dirs(fr.n1, fr.n2, i, j), e, t));
        for (int j = 0; j <= r3.e; ++j)
            for (int i = 0; i <= j; ++i)
                for (const auto& t : bernstein_tests(1, k - 1 - 2 * (r3.v + 1) + j))
                    out.push_back(make_dof("E4", q_div(3), mixed_dirs(fr.n1, fr.n2, i, j), e, t));
    }
    for (const auto& f : subsimplices(3, 2)) {
        FaceFrame fr = face_frame(g, f, opt);
        for (const auto& t : constant_plus_quotient(face_bubble_nodes(k, r2.v, r2.e)))
            out.push_back(make_dof("F1", q_component(fr.n), {}, f, t));
        for (int j = 0; j <= r2.f; ++j)
            for (const auto& tl : {fr.t1, fr.t2})
                for (const auto& t : monomial_tests(face_bubble_nodes(k - j, r2.v - j, r2.e - j)))
                    out.push_back(make_dof("F2", q_component(tl), std::vector<Vec>(j, fr.n), f, t));
        for (int j = 0; j <= r3.f; ++j)
            for (const auto& t : monomial_tests(face_bubble_nodes(k - 1 - j, r3.v - j, r3.e - j)))
                out.push_back(make_dof("F3", q_div(3), std::vector<Vec>(j, fr.n), f, t));
    }
    for (const auto& t : quotient_tests(bubble_nodes(k - 1, r3))) out.push_back(make_dof("T1", q_div(3), {}, whole3(), t));
    auto kernel = div_free_bubbles(k, r2, g);
    for (std::size_t i = 0; i < kernel.size(); ++i)
        out.push_back(field_moment("T2", kernel[i], q_component, "z" + std::to_string(i)));
    return out;
}

/// H(curl) element of degree k+1 whose curl lies in the (r2, r2 (-) 1) H(div) space.
inline std::vector<Dof> hcurl_pair_family(int k, const Smooth3& r1, const Smooth3& r2, const Geometry& g,
                                          const FrameOptions& opt)
{
    using namespace detail;
    auto qs = component_quantities(3);
    std::vector<Dof> out;
    vertex_block(out, "V1", qs, 0, r1.v);
    // grad curl v is trace-free: drop d_z of the third curl component.
    for (int v = 0; v <= 3; ++v)
        for (int j = std::max(r1.v, 0); j <= r2.v; ++j)
            for (const auto& beta : lattice(2, j))
                for (int c = 0; c < 3; ++c) {
                    if (c == 2 && beta[2] > 0) continue;
                    out.push_back(make_dof("V2", q_curl_dot(unit_vector(3, c)), axis_dirs(beta), {v}, one_on(0),
                                           "D" + node_str(beta) + " curl" + std::to_string(c)));
                }
    for (const auto& e : subsimplices(3, 1)) {
        EdgeFrame fr = edge_frame(g, e, opt);
        for (const auto& t : bernstein_tests(1, k - 1 - 2 * r1.v)) out.push_back(make_dof("E1", q_component(fr.t), {}, e, t));
        for (int j = 0; j <= r1.e; ++j)
            for (int i = 0; i <= j; ++i)
                for (const auto& t : bernstein_tests(1, k - 1 - 2 * r1.v + j))
                    out.push_back(make_dof("E2", q_component(fr.n1), mixed_dirs(fr.n1, fr.n2, i, j), e, t));
        for (int j = 0; j <= r1.e; ++j)
            for (const auto& t : bernstein_tests(1, k - 1 - 2 * r1.v + j))
                out.push_back(make_dof("E3", q_component(fr.n2), std::vector<Vec>(j, fr.n2), e, t));
        auto ctests = [&](int j) { return bernstein_tests(1, k - 2 * (r2.v + 1) + j); };
        for (int j = 0; j <= r2.e; ++j)
            for (const auto& t : ctests(j))
                out.push_back(make_dof("E4", q_curl_dot(fr.n2), std::vector<Vec>(j, fr.n1), e, t));
        for (int j = 0; j <= r2.e; ++j)
            for (int i = 0; i <= j; ++i)
                for (const auto& t : ctests(j))
                    out.push_back(make_dof("E5", q_curl_dot(fr.t), mixed_dirs(fr.n1, fr.n2, i, j), e, t));
        for (int j = 0; j <= r2.e; ++j)
            for (int i = 0; i <= j; ++i)
                for (const auto& t : ctests(j))
                    out.push_back(make_dof("E6", q_curl_dot(fr.n1), mixed_dirs(fr.n1, fr.n2, i, j), e, t));
    }
    for (const auto& f : subsimplices(3, 2)) {
        FaceFrame fr = face_frame(g, f, opt);
        std::vector<Vec> tg;
        for (int i : f) tg.push_back(tangential_part(g.grad_lambda[i], fr.n));
        for (const auto& beta : face_bubble_nodes(k + 2, r1.v + 1, r1.e + 1)) {
            std::vector<Dof> parts;
            for (int i = 0; i < 3; ++i) {
                if (beta[i] == 0) continue;
                Node b = beta;
                --b[i];
                parts.push_back(make_dof("F1", q_component(tg[i]), {}, f, Poly::monomial(b, beta[i])));
            }
            out.push_back(merged("F1", f, std::move(parts), "grad_f " + node_str(beta)));
        }
        for (int j = 0; j <= r1.f; ++j)
            for (const auto& t : monomial_tests(face_bubble_nodes(k + 1 - j, r1.v - j, r1.e - j)))
                out.push_back(make_dof("F2", q_component(fr.n), std::vector<Vec>(j, fr.n), f, t));
        for (const auto& t : quotient_tests(face_bubble_nodes(k, r2.v, r2.e)))
            out.push_back(make_dof("F3", q_curl_dot(fr.n), {}, f, t));
        for (int j = 0; j <= r2.f; ++j)
            for (const auto& tl : {fr.t1, fr.t2})
                for (const auto& t : monomial_tests(face_bubble_nodes(k - j, r2.v - j, r2.e - j)))
                    out.push_back(make_dof("F4", q_curl_dot(tl), std::vector<Vec>(j, fr.n), f, t));
    }
    auto kernel = div_free_bubbles(k, r2, g);
    for (std::size_t i = 0; i < kernel.size(); ++i)
        out.push_back(field_moment("T1", kernel[i], q_curl_dot, "z" + std::to_string(i)));
    for (const auto& beta : bubble_nodes(k + 2, r1.shift(1))) {
        std::vector<Dof> parts;
        for (int i = 0; i <= 3; ++i) {
            if (beta[i] == 0) continue;
            Node b = beta;
            --b[i];
            parts.push_back(make_dof("T2", q_component(g.grad_lambda[i]), {}, whole3(), Poly::monomial(b, beta[i])));
        }
        out.push_back(merged("T2", whole3(), std::move(parts), "grad " + node_str(beta)));
    }
    return out;
}

/// Scalar element of degree k+2 whose DoFs are arranged to commute with the H(curl) element.
inline std::vector<Dof> grad_modified_family(int k, const Smooth3& r0, const Geometry& g, const FrameOptions& opt)
{
    using namespace detail;
    std::vector<Dof> out;
    vertex_block(out, "V1", {q_scalar()}, 0, r0.v);
    for (const auto& e : subsimplices(3, 1)) {
        EdgeFrame fr = edge_frame(g, e, opt);
        const int m = k - 2 * r0.v + 1;
        if (m >= 0)
            for (const auto& t : quotient_tests(lattice(1, m))) out.push_back(make_dof("E1", q_directional(fr.t), {}, e, t));
        for (int j = 1; j <= r0.e; ++j)
            for (int i = 0; i <= j; ++i)
                for (const auto& t : bernstein_tests(1, k - 2 * r0.v + j))
                    out.push_back(make_dof("E2", q_scalar(), mixed_dirs(fr.n1, fr.n2, i, j), e, t));
    }
    for (const auto& f : subsimplices(3, 2)) {
        FaceFrame fr = face_frame(g, f, opt);
        std::vector<Vec> tg;
        for (int i : f) tg.push_back(tangential_part(g.grad_lambda[i], fr.n));
        for (const auto& beta : face_bubble_nodes(k + 2, r0.v, r0.e)) {
            std::vector<Dof> parts;
            for (int i = 0; i < 3; ++i) {
                if (beta[i] == 0) continue;
                Node b = beta;
                --b[i];
                parts.push_back(make_dof("F1", q_directional(tg[i]), {}, f, Poly::monomial(b, beta[i])));
            }
            out.push_back(merged("F1", f, std::move(parts), "grad_f " + node_str(beta)));
        }
        for (int j = 1; j <= r0.f; ++j)
            for (const auto& t : monomial_tests(face_bubble_nodes(k + 2 - j, r0.v - j, r0.e - j)))
                out.push_back(make_dof("F2", q_scalar(), std::vector<Vec>(j, fr.n), f, t));
    }
    for (const auto& beta : bubble_nodes(k + 2, r0)) {
        std::vector<Dof> parts;
        for (int i = 0; i <= 3; ++i) {
            if (beta[i] == 0) continue;
            Node b = beta;
            --b[i];
            parts.push_back(make_dof("T1", q_directional(g.grad_lambda[i]), {}, whole3(), Poly::monomial(b, beta[i])));
        }
        out.push_back(merged("T1", whole3(), std::move(parts), "grad " + node_str(beta)));
    }
    return out;
}

/// C^{r_{n-1}} scalar element on an n-simplex: one functional per lattice node of each piece.
inline std::vector<Dof> nd_scalar_family(int n, int k, const std::vector<int>& r, const Geometry& g,
                                         const FrameOptions& opt)
{
    using namespace detail;
    if (g.n != n) throw std::invalid_argument("nd_scalar_family: geometry dimension mismatch");
    auto d = decompose_nd(n, k, r);
    std::vector<Dof> out;
    vertex_block(out, "V", {q_scalar()}, 0, r[0], n);
    for (const auto& piece : d.pieces) {
        if (piece.dim == 0) continue;
        const SubSimplex& f = piece.simplex;
        if (piece.dim == n) {
            for (const auto& a : piece.nodes)
                out.push_back(make_dof("T", q_scalar(), {}, f, Poly::monomial(a), node_str(a)));
            continue;
        }
        auto frame = opt.nd_global_frames ? intrinsic_normal_frame(g, f) : dual_transversal_frame(g, f);
        SubSimplex fs = complement(f, n);
        for (const auto& a : piece.nodes) {
            std::vector<Vec> dirs;
            for (std::size_t i = 0; i < fs.size(); ++i)
                for (int t = 0; t < a[fs[i]]; ++t) dirs.push_back(frame[i]);
            out.push_back(make_dof(std::string(1, "VEFT"[std::min(piece.dim, 3)]) + std::to_string(piece.dim), q_scalar(),
                                   dirs, f, Poly::monomial(restrict_node(a, f)), node_str(a)));
        }
    }
    // keep the table grouped by sub-simplex dimension
    std::stable_sort(out.begin(), out.end(), [](const Dof& a, const Dof& b) { return a.site.size() < b.site.size(); });
    return out;
}

inline DofTable build_table(const ElementSpec& s, const Geometry& g, const FrameOptions& opt = {})
{
    auto v = validate_spec(s);
    if (!v.empty()) throw std::invalid_argument("invalid element " + s.str() + ": " + v.front());
    if (g.n != s.dim()) throw std::invalid_argument("build_table: geometry dimension mismatch");
    DofTable t;
    t.spec = s;
    switch (s.family) {
    case Family::Grad:
    case Family::L2: t.dofs = scalar_family(s.degree, s.r, g, opt); break;
    case Family::Div: t.dofs = hdiv_family(s.degree, s.r, g, opt); break;
    case Family::DivPair: t.dofs = hdiv_pair_family(s.degree, s.r, s.second, g, opt); break;
    case Family::Curl: t.dofs = hcurl_pair_family(s.degree - 1, s.r, s.r.minus(), g, opt); break;
    case Family::CurlPair: t.dofs = hcurl_pair_family(s.degree - 1, s.r, s.second, g, opt); break;
    case Family::GradMod: t.dofs = grad_modified_family(s.degree - 2, s.r, g, opt); break;
    case Family::ND: t.dofs = nd_scalar_family(s.n, s.degree, s.rnd, g, opt); break;
    }
    return t;
}

/// Rows are DoFs, columns the component-major Bernstein basis of the shape space.
inline Matrix assemble_dof_matrix(const DofTable& t, const Geometry& g)
{
    const int K = t.spec.degree, m = t.spec.components();
    Matrix a(t.size(), t.shape_dim());
    for (std::size_t i = 0; i < t.size(); ++i) a.set_row(i, dof_row(t.dofs[i], g, K, m));
    return a;
}

struct UnisolvenceReport {
    std::size_t dofs = 0, shape_dim = 0, rank = 0;
    bool square = false;
    bool unisolvent = false;
    Rational determinant = 0;
    double seconds = 0;
};

inline UnisolvenceReport verify_unisolvence(const DofTable& t, const Geometry& g)
{
    auto t0 = std::chrono::steady_clock::now();
    UnisolvenceReport r;
    r.dofs = t.size();
    r.shape_dim = t.shape_dim();
    r.square = r.dofs == r.shape_dim;
    Matrix a = assemble_dof_matrix(t, g);
    if (r.square) {
        Echelon e = eliminate(a, a.cols(), false);
        r.rank = e.rank;
        r.determinant = e.rank == a.rows() ? e.pivot_product : Rational(0);
        r.unisolvent = sgn(r.determinant) != 0;
    } else {
        r.rank = rank(a);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ---------------------------------------------------------------------------
// Closed-form dimension counts.
// ---------------------------------------------------------------------------

struct EntityCounts {
    std::int64_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
    std::array<std::int64_t, 4> as_array() const { return {c0, c1, c2, c3}; }
    friend bool operator==(const EntityCounts& a, const EntityCounts& b) { return a.as_array() == b.as_array(); }
};

/// Per-entity dimension counts of the C^r scalar element (r_f >= 0).
inline EntityCounts dimension_formula_scalar(int k, const Smooth3& r)
{
    const std::int64_t rv = r.v, re = r.e, rf = r.f;
    EntityCounts c;
    c.c0 = binom(rv + 3, 3);
    c.c1 = (k + re - 2 * rv - 1) * binom(re + 2, 2) - binom(re + 2, 3);
    c.c2 = binom(k + 3, 3) - 3 * binom(rv + 3, 3) - 3 * binom(k - 2 * rv - 1, 3) - binom(k + 2 - rf, 3) +
           3 * binom(rv + 2 - rf, 3) - 3 * (rf + 1) * binom(k - 2 * rv + re, 2) + 3 * binom(k - 2 * rv + rf, 3);
    c.c3 = binom(k + 3, 3) - 4 * c.c0 - 6 * c.c1 - 4 * c.c2;
    return c;
}

/// Per-entity counts of the H(div) element with r_f = -1, redistributing the tangential bubbles.
inline EntityCounts hdiv_dimension(int k, const Smooth3& r)
{
    Smooth3 rp = r.plus();
    EntityCounts s = dimension_formula_scalar(k, rp);
    const std::int64_t I = r.e == -1 ? (k - 2 * rp.v - 1) : 0;
    const std::int64_t vneg = r.v == -1 ? 1 : 0;
    EntityCounts c;
    c.c0 = 3 * s.c0 - 3 * vneg;
    c.c1 = 3 * s.c1 - 3 * I;
    c.c2 = s.c2 + 3 * I + 3 * vneg;
    c.c3 = 3 * s.c3 + 8 * s.c2 + 6 * I;
    return c;
}

/// Enumerated per-entity sizes |S_0(v)|, |S_1(e)|, |S_2(f)|, |S_3(T)|.
inline EntityCounts enumerated_counts(int k, const Smooth3& r)
{
    auto d = decompose_setdiff(3, k, {r.v, r.e, r.f});
    EntityCounts c;
    std::array<std::int64_t, 4> a{};
    std::array<bool, 4> seen{};
    for (const auto& p : d.pieces)
        if (!seen[p.dim]) {
            seen[p.dim] = true;
            a[p.dim] = static_cast<std::int64_t>(p.nodes.size());
        }
    c.c0 = a[0];
    c.c1 = a[1];
    c.c2 = a[2];
    c.c3 = a[3];
    return c;
}

} // namespace fec
