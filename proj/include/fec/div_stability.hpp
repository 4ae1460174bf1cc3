#pragma once

#include "fec/assembly.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fec {

/// Explicit divergence preimage of one L^2_0 basis member lambda^alpha/alpha! - lambda^beta/beta!.
struct Witness {
    Node alpha, beta;
    std::string rule;         // which construction produced u
    FormalField u;
    bool div_exact = false;   // formal and Cartesian divergence both equal the target
    bool in_bubble = false;   // u lies in the velocity bubble space
};

struct DivStabilityVerdict {
    int k = 0;
    Smooth3 r2, r3;
    std::size_t bubble_dim = 0;
    std::size_t rank = 0;
    std::size_t target = 0;        // dim B_{k-1}(T; r3) / R
    std::size_t pressure_nodes = 0;
    bool image_in_target = false;  // div maps every bubble into span{lambda^alpha : alpha in S_3(T, r3, k-1)}
    bool mean_zero = false;        // integral of every div is zero
    bool connected = false;        // G(S_3(T, r3, k-1)) connected
    bool stable = false;
    std::vector<std::string> warnings;
    std::vector<Witness> witnesses;
    std::string witness_rule;      // empty when no construction covers (r2, r3)

    bool witnesses_valid() const
    {
        if (witness_rule.empty()) return false;
        for (const auto& w : witnesses)
            if (!w.div_exact || !w.in_bubble) return false;
        return true;
    }
};

/// Velocity bubble fields: B^3(T; r2) when r2_f >= 0, the tangential-bubble-enriched space otherwise.
inline std::vector<Field> velocity_bubbles(int k, const Smooth3& r2, const Geometry& g)
{
    return div_bubble_basis(k, r2, g).all();
}

namespace detail {

/// Reduced row echelon form of a set of vectors, for repeated span-membership queries.
struct SpanTester {
    Echelon e;
    explicit SpanTester(const std::vector<Vec>& rows, std::size_t dim)
    {
        e = eliminate(Matrix::from_rows(rows, dim), dim, true);
    }
    bool contains(Vec v) const
    {
        for (std::size_t i = 0; i < e.rank; ++i) {
            std::size_t c = e.pivot_cols[i];
            if (sgn(v[c]) == 0) continue;
            Rational f = v[c];
            for (std::size_t j = c; j < v.size(); ++j)
                if (sgn(e.rows[i][j]) != 0) v[j] -= f * e.rows[i][j];
        }
        return is_zero(v);
    }
};

/// Vertex permutation sending i -> 0, j -> 1, the others to 2, 3 in increasing order.
inline std::array<int, 4> pair_frame(int i, int j)
{
    std::array<int, 4> p{i, j, 0, 0};
    int t = 2;
    for (int x = 0; x < 4; ++x)
        if (x != i && x != j) p[t++] = x;
    return p;
}

} // namespace detail

/// Which explicit construction applies to (r2, r3); empty if none.
inline std::string preimage_rule(const Smooth3& r2, const Smooth3& r3)
{
    if (r2.e == -1 && r2.f == -1 && r3 == r2.minus()) return "edge-tangential";
    if (r2.v >= 1 && r2.e == 0 && r2.f == -1 && r3 == r2.minus()) return "away-from-edges";
    if (r2.f >= 0 && r2.e >= 2 * r2.f + 1 && r2.v >= 2 * r2.e && r3 == r2.minus()) return "distance-sorted";
    Smooth3 rp = r2.plus();
    if (r2.f == -1 && r2.e >= 1 && rp.e >= 2 * rp.f + 1 && rp.v >= 2 * rp.e && r3 == rp.minus())
        return "distance-sorted (r2+)";
    return {};
}

/// Explicit u with div u = lambda^alpha/alpha! - lambda^beta/beta! for adjacent alpha, beta
/// in S_3(T, r3, k-1). Throws for parameters outside the covered cases.
inline FormalField explicit_preimage(const Node& alpha, const Node& beta, const Smooth3& r2, const Smooth3& r3,
                                     std::string* case_name = nullptr)
{
    std::string rule = preimage_rule(r2, r3);
    if (rule.empty()) throw std::invalid_argument("explicit_preimage: unsupported smoothness pair " + r2.str() + "/" + r3.str());
    if (!adjacent(alpha, beta)) throw std::invalid_argument("explicit_preimage: nodes not adjacent");
    int i = -1, j = -1;
    for (int t = 0; t < 4; ++t) {
        if (beta[t] == alpha[t] + 1) i = t;
        if (beta[t] == alpha[t] - 1) j = t;
    }
    auto p = detail::pair_frame(i, j);
    const int a2 = alpha[p[2]], a3 = alpha[p[3]];
    auto note = [&](const std::string& s) {
        if (case_name) *case_name = s;
    };
    if (rule == "edge-tangential") {
        note("direct");
        return preimage_direct(alpha, i, j);
    }
    if (rule == "away-from-edges") {
        if (a2 == 0 && a3 == 0) {
            note("detour-3");
            return preimage_detour(alpha, i, j, p[3]);
        }
        note("direct");
        return preimage_direct(alpha, i, j);
    }
    const Smooth3 r = r2.plus();
    if (a3 == r.f) {
        note("step1-detour-3");
        return preimage_detour(alpha, i, j, p[3]);
    }
    if (a2 == r.f) {
        note("step1-detour-2");
        return preimage_detour(alpha, i, j, p[2]);
    }
    if (a2 + a3 == r.e) {
        note("step2-detour-3");
        return preimage_detour(alpha, i, j, p[3]);
    }
    note("step3-direct");
    return preimage_direct(alpha, i, j);
}

/// Rank of div on the velocity bubbles against dim B_{k-1}(T; r3)/R, with optional explicit witnesses.
inline DivStabilityVerdict bubble_div_rank(int k, const Smooth3& r2, const Smooth3& r3, const Geometry& g,
                                           bool with_witnesses = false)
{
    DivStabilityVerdict v;
    v.k = k;
    v.r2 = r2;
    v.r3 = r3;
    if (!(r2.minus() == r3)) v.warnings.push_back("r3 differs from r2 (-) 1 (exploratory run)");
    auto fields = velocity_bubbles(k, r2, g);
    v.bubble_dim = fields.size();
    auto S = bubble_nodes(k - 1, r3);
    v.pressure_nodes = S.size();
    v.target = S.size() > 1 ? S.size() - 1 : 0;
    if (S.empty()) v.warnings.push_back("dim B_{k-1}(T; r3) = 0");
    auto basis = l20_basis(S);
    v.connected = basis.connected;

    const std::size_t dimq = lattice_size(3, std::max(k - 1, 0));
    std::vector<char> in_s(dimq, 0);
    for (const auto& a : S) in_s[node_index(a)] = 1;
    Matrix d(dimq, fields.size());
    v.image_in_target = true;
    v.mean_zero = true;
    for (std::size_t c = 0; c < fields.size(); ++c) {
        Poly p = divergence(fields[c], g);
        if (sgn(integrate_normalized(p)) != 0) v.mean_zero = false;
        for (std::size_t i = 0; i < dimq; ++i) {
            d(i, c) = p.c[i];
            if (!in_s[i] && sgn(p.c[i]) != 0) v.image_in_target = false;
        }
    }
    v.rank = fields.empty() ? 0 : rank(d);
    v.stable = v.rank == v.target && v.image_in_target;

    v.witness_rule = preimage_rule(r2, r3);
    if (with_witnesses && !v.witness_rule.empty()) {
        const Smooth3 rp = r2.plus();
        std::optional<detail::SpanTester> span;
        if (r2.f < 0) {
            std::vector<Vec> rows;
            for (const auto& f : fields) rows.push_back(flatten(f));
            span.emplace(rows, 3 * lattice_size(3, k));
        }
        auto members = bubble_nodes(k, rp);
        std::sort(members.begin(), members.end());
        for (auto [pi, ci] : basis.forest.edges) {
            Witness w;
            w.alpha = S[pi];
            w.beta = S[ci];
            w.u = explicit_preimage(w.alpha, w.beta, r2, r3, &w.rule);
            Poly target = l20_member(w.alpha, w.beta);
            Field cart = to_cartesian(w.u, g, k);
            w.div_exact = formal_divergence(w.u, 3, k) == target && divergence(cart, g) == target;
            if (r2.f >= 0 || v.witness_rule == "distance-sorted (r2+)") {
                w.in_bubble = true;
                for (const auto& t : w.u)
                    if (!std::binary_search(members.begin(), members.end(), t.node)) w.in_bubble = false;
            }
            if (span && !w.in_bubble) w.in_bubble = span->contains(flatten(cart));
            v.witnesses.push_back(std::move(w));
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Table of bubble-level div stability.
// ---------------------------------------------------------------------------

struct Table1Row {
    int row = 0;
    Smooth3 r2, r3;
    bool expect_stable = true;
    int min_k = 1;
};

inline std::vector<Table1Row> table1_rows(int rv = 1)
{
    return {
        {1, {rv, -1, -1}, Smooth3{rv, -1, -1}.minus(), true, std::max(2 * rv + 1, 1)},
        {2, {1, 0, -1}, {0, -1, -1}, true, 3},
        {3, {2, 1, 0}, {1, 0, -1}, true, 5},
        {4, {2, 1, -1}, {1, 0, -1}, true, 5},
        {5, {0, 0, -1}, {-1, -1, -1}, false, 1},
    };
}

struct Table1Result {
    Table1Row row;
    bool skipped = false;   // k below the row's minimal degree
    DivStabilityVerdict verdict;
    bool pass() const { return skipped || verdict.stable == row.expect_stable; }
};

inline std::vector<Table1Result> run_table1(int k, bool with_witnesses = false, int rv = 1)
{
    auto rows = table1_rows(rv);
    std::vector<Table1Result> out(rows.size());
    Geometry g = reference_simplex(3);
    parallel_for(rows.size(), [&](std::size_t i) {
        out[i].row = rows[i];
        if (k < rows[i].min_k) {
            out[i].skipped = true;
            return;
        }
        out[i].verdict = bubble_div_rank(k, rows[i].r2, rows[i].r3, g, with_witnesses);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Global div stability.
// ---------------------------------------------------------------------------

struct GlobalDivVerdict {
    int k = 0;
    Smooth3 r2, r3;
    std::size_t velocity_dim = 0, pressure_dim = 0, rank = 0;
    std::size_t mismatched_rows = 0;
    bool stable = false;
    std::vector<std::string> warnings;
};

inline GlobalDivVerdict global_div_rank(const Mesh& mesh, int k, const Smooth3& r2, const Smooth3& r3,
                                        const FrameOptions& opt = {})
{
    GlobalDivVerdict v;
    v.k = k;
    v.r2 = r2;
    v.r3 = r3;
    if (bubble_nodes(k - 1, r3).empty()) v.warnings.push_back("dim B_{k-1}(T; r3) = 0");
    if (face_bubble_nodes(k, r2.v, r2.e).empty()) v.warnings.push_back("dim B_k(f; (r2_v, r2_e)) = 0");
    ElementSpec vel = make_spec(Family::DivPair, k, r2, r3);
    ElementSpec pre = make_spec(Family::L2, k - 1, r3);
    GlobalSpace V = build_space(vel, mesh, opt);
    GlobalSpace Q = build_space(pre, mesh, opt);
    auto D = assemble_operator(V, Q, DiffOp::Div);
    v.velocity_dim = V.dim();
    v.pressure_dim = Q.dim();
    v.mismatched_rows = D.mismatched_rows;
    v.rank = rank(D.matrix);
    v.stable = v.rank == v.pressure_dim && D.mismatched_rows == 0;
    return v;
}

} // namespace fec
