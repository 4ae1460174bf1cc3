// Command-line front end for the fec library.

#include "fec/fec.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace fec;

namespace {

struct RunConfig {
    std::string command;
    int n = 3;
    int k = -1;
    std::string family = "grad";
    std::string r, r0, r1, r2, r3;
    std::string mesh = "tet1";
    std::string suite;
    std::string output;
    std::string svg;
    bool witnesses = false;
    bool table1 = false;
    bool csv = false;
    bool axis_normals = false;
    bool local_frames = false;
    int samples = 5;
    unsigned seed = 2024;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_ints(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoi(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: '" + s + "'");
        }
    }
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

/// "a" expands to (a,a,a); "v,e,f" is taken verbatim.
Smooth3 parse_smooth(const std::string& s)
{
    auto v = parse_ints(s);
    if (v.size() == 1) return uniform(v[0]);
    if (v.size() == 3) return {v[0], v[1], v[2]};
    throw UsageError("smoothness needs 1 or 3 entries: '" + s + "'");
}

json smooth_json(const Smooth3& r) { return json::array({r.v, r.e, r.f}); }

json warnings_json(const std::vector<std::string>& w)
{
    json a = json::array();
    for (const auto& s : w) a.push_back(s);
    return a;
}

FrameOptions frame_options(const RunConfig& c)
{
    FrameOptions o;
    o.axis_edge_normals = c.axis_normals;
    o.nd_global_frames = !c.local_frames;
    return o;
}

ElementSpec element_spec(const RunConfig& c)
{
    auto fam = parse_family(c.family);
    if (!fam) throw UsageError("unknown family '" + c.family + "'");
    if (c.k < 0) throw UsageError("--k is required");
    ElementSpec s;
    s.family = *fam;
    s.degree = c.k;
    if (s.family == Family::ND) {
        s.n = c.n;
        s.rnd = parse_ints(c.r.empty() ? "0" : c.r);
        if (s.rnd.size() == 1) s.rnd.assign(c.n + 1, s.rnd[0]);
        return s;
    }
    s.r = parse_smooth(c.r.empty() ? "0" : c.r);
    if (s.family == Family::DivPair)
        s.second = !c.r3.empty() ? parse_smooth(c.r3) : !c.r2.empty() ? parse_smooth(c.r2) : s.r.minus();
    if (s.family == Family::CurlPair) s.second = c.r2.empty() ? s.r.minus() : parse_smooth(c.r2);
    return s;
}

Geometry element_geometry(const ElementSpec& s) { return reference_simplex(s.dim()); }

ComplexSpec complex_spec(const RunConfig& c)
{
    if (!c.suite.empty()) {
        auto s = named_complex(c.suite);
        if (!s) throw UsageError("unknown suite '" + c.suite + "' (hermite, argyris, stokes)");
        if (c.k >= 0) s->k = c.k;
        return *s;
    }
    if (c.k < 0 || c.r0.empty()) throw UsageError("need --suite or --k with --r0");
    ComplexSpec s;
    s.name = "custom";
    s.k = c.k;
    s.r0 = parse_smooth(c.r0);
    s.r1 = c.r1.empty() ? s.r0.minus() : parse_smooth(c.r1);
    s.r2 = c.r2.empty() ? s.r1.minus() : parse_smooth(c.r2);
    s.r3 = c.r3.empty() ? s.r2.minus() : parse_smooth(c.r3);
    return s;
}

json complex_inputs(const ComplexSpec& s, const std::string& mesh)
{
    return {{"name", s.name}, {"k", s.k}, {"r0", smooth_json(s.r0)}, {"r1", smooth_json(s.r1)},
            {"r2", smooth_json(s.r2)}, {"r3", smooth_json(s.r3)}, {"mesh", mesh}};
}

json verdict_json(const DivStabilityVerdict& v, bool witnesses)
{
    json j = {{"k", v.k},
              {"r2", smooth_json(v.r2)},
              {"r3", smooth_json(v.r3)},
              {"bubble_dim", v.bubble_dim},
              {"rank", v.rank},
              {"target_dim", v.target},
              {"image_in_target", v.image_in_target},
              {"mean_zero", v.mean_zero},
              {"connected", v.connected},
              {"verdict", v.stable ? "stable" : "unstable"},
              {"warnings", warnings_json(v.warnings)}};
    if (witnesses) {
        j["witness_rule"] = v.witness_rule;
        j["witnesses_valid"] = v.witnesses_valid();
        json arr = json::array();
        for (const auto& w : v.witnesses) {
            json terms = json::array();
            for (const auto& t : w.u)
                terms.push_back({{"coef", to_string(t.coef)}, {"node", t.node}, {"dir", json::array({t.i, t.j})}});
            arr.push_back({{"alpha", w.alpha}, {"beta", w.beta}, {"case", w.rule}, {"div_exact", w.div_exact},
                           {"in_bubble", w.in_bubble}, {"terms", terms}});
        }
        j["witnesses"] = arr;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Commands. Each returns true when every asserted property holds.
// ---------------------------------------------------------------------------

void write_svg(const LatticeDecomposition& d, const std::string& path)
{
    // Slice alpha_n = 0 of the lattice, coloured by the dimension of the owning piece.
    const int k = d.k;
    const double s = 40, pad = 30;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (k * s + 2 * pad) << "\" height=\""
      << (k * s * 0.866 + 2 * pad) << "\">\n";
    const char* colours[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};
    for (const auto& p : d.pieces)
        for (const auto& a : p.nodes) {
            if (a[d.n] != 0 && d.n > 1) continue;
            double x = pad + s * (a[1] + 0.5 * (d.n >= 2 ? a[2] : 0));
            double y = pad + s * 0.866 * (k - (d.n >= 2 ? a[2] : 0));
            f << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"6\" fill=\"" << colours[std::min(p.dim, 4)]
              << "\"><title>" << node_str(a) << "</title></circle>\n";
        }
    f << "</svg>\n";
}

bool cmd_lattice_decompose(const RunConfig& c, json& out)
{
    if (c.k < 0) throw UsageError("--k is required");
    std::vector<int> r = parse_ints(c.r.empty() ? "0" : c.r);
    if (r.size() == 1) r.assign(c.n, r[0]);
    if (static_cast<int>(r.size()) == c.n + 1) r.pop_back();
    if (static_cast<int>(r.size()) != c.n) throw UsageError("--r needs n entries (vertex, edge, ...)");
    auto d = decompose_setdiff(c.n, c.k, r);
    out["inputs"] = {{"n", c.n}, {"k", c.k}, {"r", r}};
    json pieces = json::array();
    for (const auto& p : d.pieces) pieces.push_back({{"dim", p.dim}, {"simplex", p.simplex}, {"size", p.nodes.size()}, {"nodes", p.nodes}});
    out["pieces"] = pieces;
    out["total"] = d.total();
    out["lattice_size"] = lattice_size(c.n, c.k);
    bool ok = is_partition(d);
    out["partition"] = ok;
    if (!c.svg.empty()) {
        write_svg(d, c.svg);
        out["svg"] = c.svg;
    }
    return ok;
}

bool cmd_element_dofs(const RunConfig& c, json& out)
{
    ElementSpec s = element_spec(c);
    Geometry g = element_geometry(s);
    DofTable t = build_table(s, g, frame_options(c));
    out["inputs"] = {{"element", s.str()}};
    json rows = json::array();
    for (const auto& d : t.dofs) rows.push_back({{"group", d.group}, {"site", d.site}, {"label", d.label}});
    out["dofs"] = rows;
    json groups = json::object();
    for (const auto& [gname, n] : t.group_counts()) groups[gname] = n;
    out["groups"] = groups;
    out["count"] = t.size();
    out["shape_dim"] = t.shape_dim();
    return t.size() == t.shape_dim();
}

bool cmd_element_dim(const RunConfig& c, json& out)
{
    ElementSpec s = element_spec(c);
    out["inputs"] = {{"element", s.str()}};
    std::vector<std::int64_t> per;
    std::string source;
    bool ok = true;
    if (s.family == Family::Grad || s.family == Family::L2) {
        auto f = dimension_formula_scalar(s.degree, s.r).as_array();
        auto e = enumerated_counts(s.degree, s.r).as_array();
        per.assign(f.begin(), f.end());
        out["enumerated"] = e;
        ok = s.r.f < 0 || f == e;
        source = s.r.f >= 0 ? "formula" : "enumerated";
        if (s.r.f < 0) per.assign(e.begin(), e.end());
    } else if (s.family == Family::Div) {
        auto f = hdiv_dimension(s.degree, s.r).as_array();
        per.assign(f.begin(), f.end());
        source = "formula";
    } else {
        Geometry g = element_geometry(s);
        auto t = build_table(s, g, frame_options(c));
        for (auto x : t.per_entity()) per.push_back(static_cast<std::int64_t>(x));
        source = "dof-table";
    }
    std::int64_t total = 0;
    const int n = s.dim();
    for (int l = 0; l <= n; ++l) total += per[l] * binom(n + 1, l + 1);
    out["per_entity"] = per;
    out["source"] = source;
    out["total"] = total;
    out["shape_dim"] = s.shape_dim();
    if (c.csv) {
        std::cout << "entity_dim,per_entity\n";
        for (std::size_t l = 0; l < per.size(); ++l) std::cout << l << "," << per[l] << "\n";
    }
    return ok && total == static_cast<std::int64_t>(s.shape_dim());
}

bool cmd_unisolvence(const RunConfig& c, json& out)
{
    ElementSpec s = element_spec(c);
    Geometry g = element_geometry(s);
    auto v = validate_spec(s);
    out["inputs"] = {{"element", s.str()}};
    if (!v.empty()) {
        out["hypotheses"] = warnings_json(v);
        return false;
    }
    DofTable t = build_table(s, g, frame_options(c));
    auto r = verify_unisolvence(t, g);
    out["dofs"] = r.dofs;
    out["shape_dim"] = r.shape_dim;
    out["rank"] = r.rank;
    out["determinant"] = to_string(r.determinant);
    out["unisolvent"] = r.unisolvent;
    return r.unisolvent;
}

bool cmd_div_stability(const RunConfig& c, json& out)
{
    if (c.table1) {
        if (c.k < 0) throw UsageError("--k is required");
        auto rows = run_table1(c.k, c.witnesses);
        out["inputs"] = {{"k", c.k}, {"table1", true}};
        json arr = json::array();
        bool ok = true;
        for (const auto& r : rows) {
            json j = {{"row", r.row.row},
                      {"r2", smooth_json(r.row.r2)},
                      {"r3", smooth_json(r.row.r3)},
                      {"expected", r.row.expect_stable ? "stable" : "unstable"}};
            if (r.skipped)
                j["verdict"] = "skipped";
            else
                j.update(verdict_json(r.verdict, c.witnesses));
            j["pass"] = r.pass() && (!c.witnesses || r.skipped || r.verdict.witness_rule.empty() ||
                                     r.verdict.witnesses_valid());
            ok = ok && j["pass"].get<bool>();
            std::cerr << "row " << r.row.row << " " << r.row.r2.str() << "->" << r.row.r3.str() << ": "
                      << (r.skipped ? "skipped" : (r.verdict.stable ? "stable" : "unstable")) << " ["
                      << (j["pass"].get<bool>() ? "PASS" : "FAIL") << "]\n";
            arr.push_back(j);
        }
        out["rows"] = arr;
        return ok;
    }
    if (c.k < 0 || c.r2.empty()) throw UsageError("--k and --r2 are required");
    Smooth3 r2 = parse_smooth(c.r2);
    Smooth3 r3 = c.r3.empty() ? r2.minus() : parse_smooth(c.r3);
    out["inputs"] = {{"k", c.k}, {"r2", smooth_json(r2)}, {"r3", smooth_json(r3)}};
    if (c.mesh != "none" && !c.mesh.empty() && c.mesh != "bubble") {
        Mesh m = load_mesh(c.mesh);
        auto g = global_div_rank(m, c.k, r2, r3, frame_options(c));
        out["mesh"] = c.mesh;
        out["global"] = {{"velocity_dim", g.velocity_dim}, {"pressure_dim", g.pressure_dim}, {"rank", g.rank},
                         {"mismatched_rows", g.mismatched_rows}, {"verdict", g.stable ? "stable" : "unstable"},
                         {"warnings", warnings_json(g.warnings)}};
    }
    auto v = bubble_div_rank(c.k, r2, r3, reference_simplex(3), c.witnesses);
    out["bubble"] = verdict_json(v, c.witnesses);
    bool ok = v.stable;
    if (out.contains("global")) ok = ok && out["global"]["verdict"] == "stable";
    if (c.witnesses && !v.witness_rule.empty()) ok = ok && v.witnesses_valid();
    return ok;
}

bool cmd_complex(const RunConfig& c, json& out)
{
    ComplexSpec s = complex_spec(c);
    out["inputs"] = complex_inputs(s, c.mesh);
    out["hypotheses"] = warnings_json(validate_complex(s));
    Mesh m = load_mesh(c.mesh);
    auto r = check_exactness(s, m, c.mesh, frame_options(c));
    out["dims"] = r.dims;
    out["ranks"] = {{"grad", r.ranks[0]}, {"curl", r.ranks[1]}, {"div", r.ranks[2]}};
    out["kernels"] = {{"grad", r.dims[0] - r.ranks[0]}, {"curl", r.dims[1] - r.ranks[1]}, {"div", r.dims[2] - r.ranks[2]}};
    out["mismatched_rows"] = r.mismatched_rows;
    out["inconsistent_shared"] = r.inconsistent_shared;
    out["dim_matches_entity_count"] = r.dim_matches_entity_count;
    out["curl_grad_zero"] = r.curl_grad_zero;
    out["div_curl_zero"] = r.div_curl_zero;
    out["ker_grad_constants"] = r.ker_grad_constants;
    out["ker_curl_eq_img_grad"] = r.exact_curl;
    out["ker_div_eq_img_curl"] = r.exact_div;
    out["div_onto"] = r.div_onto;
    out["alternating_sum"] = r.alternating_sum;
    out["dimension_identity"] = r.identity;
    out["exact"] = r.exact();
    return r.exact();
}

bool cmd_commute(const RunConfig& c, json& out)
{
    ComplexSpec s = complex_spec(c);
    out["inputs"] = complex_inputs(s, c.mesh);
    out["inputs"]["seed"] = c.seed;
    out["inputs"]["samples"] = c.samples;
    Mesh m = load_mesh(c.mesh);
    std::vector<int> degrees;
    for (int i = 0; i < c.samples; ++i) degrees.push_back(s.k + 2 + (i % 2));
    auto r = check_commuting(s, m, degrees, c.seed, c.mesh, frame_options(c));
    json arr = json::array();
    for (const auto& x : r.samples)
        arr.push_back({{"degree", x.degree}, {"grad_residual_zero", x.grad_zero}, {"curl_residual_zero", x.curl_zero},
                       {"div_residual_zero", x.div_zero}, {"inconsistent", x.inconsistent}});
    out["samples"] = arr;
    out["commutes"] = r.ok();
    return r.ok();
}

bool cmd_continuity(const RunConfig& c, json& out)
{
    if (c.k < 0) throw UsageError("--k is required");
    Mesh m = load_mesh(c.mesh);
    std::vector<int> r = parse_ints(c.r.empty() ? "0" : c.r);
    if (static_cast<int>(r.size()) != m.n + 1) throw UsageError("--r needs n+1 entries for this mesh");
    auto t = check_facet_smoothness(m, c.k, r, frame_options(c));
    out["inputs"] = {{"mesh", c.mesh}, {"n", m.n}, {"k", c.k}, {"r", r}, {"global_frames", !c.local_frames}};
    out["m"] = t.m;
    out["dim"] = t.dim;
    out["closure_dofs"] = t.closure_dofs;
    out["kernel_traces_vanish"] = t.kernel_traces_vanish;
    out["basis_traces_agree"] = t.basis_traces_agree;
    out["inconsistent_shared"] = t.inconsistent_shared;
    out["continuous"] = t.ok();
    return t.ok();
}

bool cmd_report_table1(const RunConfig& c, json& out)
{
    std::vector<int> ks;
    if (c.k >= 0)
        ks = {c.k};
    else
        ks = {3, 4, 5, 6};
    bool ok = true;
    json cols = json::array();
    std::cout << "row  r2        r3        ";
    for (int k : ks) std::cout << " k=" << k << "      ";
    std::cout << "\n";
    std::vector<std::vector<Table1Result>> res;
    for (int k : ks) res.push_back(run_table1(k, c.witnesses));
    for (std::size_t i = 0; i < res[0].size(); ++i) {
        const auto& row = res[0][i].row;
        std::printf("%-4d %-9s %-9s ", row.row, row.r2.str().c_str(), row.r3.str().c_str());
        json jr = {{"row", row.row}, {"r2", smooth_json(row.r2)}, {"r3", smooth_json(row.r3)},
                   {"expected", row.expect_stable ? "stable" : "unstable"}};
        json verdicts = json::object();
        for (std::size_t q = 0; q < ks.size(); ++q) {
            const auto& r = res[q][i];
            std::string v = r.skipped ? "-" : (r.verdict.stable ? "stable" : "unstable");
            std::printf(" %-10s", v.c_str());
            verdicts[std::to_string(ks[q])] = v;
            ok = ok && r.pass();
        }
        std::printf("\n");
        jr["verdicts"] = verdicts;
        cols.push_back(jr);
    }
    out["rows"] = cols;
    return ok;
}

bool cmd_report_table2(const RunConfig& c, json& out)
{
    const int k = c.k < 0 ? 7 : c.k;
    Smooth3 r2 = parse_smooth(c.r2.empty() ? "2,1,0" : c.r2);
    out["inputs"] = {{"k", k}, {"r2", smooth_json(r2)}};
    auto f = alternating_sum(k, r2, false);
    auto e = alternating_sum(k, r2, true);
    json C = json::array();
    for (int i = 0; i < 4; ++i) C.push_back(f.C[i]);
    out["C"] = C;
    out["sums"] = f.sums;
    out["sums_enumerated"] = e.sums;
    out["hypotheses_hold"] = f.hypotheses;
    out["matches"] = f.matches();
    if (c.csv) {
        std::cout << "entity_dim,grad,curl,div,l2,alternating\n";
        for (int j = 0; j < 4; ++j)
            std::cout << j << "," << f.C[0][j] << "," << f.C[1][j] << "," << f.C[2][j] << "," << f.C[3][j] << ","
                      << f.sums[j] << "\n";
    }
    return f.matches();
}

int run(const RunConfig& c)
{
    auto t0 = std::chrono::steady_clock::now();
    json out;
    out["schema"] = 1;
    out["command"] = c.command;
    bool ok = false;
    try {
        if (c.command == "lattice decompose") ok = cmd_lattice_decompose(c, out);
        else if (c.command == "element dofs") ok = cmd_element_dofs(c, out);
        else if (c.command == "element dim") ok = cmd_element_dim(c, out);
        else if (c.command == "verify unisolvence") ok = cmd_unisolvence(c, out);
        else if (c.command == "verify div-stability") ok = cmd_div_stability(c, out);
        else if (c.command == "verify complex") ok = cmd_complex(c, out);
        else if (c.command == "verify commute") ok = cmd_commute(c, out);
        else if (c.command == "verify continuity") ok = cmd_continuity(c, out);
        else if (c.command == "report table1") ok = cmd_report_table1(c, out);
        else if (c.command == "report table2") ok = cmd_report_table2(c, out);
        else throw UsageError("no command given");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        out["error"] = e.what();
        ok = false;
    }
    out["ok"] = ok;
    out["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string text = out.dump(2);
    if (c.output.empty() || c.output == "-") {
        if (!c.csv) std::cout << text << "\n";
    } else {
        std::ofstream f(c.output);
        f << text << "\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"Exact verification of finite element complexes on tetrahedra"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    auto add_common = [&](CLI::App* s) {
        s->add_option("--json,-o", cfg.output, "Write the JSON report to this file (default: stdout)");
    };
    auto add_element = [&](CLI::App* s) {
        s->add_option("--family", cfg.family, "grad | l2 | div | curl | div-pair | curl-pair | grad-mod | nd");
        s->add_option("--k", cfg.k, "Polynomial degree of the shape space")->required();
        s->add_option("--r", cfg.r, "Smoothness v,e,f (a single value expands); n+1 entries for nd");
        s->add_option("--r2", cfg.r2, "Second smoothness vector of a curl-pair or div-pair (default r (-) 1)");
        s->add_option("--r3", cfg.r3, "Second smoothness vector of a div-pair (overrides --r2)");
        s->add_option("--n", cfg.n, "Dimension for the nd family");
        s->add_flag("--axis-normals", cfg.axis_normals, "Edge normals from coordinate axes");
        s->add_flag("--local-frames", cfg.local_frames, "nd family: transversal frames dual to the cell");
        add_common(s);
    };
    auto add_complex = [&](CLI::App* s) {
        s->add_option("--suite", cfg.suite, "hermite | argyris | stokes");
        s->add_option("--k", cfg.k, "Degree k (spaces of degree k+2, k+1, k, k-1)");
        s->add_option("--r0", cfg.r0, "Smoothness of the H1 slot");
        s->add_option("--r1", cfg.r1, "Smoothness of the H(curl) slot (default r0 (-) 1)");
        s->add_option("--r2", cfg.r2, "Smoothness of the H(div) slot (default r1 (-) 1)");
        s->add_option("--r3", cfg.r3, "Smoothness of the L2 slot (default r2 (-) 1)");
        s->add_option("--mesh", cfg.mesh, "tet1 | tet2 | fan3 | path to a mesh file");
        s->add_flag("--axis-normals", cfg.axis_normals, "Edge normals from coordinate axes");
        add_common(s);
    };

    auto* lat = app.add_subcommand("lattice", "Simplicial lattice operations");
    lat->require_subcommand(1);
    auto* dec = lat->add_subcommand("decompose", "Partition T^n_k into the pieces S_l(f) for smoothness r");
    dec->add_option("--n", cfg.n, "Dimension");
    dec->add_option("--k", cfg.k, "Degree")->required();
    dec->add_option("--r", cfg.r, "Smoothness r_0,...,r_{n-1} (a single value expands)");
    dec->add_option("--svg", cfg.svg, "Write an SVG of the slice alpha_n = 0");
    add_common(dec);

    auto* el = app.add_subcommand("element", "Finite element tables");
    el->require_subcommand(1);
    auto* dofs = el->add_subcommand("dofs", "List the degrees of freedom of an element");
    add_element(dofs);
    auto* dim = el->add_subcommand("dim", "Per-sub-simplex DoF counts of an element");
    add_element(dim);
    dim->add_flag("--csv", cfg.csv, "Print a CSV table instead of JSON on stdout");

    auto* ver = app.add_subcommand("verify", "Exact verification runs (exit 0 iff all checks hold)");
    ver->require_subcommand(1);
    auto* uni = ver->add_subcommand("unisolvence", "Exact determinant of the DoF matrix");
    add_element(uni);
    auto* ds = ver->add_subcommand("div-stability", "Rank of div on velocity bubbles, optional global rank");
    ds->add_option("--k", cfg.k, "Velocity degree");
    ds->add_option("--r2", cfg.r2, "Velocity smoothness");
    ds->add_option("--r3", cfg.r3, "Pressure smoothness (default r2 (-) 1)");
    ds->add_option("--mesh", cfg.mesh, "Also check global div surjectivity on this mesh (or 'bubble')");
    ds->add_flag("--witnesses", cfg.witnesses, "Construct and verify explicit divergence preimages");
    ds->add_flag("--table1", cfg.table1, "Run all five rows of the stability table at --k");
    add_common(ds);
    cfg.mesh = "tet1";
    auto* cx = ver->add_subcommand("complex", "Exactness of grad -> curl -> div -> L2 on a mesh");
    add_complex(cx);
    auto* cm = ver->add_subcommand("commute", "Commuting interpolation with seeded random polynomials");
    add_complex(cm);
    cm->add_option("--samples", cfg.samples, "Number of random samples");
    cm->add_option("--seed", cfg.seed, "Random seed");
    auto* ct = ver->add_subcommand("continuity", "Smoothness across the shared facet of two n-simplices");
    ct->add_option("--mesh", cfg.mesh, "tri2 | int2 | two-cell mesh");
    ct->add_option("--k", cfg.k, "Degree")->required();
    ct->add_option("--r", cfg.r, "Smoothness r_0,...,r_n");
    ct->add_flag("--local-frames", cfg.local_frames, "Use cell-dependent transversal frames");
    add_common(ct);

    auto* rep = app.add_subcommand("report", "Reproduce summary tables");
    rep->require_subcommand(1);
    auto* t1 = rep->add_subcommand("table1", "Bubble div stability verdicts for k = 3..6");
    t1->add_option("--k", cfg.k, "Single degree instead of 3..6");
    t1->add_flag("--witnesses", cfg.witnesses, "Also verify explicit preimages");
    add_common(t1);
    auto* t2 = rep->add_subcommand("table2", "Alternating dimension sums of the decay complex");
    t2->add_option("--k", cfg.k, "Degree k (default 7)");
    t2->add_option("--r2", cfg.r2, "H(div) smoothness (default 2,1,0)");
    t2->add_flag("--csv", cfg.csv, "Print a CSV table instead of JSON on stdout");
    add_common(t2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    for (auto* top : app.get_subcommands())
        for (auto* sub : top->get_subcommands()) cfg.command = top->get_name() + " " + sub->get_name();
    if (cfg.command == "verify continuity" && cfg.mesh == "tet1") cfg.mesh = "tri2";
    return run(cfg);
}
