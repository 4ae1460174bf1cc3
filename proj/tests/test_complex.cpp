#include "fec/complex.hpp"
#include "fec/mesh.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace fec;

TEST(Mesh, ReferenceMeshes)
{
    EXPECT_EQ(reference_mesh("tet1").counts(), (std::vector<std::size_t>{4, 6, 4, 1}));
    EXPECT_EQ(reference_mesh("tet2").counts(), (std::vector<std::size_t>{5, 9, 7, 2}));
    EXPECT_EQ(reference_mesh("fan3").counts(), (std::vector<std::size_t>{6, 12, 10, 3}));
    EXPECT_EQ(reference_mesh("tri2").counts(), (std::vector<std::size_t>{4, 5, 2}));
    for (const auto& name : reference_mesh_names()) EXPECT_EQ(reference_mesh(name).euler(), 1) << name;
    EXPECT_THROW(reference_mesh("cube"), std::invalid_argument);
}

TEST(Mesh, ParseText)
{
    std::istringstream in("# two cells\nv 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 1/2 1/2 1\nt 0 1 2 3\nt 4 3 2 1\n");
    Mesh m = parse_mesh(in);
    EXPECT_EQ(m.cells.size(), 2u);
    EXPECT_EQ(m.cells[1], (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(m.vertices[4][0], Rational(1, 2));
    std::istringstream flat("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nt 0 1 2 3\n");
    EXPECT_THROW(parse_mesh(flat), std::invalid_argument);
    EXPECT_THROW(make_mesh(3, {Vec(3), Vec(3)}, {{0, 1, 2, 5}}), std::invalid_argument);
}

TEST(Complex, NamedSuitesSatisfyHypotheses)
{
    for (const auto& name : {"hermite", "argyris", "stokes"}) {
        auto c = named_complex(name);
        ASSERT_TRUE(c.has_value());
        EXPECT_TRUE(validate_complex(*c).empty()) << name;
    }
    EXPECT_FALSE(named_complex("bdm").has_value());
    ComplexSpec bad = hermite_complex();
    bad.r2 = {1, 0, 0};
    EXPECT_FALSE(validate_complex(bad).empty());
}

TEST(Complex, HermiteExactOnOneAndTwoCells)
{
    for (const auto& name : {"tet1", "tet2"}) {
        Mesh m = reference_mesh(name);
        auto r = check_exactness(hermite_complex(), m, name);
        EXPECT_TRUE(r.exact()) << name;
        EXPECT_EQ(r.alternating_sum, 1);
    }
    // Single cell: local dimensions are the element shape dimensions.
    auto r = check_exactness(hermite_complex(), reference_mesh("tet1"));
    EXPECT_EQ(r.dims, (std::array<std::size_t, 4>{20, 30, 12, 1}));
}

TEST(Complex, ArgyrisExactOnOneCell)
{
    auto r = check_exactness(argyris_complex(), reference_mesh("tet1"), "tet1");
    EXPECT_TRUE(r.exact());
    EXPECT_EQ(r.dims[0], static_cast<std::size_t>(binom(8, 3)));
    EXPECT_EQ(r.dims[3], static_cast<std::size_t>(binom(5, 3)));
}

TEST(Complex, ArgyrisExactOnTwoCells)
{
    auto r = check_exactness(argyris_complex(), reference_mesh("tet2"), "tet2");
    EXPECT_TRUE(r.exact());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(r.dim_matches_entity_count[i]) << i;
}

TEST(Complex, HermiteExactOnFan)
{
    auto r = check_exactness(hermite_complex(), reference_mesh("fan3"), "fan3");
    EXPECT_TRUE(r.exact());
}

TEST(Complex, CompositionsVanishWithSkewedFrames)
{
    FrameOptions opt;
    opt.scale_t = Rational(-2, 3);
    opt.scale_n = 7;
    opt.axis_edge_normals = true;
    Mesh m = reference_mesh("tet2");
    auto a = assemble_complex(hermite_complex(), m, opt);
    EXPECT_TRUE(multiply(a.ops[1].matrix, a.ops[0].matrix).is_zero());
    EXPECT_TRUE(multiply(a.ops[2].matrix, a.ops[1].matrix).is_zero());
    EXPECT_TRUE(check_exactness(hermite_complex(), m, "tet2", opt).exact());
}

TEST(Interpolation, ProjectsOntoTheSpace)
{
    Mesh m = reference_mesh("tet2");
    auto a = assemble_complex(hermite_complex(), m);
    std::mt19937 rng(3);
    for (int s = 0; s < 4; ++s) {
        const GlobalSpace& sp = a.spaces[s];
        Vec c(sp.dim());
        std::uniform_int_distribution<int> d(-4, 4);
        for (auto& x : c) x = d(rng);
        auto back = interpolate(sp, reconstruct(sp, c));
        EXPECT_EQ(back.values, c) << s;
        EXPECT_EQ(back.inconsistent, 0u);
    }
}

TEST(Interpolation, ReproducesPolynomialsOfTheShapeDegree)
{
    Mesh m = reference_mesh("tet2");
    GlobalSpace s = build_space(make_spec(Family::GradMod, 3, {1, 0, 0}), m);
    std::mt19937 rng(9);
    CartesianPoly p = random_poly(3, 3, rng);
    CellFunction u = cell_function(m, {p}, 3);
    auto i = interpolate(s, u);
    EXPECT_EQ(i.inconsistent, 0u);
    EXPECT_EQ(reconstruct(s, i.values), u);
}

TEST(Commuting, HermiteOnTwoCells)
{
    auto rep = check_commuting(hermite_complex(), reference_mesh("tet2"), {3, 4, 4, 5, 5}, 2024, "tet2");
    EXPECT_TRUE(rep.ok());
    for (const auto& s : rep.samples) EXPECT_TRUE(s.ok()) << "degree " << s.degree;
}

TEST(Commuting, ArgyrisOnOneCell)
{
    auto rep = check_commuting(argyris_complex(), reference_mesh("tet1"), {5, 6}, 7, "tet1");
    EXPECT_TRUE(rep.ok());
}

TEST(AlternatingSums, PolynomialIdentity)
{
    for (int k = 1; k <= 8; ++k) EXPECT_EQ(polynomial_alternating_sum(k), 0) << k;
}

TEST(AlternatingSums, InsideTheHypotheses)
{
    for (Smooth3 r2 : {Smooth3{6, 2, 0}, Smooth3{8, 3, 0}, Smooth3{14, 6, 2}}) {
        const int k = 2 * r2.v + 3;
        auto f = alternating_sum(k, r2);
        auto e = alternating_sum(k, r2, true);
        EXPECT_TRUE(f.hypotheses) << r2.str();
        EXPECT_TRUE(f.matches()) << r2.str();
        EXPECT_TRUE(e.matches()) << r2.str();
        EXPECT_EQ(f.C, e.C) << r2.str();
    }
}

TEST(AlternatingSums, SmallSmoothnessOutsideTheHypotheses)
{
    // (2,1,0) at k = 7 violates r_e >= 2 r_f + 2: the closed forms give the alternating pattern,
    // lattice enumeration does not.
    auto f = alternating_sum(7, {2, 1, 0});
    auto e = alternating_sum(7, {2, 1, 0}, true);
    EXPECT_FALSE(f.hypotheses);
    EXPECT_TRUE(f.matches());
    EXPECT_EQ(e.sums, (std::array<std::int64_t, 4>{1, -1, 3, 7}));
}

TEST(FacetSmoothness, TwoTriangles)
{
    Mesh m = reference_mesh("tri2");
    FrameOptions global;
    global.nd_global_frames = true;
    auto r = check_facet_smoothness(m, 5, {2, 1, 0}, global);
    EXPECT_EQ(r.m, 1);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.dim, 2u * 21u - 6u * 2u - 1u);
    auto c0 = check_facet_smoothness(m, 3, {1, 0, 0}, global);
    EXPECT_TRUE(c0.ok());
}

TEST(FacetSmoothness, TwoIntervals)
{
    FrameOptions global;
    global.nd_global_frames = true;
    auto r = check_facet_smoothness(reference_mesh("int2"), 5, {2, 0}, global);
    EXPECT_EQ(r.m, 2);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.dim, 9u);
}

TEST(FacetSmoothness, CellDependentFramesBreakTraceAgreement)
{
    // Transversal frames dual to the opposite barycentric gradients differ from the two sides of the edge.
    auto r = check_facet_smoothness(reference_mesh("tri2"), 5, {2, 1, 0}, {});
    EXPECT_TRUE(r.kernel_traces_vanish);
    EXPECT_FALSE(r.basis_traces_agree && r.inconsistent_shared == 0);
}
