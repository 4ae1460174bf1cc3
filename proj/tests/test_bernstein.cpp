#include "fec/bernstein.hpp"
#include "fec/functional.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace fec;

namespace {

Poly mono(const Node& a, const Rational& c = 1) { return Poly::monomial(a, c); }

Vec interior_point(const Geometry& g, const Vec& weights)
{
    Vec x(g.n, Rational(0));
    Rational total = 0;
    for (const auto& w : weights) total += w;
    for (int i = 0; i <= g.n; ++i)
        for (int d = 0; d < g.n; ++d) x[d] += weights[i] / total * g.vertices[i][d];
    return x;
}

} // namespace

TEST(Geometry, BarycentricGradients)
{
    std::mt19937 rng(11);
    for (int n = 1; n <= 4; ++n) {
        Geometry g = n == 3 ? reference_simplex(3) : oracle::random_simplex(n, rng);
        Vec sum(n, Rational(0));
        for (const auto& gl : g.grad_lambda) sum = sum + gl;
        EXPECT_TRUE(is_zero(sum));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                if (i == j) continue;
                for (int l = 0; l <= n; ++l)
                    EXPECT_EQ(dot(g.edge(i, j), g.grad_lambda[l]), Rational((l == j) - (l == i)));
            }
        EXPECT_GT(g.volume, 0);
    }
    EXPECT_EQ(reference_simplex(3).volume, Rational(1, 6));
    EXPECT_THROW(make_geometry({{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);
}

TEST(Integrate, ScaledMonomialsHaveConstantIntegral)
{
    Geometry g = reference_simplex(3);
    for (int k = 0; k <= 5; ++k)
        for (const auto& a : lattice(3, k)) {
            Poly p = mono(a, Rational(1) / Rational(multi_factorial(a)));
            EXPECT_EQ(integrate(p, g), Rational(6) / Rational(factorial(k + 3)) * g.volume);
        }
}

TEST(Integrate, Examples)
{
    Geometry g = reference_simplex(3);
    EXPECT_EQ(integrate(mono({0, 0, 0, 0}), g), g.volume);
    EXPECT_EQ(integrate(mono({1, 1, 0, 0}), g), Rational(1, 120));
}

TEST(Integrate, AgreesWithIteratedCartesianIntegration)
{
    for (int n = 1; n <= 3; ++n) {
        Geometry g = reference_simplex(n);
        for (int k = 0; k <= 4; ++k)
            for (const auto& a : lattice(n, k)) {
                Poly p = mono(a);
                ASSERT_EQ(integrate(p, g), oracle::integrate_reference(oracle::cartesian(p, g))) << node_str(a);
            }
    }
}

TEST(Integrate, FloatingQuadratureSanityCheck)
{
    // Composite edge-midpoint rule (exact for quadratics) on a uniform split of the reference triangle.
    Geometry g = reference_simplex(2);
    Poly p = mono({1, 1, 0});
    const int m = 16;
    const double h = 1.0 / m;
    auto f = [&](double x, double y) { return evaluate_double(p, {1 - x - y, x, y}); };
    auto tri = [&](double ax, double ay, double bx, double by, double cx, double cy) {
        double mid = f((ax + bx) / 2, (ay + by) / 2) + f((bx + cx) / 2, (by + cy) / 2) + f((ax + cx) / 2, (ay + cy) / 2);
        return mid / 3 * h * h / 2;
    };
    double s = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; i + j < m; ++j) {
            double x = i * h, y = j * h;
            s += tri(x, y, x + h, y, x, y + h);
            if (i + j + 1 < m) s += tri(x + h, y, x, y + h, x + h, y + h);
        }
    EXPECT_NEAR(s, integrate(p, g).get_d(), 1e-12);
}

TEST(DirectionalDerivative, Examples)
{
    Poly d = directional_derivative(mono({0, 1, 0, 0}), 0, 1);
    EXPECT_EQ(d, mono({0, 0, 0, 0}));
    d = directional_derivative(mono({2, 0, 0, 0}), 1, 0);
    EXPECT_EQ(d, mono({1, 0, 0, 0}, 2));
    EXPECT_TRUE(directional_derivative(mono({0, 0, 1, 0}), 0, 1).is_zero());
    EXPECT_THROW(directional_derivative(mono({1, 0, 0, 0}), 2, 2), std::invalid_argument);
}

TEST(DirectionalDerivative, MatchesCartesianDerivative)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        Geometry g = oracle::random_simplex(3, rng);
        for (int k = 1; k <= 4; ++k)
            for (const auto& a : lattice(3, k)) {
                Poly p = mono(a);
                for (int i = 0; i <= 3; ++i)
                    for (int j = 0; j <= 3; ++j) {
                        if (i == j) continue;
                        ASSERT_EQ(directional_derivative(p, i, j), derivative(p, g.edge(i, j), g));
                    }
            }
    }
}

TEST(Derivative, AgreesWithSymbolicOracle)
{
    std::mt19937 rng(7);
    for (int n = 2; n <= 3; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            Geometry g = oracle::random_simplex(n, rng);
            Poly p = oracle::random_poly(n, 1 + trial % 4, rng);
            oracle::CPoly c = oracle::cartesian(p, g);
            Field grad = gradient(p, g);
            for (int d = 0; d < n; ++d) {
                oracle::CPoly dc = c.diff(d);
                for (int s = 0; s < 3; ++s) {
                    Vec w(n + 1);
                    for (int i = 0; i <= n; ++i) w[i] = Rational(1 + (i * 7 + s * 3) % 5);
                    Vec x = interior_point(g, w);
                    ASSERT_EQ(evaluate(grad[d], g.barycentric(x)), dc(x));
                }
            }
        }
}

TEST(Derivative, GradientAgreesWithFiniteDifferences)
{
    std::mt19937 rng(2024);
    Geometry g = reference_simplex(3);
    const double h = std::ldexp(1.0, -20);
    for (int trial = 0; trial < 50; ++trial) {
        Poly p = oracle::random_poly(3, 1 + trial % 4, rng);
        Field grad = gradient(p, g);
        for (int s = 0; s < 5; ++s) {
            std::vector<double> x = {0.1 + 0.05 * s, 0.2, 0.15 + 0.02 * s};
            auto lam = [&](std::vector<double> y) {
                return std::vector<double>{1 - y[0] - y[1] - y[2], y[0], y[1], y[2]};
            };
            for (int d = 0; d < 3; ++d) {
                auto xp = x, xm = x;
                xp[d] += h;
                xm[d] -= h;
                double fd = (evaluate_double(p, lam(xp)) - evaluate_double(p, lam(xm))) / (2 * h);
                double ex = evaluate_double(grad[d], lam(x));
                EXPECT_NEAR(fd, ex, 1e-6 * std::max(1.0, std::abs(ex)));
            }
        }
    }
}

TEST(DegreeRaising, PreservesTheFunction)
{
    std::mt19937 rng(3);
    Geometry g = reference_simplex(3);
    for (int k = 0; k <= 4; ++k) {
        Poly p = oracle::random_poly(3, k, rng);
        Poly q = raise_to(p, k + 2);
        EXPECT_EQ(q.k, k + 2);
        for (int s = 0; s < 4; ++s) {
            Vec lam = {Rational(1, 2 + s), Rational(1, 5), Rational(1, 7), Rational(0)};
            lam[3] = 1 - lam[0] - lam[1] - lam[2];
            EXPECT_EQ(evaluate(p, lam), evaluate(q, lam));
        }
        EXPECT_EQ(integrate(p, g), integrate(q, g));
    }
}

TEST(Divergence, Examples)
{
    Geometry g = reference_simplex(3);
    FormalField u = {FieldTerm{1, {1, 1, 0, 0}, 1, 0}};
    Poly d = divergence(to_cartesian(u, g, 2), g);
    EXPECT_EQ(d, mono({0, 1, 0, 0}) - mono({1, 0, 0, 0}));
    EXPECT_EQ(formal_divergence(u, 3, 2), d);
    Field c = zero_field(3, 0);
    c[0].c[0] = 3;
    c[2].c[0] = -1;
    EXPECT_TRUE(divergence(c, g).is_zero());
}

TEST(Divergence, TermwiseIdentity)
{
    // div(lambda^{alpha+eps_i} t_{j,i}) / (beta! alpha_j) = lambda^alpha/alpha! - lambda^beta/beta!.
    std::mt19937 rng(9);
    Geometry g = oracle::random_simplex(3, rng);
    for (int k = 1; k <= 4; ++k)
        for (const auto& a : lattice(3, k - 1))
            for (int i = 0; i <= 3; ++i)
                for (int j = 0; j <= 3; ++j) {
                    if (i == j || a[j] == 0) continue;
                    Node beta = a;
                    ++beta[i];
                    --beta[j];
                    FormalField u = preimage_direct(a, i, j);
                    Poly expect = l20_member(a, beta);
                    ASSERT_EQ(formal_divergence(u, 3, k), expect);
                    ASSERT_EQ(divergence(to_cartesian(u, g, k), g), expect);
                }
}

TEST(Preimage, DirectExamplesAndErrors)
{
    Geometry g = reference_simplex(3);
    FormalField u = preimage_direct({0, 1, 0, 0}, {1, 0, 0, 0});
    ASSERT_EQ(u.size(), 1u);
    EXPECT_EQ(u[0].node, (Node{1, 1, 0, 0}));
    EXPECT_EQ(u[0].i, 1);
    EXPECT_EQ(u[0].j, 0);
    EXPECT_EQ(divergence(to_cartesian(u, g, 2), g), mono({0, 1, 0, 0}) - mono({1, 0, 0, 0}));
    EXPECT_THROW(preimage_direct({2, 0, 0, 0}, {0, 2, 0, 0}), std::invalid_argument);
    EXPECT_THROW(preimage_direct({1, 0, 0, 0}, 1, 2), std::invalid_argument);
}

TEST(Preimage, DirectAndDetourExhaustiveOnSmallLattices)
{
    Geometry g = reference_simplex(3);
    for (int k = 1; k <= 3; ++k) {
        const auto& nodes = lattice(3, k - 1);
        for (const auto& a : nodes)
            for (const auto& b : nodes) {
                if (!adjacent(a, b)) continue;
                int i = -1, j = -1;
                for (int t = 0; t <= 3; ++t) {
                    if (b[t] == a[t] + 1) i = t;
                    if (b[t] == a[t] - 1) j = t;
                }
                Poly target = l20_member(a, b);
                FormalField u = preimage_direct(a, b);
                Poly du = divergence(to_cartesian(u, g, k), g);
                EXPECT_EQ(du, target);
                EXPECT_EQ(integrate(du, g), 0);
                for (int l = 0; l <= 3; ++l) {
                    if (l == i || l == j) {
                        EXPECT_THROW(preimage_detour(a, i, j, l), std::invalid_argument);
                        continue;
                    }
                    FormalField w = preimage_detour(a, i, j, l);
                    ASSERT_EQ(w.size(), 2u);
                    EXPECT_EQ(divergence(to_cartesian(w, g, k), g), target);
                    // The two halves telescope through gamma = alpha + eps_l - eps_j.
                    Node gamma = a;
                    ++gamma[l];
                    --gamma[j];
                    EXPECT_EQ(formal_divergence({w[0]}, 3, k), l20_member(a, gamma));
                    EXPECT_EQ(formal_divergence({w[1]}, 3, k), l20_member(gamma, b));
                }
            }
    }
}

TEST(L20Basis, SizesAndMeanZero)
{
    auto b = l20_basis(lattice(1, 1));
    ASSERT_EQ(b.members.size(), 1u);
    EXPECT_EQ(b.members[0], mono({1, 0}) - mono({0, 1}));

    auto c = l20_basis(lattice(3, 3));
    EXPECT_TRUE(c.connected);
    EXPECT_EQ(c.all().size(), 19u);
    Geometry g = reference_simplex(3);
    std::vector<Vec> rows;
    for (const auto& p : c.all()) {
        EXPECT_EQ(integrate(p, g), 0);
        rows.push_back(p.c);
    }
    EXPECT_EQ(rank(Matrix::from_rows(rows, lattice_size(3, 3))), 19u);
}

TEST(L20Basis, DisconnectedSetIsFlagged)
{
    auto b = l20_basis({{2, 0, 0}, {0, 2, 0}, {0, 1, 1}});
    EXPECT_FALSE(b.connected);
    EXPECT_EQ(b.members.size(), 1u);
    EXPECT_EQ(b.root_links.size(), 1u);
    EXPECT_EQ(b.all().size(), 2u);
}

TEST(Restriction, Examples)
{
    Poly p = restrict_poly(mono({1, 1, 0, 0}), {0, 1, 2});
    EXPECT_EQ(p, mono({1, 1, 0}));
    EXPECT_TRUE(restrict_poly(mono({0, 0, 0, 2}), {0, 1, 2}).is_zero());
    Geometry g = reference_simplex(3);
    for (const auto& dp : gradient(mono({0, 0, 0, 2}), g)) EXPECT_TRUE(restrict_poly(dp, {0, 1, 2}).is_zero());
}

TEST(Restriction, VanishingOrderMatchesDistance)
{
    std::mt19937 rng(17);
    Geometry g = oracle::random_simplex(3, rng);
    const int k = 4;
    for (int l = 0; l <= 2; ++l)
        for (const auto& f : subsimplices(3, l))
            for (const auto& a : lattice(3, k)) {
                // All derivatives of order < dist(alpha, f) vanish on f.
                std::vector<Poly> cur = {mono(a)};
                for (int m = 0; m < dist(a, f); ++m) {
                    for (const auto& q : cur) ASSERT_TRUE(restrict_poly(q, f).is_zero());
                    std::vector<Poly> next;
                    for (const auto& q : cur)
                        for (const auto& dq : gradient(q, g)) next.push_back(dq);
                    cur = std::move(next);
                }
                bool some_nonzero = false;
                for (const auto& q : cur)
                    if (!restrict_poly(q, f).is_zero()) some_nonzero = true;
                EXPECT_TRUE(some_nonzero) << node_str(a);
            }
}

TEST(Fields, FormalAndCartesianAgree)
{
    std::mt19937 rng(21);
    Geometry g = oracle::random_simplex(3, rng);
    std::uniform_int_distribution<int> pick(0, 3), coef(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + trial % 4;
        FormalField u;
        const auto& nodes = lattice(3, k);
        for (int t = 0; t < 3; ++t) {
            int i = pick(rng), j = pick(rng);
            if (i == j) j = (i + 1) % 4;
            u.push_back(FieldTerm{coef(rng), nodes[rng() % nodes.size()], i, j});
        }
        EXPECT_EQ(divergence(to_cartesian(u, g, k), g), formal_divergence(u, 3, k));
    }
}

TEST(Fields, CurlOfGradientVanishes)
{
    std::mt19937 rng(4);
    Geometry g = oracle::random_simplex(3, rng);
    Poly p = oracle::random_poly(3, 4, rng);
    EXPECT_TRUE(is_zero(curl(gradient(p, g), g)));
    Field u = {oracle::random_poly(3, 3, rng), oracle::random_poly(3, 3, rng), oracle::random_poly(3, 3, rng)};
    EXPECT_TRUE(divergence(curl(u, g), g).is_zero());
}
