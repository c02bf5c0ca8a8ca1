#include <catch_amalgamated.hpp>

#include <random>

#include "random_polys.hpp"
#include "sample_groups.hpp"

using namespace relequiv;
using namespace samples;

namespace {

Poly var(std::size_t n, std::size_t i) { return Poly::variable(n, i); }

}  // namespace

TEST_CASE("grlex order and monomial enumeration") {
    GrlexLess less;
    CHECK(less({0, 1}, {1, 0}));
    CHECK(less({2, 0}, {1, 2}));
    CHECK(!less({1, 0}, {1, 0}));
    // C(n + d - 1, d) monomials of degree d
    CHECK(monomials_of_degree(2, 3).size() == 4);
    CHECK(monomials_of_degree(4, 3).size() == 20);
    CHECK(monomials_of_degree(3, 0).size() == 1);
    for (const auto& e : monomials_of_degree(3, 4)) CHECK(total_degree(e) == 4);
}

TEST_CASE("polynomial arithmetic and rendering") {
    const auto x = var(2, 0), y = var(2, 1);
    const auto w = zeta(1, 3);
    const auto p = x * x + y * w;
    CHECK(p.to_string({"x", "y"}) == "x^2 + E(3)*y");
    CHECK((x - y).to_string({"x", "y"}) == "x - y");
    CHECK(((x + y) * (x - y)) == x * x - y * y);
    CHECK((Poly::constant(2, Cyclotomic(1) + w) * x).to_string({"x", "y"}) == "(1 + E(3))*x");
    CHECK((x * x * y).to_latex({"x", "y"}) == "x^{2} y");
    CHECK(Poly(2).to_string() == "0");
    CHECK(p.degree() == 2);
    CHECK(!p.is_homogeneous());
    CHECK(p.homogeneous_component(2) == x * x);
    CHECK(p.homogeneous_component(1) == y * w);
    CHECK(pow(x + y, 2) == x * x + Cyclotomic(2) * x * y + y * y);
    CHECK_THROWS_AS(x + var(3, 0), InvalidInput);
}

TEST_CASE("actions on the Z3 x Z3 example") {
    const auto s = paper();
    const auto& g = s.group;
    const auto d = g.delta();
    const auto z1 = var(4, 0), z1b = var(4, 1), z2 = var(4, 2), z2b = var(4, 3);
    const auto w = zeta(1, 3);
    // delta: (z1, z2) -> (z1, w z2)
    CHECK(act(g, d, z2) == z2 * w);
    CHECK(act(g, d, z2b) == z2b * (w * w));
    CHECK(act(g, d, z1) == z1);
    CHECK(act(g, d, z2 * z2b) == z2 * z2b);
    // eta(delta)^-1 cancels the weight on the second component
    const PolyMap h(std::vector<Poly>{Poly(4), z2});
    CHECK(act(g, d, h) == h);
    const PolyMap h1(std::vector<Poly>{z1, Poly(4)});
    CHECK(act(g, d, h1) == h1);
    // v1 * H with v1 = z2 and H = (z1, 0)
    CHECK(z2 * h1 == PolyMap(std::vector<Poly>{z1 * z2, Poly(4)}));
    CHECK_THROWS_AS(act(g, d, var(3, 0)), InvalidInput);
    CHECK_THROWS_AS(act(g, d, PolyMap(std::vector<Poly>{z1})), InvalidInput);
}

TEST_CASE("substitution through a non-monomial matrix") {
    const auto g = d4_det().group;
    const auto x = var(2, 0), y = var(2, 1);
    // rotation [[0,-1],[1,0]]: x -> -y, y -> x
    const auto rot = g.generators()[0];
    CHECK(act(g, rot, x * x + y) == y * y + x);
    const Matrix a = ints({{1, 1}, {1, -1}});
    CHECK(substitute(a, x * y) == x * x - y * y);
    CHECK(substitute(a, x * x) == pow(x + y, 2));
}

TEST_CASE("the actions are linear, graded, invertible and compose contravariantly") {
    std::mt19937_64 rng(31);
    for (const auto& s : property_groups()) {
        const auto& g = s.group;
        INFO(s.name);
        const std::size_t n = g.source_dim(), w = g.target_dim();
        const int N = g.conductor();
        std::uniform_int_distribution<std::size_t> elem(0, g.order() - 1);
        for (int t = 0; t < 20; ++t) {
            const auto a = elem(rng), b = elem(rng);
            const auto f = random_poly(rng, n, 3, N), f2 = random_poly(rng, n, 3, N);
            const auto c = random_scalar(rng, N);
            CHECK(act(g, a, act(g, b, f)) == act(g, g.multiply(b, a), f));
            CHECK(act(g, a, f + f2 * c) == act(g, a, f) + act(g, a, f2) * c);
            CHECK(act(g, g.inverse(a), act(g, a, f)) == f);
            CHECK(act(g, g.identity(), f) == f);
            CHECK(act(g, a, f * f2) == act(g, a, f) * act(g, a, f2));
            const auto hf = random_poly(rng, n, 3, N, true);
            CHECK(act(g, a, hf).is_homogeneous());
            CHECK((act(g, a, hf).is_zero() || act(g, a, hf).degree() == hf.degree()));

            const auto h = random_map(rng, w, n, 3, N), h2 = random_map(rng, w, n, 3, N);
            CHECK(act(g, a, act(g, b, h)) == act(g, g.multiply(b, a), h));
            CHECK(act(g, a, h + h2 * c) == act(g, a, h) + act(g, a, h2) * c);
            CHECK(act(g, g.inverse(a), act(g, a, h)) == h);
            // module structure: act(v H) = act(v) act(H)
            CHECK(act(g, a, f * h) == act(g, a, f) * act(g, a, h));
            for (int d = 0; d <= 3; ++d)
                CHECK(act(g, a, h.homogeneous_component(d)) == act(g, a, h).homogeneous_component(d));
        }
    }
}

TEST_CASE("homogeneous components reassemble the polynomial") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 100; ++t) {
        const auto f = random_poly(rng, 3, 5, 4, false, 6);
        Poly sum(3);
        for (int d = 0; d <= 5; ++d) {
            const auto c = homogeneous_component(f, d);
            CHECK(c.is_homogeneous());
            sum += c;
        }
        CHECK(sum == f);
    }
}

TEST_CASE("leading coefficients of maps") {
    const auto x = var(2, 0), y = var(2, 1);
    const PolyMap h(std::vector<Poly>{y * Cyclotomic(3), x * Cyclotomic(5)});
    CHECK(leading_coefficient(h) == Cyclotomic(5));
    const PolyMap tie(std::vector<Poly>{x * Cyclotomic(2), x * Cyclotomic(7)});
    CHECK(leading_coefficient(tie) == Cyclotomic(2));
    CHECK(leading_coefficient(Poly(2)).is_zero());
    CHECK(h.to_string({"x", "y"}) == "(3*y, 5*x)");
}
