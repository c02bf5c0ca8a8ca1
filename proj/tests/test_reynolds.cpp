#include <catch_amalgamated.hpp>

#include <random>

#include "random_polys.hpp"
#include "relequiv/reynolds.hpp"
#include "sample_groups.hpp"

using namespace relequiv;
using namespace samples;

namespace {

PolyMap pair(const Poly& a, const Poly& b) { return PolyMap(std::vector<Poly>{a, b}); }

}  // namespace

TEST_CASE("projections of the Z3 x Z3 Hilbert basis") {
    const auto g = paper().group;
    const auto z1 = Poly::variable(4, 0), z1b = Poly::variable(4, 1), z2 = Poly::variable(4, 2),
               z2b = Poly::variable(4, 3);
    const std::vector<Poly> u{z1 * z1b, pow(z1, 3), pow(z1b, 3), z2, z2b};
    // R_0(u_i) = u_i for i <= 3, R_1(u_4) = u_4, R_2(u_5) = u_5, all others zero
    const int weight[] = {0, 0, 0, 1, 2};
    for (std::size_t i = 0; i < u.size(); ++i)
        for (int j = 0; j < 3; ++j) CHECK(relative_project(g, j, u[i]) == (j == weight[i] ? u[i] : Poly(4)));
    CHECK_THROWS_AS(relative_project(g, 0, z1), InvalidInput);
    CHECK_THROWS_AS(relative_project(g, 3, z2), InvalidInput);
    CHECK(average_over_K(g, z1).is_zero());
    CHECK(average_over_K(g, z1 * z1b * z2) == z1 * z1b * z2);
}

TEST_CASE("vector projections of the products v_i H_k") {
    const auto g = paper().group;
    const auto z1 = Poly::variable(4, 0), z1b = Poly::variable(4, 1), z2 = Poly::variable(4, 2),
               z2b = Poly::variable(4, 3);
    const Poly one = Poly::constant(4, Cyclotomic(1)), zero(4);
    const std::vector<Poly> v{one, z2, z2b, z2 * z2, z2b * z2b};
    const std::vector<PolyMap> h{pair(z1, zero), pair(z1b * z1b, zero), pair(zero, one)};
    // Expected nonzero projection index for H_ik = v_i H_k:
    // R_0: H_i2 for i = 1, 4 and H_0j for j = 0, 1
    // R_1: H_ij for i = 1, 4, j = 0, 1 and H_l2 for l = 2, 3
    // R_2: H_lj for l = 2, 3, j = 0, 1 and H_02
    auto expected_weight = [](std::size_t i, std::size_t k) -> int {
        const bool i14 = i == 1 || i == 4, l23 = i == 2 || i == 3;
        if (k == 2) return i14 ? 0 : l23 ? 1 : 2;
        return i == 0 ? 0 : i14 ? 1 : 2;
    };
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t k = 0; k < h.size(); ++k) {
            const PolyMap hik = v[i] * h[k];
            for (int j = 0; j < 3; ++j) {
                INFO("i=" << i << " k=" << k << " j=" << j);
                const auto p = relative_project_map(g, j, hik);
                if (j == expected_weight(i, k))
                    CHECK(p == hik);
                else
                    CHECK(p.is_zero());
            }
        }
    CHECK(is_relative_equivariant(g, 1, pair(z1 * z2, zero)));
    CHECK(is_relative_equivariant(g, 2, pair(zero, one)));
    CHECK(!is_relative_equivariant(g, 0, pair(zero, one)));
    CHECK(is_relative_invariant(g, 1, pow(z2b, 2)));
    CHECK(is_relative(g, 2, z2b));
}

TEST_CASE("projector laws on random K-invariant inputs") {
    std::mt19937_64 rng(51);
    for (const auto& s : property_groups()) {
        const auto& g = s.group;
        INFO(s.name);
        const int m = g.modulus(), N = g.conductor();
        const std::size_t n = g.source_dim(), w = g.target_dim();
        for (int t = 0; t < 12; ++t) {
            const Poly raw = random_poly(rng, n, 4, N);
            const Poly f = average_over_K(g, raw);
            CHECK(is_K_invariant(g, f));
            CHECK(average_over_K(g, f) == f);
            Poly sum(n);
            for (int j = 0; j < m; ++j) {
                const Poly rj = relative_project(g, j, f);
                CHECK(is_relative_invariant(g, j, rj));
                CHECK(relative_project(g, j, rj) == rj);
                for (int i = 0; i < m; ++i)
                    if (i != j) CHECK(relative_project(g, i, rj).is_zero());
                sum += rj;
            }
            CHECK(sum == f);

            const PolyMap h = average_over_K(g, random_map(rng, w, n, 3, N));
            CHECK(is_K_invariant(g, h));
            PolyMap hsum(w, n);
            for (int j = 0; j < m; ++j) {
                const PolyMap rj = relative_project_map(g, j, h);
                CHECK(is_relative_equivariant(g, j, rj));
                CHECK(relative_project_map(g, j, rj) == rj);
                for (int i = 0; i < m; ++i)
                    if (i != j) CHECK(relative_project_map(g, i, rj).is_zero());
                hsum += rj;
            }
            CHECK(hsum == h);
        }
    }
}

TEST_CASE("projectors do not depend on the choice of delta") {
    std::mt19937_64 rng(52);
    const auto g = paper().group;
    for (const auto& e : g.elements()) {
        if (e.sigma != 1) continue;
        const auto h = g.with_delta(e.index);
        for (int t = 0; t < 5; ++t) {
            const Poly f = average_over_K(g, random_poly(rng, 4, 3, 3));
            for (int j = 0; j < 3; ++j) CHECK(relative_project(h, j, f) == relative_project(g, j, f));
        }
    }
}
