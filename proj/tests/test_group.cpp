#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "sample_groups.hpp"

using namespace relequiv;
using namespace samples;

namespace {

std::set<std::string> element_keys(const GradedGroup& g) {
    std::set<std::string> s;
    for (const auto& e : g.elements())
        s.insert(e.rho.embed(g.conductor()).key() + "|" + e.eta.embed(g.conductor()).key() + "|" +
                 std::to_string(e.sigma));
    return s;
}

std::string group_error(const std::vector<GeneratorInput>& gens, int m, std::size_t max_order = 1000) {
    try {
        close_group(gens, m, max_order);
    } catch (const GroupError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("the Z3 x Z3 example") {
    const auto s = paper();
    const auto& g = s.group;
    // Two commuting generators of order 3 with independent actions: 3 * 3 elements.
    CHECK(g.order() == 9);
    CHECK(g.kernel().size() == 3);
    CHECK(g.modulus() == 3);
    CHECK(g.conductor() == 3);
    // delta acts as (1, e^{2 pi i/3}) on (z1, z2)
    const auto w = zeta(1, 3), w2 = zeta(2, 3), one = Cyclotomic(1);
    CHECK(g.element(g.delta()).rho == diag({one, one, w, w2}));
    CHECK(g.element(g.delta()).eta == diag({one, w}));
    CHECK(g.element(g.inverse(g.delta())).sigma == 2);
    // chi(xi1, xi2) = xi1 + xi2 at (1, zeta3)
    CHECK(character(g, g.delta(), Side::target) == one + w);
    CHECK(character(g, g.identity(), Side::source) == Cyclotomic(4));
    for (std::size_t a = 0; a < g.order(); ++a) {
        CHECK(character(g, g.inverse(a), Side::target) == conj(character(g, a, Side::target)));
        CHECK(character(g, g.inverse(a), Side::source) == conj(character(g, a, Side::source)));
    }
    const auto reps = coset_representatives(g);
    REQUIRE(reps.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(g.element(reps[std::size_t(k)]).sigma == k);
}

TEST_CASE("degenerate and cyclic closures") {
    const auto t = trivial(1).group;
    CHECK(t.order() == 1);
    CHECK(coset_representatives(t) == std::vector<std::size_t>{t.identity()});
    CHECK(t.inverse(t.identity()) == t.identity());

    const auto c = z4_line().group;
    CHECK(c.order() == 4);
    CHECK(c.kernel().size() == 1);
    // sigma(gamma^k) = k for the generator gamma = i
    for (long k = 0; k < 4; ++k) CHECK(c.element(c.power(c.generators()[0], k)).sigma == k);
}

TEST_CASE("closure errors") {
    CHECK(group_error({{ints({{1, 1}, {0, 1}}), {}, 0}}, 1, 50).find("not finite within bound") != std::string::npos);
    // An involution cannot carry weight 1 mod 3.
    CHECK(group_error({{ints({{-1}}), {}, 1}}, 3) == "sigma ill-defined");
    CHECK(group_error({{ints({{-1}}), {}, 0}}, 2) == "sigma not an epimorphism");
    CHECK(group_error({{ints({{1, 0}, {0, 0}}), {}, 0}}, 1) == "generator matrices are not invertible");
    CHECK(group_error({}, 1) == "at least one generator required");
    CHECK(!group_error({{ints({{-1}}), {}, 2}}, 2).empty());
    CHECK(!group_error({{ints({{-1}}), ints({{1, 0}, {0, 1}}), 0}, {ints({{1}}), {}, 0}}, 1).empty());
    CHECK_THROWS_AS(close_group(std::vector<GeneratorInput>{{ints({{1}}), {}, 0}}, 0, 10), GroupError);
}

TEST_CASE("group axioms hold exhaustively on the sample groups") {
    for (const auto& s : property_groups()) {
        const auto& g = s.group;
        INFO(s.name);
        const int m = g.modulus();
        CHECK(g.order() == static_cast<std::size_t>(m) * g.kernel().size());
        std::vector<std::size_t> coset_sizes(static_cast<std::size_t>(m), 0);
        for (std::size_t a = 0; a < g.order(); ++a) {
            ++coset_sizes[static_cast<std::size_t>(g.element(a).sigma)];
            CHECK(g.multiply(a, g.inverse(a)) == g.identity());
            CHECK(g.multiply(g.inverse(a), a) == g.identity());
            for (std::size_t b = 0; b < g.order(); ++b) {
                const auto ab = g.multiply(a, b);
                CHECK(g.element(ab).sigma == (g.element(a).sigma + g.element(b).sigma) % m);
                CHECK(g.element(ab).rho == g.element(a).rho * g.element(b).rho);
                CHECK(g.element(ab).eta == g.element(a).eta * g.element(b).eta);
            }
        }
        for (auto n : coset_sizes) CHECK(n == g.kernel().size());
        // the sets {sigma = k} are the cosets delta^k K
        const auto reps = coset_representatives(g);
        for (int k = 0; k < m; ++k) {
            std::set<std::size_t> coset;
            for (auto kappa : g.kernel()) coset.insert(g.multiply(reps[std::size_t(k)], kappa));
            std::set<std::size_t> level;
            for (const auto& e : g.elements())
                if (e.sigma == k) level.insert(e.index);
            CHECK(coset == level);
        }
        CHECK(g.element(g.multiply(reps.back(), g.delta())).sigma == 0);
    }
}

TEST_CASE("closure does not depend on generator order") {
    std::mt19937_64 rng(21);
    const auto w = zeta(1, 3), w2 = zeta(2, 3), one = Cyclotomic(1);
    std::vector<GeneratorInput> gens{{diag({w, w2, one, one}), diag({w, one}), 0},
                                     {diag({one, one, w, w2}), diag({one, w}), 1},
                                     {diag({w, w2, w, w2}), diag({w, w}), 1}};
    const auto base = element_keys(close_group(gens, 3, 100));
    for (int s = 0; s < 6; ++s) {
        std::shuffle(gens.begin(), gens.end(), rng);
        const auto g = close_group(gens, 3, 100);
        CHECK(element_keys(g) == base);
        CHECK(g.order() == 9);
    }
}

TEST_CASE("with_delta accepts only weight-one elements") {
    const auto g = paper().group;
    for (const auto& e : g.elements()) {
        if (e.sigma == 1) {
            const auto h = g.with_delta(e.index);
            CHECK(h.delta() == e.index);
            CHECK(h.element(coset_representatives(h)[2]).sigma == 2);
        } else {
            CHECK_THROWS_AS(g.with_delta(e.index), InvalidInput);
        }
    }
}
