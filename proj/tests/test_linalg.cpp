#include <catch_amalgamated.hpp>

#include <random>

#include "random_polys.hpp"
#include "relequiv/linalg.hpp"

using namespace relequiv;
using namespace samples;

TEST_CASE("echelon rank of small spans") {
    const auto x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    const auto w = Cyclotomic::root_of_unity(1, 3);
    CoordinateIndex idx;
    EchelonBasis b;
    CHECK(b.insert(to_vector(x * x + y * y, idx)));
    CHECK(b.insert(to_vector(x * y * w, idx)));
    CHECK(!b.insert(to_vector((x * x + y * y) * w + x * y, idx)));
    CHECK(b.rank() == 2);
    CHECK(b.contains(to_vector(x * y, idx)));
    CHECK(!b.contains(to_vector(x * x, idx)));
    CHECK(!b.insert(SparseVector{}));
}

TEST_CASE("maps use one coordinate block per component") {
    const auto x = Poly::variable(1, 0);
    CoordinateIndex idx;
    EchelonBasis b;
    CHECK(b.insert(to_vector(PolyMap(std::vector<Poly>{x, Poly(1)}), idx)));
    CHECK(b.insert(to_vector(PolyMap(std::vector<Poly>{Poly(1), x}), idx)));
    CHECK(b.contains(to_vector(PolyMap(std::vector<Poly>{x, x}), idx)));
    CHECK(idx.size() == 2);
}

TEST_CASE("random combinations lie in the span; rank is the number of independent inputs") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 60; ++t) {
        CoordinateIndex idx;
        EchelonBasis b;
        std::vector<Poly> gens;
        for (int k = 0; k < 4; ++k) gens.push_back(random_poly(rng, 3, 3, 5, true, 3));
        for (const auto& g : gens) b.insert(to_vector(g, idx));
        CHECK(b.rank() <= gens.size());
        Poly combo(3);
        for (const auto& g : gens) combo += g * random_scalar(rng, 5);
        CHECK(b.contains(to_vector(combo, idx)));
        // Independent rank recount: a basis built in reverse order has the same size.
        CoordinateIndex idx2;
        EchelonBasis r;
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) r.insert(to_vector(*it, idx2));
        CHECK(r.rank() == b.rank());
    }
}
