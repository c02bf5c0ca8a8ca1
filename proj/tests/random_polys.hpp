#pragma once

// Seeded generators for random polynomials and maps over Q(zeta_N).

#include <random>

#include "relequiv/polynomial.hpp"

namespace samples {

using relequiv::Cyclotomic;
using relequiv::Exponents;
using relequiv::Poly;
using relequiv::PolyMap;

inline Cyclotomic random_scalar(std::mt19937_64& rng, int conductor) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3), ex(0, conductor - 1), terms(1, 2);
    Cyclotomic x;
    for (int t = terms(rng); t > 0; --t)
        x += Cyclotomic(relequiv::Rational(num(rng), den(rng))) * Cyclotomic::root_of_unity(ex(rng), conductor);
    return x;
}

/// Up to `terms` random monomials of degree <= max_degree (homogeneous of
/// degree `max_degree` when `homogeneous` is set).
inline Poly random_poly(std::mt19937_64& rng, std::size_t nvars, int max_degree, int conductor,
                        bool homogeneous = false, int terms = 4) {
    std::uniform_int_distribution<int> deg(0, max_degree), pick(0, static_cast<int>(nvars) - 1);
    Poly p(nvars);
    for (int t = 0; t < terms; ++t) {
        const int d = homogeneous ? max_degree : deg(rng);
        Exponents e(nvars, 0);
        for (int k = 0; k < d; ++k) ++e[static_cast<std::size_t>(pick(rng))];
        p.add_term(e, random_scalar(rng, conductor));
    }
    return p;
}

inline PolyMap random_map(std::mt19937_64& rng, std::size_t components, std::size_t nvars, int max_degree,
                          int conductor, bool homogeneous = false) {
    std::vector<Poly> c;
    for (std::size_t i = 0; i < components; ++i)
        c.push_back(random_poly(rng, nvars, max_degree, conductor, homogeneous, 3));
    return PolyMap(c);
}

}  // namespace samples
