#pragma once

// Averaging operators: the Reynolds operator of K = ker(sigma) and the
// sigma^j-relative projectors built from the coset representatives delta^k.

#include <cstddef>
#include <string>

#include "relequiv/polynomial.hpp"

namespace relequiv {

enum class ProjectorVariant { scalar, vector };

struct ProjectorKind {
    int j = 0;
    ProjectorVariant variant = ProjectorVariant::scalar;
};

/// (1/|K|) sum_{k in K} act(k, input).
template <class T>
T average_over_K(const GradedGroup& g, const T& input) {
    T sum = input * Cyclotomic(0);
    for (std::size_t k : g.kernel()) sum += act(g, k, input);
    return sum * Cyclotomic(Rational(1, static_cast<long>(g.kernel().size())));
}

template <class T>
bool is_K_invariant(const GradedGroup& g, const T& input) {
    for (std::size_t k : g.kernel())
        if (!(act(g, k, input) == input)) return false;
    return true;
}

namespace detail {

template <class T>
T relative_project_impl(const GradedGroup& g, int j, const T& input, const char* what) {
    const int m = g.modulus();
    if (j < 0 || j >= m) throw InvalidInput("projector index out of range");
    if (!is_K_invariant(g, input))
        throw InvalidInput(std::string("relative projector needs a K-") + what + " input");
    const auto reps = coset_representatives(g);
    T sum = input * Cyclotomic(0);
    for (int k = 0; k < m; ++k) {
        // conj(sigma(delta)^(jk)) = zeta_m^(-jk)
        const Cyclotomic weight = Cyclotomic::root_of_unity(-static_cast<long>(j) * k, m);
        sum += act(g, reps[static_cast<std::size_t>(k)], input) * weight;
    }
    return sum * Cyclotomic(Rational(1, m));
}

}  // namespace detail

/// R_j(f) = (1/m) sum_k conj(sigma(delta)^(jk)) f(delta^k x). Input must be K-invariant.
inline Poly relative_project(const GradedGroup& g, int j, const Poly& f) {
    return detail::relative_project_impl(g, j, f, "invariant");
}

/// Vector projector (1/m) sum_k conj(sigma(delta)^(jk)) eta(delta^k)^-1 h(rho(delta^k) x).
/// Input must be K-equivariant.
inline PolyMap relative_project_map(const GradedGroup& g, int j, const PolyMap& h) {
    return detail::relative_project_impl(g, j, h, "equivariant");
}

/// f(rho(gamma) x) = sigma^j(gamma) f(x) on every group generator.
inline bool is_relative_invariant(const GradedGroup& g, int j, const Poly& f) {
    for (std::size_t gen : g.generators())
        if (!(act_on_poly(g, gen, f) == f * g.sigma_character(gen, j))) return false;
    return true;
}

/// h(rho(gamma) x) = sigma^j(gamma) eta(gamma) h(x) on every group generator.
inline bool is_relative_equivariant(const GradedGroup& g, int j, const PolyMap& h) {
    for (std::size_t gen : g.generators())
        if (!(act_on_map(g, gen, h) == h * g.sigma_character(gen, j))) return false;
    return true;
}

inline bool is_relative(const GradedGroup& g, int j, const Poly& f) { return is_relative_invariant(g, j, f); }
inline bool is_relative(const GradedGroup& g, int j, const PolyMap& h) { return is_relative_equivariant(g, j, h); }

}  // namespace relequiv
