#pragma once

// Generating sets: Hilbert basis of P(K), K-equivariant module generators,
// ring generators of P(Gamma), relative-invariant generators from weighted
// products of projected K-invariants, the module basis B, and projected
// products v_i H_k for the relative equivariants. Every set is pruned degree
// by degree with exact linear algebra and certified against Molien series.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "relequiv/molien.hpp"
#include "relequiv/reynolds.hpp"

namespace relequiv {

enum class GeneratorKind { k_invariant, k_equivariant, ring_invariant, module_invariant, module_equivariant };

inline const char* to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::k_invariant: return "k-invariant";
        case GeneratorKind::k_equivariant: return "k-equivariant";
        case GeneratorKind::ring_invariant: return "ring-invariant";
        case GeneratorKind::module_invariant: return "module-invariant";
        case GeneratorKind::module_equivariant: return "module-equivariant";
    }
    return "?";
}

template <class T>
struct Generator {
    T value;
    int degree = 0;
    std::string provenance;   // e.g. "R_1(u4)", "R_2(v3*H1)", "avg_K(x1^3)"
    std::vector<int> origin;  // indices the provenance was built from; orders general forms
};

template <class T>
struct GeneratorSet {
    GeneratorKind kind = GeneratorKind::k_invariant;
    int j = 0;
    std::vector<Generator<T>> items;

    std::size_t size() const noexcept { return items.size(); }
    int max_degree() const {
        int d = 0;
        for (const auto& g : items) d = std::max(d, g.degree);
        return d;
    }
    std::vector<T> values() const {
        std::vector<T> v;
        for (const auto& g : items) v.push_back(g.value);
        return v;
    }
};

/// Largest monomial in grlex and the lowest coordinate carrying it.
inline std::pair<Exponents, std::size_t> leading_position(const PolyMap& g) {
    std::optional<Exponents> best;
    std::size_t comp = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].is_zero()) continue;
        const Exponents& e = g[i].leading_term().first;
        if (!best || GrlexLess{}(*best, e)) {
            best = e;
            comp = i;
        }
    }
    return {best.value_or(Exponents{}), comp};
}

inline std::pair<Exponents, std::size_t> leading_position(const Poly& p) {
    return {p.is_zero() ? Exponents{} : p.leading_term().first, 0};
}

/// Scale so that the leading coefficient is 1.
template <class T>
T normalized(const T& x) {
    return x * leading_coefficient(x).inverse();
}

/// Output order: degree ascending, then leading term descending in grlex,
/// then lower leading coordinate first.
template <class T>
void sort_generators(std::vector<Generator<T>>& items) {
    std::stable_sort(items.begin(), items.end(), [](const Generator<T>& a, const Generator<T>& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        const auto [ea, ca] = leading_position(a.value);
        const auto [eb, cb] = leading_position(b.value);
        if (ea != eb) return GrlexLess{}(eb, ea);
        return ca < cb;
    });
}

/// Degreewise bases of the subalgebra generated by homogeneous polynomials of
/// positive degree. Degrees are built in order; generators may be offered at
/// the degree currently being built.
class GradedAlgebra {
   public:
    explicit GradedAlgebra(std::size_t nvars) : nvars_(nvars) {
        bases_.push_back({Poly::constant(nvars, Cyclotomic(1))});
    }

    std::size_t nvars() const noexcept { return nvars_; }
    int built_degree() const noexcept { return static_cast<int>(bases_.size()) - 1; }
    const std::vector<Poly>& generators() const noexcept { return gens_; }

    /// Builds degree built_degree()+1 from the current generators, then offers
    /// the candidates in order; returns the indices of accepted candidates.
    std::vector<std::size_t> build_next(const std::vector<Poly>& candidates = {}) {
        const int d = built_degree() + 1;
        CoordinateIndex index;
        EchelonBasis echelon;
        std::vector<Poly> basis;
        for (const Poly& u : gens_) {
            const int e = u.degree();
            for (const Poly& a : bases_[static_cast<std::size_t>(d - e)]) {
                Poly p = u * a;
                if (echelon.insert(to_vector(p, index))) basis.push_back(std::move(p));
            }
        }
        std::vector<std::size_t> accepted;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const Poly& c = candidates[i];
            if (c.is_zero()) continue;
            if (!c.is_homogeneous() || c.degree() != d) throw InvalidInput("candidate of the wrong degree");
            if (!echelon.insert(to_vector(c, index))) continue;
            accepted.push_back(i);
            gens_.push_back(c);
            basis.push_back(c);
        }
        bases_.push_back(std::move(basis));
        return accepted;
    }

    const std::vector<Poly>& basis(int d) {
        while (built_degree() < d) build_next();
        return bases_.at(static_cast<std::size_t>(d));
    }
    std::size_t dim(int d) { return basis(d).size(); }

    static GradedAlgebra from_generators(std::size_t nvars, const std::vector<Poly>& gens) {
        GradedAlgebra a(nvars);
        int top = 0;
        for (const auto& g : gens) top = std::max(top, g.degree());
        for (int d = 1; d <= top; ++d) {
            std::vector<Poly> at_d;
            for (const auto& g : gens)
                if (g.degree() == d) at_d.push_back(g);
            a.build_next(at_d);
        }
        return a;
    }

   private:
    std::size_t nvars_;
    std::vector<Poly> gens_;
    std::vector<std::vector<Poly>> bases_;
};

namespace detail {

template <class T>
struct ModuleSpan {
    CoordinateIndex index;
    EchelonBasis echelon;
};

// Echelon span of r * g over ring basis elements r of degree d - deg g.
template <class T>
void fill_module_degree(GradedAlgebra& ring, const std::vector<T>& gens, int d, ModuleSpan<T>& span) {
    for (const T& g : gens) {
        const int e = g.degree();
        if (e > d) continue;
        for (const Poly& r : ring.basis(d - e)) span.echelon.insert(to_vector(r * g, span.index));
    }
}

}  // namespace detail

/// dim of the degree-d part of the ring-module generated by homogeneous gens.
template <class T>
std::size_t module_dim(GradedAlgebra& ring, const std::vector<T>& gens, int d) {
    detail::ModuleSpan<T> span;
    detail::fill_module_degree(ring, gens, d, span);
    return span.echelon.rank();
}

template <class T>
std::vector<std::int64_t> module_dims(GradedAlgebra& ring, const std::vector<T>& gens, int dmax) {
    std::vector<std::int64_t> out;
    for (int d = 0; d <= dmax; ++d) out.push_back(static_cast<std::int64_t>(module_dim(ring, gens, d)));
    return out;
}

/// Greedy degreewise selection: candidates (homogeneous, any order) are
/// grouped by degree; within a degree the given order is kept. A candidate is
/// accepted if it is not in the module spanned by ring multiples of what has
/// been accepted so far. Returns the accepted indices in processing order.
template <class T>
std::vector<std::size_t> select_module_generators(GradedAlgebra& ring, const std::vector<T>& candidates,
                                                  const std::vector<T>& already = {}) {
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::erase_if(order, [&](std::size_t i) { return candidates[i].is_zero(); });
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return candidates[a].degree() < candidates[b].degree(); });
    std::vector<T> gens = already;
    std::vector<std::size_t> accepted;
    std::size_t pos = 0;
    while (pos < order.size()) {
        const int d = candidates[order[pos]].degree();
        detail::ModuleSpan<T> span;
        detail::fill_module_degree(ring, gens, d, span);
        for (; pos < order.size() && candidates[order[pos]].degree() == d; ++pos) {
            const T& c = candidates[order[pos]];
            if (span.echelon.insert(to_vector(c, span.index))) {
                accepted.push_back(order[pos]);
                gens.push_back(c);
            }
        }
    }
    return accepted;
}

namespace detail {

inline std::string monomial_provenance(const Exponents& e, const std::vector<std::string>& names) {
    return Poly::monomial(e, Cyclotomic(1)).to_string(names);
}

inline int default_check_degree(int max_generator_degree, int requested) {
    return requested > 0 ? requested : std::max(6, 2 * max_generator_degree);
}

inline std::string dims_text(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

template <class T>
void require_relative(const GradedGroup& g, const GeneratorSet<T>& set, int j) {
    for (const auto& item : set.items)
        if (!is_relative(g, j, item.value))
            throw InconsistencyError("generator " + item.provenance + " fails its defining identity");
}

}  // namespace detail

struct KLevelOptions {
    int degree_bound = 0;  // 0: |K|
    int check_degree = 0;  // 0: max(6, 2 * max generator degree)
    std::vector<std::string> names;  // for provenance labels only
};

/// Hilbert basis of P(K): K-averages of monomials of degree <= bound, pruned
/// against the algebra generated so far, certified against the Molien series of K.
inline GeneratorSet<Poly> k_invariant_basis(const GradedGroup& g, KLevelOptions opt = {}) {
    const int bound = opt.degree_bound > 0 ? opt.degree_bound : static_cast<int>(g.kernel().size());
    const std::size_t n = g.source_dim();
    GradedAlgebra alg(n);
    GeneratorSet<Poly> out;
    out.kind = GeneratorKind::k_invariant;
    for (int d = 1; d <= bound; ++d) {
        const auto monos = monomials_of_degree(n, d);
        std::vector<Poly> cands;
        for (const auto& e : monos) cands.push_back(average_over_K(g, Poly::monomial(e, Cyclotomic(1))));
        for (std::size_t i : alg.build_next(cands))
            out.items.push_back({normalized(cands[i]), d, "avg_K(" + detail::monomial_provenance(monos[i], opt.names) + ")",
                                 {static_cast<int>(i)}});
    }
    sort_generators(out.items);
    const int check = detail::default_check_degree(out.max_degree(), opt.check_degree);
    const IntSeries expected = kernel_molien_series(g, SeriesKind::invariant, check);
    for (int d = 0; d <= check; ++d)
        if (static_cast<std::int64_t>(alg.dim(d)) != expected[static_cast<std::size_t>(d)])
            throw ValidationError("degree bound insufficient; rerun with larger bound (K-invariants, degree " +
                                  std::to_string(d) + ")");
    return out;
}

/// Generators of the K-equivariants over P(K): K-averages of single-monomial
/// maps of degree <= bound, pruned against P(K)-multiples of accepted maps.
inline GeneratorSet<PolyMap> k_equivariant_generators(const GradedGroup& g, const GeneratorSet<Poly>& k_invariants,
                                                      KLevelOptions opt = {}) {
    const int bound = opt.degree_bound > 0 ? opt.degree_bound : static_cast<int>(g.kernel().size());
    const std::size_t n = g.source_dim(), w = g.target_dim();
    GradedAlgebra ring = GradedAlgebra::from_generators(n, k_invariants.values());
    std::vector<PolyMap> cands;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> origins;
    for (int d = 0; d <= bound; ++d) {
        const auto monos = monomials_of_degree(n, d);
        for (std::size_t c = 0; c < w; ++c)
            for (std::size_t i = 0; i < monos.size(); ++i) {
                cands.push_back(average_over_K(g, PolyMap::unit(w, c, Poly::monomial(monos[i], Cyclotomic(1)))));
                labels.push_back("avg_K(e" + std::to_string(c + 1) + "*" + detail::monomial_provenance(monos[i], opt.names) + ")");
                origins.push_back({d, static_cast<int>(c), static_cast<int>(i)});
            }
    }
    GeneratorSet<PolyMap> out;
    out.kind = GeneratorKind::k_equivariant;
    for (std::size_t i : select_module_generators(ring, cands))
        out.items.push_back({normalized(cands[i]), cands[i].degree(), labels[i], origins[i]});
    sort_generators(out.items);
    const int check = detail::default_check_degree(out.max_degree(), opt.check_degree);
    const IntSeries expected = kernel_molien_series(g, SeriesKind::equivariant, check);
    const auto dims = module_dims(ring, out.values(), check);
    for (int d = 0; d <= check; ++d)
        if (dims[static_cast<std::size_t>(d)] != expected[static_cast<std::size_t>(d)])
            throw ValidationError("degree bound insufficient; rerun with larger bound (K-equivariants, degree " +
                                  std::to_string(d) + ")");
    return out;
}

/// A projected K-invariant R_l(u_i) of nonzero weight l.
struct WeightedFactor {
    int weight = 0;
    std::size_t index = 0;  // position of u_i in the Hilbert basis
    Poly value;
};

/// All nonzero R_l(u_i), ordered by i then l. Weight 0 is included.
inline std::vector<WeightedFactor> projected_factors(const GradedGroup& g, const GeneratorSet<Poly>& u) {
    std::vector<WeightedFactor> out;
    for (std::size_t i = 0; i < u.items.size(); ++i)
        for (int l = 0; l < g.modulus(); ++l) {
            Poly p = relative_project(g, l, u.items[i].value);
            if (!p.is_zero()) out.push_back({l, i, std::move(p)});
        }
    return out;
}

/// True iff no nonempty proper sub-multiset of weights sums to 0 mod m.
inline bool is_irreducible_pattern(const std::vector<int>& weights, int m) {
    const std::size_t len = weights.size();
    if (len >= 8 * sizeof(unsigned long) - 1) throw InvalidInput("pattern too long");
    const unsigned long full = (1UL << len) - 1;
    for (unsigned long mask = 1; mask < full; ++mask) {
        long s = 0;
        for (std::size_t b = 0; b < len; ++b)
            if (mask & (1UL << b)) s += weights[b];
        if (s % m == 0) return false;
    }
    return true;
}

/// Multisets (nondecreasing index lists into `factors`) of size 1..max_len
/// whose weights sum to j mod m; optionally only irreducible ones.
inline std::vector<std::vector<std::size_t>> weight_patterns(const std::vector<WeightedFactor>& factors, int m, int j,
                                                             int max_len, bool irreducible_only) {
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i].weight != 0) usable.push_back(i);
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int sum) {
        if (!cur.empty() && sum % m == j) {
            std::vector<int> w;
            for (std::size_t f : cur) w.push_back(factors[f].weight);
            if (!irreducible_only || is_irreducible_pattern(w, m)) out.push_back(cur);
        }
        if (static_cast<int>(cur.size()) == max_len) return;
        for (std::size_t k = start; k < usable.size(); ++k) {
            cur.push_back(usable[k]);
            rec(k, (sum + factors[usable[k]].weight) % m);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

namespace detail {

inline Poly pattern_product(const std::vector<WeightedFactor>& factors, const std::vector<std::size_t>& pattern,
                            std::size_t nvars) {
    Poly p = Poly::constant(nvars, Cyclotomic(1));
    for (std::size_t f : pattern) p = p * factors[f].value;
    return p;
}

inline std::string pattern_label(const std::vector<WeightedFactor>& factors, const std::vector<std::size_t>& pattern) {
    std::string s;
    for (std::size_t f : pattern) {
        if (!s.empty()) s += "*";
        s += "R_" + std::to_string(factors[f].weight) + "(u" + std::to_string(factors[f].index) + ")";
    }
    return s;
}

inline std::vector<int> pattern_origin(const std::vector<WeightedFactor>& factors,
                                       const std::vector<std::size_t>& pattern) {
    std::vector<int> o;
    for (std::size_t f : pattern) o.push_back(static_cast<int>(factors[f].index));
    return o;
}

inline void check_against_series(const std::vector<std::int64_t>& dims, const IntSeries& expected,
                                 const std::string& what) {
    for (std::size_t d = 0; d < dims.size(); ++d)
        if (dims[d] != expected[d])
            throw InconsistencyError(what + ": generated dimensions " + dims_text(dims) + " differ from Molien " +
                                     expected.to_string() + " at degree " + std::to_string(d));
}

}  // namespace detail

/// Ring generators of P(Gamma): R_0(u_i) and products of weighted factors
/// over minimal zero-sum patterns (length <= m), pruned degreewise.
inline GeneratorSet<Poly> invariant_ring_generators(const GradedGroup& g, const std::vector<WeightedFactor>& factors,
                                                    int check_degree = 0) {
    const int m = g.modulus();
    const std::size_t n = g.source_dim();
    std::vector<Poly> cands;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> origins;
    for (const auto& f : factors)
        if (f.weight == 0) {
            cands.push_back(f.value);
            labels.push_back("R_0(u" + std::to_string(f.index) + ")");
            origins.push_back({static_cast<int>(f.index)});
        }
    for (const auto& pat : weight_patterns(factors, m, 0, m, true)) {
        cands.push_back(detail::pattern_product(factors, pat, n));
        labels.push_back(detail::pattern_label(factors, pat));
        origins.push_back(detail::pattern_origin(factors, pat));
    }
    std::vector<std::size_t> order(cands.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::erase_if(order, [&](std::size_t i) { return cands[i].is_zero(); });
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cands[a].degree() < cands[b].degree(); });

    GradedAlgebra alg(n);
    GeneratorSet<Poly> out;
    out.kind = GeneratorKind::ring_invariant;
    std::size_t pos = 0;
    while (pos < order.size()) {
        const int d = cands[order[pos]].degree();
        while (alg.built_degree() < d - 1) alg.build_next();
        std::vector<Poly> at_d;
        std::vector<std::size_t> idx;
        for (; pos < order.size() && cands[order[pos]].degree() == d; ++pos) {
            at_d.push_back(cands[order[pos]]);
            idx.push_back(order[pos]);
        }
        for (std::size_t a : alg.build_next(at_d))
            out.items.push_back({normalized(at_d[a]), d, labels[idx[a]], origins[idx[a]]});
    }
    sort_generators(out.items);
    detail::require_relative(g, out, 0);
    const int check = detail::default_check_degree(out.max_degree(), check_degree);
    std::vector<std::int64_t> dims;
    for (int d = 0; d <= check; ++d) dims.push_back(static_cast<std::int64_t>(alg.dim(d)));
    detail::check_against_series(dims, molien_series(g, 0, SeriesKind::invariant, check), "invariant ring");
    return out;
}

/// Generators of the sigma^j-relative invariants over P(Gamma), 1 <= j < m:
/// products over irreducible weight patterns summing to j (length <= m - 1).
inline GeneratorSet<Poly> relative_invariant_generators(const GradedGroup& g, int j,
                                                        const std::vector<WeightedFactor>& factors,
                                                        GradedAlgebra& ring, int check_degree = 0) {
    const int m = g.modulus();
    if (j < 1 || j >= m) throw InvalidInput("relative invariant index must satisfy 1 <= j < m");
    std::vector<Poly> cands;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> origins;
    for (const auto& pat : weight_patterns(factors, m, j, m - 1, true)) {
        cands.push_back(detail::pattern_product(factors, pat, g.source_dim()));
        labels.push_back(detail::pattern_label(factors, pat));
        origins.push_back(detail::pattern_origin(factors, pat));
    }
    GeneratorSet<Poly> out;
    out.kind = GeneratorKind::module_invariant;
    out.j = j;
    for (std::size_t i : select_module_generators(ring, cands))
        out.items.push_back({normalized(cands[i]), cands[i].degree(), labels[i], origins[i]});
    sort_generators(out.items);
    detail::require_relative(g, out, j);
    const int check = detail::default_check_degree(out.max_degree(), check_degree);
    detail::check_against_series(module_dims(ring, out.values(), check),
                                 molien_series(g, j, SeriesKind::invariant, check),
                                 "relative invariants j=" + std::to_string(j));
    return out;
}

/// B = {1} together with the relative-invariant generators for j = 1..m-1,
/// certified to generate P(K) as a P(Gamma)-module.
inline GeneratorSet<Poly> module_basis_B(const GradedGroup& g, const std::vector<GeneratorSet<Poly>>& relative,
                                         GradedAlgebra& ring, int check_degree = 0) {
    GeneratorSet<Poly> out;
    out.kind = GeneratorKind::module_invariant;
    out.items.push_back({Poly::constant(g.source_dim(), Cyclotomic(1)), 0, "1", {}});
    for (const auto& set : relative)
        for (const auto& item : set.items) {
            const bool dup = std::any_of(out.items.begin(), out.items.end(),
                                         [&](const Generator<Poly>& x) { return x.value == item.value; });
            if (!dup) out.items.push_back(item);
        }
    sort_generators(out.items);
    const int check = detail::default_check_degree(out.max_degree(), check_degree);
    detail::check_against_series(module_dims(ring, out.values(), check),
                                 kernel_molien_series(g, SeriesKind::invariant, check), "module basis of P(K)");
    return out;
}

/// Generators of the sigma^j-relative equivariants over P(Gamma): the
/// projections R_j(v_i H_k), pruned degreewise.
inline GeneratorSet<PolyMap> relative_equivariant_generators(const GradedGroup& g, int j,
                                                             const GeneratorSet<Poly>& basis_B,
                                                             const GeneratorSet<PolyMap>& k_equivariants,
                                                             GradedAlgebra& ring, int check_degree = 0) {
    if (j < 0 || j >= g.modulus()) throw InvalidInput("j out of range");
    std::vector<PolyMap> cands;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> origins;
    for (std::size_t i = 0; i < basis_B.items.size(); ++i)
        for (std::size_t k = 0; k < k_equivariants.items.size(); ++k) {
            cands.push_back(relative_project_map(g, j, basis_B.items[i].value * k_equivariants.items[k].value));
            labels.push_back("R_" + std::to_string(j) + "(v" + std::to_string(i) + "*H" + std::to_string(k) + ")");
            origins.push_back({static_cast<int>(i), static_cast<int>(k)});
        }
    GeneratorSet<PolyMap> out;
    out.kind = GeneratorKind::module_equivariant;
    out.j = j;
    for (std::size_t i : select_module_generators(ring, cands))
        out.items.push_back({normalized(cands[i]), cands[i].degree(), labels[i], origins[i]});
    sort_generators(out.items);
    detail::require_relative(g, out, j);
    const int check = detail::default_check_degree(out.max_degree(), check_degree);
    detail::check_against_series(module_dims(ring, out.values(), check),
                                 molien_series(g, j, SeriesKind::equivariant, check),
                                 "relative equivariants j=" + std::to_string(j));
    return out;
}

struct DavenportReport {
    int j = 0;
    std::size_t patterns_checked = 0;
    std::size_t new_generators = 0;
};

/// Every product over a weight pattern of length <= m (irreducible or not)
/// summing to j must already lie in the P(Gamma)-module spanned by `accepted`.
inline DavenportReport davenport_check(const GradedGroup& g, int j, const std::vector<WeightedFactor>& factors,
                                       GradedAlgebra& ring, const GeneratorSet<Poly>& accepted) {
    DavenportReport r;
    r.j = j;
    std::vector<Poly> cands;
    for (const auto& pat : weight_patterns(factors, g.modulus(), j, g.modulus(), false))
        cands.push_back(detail::pattern_product(factors, pat, g.source_dim()));
    r.patterns_checked = cands.size();
    r.new_generators = select_module_generators(ring, cands, accepted.values()).size();
    return r;
}

struct PipelineOptions {
    int k_degree_bound = 0;
    int check_degree = 0;
    std::vector<std::string> names;
};

/// Everything the generator commands print, computed once.
struct Pipeline {
    GeneratorSet<Poly> k_invariants;
    GeneratorSet<PolyMap> k_equivariants;
    std::vector<WeightedFactor> factors;
    GeneratorSet<Poly> ring;                        // P(Gamma) as an algebra
    std::vector<GeneratorSet<Poly>> invariants;     // index j; j = 0 is `ring`
    GeneratorSet<Poly> basis_B;
    std::vector<GeneratorSet<PolyMap>> equivariants;  // index j
    std::vector<DavenportReport> davenport;         // j = 1..m-1
};

inline Pipeline run_pipeline(const GradedGroup& g, PipelineOptions opt = {}) {
    Pipeline p;
    const KLevelOptions k_opt{opt.k_degree_bound, opt.check_degree, opt.names};
    p.k_invariants = k_invariant_basis(g, k_opt);
    p.k_equivariants = k_equivariant_generators(g, p.k_invariants, k_opt);
    p.factors = projected_factors(g, p.k_invariants);
    p.ring = invariant_ring_generators(g, p.factors, opt.check_degree);
    GradedAlgebra ring = GradedAlgebra::from_generators(g.source_dim(), p.ring.values());
    p.invariants.push_back(p.ring);
    for (int j = 1; j < g.modulus(); ++j)
        p.invariants.push_back(relative_invariant_generators(g, j, p.factors, ring, opt.check_degree));
    p.basis_B = module_basis_B(g, {p.invariants.begin() + 1, p.invariants.end()}, ring, opt.check_degree);
    for (int j = 0; j < g.modulus(); ++j)
        p.equivariants.push_back(
            relative_equivariant_generators(g, j, p.basis_B, p.k_equivariants, ring, opt.check_degree));
    for (int j = 1; j < g.modulus(); ++j)
        p.davenport.push_back(davenport_check(g, j, p.factors, ring, p.invariants[static_cast<std::size_t>(j)]));
    return p;
}

/// Rendered general form g = sum_i f_i * (generator i).
struct GeneralForm {
    std::string text;
    std::string latex;
    int first_index = 1;
    int count = 0;
};

namespace detail {

inline std::size_t first_nonzero_component(const PolyMap& h) {
    for (std::size_t c = 0; c < h.size(); ++c)
        if (!h[c].is_zero()) return c;
    return h.size();
}

inline bool is_single_term(const Poly& p) { return p.terms().size() == 1; }

}  // namespace detail

/// Coefficient functions are numbered from `first_index`, generators taken
/// component by component and, within a component, in order of origin.
inline GeneralForm general_form(const GeneratorSet<PolyMap>& gens, std::size_t components, int first_index,
                                const std::vector<std::string>& names, const std::vector<std::string>& latex_names,
                                const std::string& symbol = "g") {
    std::vector<std::size_t> order(gens.items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ca = detail::first_nonzero_component(gens.items[a].value);
        const auto cb = detail::first_nonzero_component(gens.items[b].value);
        if (ca != cb) return ca < cb;
        return gens.items[a].origin < gens.items[b].origin;
    });
    std::vector<std::string> text(components), tex(components);
    int f = first_index;
    for (std::size_t idx : order) {
        const PolyMap& h = gens.items[idx].value;
        const std::string ft = "f" + std::to_string(f);
        const std::string fl = "f_{" + std::to_string(f) + "}(z)";
        for (std::size_t c = 0; c < components; ++c) {
            const Poly& p = h[c];
            if (p.is_zero()) continue;
            std::string t, l;
            if (p.degree() == 0 && p.terms().size() == 1 && p.leading_term().second.is_one()) {
                t = ft;
                l = fl;
            } else if (detail::is_single_term(p)) {
                t = ft + "*" + p.to_string(names);
                l = fl + " " + p.to_latex(latex_names);
            } else {
                t = ft + "*(" + p.to_string(names) + ")";
                l = fl + " \\left(" + p.to_latex(latex_names) + "\\right)";
            }
            text[c] += text[c].empty() ? t : " + " + t;
            tex[c] += tex[c].empty() ? l : " + " + l;
        }
        ++f;
    }
    GeneralForm out;
    out.first_index = first_index;
    out.count = f - first_index;
    out.text = symbol + " = (";
    out.latex = symbol + "(z) = \\bigl(";
    for (std::size_t c = 0; c < components; ++c) {
        out.text += (c ? ", " : "") + (text[c].empty() ? std::string("0") : text[c]);
        out.latex += (c ? ", " : "") + (tex[c].empty() ? std::string("0") : tex[c]);
    }
    out.text += ")";
    out.latex += "\\bigr)";
    return out;
}

}  // namespace relequiv
