#pragma once

// Hilbert-Poincare series of relative invariants and relative equivariants,
// computed three ways: Molien sums over the group, symmetric-power character
// sums (whole group and coset by coset), and a brute-force nullity count.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "relequiv/linalg.hpp"

namespace relequiv {

enum class SeriesKind { invariant, equivariant };

inline const char* to_string(SeriesKind k) { return k == SeriesKind::invariant ? "invariant" : "equivariant"; }

/// Truncated power series with integer coefficients, degrees 0..dmax.
struct IntSeries {
    std::vector<std::int64_t> coeffs;

    int dmax() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    std::int64_t operator[](std::size_t d) const { return coeffs.at(d); }

    friend bool operator==(const IntSeries&, const IntSeries&) = default;

    /// "1 + 2*t^2 + 4*t^3"
    std::string to_string() const {
        std::string s;
        for (std::size_t d = 0; d < coeffs.size(); ++d) {
            const std::int64_t c = coeffs[d];
            if (c == 0) continue;
            std::string term;
            if (d == 0)
                term = std::to_string(c);
            else {
                const std::string power = d == 1 ? "t" : "t^" + std::to_string(d);
                term = c == 1 ? power : std::to_string(c) + "*" + power;
            }
            s += s.empty() ? term : " + " + term;
        }
        return s.empty() ? "0" : s;
    }

    std::string to_latex() const {
        std::string s;
        for (std::size_t d = 0; d < coeffs.size(); ++d) {
            const std::int64_t c = coeffs[d];
            if (c == 0) continue;
            std::string term;
            if (d == 0)
                term = std::to_string(c);
            else {
                const std::string power = d == 1 ? "t" : "t^{" + std::to_string(d) + "}";
                term = c == 1 ? power : std::to_string(c) + power;
            }
            s += s.empty() ? term : " + " + term;
        }
        return (s.empty() ? "0" : s) + " + \\cdots";
    }
};

/// True iff both series agree on their common degree range.
inline bool agree_up_to_common_dmax(const IntSeries& a, const IntSeries& b) {
    const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
    return std::equal(a.coeffs.begin(), a.coeffs.begin() + static_cast<std::ptrdiff_t>(n), b.coeffs.begin());
}

namespace detail {

using UPoly = std::vector<Cyclotomic>;  // univariate in t, lowest degree first

inline void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t k = 0; k < b.size(); ++k)
            if (!b[k].is_zero()) r[i + k] += a[i] * b[k];
    }
    trim(r);
    return r;
}

inline UPoly sub(UPoly a, const UPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

inline UPoly divide_exact(UPoly num, const UPoly& den) {
    if (den.empty()) throw InvalidInput("polynomial division by zero");
    if (num.size() < den.size()) {
        if (!num.empty()) throw InconsistencyError("inexact polynomial division");
        return {};
    }
    UPoly q(num.size() - den.size() + 1);
    const Cyclotomic lead_inv = den.back().inverse();
    for (std::size_t i = num.size(); i-- >= den.size();) {
        if (num[i].is_zero()) continue;
        const Cyclotomic c = num[i] * lead_inv;
        q[i - den.size() + 1] = c;
        for (std::size_t k = 0; k < den.size(); ++k) num[i - den.size() + 1 + k] -= c * den[k];
    }
    trim(num);
    if (!num.empty()) throw InconsistencyError("inexact polynomial division");
    trim(q);
    return q;
}

}  // namespace detail

/// det(I - t A) as a polynomial in t, by fraction-free (Bareiss) elimination
/// over Q(zeta_N)[t]. Leading principal minors have constant term 1, so no
/// pivoting is ever needed.
inline std::vector<Cyclotomic> det_one_minus_tA(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return {Cyclotomic(1)};
    std::vector<std::vector<detail::UPoly>> m(n, std::vector<detail::UPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            detail::UPoly p{Cyclotomic(i == j ? 1 : 0), -a(i, j)};
            detail::trim(p);
            m[i][j] = std::move(p);
        }
    detail::UPoly prev{Cyclotomic(1)};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = detail::divide_exact(detail::sub(detail::mul(m[i][j], m[k][k]), detail::mul(m[i][k], m[k][j])),
                                               prev);
        prev = m[k][k];
    }
    return m[n - 1][n - 1];
}

/// Power series of 1/p(t) up to t^dmax; p(0) must be nonzero.
inline std::vector<Cyclotomic> invert_series(const std::vector<Cyclotomic>& p, int dmax) {
    if (p.empty() || p[0].is_zero()) throw InvalidInput("series not invertible");
    const Cyclotomic inv0 = p[0].inverse();
    std::vector<Cyclotomic> r(static_cast<std::size_t>(dmax) + 1);
    r[0] = inv0;
    for (std::size_t d = 1; d < r.size(); ++d) {
        Cyclotomic acc;
        for (std::size_t k = 1; k <= d && k < p.size(); ++k) acc += p[k] * r[d - k];
        r[d] = -acc * inv0;
    }
    return r;
}

namespace detail {

inline IntSeries to_int_series(const std::vector<Cyclotomic>& c) {
    IntSeries s;
    for (const auto& x : c) {
        std::int64_t v;
        try {
            v = to_integer(x);
        } catch (const InconsistencyError&) {
            throw InconsistencyError("inconsistent group/representation input: series coefficient " + x.to_string());
        }
        if (v < 0) throw InconsistencyError("inconsistent group/representation input: negative dimension");
        s.coeffs.push_back(v);
    }
    return s;
}

// Runs body(i) for i in [0, count) on up to `threads` workers; each worker
// accumulates into its own slot, and slots are merged in a fixed order.
inline std::vector<Cyclotomic> parallel_series_sum(std::size_t count, int dmax, unsigned threads,
                                                   const std::function<std::vector<Cyclotomic>(std::size_t)>& body) {
    const std::size_t len = static_cast<std::size_t>(dmax) + 1;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::vector<Cyclotomic>> partial(threads, std::vector<Cyclotomic>(len));
    auto work = [&](unsigned t) {
        for (std::size_t i = t; i < count; i += threads) {
            const auto term = body(i);
            for (std::size_t d = 0; d < len; ++d) partial[t][d] += term[d];
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    std::vector<Cyclotomic> total(len);
    for (const auto& p : partial)
        for (std::size_t d = 0; d < len; ++d) total[d] += p[d];
    return total;
}

}  // namespace detail

/// Molien average over the listed elements:
///   (1/|S|) sum_{gamma in S} sigma^j(gamma^-1) [chi_eta(gamma^-1)] / det(I - t rho(gamma)).
inline IntSeries molien_sum(const GradedGroup& g, std::span<const std::size_t> subset, int j, SeriesKind kind,
                            int dmax, unsigned threads = 1) {
    if (dmax < 0) throw InvalidInput("dmax must be nonnegative");
    auto sum = detail::parallel_series_sum(subset.size(), dmax, threads, [&](std::size_t i) {
        const std::size_t gamma = subset[i];
        const std::size_t inv = g.inverse(gamma);
        Cyclotomic weight = g.sigma_character(inv, j);
        if (kind == SeriesKind::equivariant) weight *= character(g, inv, Side::target);
        auto s = invert_series(det_one_minus_tA(g.element(gamma).rho), dmax);
        for (auto& c : s) c *= weight;
        return s;
    });
    const Cyclotomic scale(Rational(1, static_cast<long>(subset.size())));
    for (auto& c : sum) c *= scale;
    return detail::to_int_series(sum);
}

/// Phi_j (invariant) or Psi_j (equivariant) of the whole group.
inline IntSeries molien_series(const GradedGroup& g, int j, SeriesKind kind, int dmax, unsigned threads = 1) {
    if (j < 0 || j >= g.modulus()) throw InvalidInput("j out of range");
    std::vector<std::size_t> all(g.order());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return molien_sum(g, all, j, kind, dmax, threads);
}

/// Hilbert-Poincare series of P(K) or of the K-equivariants.
inline IntSeries kernel_molien_series(const GradedGroup& g, SeriesKind kind, int dmax, unsigned threads = 1) {
    return molien_sum(g, g.kernel(), 0, kind, dmax, threads);
}

/// Per element: chi_eta(gamma) and chi_(d)(gamma) = trace of rho(gamma) on S^d V, d = 0..dmax.
struct CharTable {
    std::vector<Cyclotomic> target_trace;
    std::vector<std::vector<Cyclotomic>> sym;
};

/// d chi_(d) = sum_{i<d} chi(gamma^(d-i)) chi_(i), with chi the source trace.
inline CharTable sym_power_characters(const GradedGroup& g, int dmax) {
    if (dmax < 0) throw InvalidInput("dmax must be nonnegative");
    CharTable table;
    for (const auto& e : g.elements()) {
        table.target_trace.push_back(e.eta.trace());
        std::vector<Cyclotomic> power_traces(static_cast<std::size_t>(dmax) + 1);
        Matrix p = e.rho;
        for (int k = 1; k <= dmax; ++k) {
            power_traces[static_cast<std::size_t>(k)] = p.trace();
            if (k < dmax) p = p * e.rho;
        }
        std::vector<Cyclotomic> chi(static_cast<std::size_t>(dmax) + 1);
        chi[0] = Cyclotomic(1);
        for (int d = 1; d <= dmax; ++d) {
            Cyclotomic acc;
            for (int i = 0; i < d; ++i)
                acc += power_traces[static_cast<std::size_t>(d - i)] * chi[static_cast<std::size_t>(i)];
            chi[static_cast<std::size_t>(d)] = acc * Cyclotomic(Rational(1, d));
        }
        table.sym.push_back(std::move(chi));
    }
    return table;
}

namespace detail {

// sigma^j(gamma) chi_(d)(gamma^-1) [chi_eta(gamma)]: the character of the
// induced action on degree-d polynomial functions is chi_(d) at gamma^-1.
inline Cyclotomic dimension_summand(const GradedGroup& g, const CharTable& t, std::size_t gamma, int j,
                                    SeriesKind kind, int d) {
    Cyclotomic v = g.sigma_character(gamma, j) * t.sym[g.inverse(gamma)][static_cast<std::size_t>(d)];
    if (kind == SeriesKind::equivariant) v *= t.target_trace[gamma];
    return v;
}

}  // namespace detail

/// dim P^d_{sigma^j} = (1/|G|) sum_gamma sigma^j(gamma) chi_(d)(gamma^-1) [chi(gamma)].
inline IntSeries dims_by_characters_global(const GradedGroup& g, const CharTable& t, int j, SeriesKind kind,
                                           int dmax) {
    std::vector<Cyclotomic> out;
    for (int d = 0; d <= dmax; ++d) {
        Cyclotomic acc;
        for (std::size_t gamma = 0; gamma < g.order(); ++gamma) acc += detail::dimension_summand(g, t, gamma, j, kind, d);
        out.push_back(acc * Cyclotomic(Rational(1, static_cast<long>(g.order()))));
    }
    return detail::to_int_series(out);
}

/// The same dimensions as (1/m) sum_k (1/|K|) sum_{kappa in K} of the summand at delta^k kappa.
inline IntSeries dims_by_characters_cosets(const GradedGroup& g, const CharTable& t, int j, SeriesKind kind,
                                           int dmax) {
    const auto reps = coset_representatives(g);
    std::vector<std::vector<std::size_t>> cosets;
    for (std::size_t r : reps) {
        std::vector<std::size_t> c;
        for (std::size_t kappa : g.kernel()) c.push_back(g.multiply(r, kappa));
        cosets.push_back(std::move(c));
    }
    const Cyclotomic inv_k(Rational(1, static_cast<long>(g.kernel().size())));
    const Cyclotomic inv_m(Rational(1, g.modulus()));
    std::vector<Cyclotomic> out;
    for (int d = 0; d <= dmax; ++d) {
        Cyclotomic outer;
        for (const auto& coset : cosets) {
            Cyclotomic inner;
            for (std::size_t gamma : coset) inner += detail::dimension_summand(g, t, gamma, j, kind, d);
            outer += inner * inv_k;
        }
        out.push_back(outer * inv_m);
    }
    return detail::to_int_series(out);
}

/// Both character routes; they must agree.
inline IntSeries dims_by_characters(const GradedGroup& g, int j, SeriesKind kind, int dmax) {
    if (j < 0 || j >= g.modulus()) throw InvalidInput("j out of range");
    const CharTable t = sym_power_characters(g, dmax);
    IntSeries whole = dims_by_characters_global(g, t, j, kind, dmax);
    IntSeries split = dims_by_characters_cosets(g, t, j, kind, dmax);
    if (!(whole == split))
        throw InconsistencyError("whole-group and coset-split character sums disagree: " + whole.to_string() +
                                 " vs " + split.to_string());
    return whole;
}

/// Nullity of the defining identities on the degree-d monomial basis, imposed
/// for every group generator.
inline std::int64_t dim_oracle(const GradedGroup& g, int j, SeriesKind kind, int d) {
    if (d < 0) throw InvalidInput("degree must be nonnegative");
    const std::size_t n = g.source_dim();
    const auto monos = monomials_of_degree(n, d);
    const std::size_t comps = kind == SeriesKind::invariant ? 1 : g.target_dim();
    CoordinateIndex index;
    EchelonBasis image;
    std::size_t basis_size = 0;
    for (std::size_t c = 0; c < comps; ++c)
        for (const auto& e : monos) {
            ++basis_size;
            SparseVector column;
            for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
                const std::size_t gen = g.generators()[gi];
                const Cyclotomic s = g.sigma_character(gen, j);
                if (kind == SeriesKind::invariant) {
                    const Poly b = Poly::monomial(e, Cyclotomic(1));
                    const Poly diff = act_on_poly(g, gen, b) - b * s;
                    for (const auto& [ex, x] : diff.terms()) column.emplace(index(gi, ex), x);
                } else {
                    const PolyMap b = PolyMap::unit(comps, c, Poly::monomial(e, Cyclotomic(1)));
                    const PolyMap diff = act_on_map(g, gen, b) - b * s;
                    for (std::size_t k = 0; k < comps; ++k)
                        for (const auto& [ex, x] : diff[k].terms()) column.emplace(index(gi * comps + k, ex), x);
                }
            }
            image.insert(std::move(column));
        }
    return static_cast<std::int64_t>(basis_size - image.rank());
}

}  // namespace relequiv
