#pragma once

// Sparse multivariate polynomials and polynomial maps over Q(zeta_N).
// Terms are kept in graded lexicographic order with x1 > x2 > ... > xn.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "relequiv/group.hpp"

namespace relequiv {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const int da = total_degree(a);
        const int db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// All exponent vectors of total degree d in n variables, in descending grlex order.
inline std::vector<Exponents> monomials_of_degree(std::size_t n, int d) {
    std::vector<Exponents> out;
    Exponents e(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == n) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (n == 0) {
        if (d == 0) out.push_back(e);
        return out;
    }
    rec(rec, 0, d);
    return out;
}

inline std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

class Poly {
   public:
    using Terms = std::map<Exponents, Cyclotomic, GrlexLess>;
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Cyclotomic& c) {
        Poly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }
    static Poly variable(std::size_t nvars, std::size_t i) {
        Exponents e(nvars, 0);
        e.at(i) = 1;
        return monomial(std::move(e), Cyclotomic(1));
    }
    static Poly monomial(Exponents e, const Cyclotomic& c) {
        Poly p(e.size());
        p.add_term(std::move(e), c);
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Exponents& e, const Cyclotomic& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int degree() const { return is_zero() ? kZeroDegree : total_degree(terms_.rbegin()->first); }

    bool is_homogeneous() const {
        if (is_zero()) return true;
        const int d = degree();
        return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return total_degree(t.first) == d; });
    }

    /// Largest term in grlex order. Precondition: nonzero.
    const std::pair<const Exponents, Cyclotomic>& leading_term() const { return *terms_.rbegin(); }

    Poly homogeneous_component(int d) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) == d) r.terms_.emplace_hint(r.terms_.end(), e, c);
        return r;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    Poly& operator+=(const Poly& rhs) {
        check_compatible(rhs);
        if (is_zero()) nvars_ = std::max(nvars_, rhs.nvars_);
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& rhs) {
        check_compatible(rhs);
        if (is_zero()) nvars_ = std::max(nvars_, rhs.nvars_);
        for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
        return *this;
    }
    Poly& operator*=(const Cyclotomic& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) t.second *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Cyclotomic& s) { return a *= s; }
    friend Poly operator*(const Cyclotomic& s, Poly a) { return a *= s; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_compatible(b);
        Poly r(std::max(a.nvars_, b.nvars_));
        Exponents e(r.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    std::string to_string(const std::vector<std::string>& names = {}) const;
    std::string to_latex(const std::vector<std::string>& names = {}) const;

   private:
    std::size_t nvars_ = 0;
    Terms terms_;

    void check_compatible(const Poly& other) const {
        if (nvars_ != other.nvars_ && !is_zero() && !other.is_zero())
            throw InvalidInput("polynomials in different numbers of variables");
    }
};

inline Poly pow(const Poly& p, int k) {
    Poly r = Poly::constant(p.nvars(), Cyclotomic(1));
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

/// A polynomial map V -> W, one polynomial per target coordinate.
class PolyMap {
   public:
    PolyMap() = default;
    PolyMap(std::size_t components, std::size_t nvars) : comps_(components, Poly(nvars)), nvars_(nvars) {}
    explicit PolyMap(std::vector<Poly> comps) : comps_(std::move(comps)) {
        nvars_ = comps_.empty() ? 0 : comps_.front().nvars();
        for (const auto& c : comps_)
            if (c.nvars() != nvars_) throw InvalidInput("map components in different numbers of variables");
    }

    /// The map with `p` in coordinate `i` and zero elsewhere.
    static PolyMap unit(std::size_t components, std::size_t i, Poly p) {
        PolyMap m(components, p.nvars());
        m.comps_.at(i) = std::move(p);
        return m;
    }

    std::size_t size() const noexcept { return comps_.size(); }
    std::size_t nvars() const noexcept { return nvars_; }
    const Poly& operator[](std::size_t i) const { return comps_.at(i); }
    Poly& operator[](std::size_t i) { return comps_.at(i); }
    const std::vector<Poly>& components() const noexcept { return comps_; }

    bool is_zero() const {
        return std::all_of(comps_.begin(), comps_.end(), [](const Poly& p) { return p.is_zero(); });
    }
    int degree() const {
        int d = Poly::kZeroDegree;
        for (const auto& c : comps_) d = std::max(d, c.degree());
        return d;
    }
    bool is_homogeneous_of_degree(int d) const {
        for (const auto& c : comps_)
            for (const auto& t : c.terms())
                if (total_degree(t.first) != d) return false;
        return true;
    }
    bool is_homogeneous() const { return is_zero() || is_homogeneous_of_degree(degree()); }

    PolyMap homogeneous_component(int d) const {
        PolyMap r = *this;
        for (auto& c : r.comps_) c = c.homogeneous_component(d);
        return r;
    }

    /// Leading coefficient: largest monomial in grlex; ties go to the lowest coordinate.
    Cyclotomic leading_coefficient() const {
        const Exponents* best = nullptr;
        Cyclotomic coeff;
        for (const auto& c : comps_) {
            if (c.is_zero()) continue;
            const auto& [e, v] = c.leading_term();
            if (!best || GrlexLess{}(*best, e)) {
                best = &e;
                coeff = v;
            }
        }
        return coeff;
    }

    PolyMap& operator+=(const PolyMap& rhs) {
        check_compatible(rhs);
        for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += rhs.comps_[i];
        return *this;
    }
    PolyMap& operator-=(const PolyMap& rhs) {
        check_compatible(rhs);
        for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= rhs.comps_[i];
        return *this;
    }
    PolyMap& operator*=(const Cyclotomic& s) {
        for (auto& c : comps_) c *= s;
        return *this;
    }
    friend PolyMap operator+(PolyMap a, const PolyMap& b) { return a += b; }
    friend PolyMap operator-(PolyMap a, const PolyMap& b) { return a -= b; }
    friend PolyMap operator*(PolyMap a, const Cyclotomic& s) { return a *= s; }
    friend PolyMap operator*(const Cyclotomic& s, PolyMap a) { return a *= s; }

    /// Module multiplication v * H.
    friend PolyMap operator*(const Poly& v, const PolyMap& h) {
        PolyMap r = h;
        for (auto& c : r.comps_) c = v * c;
        return r;
    }

    friend bool operator==(const PolyMap& a, const PolyMap& b) { return a.comps_ == b.comps_; }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        std::string s = "(";
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (i) s += ", ";
            s += comps_[i].to_string(names);
        }
        return s + ")";
    }
    std::string to_latex(const std::vector<std::string>& names = {}) const {
        std::string s = "\\bigl(";
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (i) s += ", ";
            s += comps_[i].to_latex(names);
        }
        return s + "\\bigr)";
    }

   private:
    std::vector<Poly> comps_;
    std::size_t nvars_ = 0;

    void check_compatible(const PolyMap& other) const {
        if (comps_.size() != other.comps_.size()) throw InvalidInput("maps with different numbers of components");
    }
};

inline Cyclotomic leading_coefficient(const Poly& p) { return p.is_zero() ? Cyclotomic() : p.leading_term().second; }
inline Cyclotomic leading_coefficient(const PolyMap& g) { return g.leading_coefficient(); }

template <class T>
T homogeneous_component(const T& p, int d) {
    return p.homogeneous_component(d);
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string monomial_text(const Exponents& e, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += names[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

inline std::string monomial_latex(const Exponents& e, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += " ";
        s += names[i];
        if (e[i] > 1) s += "^{" + std::to_string(e[i]) + "}";
    }
    return s;
}

inline std::string join_signed(std::string acc, const std::string& term) {
    if (acc.empty()) return term;
    if (!term.empty() && term[0] == '-') return acc + " - " + term.substr(1);
    return acc + " + " + term;
}

}  // namespace detail

inline std::string Poly::to_string(const std::vector<std::string>& given) const {
    if (is_zero()) return "0";
    const auto names = given.empty() ? default_names(nvars_) : given;
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const std::string mono = detail::monomial_text(e, names);
        std::string term;
        if (mono.empty())
            term = c.to_string();
        else if (c.is_one())
            term = mono;
        else if (c == Cyclotomic(-1))
            term = "-" + mono;
        else if (c.term_count() == 1)
            term = c.to_string() + "*" + mono;
        else
            term = "(" + c.to_string() + ")*" + mono;
        out = detail::join_signed(std::move(out), term);
    }
    return out;
}

inline std::string Poly::to_latex(const std::vector<std::string>& given) const {
    if (is_zero()) return "0";
    const auto names = given.empty() ? default_names(nvars_) : given;
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const std::string mono = detail::monomial_latex(e, names);
        std::string term;
        if (mono.empty())
            term = c.to_latex();
        else if (c.is_one())
            term = mono;
        else if (c == Cyclotomic(-1))
            term = "-" + mono;
        else if (c.term_count() == 1)
            term = c.to_latex() + " " + mono;
        else
            term = "\\left(" + c.to_latex() + "\\right) " + mono;
        out = detail::join_signed(std::move(out), term);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Group actions

inline Cyclotomic pow(const Cyclotomic& x, int k) {
    Cyclotomic r(1);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

/// x -> f(A x): each variable x_i is replaced by the i-th row form of A.
inline Poly substitute(const Matrix& a, const Poly& f) {
    const std::size_t n = f.nvars();
    if (a.rows() != n || a.cols() != n) throw InvalidInput("substitution matrix does not match variable count");

    // Monomial matrices (one nonzero per row) map monomials to monomials.
    std::vector<std::size_t> target(n, n);
    bool monomial_matrix = true;
    for (std::size_t i = 0; i < n && monomial_matrix; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a(i, k).is_zero()) continue;
            if (target[i] != n) {
                monomial_matrix = false;
                break;
            }
            target[i] = k;
        }
    for (std::size_t i = 0; i < n && monomial_matrix; ++i) monomial_matrix = target[i] != n;

    Poly r(n);
    if (monomial_matrix) {
        Exponents e2(n);
        for (const auto& [e, c] : f.terms()) {
            std::fill(e2.begin(), e2.end(), 0);
            Cyclotomic coeff = c;
            for (std::size_t i = 0; i < n; ++i) {
                if (e[i] == 0) continue;
                e2[target[i]] += e[i];
                coeff *= pow(a(i, target[i]), e[i]);
            }
            r.add_term(e2, coeff);
        }
        return r;
    }

    std::vector<std::vector<Poly>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly lin(n);
        for (std::size_t k = 0; k < n; ++k) {
            Exponents e(n, 0);
            e[k] = 1;
            lin.add_term(e, a(i, k));
        }
        powers[i] = {Poly::constant(n, Cyclotomic(1)), std::move(lin)};
    }
    auto power_of = [&](std::size_t i, int k) -> const Poly& {
        while (static_cast<int>(powers[i].size()) <= k) powers[i].push_back(powers[i].back() * powers[i][1]);
        return powers[i][static_cast<std::size_t>(k)];
    };
    for (const auto& [e, c] : f.terms()) {
        Poly t = Poly::constant(n, c);
        for (std::size_t i = 0; i < n; ++i)
            if (e[i] > 0) t = t * power_of(i, e[i]);
        r += t;
    }
    return r;
}

/// Left multiplication of a map's coordinate vector by a matrix.
inline PolyMap left_multiply(const Matrix& a, const PolyMap& g) {
    if (a.cols() != g.size()) throw InvalidInput("matrix does not match map dimension");
    PolyMap r(a.rows(), g.nvars());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (!a(i, k).is_zero() && !g[k].is_zero()) r[i] += g[k] * a(i, k);
    return r;
}

/// x -> f(rho(gamma) x).
inline Poly act_on_poly(const GradedGroup& g, std::size_t gamma, const Poly& f) {
    if (f.nvars() != g.source_dim()) throw InvalidInput("polynomial variable count does not match the group");
    return substitute(g.element(gamma).rho, f);
}

/// x -> eta(gamma)^-1 h(rho(gamma) x). Fixed points of this right action are the equivariants.
inline PolyMap act_on_map(const GradedGroup& g, std::size_t gamma, const PolyMap& h) {
    if (h.size() != g.target_dim()) throw InvalidInput("map dimension does not match the target representation");
    const Matrix& rho = g.element(gamma).rho;
    PolyMap sub(h.size(), h.nvars());
    for (std::size_t i = 0; i < h.size(); ++i) sub[i] = substitute(rho, h[i]);
    return left_multiply(g.element(g.inverse(gamma)).eta, sub);
}

inline Poly act(const GradedGroup& g, std::size_t gamma, const Poly& f) { return act_on_poly(g, gamma, f); }
inline PolyMap act(const GradedGroup& g, std::size_t gamma, const PolyMap& h) { return act_on_map(g, gamma, h); }

}  // namespace relequiv
