#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// An element of conductor N is stored as the residue of a rational polynomial
// in zeta_N modulo the N-th cyclotomic polynomial, i.e. as coefficients of
// zeta_N^0 ... zeta_N^(phi(N)-1). Rational values are always stored with
// conductor 1, so the representation is canonical for a fixed conductor and
// equality across conductors is decided after embedding into the lcm.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relequiv/errors.hpp"

namespace relequiv {

using Integer = mpz_class;
using Rational = mpq_class;

namespace detail {

using IntPoly = std::vector<long>;  // coefficients, lowest degree first
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of integer polynomials by a monic divisor.
inline IntPoly divide_monic(IntPoly num, const IntPoly& den) {
    const std::size_t dd = den.size() - 1;
    if (num.size() <= dd) return {};
    IntPoly quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
        const long c = num[i];
        quot[i - dd] = c;
        if (c == 0) continue;
        for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
    }
    return quot;
}

/// Phi_n as integer coefficients, computed as (x^n - 1) / prod_{d | n, d < n} Phi_d.
/// Memoized per thread; no state is shared between threads.
inline const IntPoly& cyclotomic_polynomial(int n) {
    thread_local std::unordered_map<int, IntPoly> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    IntPoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(d));
    return cache.emplace(n, std::move(p)).first->second;
}

// Reduce a rational polynomial modulo Phi_n in place; result has degree < phi(n).
inline void reduce_mod_cyclotomic(QPoly& p, int n) {
    const IntPoly& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = p.size(); i-- > deg;) {
        if (p[i] == 0) continue;
        const Rational c = p[i];
        for (std::size_t k = 0; k < deg; ++k)
            if (phi[k] != 0) p[i - deg + k] -= c * phi[k];
        p[i] = 0;
    }
    if (p.size() > deg) p.resize(deg);
    trim(p);
}

inline std::pair<QPoly, QPoly> divmod(QPoly num, const QPoly& den) {
    QPoly quot;
    if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rational(0));
    const Rational lead_inv = 1 / den.back();
    for (std::size_t i = num.size(); i-- >= den.size();) {
        if (num[i] == 0) continue;
        const Rational c = num[i] * lead_inv;
        quot[i - den.size() + 1] = c;
        for (std::size_t k = 0; k < den.size(); ++k) num[i - den.size() + 1 + k] -= c * den[k];
    }
    trim(quot);
    trim(num);
    return {std::move(quot), std::move(num)};
}

inline QPoly multiply(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t k = 0; k < b.size(); ++k)
            if (b[k] != 0) r[i + k] += a[i] * b[k];
    }
    trim(r);
    return r;
}

inline QPoly subtract(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

inline std::string rational_latex(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    std::string sign = r < 0 ? "-" : "";
    Integer num = abs(r.get_num());
    return sign + "\\frac{" + num.get_str() + "}{" + r.get_den().get_str() + "}";
}

}  // namespace detail

/// Degree of the n-th cyclotomic polynomial.
inline int euler_phi(int n) { return static_cast<int>(detail::cyclotomic_polynomial(n).size()) - 1; }

class Cyclotomic {
   public:
    Cyclotomic() = default;
    Cyclotomic(long value) {
        if (value != 0) coeffs_.emplace_back(value);
    }
    Cyclotomic(int value) : Cyclotomic(static_cast<long>(value)) {}
    // mpq_class(num, den) is not reduced; every entry point canonicalizes.
    Cyclotomic(const Rational& value) {
        if (value != 0) {
            coeffs_.push_back(value);
            coeffs_.back().canonicalize();
        }
    }

    /// zeta_n^k, canonically reduced.
    static Cyclotomic root_of_unity(long k, int n) {
        if (n < 1) throw InvalidInput("root of unity order must be positive");
        long e = k % n;
        if (e < 0) e += n;
        detail::QPoly p(static_cast<std::size_t>(e) + 1, Rational(0));
        p.back() = 1;
        return from_polynomial(n, std::move(p));
    }

    /// Value of sum_e poly[e] * zeta_n^e, any number of coefficients.
    static Cyclotomic from_polynomial(int n, detail::QPoly poly) {
        Cyclotomic r;
        r.conductor_ = n;
        for (auto& c : poly) c.canonicalize();
        detail::reduce_mod_cyclotomic(poly, n);
        r.coeffs_ = std::move(poly);
        r.normalize();
        return r;
    }

    int conductor() const noexcept { return conductor_; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_rational() const noexcept { return conductor_ == 1; }
    bool is_one() const { return conductor_ == 1 && coeffs_.size() == 1 && coeffs_[0] == 1; }

    Rational rational_value() const {
        if (!is_rational()) throw InvalidInput("value " + to_string() + " is not rational");
        return coeffs_.empty() ? Rational(0) : coeffs_[0];
    }

    /// The same value written in Q(zeta_n); n must be a multiple of the conductor.
    Cyclotomic embed(int n) const {
        if (n % conductor_ != 0) throw InvalidInput("cannot embed conductor " + std::to_string(conductor_) +
                                                    " into " + std::to_string(n));
        if (n == conductor_ || is_rational()) return *this;
        const std::size_t step = static_cast<std::size_t>(n / conductor_);
        detail::QPoly p((coeffs_.size() - 1) * step + 1, Rational(0));
        for (std::size_t e = 0; e < coeffs_.size(); ++e) p[e * step] = coeffs_[e];
        return from_polynomial(n, std::move(p));
    }

    /// Complex conjugation, zeta_N -> zeta_N^(N-1).
    Cyclotomic conj() const {
        if (is_rational()) return *this;
        const std::size_t n = static_cast<std::size_t>(conductor_);
        detail::QPoly p(n, Rational(0));
        for (std::size_t e = 0; e < coeffs_.size(); ++e) p[(n - e) % n] = coeffs_[e];
        return from_polynomial(conductor_, std::move(p));
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
    Cyclotomic inverse() const {
        if (is_zero()) throw InvalidInput("division by zero");
        if (is_rational()) return Cyclotomic(Rational(1 / coeffs_[0]));
        const auto& phi_int = detail::cyclotomic_polynomial(conductor_);
        detail::QPoly r0(phi_int.begin(), phi_int.end());
        detail::QPoly r1 = coeffs_;
        detail::QPoly s0, s1{Rational(1)};
        while (!r1.empty()) {
            auto [q, r] = detail::divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            detail::QPoly s2 = detail::subtract(s0, detail::multiply(q, s1));
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 is a nonzero constant because Phi_N is irreducible.
        const Rational c = r0[0];
        for (auto& x : s0) x /= c;
        return from_polynomial(conductor_, std::move(s0));
    }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Cyclotomic& operator+=(const Cyclotomic& rhs) { return accumulate(rhs, 1); }
    Cyclotomic& operator-=(const Cyclotomic& rhs) { return accumulate(rhs, -1); }

    Cyclotomic& operator*=(const Cyclotomic& rhs) {
        if (is_zero()) return *this;
        if (rhs.is_zero()) {
            *this = Cyclotomic();
            return *this;
        }
        if (rhs.is_rational()) {
            const Rational s = rhs.coeffs_[0];
            for (auto& c : coeffs_) c *= s;
            return *this;
        }
        if (is_rational()) {
            const Rational s = coeffs_[0];
            *this = rhs;
            for (auto& c : coeffs_) c *= s;
            return *this;
        }
        if (conductor_ != rhs.conductor_) {
            const int n = std::lcm(conductor_, rhs.conductor_);
            *this = embed(n);
            return *this *= rhs.embed(n);
        }
        *this = from_polynomial(conductor_, detail::multiply(coeffs_, rhs.coeffs_));
        return *this;
    }

    Cyclotomic& operator/=(const Cyclotomic& rhs) { return *this *= rhs.inverse(); }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
        if (a.is_rational() || b.is_rational()) return false;
        const int n = std::lcm(a.conductor_, b.conductor_);
        return a.embed(n).coeffs_ == b.embed(n).coeffs_;
    }

    /// Literal in the form "1/2 + E(3) - 2*E(3)^2"; terms ordered by exponent.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t e = 0; e < coeffs_.size(); ++e) {
            const Rational& c = coeffs_[e];
            if (c == 0) continue;
            std::string term;
            const bool negative = c < 0;
            const Rational mag = negative ? Rational(-c) : c;
            if (e == 0) {
                term = mag.get_str();
            } else {
                std::string root = "E(" + std::to_string(conductor_) + ")";
                if (e > 1) root += "^" + std::to_string(e);
                term = mag == 1 ? root : mag.get_str() + "*" + root;
            }
            if (out.empty())
                out = negative ? "-" + term : term;
            else
                out += (negative ? " - " : " + ") + term;
        }
        return out;
    }

    std::string to_latex() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t e = 0; e < coeffs_.size(); ++e) {
            const Rational& c = coeffs_[e];
            if (c == 0) continue;
            const bool negative = c < 0;
            const Rational mag = negative ? Rational(-c) : c;
            std::string term;
            if (e == 0) {
                term = detail::rational_latex(mag);
            } else {
                std::string root = "\\zeta_{" + std::to_string(conductor_) + "}";
                if (e > 1) root += "^{" + std::to_string(e) + "}";
                term = mag == 1 ? root : detail::rational_latex(mag) + root;
            }
            if (out.empty())
                out = negative ? "-" + term : term;
            else
                out += (negative ? " - " : " + ") + term;
        }
        return out;
    }

    /// Number of nonzero terms in the printed form.
    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& c : coeffs_)
            if (c != 0) ++n;
        return n;
    }

    static Cyclotomic parse(std::string_view text);

   private:
    int conductor_ = 1;
    std::vector<Rational> coeffs_;

    void normalize() {
        detail::trim(coeffs_);
        if (coeffs_.size() <= 1) conductor_ = 1;
    }

    Cyclotomic& accumulate(const Cyclotomic& rhs, int sign) {
        if (rhs.is_zero()) return *this;
        if (conductor_ != rhs.conductor_ && !rhs.is_rational()) {
            if (is_rational()) {
                Cyclotomic r = sign > 0 ? rhs : -rhs;
                if (!is_zero()) {
                    if (r.coeffs_.empty()) r.coeffs_.emplace_back(0);
                    r.coeffs_[0] += coeffs_[0];
                }
                r.normalize();
                *this = std::move(r);
                return *this;
            }
            const int n = std::lcm(conductor_, rhs.conductor_);
            *this = embed(n);
            return accumulate(rhs.embed(n), sign);
        }
        if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
            if (sign > 0)
                coeffs_[i] += rhs.coeffs_[i];
            else
                coeffs_[i] -= rhs.coeffs_[i];
        }
        normalize();
        return *this;
    }
};

inline Cyclotomic conj(const Cyclotomic& a) { return a.conj(); }

/// Integer value of a rational-integer cyclotomic. Anything else is an
/// internal consistency failure for callers that expect dimensions.
inline std::int64_t to_integer(const Cyclotomic& a) {
    if (!a.is_rational()) throw InconsistencyError("expected an integer, got " + a.to_string());
    const Rational v = a.rational_value();
    if (v.get_den() != 1 || !v.get_num().fits_slong_p())
        throw InconsistencyError("expected an integer, got " + a.to_string());
    return v.get_num().get_si();
}

namespace detail {

// Recursive-descent parser for the literal grammar
//   expr     := ["+"|"-"] term (("+" | "-") term)*
//   term     := rational | rational "*" root | root
//   root     := "E(" int ")" ("^" int)?
//   rational := int ("/" posint)?
class LiteralParser {
   public:
    explicit LiteralParser(std::string_view text) : text_(text) {}

    Cyclotomic parse() {
        skip_space();
        if (at_end()) fail("empty literal");
        Cyclotomic value;
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        Cyclotomic t = term();
        value = negative ? -t : t;
        for (;;) {
            skip_space();
            if (at_end()) break;
            const char op = peek();
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            ++pos_;
            t = term();
            if (op == '+')
                value += t;
            else
                value -= t;
        }
        return value;
    }

   private:
    std::string_view text_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("cyclotomic literal '" + std::string(text_) + "': " + msg, 1, pos_ + 1);
    }

    Integer digits() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) fail("expected digits");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    long small_int(bool allow_sign) {
        bool negative = false;
        if (allow_sign && (peek() == '-' || peek() == '+')) {
            negative = peek() == '-';
            ++pos_;
        }
        const std::size_t start = pos_;
        Integer v = digits();
        if (!v.fits_slong_p() || v > 1000000000) {
            pos_ = start;
            fail("integer too large");
        }
        return negative ? -v.get_si() : v.get_si();
    }

    Cyclotomic root() {
        // caller has seen 'E'
        ++pos_;
        if (peek() != '(') fail("expected '(' after 'E'");
        const std::size_t open = pos_;
        ++pos_;
        skip_space();
        const std::size_t at = pos_;
        const long n = small_int(false);
        if (n < 1) {
            pos_ = at;
            fail("root order must be positive");
        }
        skip_space();
        if (peek() != ')') fail("expected ')' to close '(' opened at column " + std::to_string(open + 1));
        ++pos_;
        long k = 1;
        skip_space();
        if (peek() == '^') {
            ++pos_;
            skip_space();
            k = small_int(true);
        }
        return Cyclotomic::root_of_unity(k, static_cast<int>(n));
    }

    Cyclotomic term() {
        skip_space();
        if (peek() == 'E') return root();
        const Integer num = digits();
        Integer den = 1;
        skip_space();
        if (peek() == '/') {
            ++pos_;
            skip_space();
            const std::size_t at = pos_;
            den = digits();
            if (den == 0) {
                pos_ = at;
                fail("zero denominator");
            }
        }
        Rational q(num, den);
        q.canonicalize();
        skip_space();
        if (peek() == '*') {
            ++pos_;
            skip_space();
            if (peek() != 'E') fail("expected root 'E(n)' after '*'");
            return Cyclotomic(q) * root();
        }
        return Cyclotomic(q);
    }
};

}  // namespace detail

inline Cyclotomic Cyclotomic::parse(std::string_view text) { return detail::LiteralParser(text).parse(); }

}  // namespace relequiv
