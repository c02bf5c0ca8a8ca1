#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "relequiv/cyclotomic.hpp"

using namespace relequiv;

namespace {

// Numeric evaluation, used only as an independent oracle.
std::complex<double> eval(const Cyclotomic& x) {
    std::complex<double> s = 0;
    const double n = x.conductor();
    for (std::size_t e = 0; e < x.coefficients().size(); ++e)
        s += x.coefficients()[e].get_d() * std::polar(1.0, 2 * std::numbers::pi * double(e) / n);
    return s;
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9 * (1 + std::abs(a)); }

Cyclotomic random_cyclotomic(std::mt19937_64& rng) {
    static const int conductors[] = {1, 3, 4, 5, 6, 7, 8, 9, 12, 15};
    std::uniform_int_distribution<int> pick(0, 9), num(-5, 5), den(1, 4), terms(1, 4);
    const int n = conductors[pick(rng)];
    Cyclotomic x;
    for (int t = terms(rng); t > 0; --t) {
        std::uniform_int_distribution<int> ex(0, n - 1);
        x += Cyclotomic(Rational(num(rng), den(rng))) * Cyclotomic::root_of_unity(ex(rng), n);
    }
    return x;
}

}  // namespace

TEST_CASE("cyclotomic polynomials have the expected low-order coefficients") {
    // Phi_1..Phi_12 written out by hand.
    CHECK(detail::cyclotomic_polynomial(1) == detail::IntPoly{-1, 1});
    CHECK(detail::cyclotomic_polynomial(3) == detail::IntPoly{1, 1, 1});
    CHECK(detail::cyclotomic_polynomial(4) == detail::IntPoly{1, 0, 1});
    CHECK(detail::cyclotomic_polynomial(6) == detail::IntPoly{1, -1, 1});
    CHECK(detail::cyclotomic_polynomial(8) == detail::IntPoly{1, 0, 0, 0, 1});
    CHECK(detail::cyclotomic_polynomial(12) == detail::IntPoly{1, 0, -1, 0, 1});
    CHECK(euler_phi(15) == 8);
    CHECK(euler_phi(7) == 6);
}

TEST_CASE("roots of unity") {
    CHECK(Cyclotomic::root_of_unity(0, 5).is_one());
    CHECK((Cyclotomic::root_of_unity(1, 3) + Cyclotomic::root_of_unity(2, 3)) == Cyclotomic(-1));
    CHECK((Cyclotomic::root_of_unity(1, 4) * Cyclotomic::root_of_unity(1, 4)) == Cyclotomic(-1));
    CHECK(Cyclotomic::root_of_unity(-1, 3) == Cyclotomic::root_of_unity(2, 3));
    CHECK(Cyclotomic::root_of_unity(2, 8) == Cyclotomic::root_of_unity(1, 4));
    CHECK_THROWS_AS(Cyclotomic::root_of_unity(1, 0), InvalidInput);
}

TEST_CASE("hand-expanded products") {
    const auto w = Cyclotomic::root_of_unity(1, 3);
    // (1 + w)(1 + w^2) = 1 + w + w^2 + w^3 = 0 + 1
    CHECK(((Cyclotomic(1) + w) * (Cyclotomic(1) + w * w)) == Cyclotomic(1));
    // (1 + w) = -w^2 in Q(zeta_3)
    CHECK((Cyclotomic(1) + w) == -(w * w));
    const auto z6 = Cyclotomic::root_of_unity(1, 6);
    CHECK((z6 - z6).is_zero());
    // zeta_6 = 1 + zeta_3
    CHECK(z6 == Cyclotomic(1) + w);
    // (1 + i)^2 = 2i
    const auto i = Cyclotomic::root_of_unity(1, 4);
    CHECK((Cyclotomic(1) + i) * (Cyclotomic(1) + i) == Cyclotomic(2) * i);
    CHECK_THROWS_AS(Cyclotomic(1) / Cyclotomic(), InvalidInput);
}

TEST_CASE("conjugation") {
    CHECK(conj(Cyclotomic::root_of_unity(1, 3)) == Cyclotomic::root_of_unity(2, 3));
    CHECK(conj(Cyclotomic(Rational(7, 3))) == Cyclotomic(Rational(7, 3)));
    const auto i = Cyclotomic::root_of_unity(1, 4);
    CHECK(conj(Cyclotomic(1) + i) == Cyclotomic(1) - i);
}

TEST_CASE("integer extraction") {
    CHECK(to_integer(Cyclotomic(7)) == 7);
    CHECK_THROWS_AS(to_integer(Cyclotomic::root_of_unity(1, 3)), InconsistencyError);
    CHECK_THROWS_AS(to_integer(Cyclotomic(Rational(1, 2))), InconsistencyError);
    const auto w = Cyclotomic::root_of_unity(1, 3);
    CHECK(to_integer(w + w * w + Cyclotomic(1)) == 0);
}

TEST_CASE("field axioms on random samples agree with numeric evaluation") {
    std::mt19937_64 rng(11);
    for (int s = 0; s < 300; ++s) {
        const auto a = random_cyclotomic(rng), b = random_cyclotomic(rng), c = random_cyclotomic(rng);
        CHECK(close(eval(a + b), eval(a) + eval(b)));
        CHECK(close(eval(a * b), eval(a) * eval(b)));
        CHECK(close(eval(conj(a)), std::conj(eval(a))));
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(conj(conj(a)) == a);
        CHECK(conj(a * b) == conj(a) * conj(b));
        CHECK(conj(a + b) == conj(a) + conj(b));
        if (!a.is_zero()) {
            CHECK((a * a.inverse()).is_one());
            CHECK((b / a) * a == b);
            CHECK(close(eval(a.inverse()), 1.0 / eval(a)));
        }
    }
}

TEST_CASE("sums of powers of roots of unity") {
    for (int n = 1; n <= 12; ++n)
        for (int k = -n; k <= 2 * n; ++k) {
            Cyclotomic s;
            for (int i = 0; i < n; ++i) s += Cyclotomic::root_of_unity(static_cast<long>(i) * k, n);
            CHECK(s == Cyclotomic(k % n == 0 ? n : 0));
        }
}

TEST_CASE("embedding preserves values") {
    std::mt19937_64 rng(12);
    for (int s = 0; s < 100; ++s) {
        const auto a = random_cyclotomic(rng);
        for (int f : {2, 3, 5}) {
            const auto big = a.embed(a.conductor() * f);
            CHECK(big == a);
            CHECK(close(eval(big), eval(a)));
            CHECK((big - a).is_zero());
        }
    }
    CHECK_THROWS_AS(Cyclotomic::root_of_unity(1, 3).embed(4), InvalidInput);
}

TEST_CASE("literal printing and parsing") {
    const auto w = Cyclotomic::root_of_unity(1, 3);
    CHECK(w.to_string() == "E(3)");
    CHECK((w * w).to_string() == "-1 - E(3)");
    CHECK((Cyclotomic(Rational(1, 2)) + Cyclotomic(3) * w).to_string() == "1/2 + 3*E(3)");
    CHECK(Cyclotomic().to_string() == "0");
    CHECK(Cyclotomic::parse("E(3)^2") == w * w);
    CHECK(Cyclotomic::parse(" -1/2 + E(4) ") == Cyclotomic(Rational(-1, 2)) + Cyclotomic::root_of_unity(1, 4));
    CHECK(Cyclotomic::parse("2*E(5)^7") == Cyclotomic(2) * Cyclotomic::root_of_unity(2, 5));
    CHECK((w * w).to_latex() == "-1 - \\zeta_{3}");

    std::mt19937_64 rng(13);
    for (int s = 0; s < 200; ++s) {
        const auto a = random_cyclotomic(rng);
        CHECK(Cyclotomic::parse(a.to_string()) == a);
    }
}

TEST_CASE("literal parse errors carry the column") {
    auto column_of = [](const char* text) -> std::size_t {
        try {
            Cyclotomic::parse(text);
        } catch (const ParseError& e) {
            return e.column();
        }
        return 0;
    };
    CHECK(column_of("E(3") == 4);
    CHECK(column_of("") == 1);
    CHECK(column_of("1 +") == 4);
    CHECK(column_of("1/0") == 3);
    CHECK(column_of("E(0)") > 0);
    CHECK(column_of("3 E(3)") == 3);
    try {
        Cyclotomic::parse("E(3");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("')'") != std::string::npos);
    }
}
