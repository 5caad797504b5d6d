#include "support.hpp"

#include "zetabessel/special_functions.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

using namespace zb;

namespace {

const PrecisionContext ctx60 = make_context(60);
const PrecisionContext ctx40 = make_context(40);

hp H(const char* s) { return parse_hp(s, 100); }

// Catalan's constant
const char* kCatalan = "0.91596559417721901505460351493238411077414937428167213426649811962176301977625476947935651292611510624857442261919619957903589880332585905943159473748115840699533202877331946051903872747816408786590902";

}  // namespace

TEST_CASE("gamma: closed values, recurrence, reflection") {
    precision_scope s(100);
    CHECK_REL(gamma(H("0.5"), ctx60), sqrt(pi_hp()), -58);
    CHECK_REL(gamma(hp(7), ctx60), hp(720), -58);
    for (int i = 1; i < 100; i += 7) {
        hp x = hp(i) / 10;
        CHECK_REL(gamma(x + 1, ctx60), x * gamma(x, ctx60), -55);
        if (i < 10) CHECK_REL(gamma(x, ctx60) * gamma(1 - x, ctx60), pi_hp() / sin(pi_hp() * x), -55);
    }
    CHECK_REL(gamma(H("-0.5"), ctx60), -2 * sqrt(pi_hp()), -58);
    CHECK_THROWS_AS(gamma(hp(-2), ctx60), PoleError);
    CHECK_THROWS_AS(gamma(hp(0), ctx60), PoleError);
}

TEST_CASE("bessel: half-order closed forms at 60 digits") {
    precision_scope s(100);
    BesselOrder half = BesselOrder::make(H("0.5"), ctx60);
    for (const char* zs : {"0.5", "1", "2", "5", "10", "45", "120"}) {
        hp z = H(zs);
        hp c = sqrt(2 / (pi_hp() * z));
        INFO("z = " << zs);
        CHECK_REL(bessel_K(half, z, ctx60), sqrt(pi_hp() / (2 * z)) * exp(-z), -57);
        CHECK_REL(bessel_J(half, z, ctx60), c * sin(z), -55);
        CHECK_REL(bessel_Y(half, z, ctx60), -c * cos(z), -55);
        CHECK_REL(bessel_I(half, z, ctx60), c * sinh(z), -57);
    }
}

TEST_CASE("bessel: K against its integral representation") {
    // K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt
    using boost::math::quadrature::gauss_kronrod;
    precision_scope s(60);
    for (double nu : {0.3, 0.75, 1.6}) {
        for (double z : {0.2, 1.0, 3.5, 12.0}) {
            auto f = [&](double t) { return std::exp(-z * std::cosh(t)) * std::cosh(nu * t); };
            double ref = gauss_kronrod<double, 61>::integrate(f, 0.0, 12.0, 15, 1e-15);
            double got = bessel_K(BesselOrder::make(hp(nu), ctx40), hp(z), ctx40).convert_to<double>();
            INFO("nu = " << nu << " z = " << z);
            CHECK(std::abs(got - ref) <= 1e-13 * std::abs(ref));
        }
    }
}

TEST_CASE("bessel: J, Y, I against an independent double implementation") {
    precision_scope s(60);
    for (double nu : {0.25, 0.3, 0.75, 2.4}) {
        for (double z : {0.4, 2.0, 7.3, 10.0, 33.0, 61.0}) {
            BesselOrder o = BesselOrder::make(hp(nu), ctx40);
            double j = boost::math::cyl_bessel_j(nu, z), y = boost::math::cyl_neumann(nu, z);
            double i = boost::math::cyl_bessel_i(nu, z);
            INFO("nu = " << nu << " z = " << z);
            CHECK(std::abs(bessel_J(o, hp(z), ctx40).convert_to<double>() - j) <= 1e-13 * (std::abs(j) + 1e-3));
            CHECK(std::abs(bessel_Y(o, hp(z), ctx40).convert_to<double>() - y) <= 1e-13 * (std::abs(y) + 1e-3));
            CHECK(std::abs(bessel_I(o, hp(z), ctx40).convert_to<double>() - i) <= 1e-13 * std::abs(i));
        }
    }
}

TEST_CASE("bessel: Wronskians at high precision across both branches") {
    precision_scope s(100);
    for (const char* nus : {"0.3", "0.6", "1.25"}) {
        hp nu = H(nus);
        BesselOrder a = BesselOrder::make(nu, ctx60), b = BesselOrder::make(nu + 1, ctx60);
        for (const char* zs : {"0.7", "5", "40", "95"}) {
            hp z = H(zs);
            INFO("nu = " << nus << " z = " << zs);
            hp w = bessel_J(b, z, ctx60) * bessel_Y(a, z, ctx60) - bessel_J(a, z, ctx60) * bessel_Y(b, z, ctx60);
            CHECK_REL(w, 2 / (pi_hp() * z), -52);
            hp v = bessel_I(a, z, ctx60) * bessel_K(b, z, ctx60) + bessel_I(b, z, ctx60) * bessel_K(a, z, ctx60);
            CHECK_REL(v, 1 / z, -52);
        }
    }
}

TEST_CASE("bessel: series and large-argument branches agree at the crossover") {
    precision_scope s(100);
    hp z = bessel_crossover(ctx40) + 1;
    hp nu = H("0.35");
    CHECK_REL(bessel_J_series(nu, z, ctx40), bessel_J_asymptotic(nu, z, ctx40), -36);
    CHECK_REL(bessel_K_series(nu, z, ctx40), bessel_K_asymptotic(nu, z, ctx40), -36);
}

TEST_CASE("bessel: M combination and near-integer orders") {
    precision_scope s(100);
    BesselOrder o = BesselOrder::make(H("0.4"), ctx40);
    hp z = H("3.3");
    CHECK_REL(bessel_M(o, z, ctx40), -bessel_Y(o, z, ctx40) - 2 / pi_hp() * bessel_K(o, z, ctx40), -38);

    BesselOrder one = BesselOrder::make(hp(1), ctx40);
    CHECK(one.near_integer);
    CHECK(std::abs(bessel_Y(one, hp(2), ctx40).convert_to<double>() - boost::math::cyl_neumann(1, 2.0)) < 1e-14);
    CHECK(std::abs(bessel_K(BesselOrder::make(hp(0), ctx40), hp(2), ctx40).convert_to<double>() -
                   boost::math::cyl_bessel_k(0, 2.0)) < 1e-15);
    BesselOrder strict = BesselOrder::make(hp(1), ctx40, false);
    CHECK_THROWS_AS(bessel_Y(strict, hp(2), ctx40), NearIntegerOrderError);
    CHECK_THROWS_AS(bessel_K(o, hp(-1), ctx40), DomainError);
}

TEST_CASE("bernoulli numbers and polynomials") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == rational(-1, 2));
    CHECK(bernoulli_number(2) == rational(1, 6));
    CHECK(bernoulli_number(4) == rational(-1, 30));
    CHECK(bernoulli_number(12) == rational(-691, 2730));
    CHECK(bernoulli_number(7) == 0);
    precision_scope s(100);
    for (unsigned n = 0; n <= 12; ++n) {
        for (const char* ts : {"0.1", "1/3", "0.27", "0.5"}) {
            hp t = H(ts);
            hp sign = n % 2 ? -1 : 1;
            CHECK(abs(bernoulli_poly(n, 1 - t, ctx60) - sign * bernoulli_poly(n, t, ctx60)) <= pow10(-58));
            // explicit expansion sum_k C(n,k) B_k t^{n-k}
            hp want = 0, binom = 1;
            for (unsigned k = 0; k <= n; ++k) {
                const rational& b = bernoulli_number(k);
                want += binom * hp(numerator(b).str()) / hp(denominator(b).str()) * pow(t, n - k);
                binom = binom * (n - k) / (k + 1);
            }
            CHECK(abs(bernoulli_poly(n, t, ctx60) - want) <= pow10(-56));
        }
    }
}

TEST_CASE("riemann and hurwitz zeta") {
    precision_scope s(100);
    hp pi = pi_hp();
    CHECK_REL(riemann_zeta(hp(2), ctx60), pi * pi / 6, -58);
    CHECK_REL(riemann_zeta(hp(-1), ctx60), hp(-1) / 12, -58);
    CHECK_REL(riemann_zeta(hp(0), ctx60), hp(-1) / 2, -58);
    CHECK_REL(hurwitz_zeta(hp(2), H("0.25"), ctx60), pi * pi + 8 * H(kCatalan), -57);
    for (const char* ss : {"-1.5", "0.3", "1.7", "2.5", "7"}) {
        hp sv = H(ss);
        INFO("s = " << ss);
        CHECK_REL(hurwitz_zeta(sv, hp(1), ctx60), mpfr_zeta_value(sv), -55);
        CHECK_REL(hurwitz_zeta(sv, H("0.5"), ctx60), (pow(hp(2), sv) - 1) * mpfr_zeta_value(sv), -55);
        for (const char* as : {"0.2", "1/3", "2.75"}) {
            hp a = H(as);
            CHECK_REL(hurwitz_zeta(sv, a, ctx60) - hurwitz_zeta(sv, a + 1, ctx60), pow(a, -sv), -52);
        }
    }
    CHECK_THROWS_AS(hurwitz_zeta(hp(1), H("0.5"), ctx60), PoleError);
    CHECK_THROWS_AS(hurwitz_zeta(hp(2), hp(0), ctx60), DomainError);
}

TEST_CASE("zeta pair and digamma") {
    precision_scope s(100);
    hp pi = pi_hp();
    hp t = H("1/3");
    // difference kind tends to pi cot(pi theta) at s = 1
    CHECK_REL(zeta_pair(hp(1), t, ZetaPairKind::difference, ctx60), pi / tan(pi * t), -58);
    CHECK_REL(zeta_pair(H("1.0000000000000000000001"), t, ZetaPairKind::difference, ctx40), pi / tan(pi * t), -20);
    CHECK_THROWS_AS(zeta_pair(hp(1), t, ZetaPairKind::sum, ctx60), PoleError);
    CHECK(abs(zeta_pair(H("0.3"), H("0.5"), ZetaPairKind::difference, ctx60)) < pow10(-58));
    hp g = boost::math::constants::euler<hp>();
    CHECK_REL(digamma(hp(1), ctx60), -g, -58);
    CHECK_REL(digamma(H("0.5"), ctx60), -g - 2 * log(hp(2)), -58);
}
