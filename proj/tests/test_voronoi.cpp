#include "support.hpp"

#include "zetabessel/special_functions.hpp"
#include "zetabessel/voronoi.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

using namespace zb;

namespace {

const PrecisionContext ctx = make_context(30);
constexpr double kPi = 3.14159265358979323846;

IdentityCase vcase(const char* id, std::map<std::string, std::string> extra = {}) {
    IdentityCase c{id, {{"nu", "0.25"}, {"theta", "1/3"}, {"alpha", "0.6"}, {"beta", "3.4"}, {"f", "exp_decay:1"}}, ""};
    for (auto& [k, v] : extra) c.params[k] = v;
    return c;
}

}  // namespace

TEST_CASE("test functions") {
    TestFunction e = TestFunction::parse("exp_decay:2");
    CHECK(e.describe() == "exp_decay:2");
    CHECK(e.value(0.5) == doctest::Approx(std::exp(-1.0)));
    TestFunction p = TestFunction::parse("polynomial:1,0,-0.5");
    CHECK(p.value(2.0) == doctest::Approx(-1.0));
    auto dp = p.derivatives(2.0, 3);
    CHECK(dp[1] == doctest::Approx(-2.0));
    CHECK(dp[2] == doctest::Approx(-1.0));
    CHECK(dp[3] == 0);
    TestFunction g = TestFunction::parse("gaussian:2,0.7");
    auto dg = g.derivatives(1.3, 4);
    const double h = 1e-3;
    CHECK(dg[1] == doctest::Approx((g.value(1.3 + h) - g.value(1.3 - h)) / (2 * h)).epsilon(1e-6));
    CHECK(dg[2] == doctest::Approx((g.value(1.3 + h) - 2 * g.value(1.3) + g.value(1.3 - h)) / (h * h)).epsilon(1e-5));
    precision_scope s(40);
    CHECK(abs(g(parse_hp("1.3", 40)) - hp(g.value(1.3))) < 1e-15);
    CHECK_THROWS_AS(TestFunction::parse("sinc:1"), DomainError);
    CHECK_THROWS_AS(TestFunction::parse("gaussian:1"), DomainError);
}

TEST_CASE("smooth cutoff") {
    CHECK(smooth_cutoff(0.0) == 1);
    CHECK(smooth_cutoff(1.0) == 1);
    CHECK(smooth_cutoff(2.0) == 0);
    CHECK(smooth_cutoff(5.0) == 0);
    double prev = 1;
    for (double u = 1; u <= 2; u += 0.01) {
        double v = smooth_cutoff(u);
        CHECK(v <= prev);
        CHECK(v >= 0);
        prev = v;
    }
}

TEST_CASE("kernels recompose from high-precision J, Y, K") {
    precision_scope s(60);
    const double nu = 0.25;
    const double sn = std::sin(kPi * nu / 2), cs = std::cos(kPi * nu / 2);
    BesselOrder o = BesselOrder::make(parse_hp("0.25", 60), ctx);
    for (double y : {0.3, 0.9, 1.7, 2.5, 4.0, 6.2, 9.9, 15.0, 27.0, 40.0}) {
        double K = bessel_K(o, hp(y), ctx).convert_to<double>();
        double Y = bessel_Y(o, hp(y), ctx).convert_to<double>();
        double J = bessel_J(o, hp(y), ctx).convert_to<double>();
        double k2 = 2 / kPi * K;
        INFO("y = " << y);
        double z = (k2 + Y) * sn - J * cs, w = (k2 - Y) * cs - J * sn;
        CHECK(VoronoiKernel::Z(nu)(nu, y) == doctest::Approx(z).epsilon(1e-12));
        CHECK(VoronoiKernel::W(nu)(nu, y) == doctest::Approx(w).epsilon(1e-12));
        CHECK(VoronoiKernel::Z_plus(nu)(nu, y) == doctest::Approx((k2 + Y) * cs + J * sn).epsilon(1e-12));
        CHECK(VoronoiKernel::W_plus(nu)(nu, y) == doctest::Approx((k2 - Y) * sn + J * cs).epsilon(1e-12));
        CHECK(z + w == doctest::Approx(k2 * (sn + cs) + Y * (sn - cs) - J * (sn + cs)).epsilon(1e-12));
    }
}

TEST_CASE("quadrature") {
    CHECK(quadrature([](double) { return 1.0; }, 0.5, 2.5, 1e-12) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(quadrature([](double t) { return t * t * t; }, 0.0, 1.0, 1e-12) == doctest::Approx(0.25).epsilon(1e-14));
    auto f = [](double t) { return std::exp(-t) * boost::math::cyl_bessel_j(0.25, 4 * kPi * std::sqrt(t)); };
    // composite Simpson reference, 10^5 panels
    const int n = 100000;
    const double a = 0.6, b = 3.4, h = (b - a) / n;
    double ref = f(a) + f(b);
    for (int i = 1; i < n; ++i) ref += (i % 2 ? 4 : 2) * f(a + i * h);
    ref *= h / 3;
    CHECK(quadrature(f, a, b, 1e-12) == doctest::Approx(ref).epsilon(1e-11));
}

TEST_CASE("kernel integrals: integration by parts against quadrature") {
    const double nu = 0.25;
    for (const char* spec : {"exp_decay:1", "polynomial:1,0.5", "gaussian:2,0.7"}) {
        TestFunction f = TestFunction::parse(spec);
        for (Modifier g : {Modifier::plain, Modifier::over_t}) {
            for (double c : {40.0, 310.0, 2000.0}) {
                for (const VoronoiKernel& k : {VoronoiKernel::Z(nu), VoronoiKernel::W(nu)}) {
                    double quad = kernel_integral_quadrature(f, g, k, nu, c, 0.6, 3.4);
                    INFO(spec << " c = " << c);
                    // the expansion is asymptotic; it may refuse at small c, never at large c
                    try {
                        double ibp = kernel_integral_ibp(f, g, k, nu, c, 0.6, 3.4);
                        CHECK(std::abs(ibp - quad) <= 1e-9 * (std::abs(quad) + 1e-6));
                    } catch (const ConvergenceError&) {
                        CHECK(c < 1000);
                    }
                    CHECK(kernel_integral(f, g, k, nu, c, 0.6, 3.4) == doctest::Approx(quad).epsilon(1e-8));
                }
            }
        }
    }
}

TEST_CASE("left side finite sums") {
    precision_scope s(50);
    TestFunction f = TestFunction::exp_decay(1);
    hp th = hp(1) / 3, nu = parse_hp("0.25", 50);
    hp pi = pi_hp();
    // one integer inside
    hpc one = voronoi_lhs(vcase("V_SIN_D", {{"alpha", "0.5"}, {"beta", "1.5"}}), f, ctx);
    CHECK_REL(one.re, sin(2 * pi * th) * exp(hp(-1)), -28);
    // three terms
    hp want = 0;
    for (int j = 1; j <= 3; ++j)
        for (int d = 1; d <= j; ++d)
            if (j % d == 0) want += pow(hp(d), -nu) * sin(2 * pi * d * th) * exp(hp(-j));
    CHECK_REL(voronoi_lhs(vcase("V_SIN_D", {{"alpha", "0.5"}, {"beta", "3.5"}}), f, ctx).re, want, -28);
    // no integers
    CHECK(abs(voronoi_lhs(vcase("V_SIN_D", {{"alpha", "1.2"}, {"beta", "1.8"}}), f, ctx)) == 0);
}

TEST_CASE("voronoi hypotheses") {
    CHECK_THROWS_AS(validate_voronoi_case(vcase("V_SIN_D", {{"nu", "0.6"}}), ctx), HypothesisError);
    CHECK_THROWS_AS(validate_voronoi_case(vcase("V_SIN_D", {{"alpha", "1"}}), ctx), HypothesisError);
    CHECK_THROWS_AS(validate_voronoi_case(vcase("V_SIN_D", {{"beta", "0.3"}}), ctx), HypothesisError);
    CHECK_THROWS_AS(validate_voronoi_case(vcase("V_CHI_ODD", {{"q", "5"}, {"chi", "2"}}), ctx), HypothesisError);
    CHECK_THROWS_AS(validate_voronoi_case(vcase("V_SIN_D", {{"C", "5"}}), ctx), HypothesisError);
    CHECK_NOTHROW(validate_voronoi_case(vcase("O_VORONOI", {{"nu", "-0.3"}}), ctx));
    CHECK(is_voronoi_id("V_CC"));
    CHECK(!is_voronoi_id("K_CC"));
    CHECK(test_function_of(vcase("V_SIN_D")).describe() == "exp_decay:1");
}

TEST_CASE("voronoi identities balance with exposed tail bounds") {
    EvaluationBudget b = default_budget(ctx, hp(0));
    for (const IdentityCase& c : {vcase("V_SIN_D"), vcase("V_COS_D"), vcase("V_CHI_ODD", {{"q", "4"}, {"chi", "1"}})}) {
        VerificationReport r = voronoi_verify(c, test_function_of(c), b, ctx);
        INFO(c.id << " rel = " << to_decimal(r.rel_residual, 4) << " " << r.error);
        CHECK(r.passed);
        CHECK(r.rel_residual <= hp("1e-3"));
        CHECK(r.rhs_tail.bound > 0);
        CHECK(r.rhs_tail.bound <= hp("5e-4") * abs(r.rhs));
    }
}

TEST_CASE("voronoi right side: symmetric theta and empty intervals") {
    EvaluationBudget b = default_budget(ctx, hp(0));
    IdentityCase half = vcase("V_SIN_D", {{"theta", "1/2"}, {"C", "400"}});
    TailEstimate t = voronoi_rhs(half, test_function_of(half), b, ctx);
    CHECK(abs(t.value) <= t.bound + hp("1e-12"));
    IdentityCase empty = vcase("V_COS_D", {{"alpha", "1.2"}, {"beta", "1.8"}, {"C", "400"}});
    TailEstimate e = voronoi_rhs(empty, test_function_of(empty), b, ctx);
    CHECK(abs(e.value) <= 10 * e.bound);
}
