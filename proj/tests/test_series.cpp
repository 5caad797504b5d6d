#include "support.hpp"

#include "zetabessel/series.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>

using namespace zb;

namespace {

const PrecisionContext ctx = make_context(40);

EvaluationBudget budget() {
    EvaluationBudget b = default_budget(ctx, hp("1e-10"));
    b.tail_epsilon = pow10(-36);
    return b;
}

ArithWeight unit_weight() {
    return [](std::int64_t) { return hpc(hp(1)); };
}

DirichletSeries zeta_series() {
    return [](const hp& p, const PrecisionContext& c) { return hpc(riemann_zeta(p, c)); };
}

}  // namespace

TEST_CASE("bessel kernel series against a direct sum") {
    precision_scope s(80);
    hp nu = parse_hp("0.75", 80), a(2), x = parse_hp("1.3", 80);
    TailEstimate t = bessel_kernel_series(unit_weight(), {hp(1), hp(0)}, nu, a, x, hpc(hp(1)), budget(), ctx);
    BesselOrder o = BesselOrder::make(nu, ctx);
    hp direct = 0;
    for (int n = 1; n < 2500; ++n) direct += pow(hp(n), nu / 2) * bessel_K(o, a * sqrt(n * x), ctx);
    CHECK_REL(t.value.re, direct, -34);
    CHECK(t.bound < pow10(-34));
    CHECK(t.terms_used > 10);
    CHECK_THROWS_AS(bessel_kernel_series(unit_weight(), {hp(1), hp(0)}, nu, hp(0), x, hpc(hp(1)), budget(), ctx),
                    DomainError);
}

TEST_CASE("rational series: expansion tail against direct summation") {
    precision_scope s(80);
    hp c = parse_hp("0.05", 80), A(6);
    TailEstimate t = rational_rhs_series(unit_weight(), zeta_series(), c, A, budget(), ctx);
    // direct to N plus the integral tail, which is far below the check level
    hp direct = 0;
    const int N = 40000;
    for (int n = 1; n <= N; ++n) direct += pow(1 + c * n, -A);
    direct += pow(1 + c * (N + hp("0.5")), 1 - A) / (c * (A - 1));
    CHECK_REL(t.value.re, direct, -18);
    CHECK(t.bound <= abs(t.value.re) * pow10(-30));
}

TEST_CASE("lattice sums against finite boxes") {
    precision_scope s(80);
    GridSpec g{hp(0), hp(0), 1};
    hp th = parse_hp("0.3", 80), ps = parse_hp("0.4", 80);
    // box remainders stay below the checked level
    TailEstimate t = lattice_sum(g, th, ps, hp(2), hp(14), budget(), ctx);
    CHECK_REL(t.value.re, lattice_box(g, th, ps, hp(2), hp(14), 200, 200, ctx), -22);

    GridSpec g2{parse_hp("0.5", 80), parse_hp("0.25", 80), 1};
    hp A = parse_hp("12.5", 80);
    TailEstimate t2 = lattice_sum(g2, th, ps, hp(1), A, budget(), ctx);
    CHECK_REL(t2.value.re, lattice_box(g2, th, ps, hp(1), A, 200, 200, ctx), -16);

    GridSpec g0{hp(0), hp(0), 0};
    TailEstimate t0 = lattice_sum(g0, th, ps, hp(2), hp(14), budget(), ctx);
    CHECK_REL(t0.value.re, lattice_box(g0, th, ps, hp(2), hp(14), 200, 200, ctx), -22);

    // cells combine with their signs
    std::vector<GridCell> cells{{1, th, ps}, {-1, th, ps}};
    CHECK(abs(theta_grid_series(g, cells, hp(2), hp(14), budget(), ctx).value.re) < pow10(-38));
    std::vector<GridCell> one{{1, th, ps}};
    CHECK_REL(theta_grid_series(g, one, hp(2), hp(14), budget(), ctx).value.re, t.value.re, -38);
    CHECK_THROWS_AS(lattice_sum(g, hp(0), ps, hp(2), hp(14), budget(), ctx), DomainError);
}

TEST_CASE("cohen kernel removable singularity") {
    precision_scope s(80);
    hp x = parse_hp("0.9", 80), sv = parse_hp("0.5", 80), thr = pow10(-6);
    // limit s x^{s-2} / 2
    CHECK_REL(cohen_kernel(x, x, sv, thr), sv * pow(x, sv - 2) / 2, -70);
    for (const char* d : {"1e-7", "-1e-9", "1e-30"}) {
        hp u = x + parse_hp(d, 80);
        hp plain = (pow(u, sv) - pow(x, sv)) / (u * u - x * x);
        hp k = cohen_kernel(u, x, sv, thr);
        // the plain quotient loses about log10(x/|gap|) digits
        CHECK_REL(k, plain, -40);
    }
}

TEST_CASE("cohen lattice sum against a finite box") {
    precision_scope s(80);
    GridSpec g{hp(-4), hp(-4), 1};
    hp th = parse_hp("0.7", 80), ps = parse_hp("0.4", 80), x = parse_hp("0.9", 80), sv = parse_hp("0.5", 80);
    TailEstimate t = cohen_lattice_sum(g, th, ps, x, sv, budget(), ctx);
    hp box = 0;
    for (int m = 0; m < 400; ++m)
        for (int i = 1; i <= 400; ++i) {
            hp e = i + ps, f = m + th;
            box += pow(e, g.alpha) * pow(f, g.beta) * cohen_kernel(e * f, x, sv, pow10(-6));
        }
    CHECK_REL(t.value.re, box, -8);
}

TEST_CASE("arithmetic cohen series against direct summation") {
    using boost::math::quadrature::exp_sinh;
    precision_scope s(60);
    const double X = 2.5, sd = 0.5;
    TailEstimate t = arith_cohen_series(unit_weight(), zeta_series(), hp(X), hp(sd), budget(), ctx);
    const int N = 20000;
    double direct = 0;
    for (int n = N; n >= 1; --n)
        direct += (std::pow(n, sd) - std::pow(X, sd)) / (n * (double(n) * n - X * X));
    auto f = [&](double u) { return (std::pow(u, sd) - std::pow(X, sd)) / (u * (u * u - X * X)); };
    exp_sinh<double> q;
    // Euler-Maclaurin tail beyond N
    double tail = q.integrate([&](double v) { return f(N + v); }) - f(N) / 2;
    CHECK(std::abs(t.value.re.convert_to<double>() - (direct + tail)) < 1e-12 * std::abs(direct));
}

TEST_CASE("pole set distance") {
    precision_scope s(60);
    hp th = parse_hp("0.3", 60), ps = parse_hp("0.4", 60);
    CHECK(pole_set_distance(hp("3.12"), th, ps, 1) < pow10(-30));
    CHECK(pole_set_distance(hp("0.42"), th, ps, 1) < pow10(-30));
    CHECK(pole_set_distance(hp("0.5"), th, ps, 1) > hp("0.1"));
}
