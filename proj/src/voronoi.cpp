#include "zetabessel/voronoi.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace zb {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> split_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw DomainError("test function: bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// test functions

TestFunction TestFunction::exp_decay(double lambda) {
    TestFunction f;
    f.kind = TestFunctionKind::exp_decay;
    f.lambda = lambda;
    return f;
}

TestFunction TestFunction::polynomial(std::vector<double> coefficients) {
    if (coefficients.empty()) throw DomainError("polynomial test function needs coefficients");
    TestFunction f;
    f.kind = TestFunctionKind::polynomial;
    f.coefficients = std::move(coefficients);
    return f;
}

TestFunction TestFunction::gaussian(double center, double width) {
    if (!(width > 0)) throw DomainError("gaussian test function: width must be positive");
    TestFunction f;
    f.kind = TestFunctionKind::gaussian;
    f.center = center;
    f.width = width;
    return f;
}

TestFunction TestFunction::parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string tag = spec.substr(0, colon);
    std::vector<double> args = colon == std::string::npos ? std::vector<double>{} : split_numbers(spec.substr(colon + 1));
    if (tag == "exp_decay") return exp_decay(args.empty() ? 1.0 : args.at(0));
    if (tag == "polynomial") return polynomial(args);
    if (tag == "gaussian") {
        if (args.size() != 2) throw DomainError("gaussian test function takes center,width");
        return gaussian(args[0], args[1]);
    }
    throw DomainError("unknown test function '" + tag + "' (exp_decay, polynomial, gaussian)");
}

std::string TestFunction::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case TestFunctionKind::exp_decay: os << "exp_decay:" << lambda; break;
        case TestFunctionKind::polynomial:
            os << "polynomial:";
            for (std::size_t i = 0; i < coefficients.size(); ++i) os << (i ? "," : "") << coefficients[i];
            break;
        case TestFunctionKind::gaussian: os << "gaussian:" << center << "," << width; break;
    }
    return os.str();
}

hp TestFunction::operator()(const hp& t) const {
    switch (kind) {
        case TestFunctionKind::exp_decay: return exp(-hp(lambda) * t);
        case TestFunctionKind::polynomial: {
            hp v(0);
            for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * t + hp(*it);
            return v;
        }
        case TestFunctionKind::gaussian: {
            hp u = (t - hp(center)) / hp(width);
            return exp(-u * u);
        }
    }
    return hp(0);
}

double TestFunction::value(double t) const { return derivatives(t, 0)[0]; }

std::vector<double> TestFunction::derivatives(double t, int n) const {
    std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
    switch (kind) {
        case TestFunctionKind::exp_decay: {
            double e = std::exp(-lambda * t);
            for (int j = 0; j <= n; ++j) {
                d[j] = e;
                e *= -lambda;
            }
            break;
        }
        case TestFunctionKind::polynomial: {
            std::vector<double> c = coefficients;
            for (int j = 0; j <= n && !c.empty(); ++j) {
                double v = 0;
                for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
                d[j] = v;
                for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<double>(i);
                c.pop_back();
            }
            break;
        }
        case TestFunctionKind::gaussian: {
            // f^{(j)} = (-1/w)^j H_j(u) e^{-u^2}
            double u = (t - center) / width;
            double e = std::exp(-u * u);
            double h0 = 1, h1 = 2 * u, scale = 1;
            for (int j = 0; j <= n; ++j) {
                double hj = j == 0 ? h0 : h1;
                d[j] = scale * hj * e;
                if (j >= 1) {
                    double h2 = 2 * u * h1 - 2 * j * h0;
                    h0 = h1;
                    h1 = h2;
                }
                scale *= -1 / width;
            }
            break;
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// kernels

VoronoiKernel VoronoiKernel::Z(double nu) {
    double s = std::sin(kPi * nu / 2), c = std::cos(kPi * nu / 2);
    return {s, s, -c};
}
VoronoiKernel VoronoiKernel::W(double nu) {
    double s = std::sin(kPi * nu / 2), c = std::cos(kPi * nu / 2);
    return {c, -c, -s};
}
VoronoiKernel VoronoiKernel::Z_plus(double nu) {
    double s = std::sin(kPi * nu / 2), c = std::cos(kPi * nu / 2);
    return {c, c, s};
}
VoronoiKernel VoronoiKernel::W_plus(double nu) {
    double s = std::sin(kPi * nu / 2), c = std::cos(kPi * nu / 2);
    return {s, -s, c};
}
VoronoiKernel VoronoiKernel::W_printed(double nu) {
    double s = std::sin(kPi * nu / 2), c = std::cos(kPi * nu / 2);
    return {s, -s, -c};
}

double VoronoiKernel::operator()(double mu, double y) const {
    namespace bm = boost::math;
    double v = 0;
    if (cK != 0) v += cK * 2 / kPi * bm::cyl_bessel_k(mu, y);
    if (cY != 0) v += cY * bm::cyl_neumann(mu, y);
    if (cJ != 0) v += cJ * bm::cyl_bessel_j(mu, y);
    return v;
}

double smooth_cutoff(double u) {
    if (u <= 1) return 1;
    if (u >= 2) return 0;
    double a = std::exp(-1 / (u - 1)), b = std::exp(-1 / (2 - u));
    return b / (a + b);
}

// ---------------------------------------------------------------------------
// integrals

double quadrature(const std::function<double(double)>& integrand, double alpha, double beta, double tol) {
    if (!(alpha < beta)) throw DomainError("quadrature: alpha must be below beta");
    double err = 0, l1 = 0;
    double v =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, alpha, beta, 18, tol, &err, &l1);
    // oscillatory integrands: error relative to the L1 norm
    if (!std::isfinite(v) || !(err <= 100 * tol * std::max(l1, 1e-300))) {
        std::ostringstream os;
        os << "quadrature: error estimate " << err << " above tolerance (L1 " << l1 << ")";
        throw QuadratureError(os.str());
    }
    return v;
}

namespace {

double g_value(const TestFunction& f, Modifier g, double t) {
    double v = f.value(t);
    return g == Modifier::over_t ? v / t : v;
}

// g, g', ..., g^{(n)}
std::vector<double> g_derivatives(const TestFunction& f, Modifier g, double t, int n) {
    std::vector<double> fd = f.derivatives(t, n);
    if (g == Modifier::plain) return fd;
    // Leibniz with (1/t)^{(m)} = (-1)^m m! / t^{m+1}
    std::vector<double> inv(static_cast<std::size_t>(n) + 1);
    double v = 1 / t;
    for (int m = 0; m <= n; ++m) {
        inv[m] = v;
        v *= -(m + 1) / t;
    }
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        double binom = 1, s = 0;
        for (int i = 0; i <= j; ++i) {
            s += binom * fd[i] * inv[j - i];
            binom = binom * (j - i) / (i + 1);
        }
        out[j] = s;
    }
    return out;
}

// sum_{j>=0} (-1)^j g^{(j)}(t) A_{j+1}(t); the series is asymptotic when g^{(j)} grows
// factorially, so converged reports whether a negligible term was reached
double ibp_endpoint(const TestFunction& f, Modifier g, const VoronoiKernel& k, double nu, double c, double t,
                    bool& converged) {
    namespace bm = boost::math;
    constexpr int kMax = 150;
    const double z = 4 * kPi * std::sqrt(c * t);
    const double r = -1 / (2 * kPi * std::sqrt(c));
    std::vector<double> gd = g_derivatives(f, g, t, 40);
    // orders mu+1 and mu, stepped down together
    double mu = nu;
    double J1 = k.cJ != 0 ? bm::cyl_bessel_j(mu + 1, z) : 0, J0 = k.cJ != 0 ? bm::cyl_bessel_j(mu, z) : 0;
    double Y1 = k.cY != 0 ? bm::cyl_neumann(mu + 1, z) : 0, Y0 = k.cY != 0 ? bm::cyl_neumann(mu, z) : 0;
    double K1 = k.cK != 0 ? bm::cyl_bessel_k(mu + 1, z) : 0, K0 = k.cK != 0 ? bm::cyl_bessel_k(mu, z) : 0;
    // Bessel functions of large argument have amplitude about sqrt(2 / (pi z)); the envelope
    // below tracks term sizes without the oscillating phase
    const double amp = std::sqrt(2 / (kPi * z)) * (std::abs(k.cK) + std::abs(k.cY) + std::abs(k.cJ));
    double sum = 0, prev = std::numeric_limits<double>::infinity(), largest = 0;
    double rj = 1;
    int below = 0;
    converged = false;
    for (int j = 0; j < kMax; ++j) {
        // step to order mu - 1
        double Jm = 2 * mu / z * J0 - J1;
        double Ym = 2 * mu / z * Y0 - Y1;
        double Km = K1 - 2 * mu / z * K0;
        J1 = J0, J0 = Jm, Y1 = Y0, Y0 = Ym, K1 = K0, K0 = Km;
        mu -= 1;
        rj *= r;
        if (j >= static_cast<int>(gd.size())) gd = g_derivatives(f, g, t, kMax);
        double kern = k.cK * 2 / kPi * K0 + k.cY * Y0 + k.cJ * J0;
        double scale = rj * std::pow(t, -mu / 2);  // A_{j+1} = scale * kernel of order nu - j - 1
        double term = (j % 2 ? -1.0 : 1.0) * gd[j] * scale * kern;
        double env = std::abs(gd[j] * scale) * amp;
        if (!std::isfinite(term)) break;
        if (j > 3 && env > prev && below == 0) break;
        sum += term;
        prev = env;
        largest = std::max(largest, env);
        // three in a row, since a single derivative can pass through zero
        below = env <= 1e-17 * largest ? below + 1 : 0;
        if (below == 3) {
            converged = true;
            break;
        }
    }
    return sum;
}

}  // namespace

double quadrature(const TestFunction& f, Modifier g, const std::function<double(double)>& weight, double alpha,
                  double beta, double tol) {
    return quadrature([&](double t) { return g_value(f, g, t) * weight(t); }, alpha, beta, tol);
}

double kernel_integral_ibp(const TestFunction& f, Modifier g, const VoronoiKernel& kernel, double nu, double c,
                           double alpha, double beta) {
    bool ok_b = false, ok_a = false;
    double v = ibp_endpoint(f, g, kernel, nu, c, beta, ok_b) - ibp_endpoint(f, g, kernel, nu, c, alpha, ok_a);
    if (!ok_a || !ok_b) throw ConvergenceError("kernel integral: integration by parts series did not settle");
    return v;
}

double kernel_integral_quadrature(const TestFunction& f, Modifier g, const VoronoiKernel& kernel, double nu,
                                  double c, double alpha, double beta) {
    return quadrature(
        f, g, [&](double t) { return std::pow(t, -nu / 2) * kernel(nu, 4 * kPi * std::sqrt(c * t)); }, alpha, beta,
        1e-10);
}

double kernel_integral(const TestFunction& f, Modifier g, const VoronoiKernel& kernel, double nu, double c,
                       double alpha, double beta) {
    if (4 * kPi * kPi * c * alpha > 60) {
        try {
            return kernel_integral_ibp(f, g, kernel, nu, c, alpha, beta);
        } catch (const ConvergenceError&) {
        }
    }
    return kernel_integral_quadrature(f, g, kernel, nu, c, alpha, beta);
}

// ---------------------------------------------------------------------------
// cases

namespace {

using cplx = std::complex<double>;

struct VCase {
    std::string id;
    hp nu, alpha, beta, theta, psi;
    std::optional<DirichletCharacter> chi;
    double C = 1600;
};

bool in_unit(const hp& t) { return t > 0 && t < 1; }

VCase resolve_voronoi(const IdentityCase& c, const PrecisionContext& ctx) {
    VCase v;
    v.id = c.id;
    precision_scope scope(ctx.working());
    v.nu = param_hp(c, "nu", ctx);
    v.alpha = param_hp(c, "alpha", ctx);
    v.beta = param_hp(c, "beta", ctx);
    if (c.id == "O_VORONOI") {
        if (!(abs(v.nu) < hp(1) / 2) || v.nu == 0) throw HypothesisError("nu must lie in (-1/2, 1/2) and be non-zero");
    } else if (!(v.nu > 0 && v.nu < hp(1) / 2)) {
        throw HypothesisError("nu must lie in (0, 1/2)");
    }
    if (!(v.alpha > 0 && v.alpha < v.beta)) throw HypothesisError("need 0 < alpha < beta");
    if (is_integer(v.alpha) || is_integer(v.beta)) throw HypothesisError("alpha and beta must not be integers");
    bool chi_case = c.id == "V_CHI_ODD" || c.id == "V_CHI_EVEN";
    if (chi_case) {
        std::int64_t q = param_int(c, "q");
        if (q < 1 || q > 1000) throw HypothesisError("q must lie in [1, 1000]");
        CharacterGroup g = enumerate_characters(q);
        bool odd = c.id == "V_CHI_ODD";
        auto ok = [&](const DirichletCharacter& ch) {
            return ch.is_primitive && ch.odd() == odd && (odd || !ch.is_principal);
        };
        if (c.has("chi")) {
            std::int64_t idx = param_int(c, "chi");
            if (idx < 0 || idx >= static_cast<std::int64_t>(g.characters.size()))
                throw HypothesisError("chi index out of range");
            const auto& ch = g.characters[static_cast<std::size_t>(idx)];
            if (!ch.is_primitive) throw HypothesisError("chi must be primitive");
            if (ch.odd() != odd) throw HypothesisError(odd ? "chi must be odd" : "chi must be even");
            if (!odd && ch.is_principal) throw HypothesisError("chi must be non-principal");
            v.chi = ch;
        } else {
            for (const auto& ch : g.characters)
                if (ok(ch)) {
                    v.chi = ch;
                    break;
                }
            if (!v.chi) throw HypothesisError(std::string("no primitive ") + (odd ? "odd" : "even non-principal") +
                                              " character modulo " + std::to_string(q));
        }
    } else if (c.id != "O_VORONOI") {
        v.theta = param_hp(c, "theta", ctx);
        if (!in_unit(v.theta)) throw HypothesisError("theta must lie in (0,1)");
        bool two = c.id == "V_CC" || c.id == "V_SS" || c.id == "V_CS" || c.id == "V_CS_AS_PRINTED" || c.id == "V_SC";
        if (two) {
            v.psi = param_hp(c, "psi", ctx);
            if (!in_unit(v.psi)) throw HypothesisError("psi must lie in (0,1)");
        }
    }
    if (c.has("C")) {
        v.C = param_hp(c, "C", ctx).convert_to<double>();
        if (!(v.C >= 10)) throw HypothesisError("cutoff C must be >= 10");
    }
    return v;
}

bool divides_by_j(const std::string& id) {
    return id == "V_SIN_ND" || id == "V_SS" || id == "V_CS" || id == "V_CS_AS_PRINTED";
}

// one summand of the kernel series: coefficient and product variable
struct Point {
    double c;
    cplx coef;
    int family;  // index into the kernel list
};

cplx chi_value(const DirichletCharacter& ch, std::int64_t n) {
    std::int64_t a = ch.angle_of(n);
    if (a < 0) return 0;
    double ang = 2 * kPi * static_cast<double>(a) / static_cast<double>(ch.order);
    return {std::cos(ang), std::sin(ang)};
}

}  // namespace

bool is_voronoi_id(const std::string& id) { return id.rfind("V_", 0) == 0 || id == "O_VORONOI"; }

TestFunction test_function_of(const IdentityCase& c) {
    auto it = c.params.find("f");
    try {
        return TestFunction::parse(it == c.params.end() ? "exp_decay:1" : it->second);
    } catch (const DomainError& e) {
        throw HypothesisError(e.what());
    }
}

void validate_voronoi_case(const IdentityCase& c, const PrecisionContext& ctx) {
    resolve_voronoi(c, ctx);
    test_function_of(c);
}

hpc voronoi_lhs(const IdentityCase& c, const TestFunction& f, const PrecisionContext& ctx) {
    VCase v = resolve_voronoi(c, ctx);
    precision_scope scope(ctx.working());
    const hp z = -v.nu;
    DivisorWeight w;
    const std::string& id = v.id;
    if (id == "V_SIN_D") w = DivisorWeight::trig(WeightKind::trig_sin_d, z, v.theta);
    else if (id == "V_COS_D") w = DivisorWeight::trig(WeightKind::trig_cos_d, z, v.theta);
    else if (id == "V_SIN_ND") w = DivisorWeight::trig(WeightKind::trig_sin_n_over_d, z, v.theta);
    else if (id == "V_COS_ND") w = DivisorWeight::trig(WeightKind::trig_cos_n_over_d, z, v.theta);
    else if (id == "V_CC") w = DivisorWeight::trig_product(z, Trig::cos, v.theta, Trig::cos, v.psi);
    else if (id == "V_SS") w = DivisorWeight::trig_product(z, Trig::sin, v.theta, Trig::sin, v.psi);
    else if (id == "V_CS" || id == "V_CS_AS_PRINTED") w = DivisorWeight::trig_product(z, Trig::cos, v.theta, Trig::sin, v.psi);
    else if (id == "V_SC") w = DivisorWeight::trig_product(z, Trig::sin, v.theta, Trig::cos, v.psi);
    else if (id == "O_VORONOI") w = DivisorWeight::sigma(z);
    else w = DivisorWeight::sigma_chi(z, *v.chi);

    hpc sum;
    std::int64_t j0 = static_cast<std::int64_t>(floor(v.alpha).convert_to<double>()) + 1;
    std::int64_t j1 = static_cast<std::int64_t>(floor(v.beta).convert_to<double>());
    for (std::int64_t j = std::max<std::int64_t>(j0, 1); j <= j1; ++j) {
        hp fj = f(hp(j));
        if (divides_by_j(id)) fj /= j;
        sum += weighted_divisor_sum(j, w, ctx) * fj;
    }
    if (v.chi) {
        hp q(v.chi->q);
        sum = sum * pow(q, 1 + v.nu / 2) / gauss_sum(*v.chi, ctx);
    }
    return at_precision(sum, ctx.digits);
}

TailEstimate voronoi_rhs(const IdentityCase& c, const TestFunction& f, const EvaluationBudget& budget,
                         const PrecisionContext& ctx) {
    VCase v = resolve_voronoi(c, ctx);
    const std::string& id = v.id;
    const double nu = v.nu.convert_to<double>();
    const double al = v.alpha.convert_to<double>(), be = v.beta.convert_to<double>();
    const double C = v.C;
    const double sn = std::sin(kPi * nu / 2), cs = std::cos(kPi * nu / 2);

    // main term, constants at working precision
    hpc main;
    {
        precision_scope scope(ctx.working());
        hp pi = pi_hp(), two_pi = 2 * pi;
        hp nuh = promote(v.nu);
        auto integral = [&](double power) {
            return hp(quadrature(f, Modifier::plain, [power](double t) { return std::pow(t, power); }, al, be, 1e-14));
        };
        hp snh = sin(pi * nuh / 2), csh = cos(pi * nuh / 2);
        if (id == "V_SIN_D")
            main = hpc(-pow(two_pi, nuh) * gamma(-nuh, ctx) * snh *
                       zeta_pair(-nuh, v.theta, ZetaPairKind::difference, ctx) * integral(0));
        else if (id == "V_COS_D")
            main = hpc(pow(two_pi, nuh) * gamma(-nuh, ctx) * csh * zeta_pair(-nuh, v.theta, ZetaPairKind::sum, ctx) *
                       integral(0));
        else if (id == "V_SIN_ND")
            main = hpc(gamma(nuh, ctx) * snh / pow(two_pi, nuh) *
                       zeta_pair(nuh, v.theta, ZetaPairKind::difference, ctx) * integral(-nu - 1));
        else if (id == "V_COS_ND")
            main = hpc(gamma(nuh, ctx) * csh / pow(two_pi, nuh) * zeta_pair(nuh, v.theta, ZetaPairKind::sum, ctx) *
                       integral(-nu));
        else if (id == "V_CHI_ODD" || id == "V_CHI_EVEN")
            main = dirichlet_L(1 + nuh, *v.chi, ctx) * (pow(hp(v.chi->q), 1 + nuh / 2) * integral(0)) /
                   gauss_sum(*v.chi, ctx);
        else if (id == "O_VORONOI")
            main = hpc(riemann_zeta(1 - nuh, ctx) * integral(-nu) + riemann_zeta(1 + nuh, ctx) * integral(0));
    }

    // kernel series: prefactor, integrand modifier, kernels per family, points
    cplx pref;
    Modifier mod = Modifier::plain;
    std::vector<VoronoiKernel> kernels;
    std::vector<Point> pts;
    const double lim = 2 * C;
    auto lattice1 = [&](double shift, double sign, double e_d, double e_m, int fam) {
        for (std::int64_t d = 1; d * shift < lim; ++d)
            for (std::int64_t m = 0;; ++m) {
                double f_ = m + shift, cc = d * f_;
                if (cc >= lim) break;
                pts.push_back({cc, sign * std::pow(double(d), e_d) * std::pow(f_, e_m), fam});
            }
    };
    auto lattice2 = [&](double th, double ps, double sign, int fam) {
        for (std::int64_t n = 0; (n + ps) * th < lim; ++n)
            for (std::int64_t m = 0;; ++m) {
                double e = n + ps, f_ = m + th, cc = e * f_;
                if (cc >= lim) break;
                pts.push_back({cc, sign * std::pow(f_ / e, nu / 2), fam});
            }
    };
    const double th = id == "O_VORONOI" || v.chi ? 0 : v.theta.convert_to<double>();
    const double ps = v.psi.convert_to<double>();
    if (id == "V_SIN_D" || id == "V_COS_D") {
        bool sine = id == "V_SIN_D";
        pref = sine ? -kPi : kPi;
        kernels = {sine ? VoronoiKernel::Z(nu) : VoronoiKernel::W(nu)};
        lattice1(th, 1, -nu / 2, nu / 2, 0);
        lattice1(1 - th, sine ? -1 : 1, -nu / 2, nu / 2, 0);
    } else if (id == "V_SIN_ND" || id == "V_COS_ND") {
        bool sine = id == "V_SIN_ND";
        pref = kPi;
        mod = sine ? Modifier::over_t : Modifier::plain;
        kernels = {sine ? VoronoiKernel::W_plus(nu) : VoronoiKernel::W(nu)};
        lattice1(th, 1, nu / 2, -nu / 2, 0);
        lattice1(1 - th, sine ? -1 : 1, nu / 2, -nu / 2, 0);
    } else if (id == "V_CHI_ODD" || id == "V_CHI_EVEN" || id == "O_VORONOI") {
        bool odd = id == "V_CHI_ODD";
        pref = odd ? cplx(0, 2 * kPi) : cplx(2 * kPi, 0);
        kernels = {odd ? VoronoiKernel::Z(nu) : VoronoiKernel::W(nu)};
        std::int64_t q = v.chi ? v.chi->q : 1;
        DirichletCharacter cb = v.chi ? v.chi->conjugate() : DirichletCharacter{};
        for (std::int64_t n = 1; double(n) / q < lim; ++n) {
            // sigma-bar_{-nu, chi-bar}(n) = sum d^{-nu} chi-bar(n/d), or sigma_{-nu}(n)
            cplx w = 0;
            for (auto d : divisors(n)) w += std::pow(double(d), -nu) * (v.chi ? chi_value(cb, n / d) : cplx(1));
            if (w == cplx(0)) continue;
            pts.push_back({double(n) / q, w * std::pow(double(n), nu / 2), 0});
        }
    } else {
        // two-trigonometric families, cells (th,ps), (th,1-ps), (1-th,ps), (1-th,1-ps)
        std::array<double, 4> signs{};
        pref = kPi / 2;
        if (id == "V_CC") {
            kernels = {VoronoiKernel::W(nu)};
            signs = {1, 1, 1, 1};
        } else if (id == "V_SS") {
            kernels = {VoronoiKernel::Z_plus(nu)};
            signs = {1, -1, -1, 1};
            mod = Modifier::over_t;
        } else if (id == "V_CS" || id == "V_CS_AS_PRINTED") {
            kernels = {VoronoiKernel::W_plus(nu), VoronoiKernel::W_printed(nu)};
            signs = {1, -1, 1, -1};
            mod = Modifier::over_t;
        } else {
            kernels = {VoronoiKernel::Z(nu)};
            signs = {1, 1, -1, -1};
            pref = -kPi / 2;
        }
        int last = id == "V_CS_AS_PRINTED" ? 1 : 0;
        lattice2(th, ps, signs[0], 0);
        lattice2(th, 1 - ps, signs[1], 0);
        lattice2(1 - th, ps, signs[2], 0);
        lattice2(1 - th, 1 - ps, signs[3], last);
    }
    if (static_cast<std::int64_t>(pts.size()) > budget.max_terms_outer * 50)
        throw ConvergenceError("voronoi series: lattice larger than the budget allows");

    cplx full = 0, half = 0;
    for (const auto& p : pts) {
        double I = kernel_integral(f, mod, kernels[p.family], nu, p.c, al, be);
        cplx t = p.coef * I;
        full += smooth_cutoff(p.c / C) * t;
        half += smooth_cutoff(2 * p.c / C) * t;
    }
    TailEstimate out;
    {
        precision_scope scope(ctx.working());
        cplx series = pref * full;
        out.value = at_precision(main + hpc(hp(series.real()), hp(series.imag())), ctx.digits);
        out.bound = hp(std::abs(pref * (full - half)));
        out.terms_used = static_cast<std::int64_t>(pts.size());
    }
    (void)sn;
    (void)cs;
    return out;
}

VerificationReport voronoi_verify(const IdentityCase& c, const TestFunction& f, const EvaluationBudget& budget,
                                  const PrecisionContext& ctx) {
    VerificationReport r;
    r.case_ = c;
    r.case_.params["f"] = f.describe();
    r.digits = ctx.digits;
    r.tolerance = budget.target_tolerance > 0 ? budget.target_tolerance : default_tolerance(Section::voronoi);
    validate_voronoi_case(c, ctx);
    auto t0 = std::chrono::steady_clock::now();
    try {
        TailEstimate l{voronoi_lhs(c, f, ctx), hp(0), 0};
        TailEstimate rh = voronoi_rhs(c, f, budget, ctx);
        finish_report(r, l, rh, ctx);
    } catch (const HypothesisError&) {
        throw;
    } catch (const zb_error& e) {
        r.error = e.what();
        r.passed = false;
    }
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace zb
