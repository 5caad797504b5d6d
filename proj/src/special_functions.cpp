#include "zetabessel/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace zb {

namespace mp = boost::multiprecision;

namespace {

constexpr double kLn10 = 2.302585092994046;
constexpr double kLog10e = 0.4342944819032518;

unsigned digits_for_cancellation(double lost) {
    return lost > 0 ? static_cast<unsigned>(std::ceil(lost)) : 0u;
}

double to_double(const hp& v) { return v.convert_to<double>(); }

}  // namespace

bool is_integer(const hp& v) { return mp::isfinite(v) && v == floor(v); }

bool is_nonpositive_integer(const hp& v) { return is_integer(v) && v <= 0; }

hp binomial(const hp& a, unsigned j) {
    hp r(1);
    for (unsigned i = 0; i < j; ++i) r = r * (a - i) / (i + 1);
    return r;
}

BesselOrder BesselOrder::make(const hp& nu, const PrecisionContext& ctx, bool allow_limit) {
    precision_scope scope(ctx.working());
    BesselOrder o;
    o.nu = promote(nu);
    hp dist = abs(o.nu - round(o.nu));
    o.near_integer = dist < pow10(-static_cast<long>(ctx.digits / 2));
    o.allow_limit = allow_limit;
    return o;
}

// ---------------------------------------------------------------------------
// Gamma

hp gamma(const hp& s, const PrecisionContext& ctx) {
    if (is_nonpositive_integer(s)) throw PoleError("gamma: pole at non-positive integer");
    precision_scope scope(ctx.working());
    hp r = mp::tgamma(promote(s));
    return at_precision(r, ctx.digits);
}

// ---------------------------------------------------------------------------
// Bessel functions

namespace {

// (z/2)^nu / Gamma(nu+1) with the convention 1/Gamma(pole) = 0
hp leading_power_term(const hp& nu, const hp& half_z) {
    if (is_nonpositive_integer(nu + 1)) return hp(0);
    return pow(half_z, nu) / mp::tgamma(nu + 1);
}

// sum_{n>=0} sign^n (z/2)^{2n+nu} / (n! Gamma(n+nu+1)), at current precision
hp power_series(const hp& nu, const hp& z, int sign, std::int64_t max_terms) {
    hp half = z / 2;
    hp h2 = half * half;
    hp eps = pow10(-static_cast<long>(hp::default_precision()));
    hp term = leading_power_term(nu, half);
    std::int64_t n = 0;
    if (term == 0) {
        // nu is a negative integer: first non-vanishing term at n = -nu
        n = static_cast<std::int64_t>(-nu.convert_to<long>());
        hp base = pow(half, 2 * n + nu) / (mp::tgamma(hp(n + 1)) * mp::tgamma(n + nu + 1));
        term = (sign < 0 && (n % 2)) ? hp(-base) : base;
    }
    hp sum = term;
    for (;; ++n) {
        if (n > max_terms) throw ConvergenceError("bessel power series: term limit reached");
        term *= h2 / ((n + 1) * (n + 1 + nu));
        if (sign < 0) term = -term;
        sum += term;
        if (n > to_double(half) && abs(term) <= eps * abs(sum)) break;
    }
    return sum;
}

// Hankel coefficients a_k(nu) = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k)
struct AsymptoticSums {
    hp p;  // sum (-1)^k a_{2k} / z^{2k}
    hp q;  // sum (-1)^k a_{2k+1} / z^{2k+1}
    hp s;  // sum a_k / z^k (modified kind)
    hp last;
};

AsymptoticSums hankel_sums(const hp& nu, const hp& z, bool modified) {
    hp mu = 4 * nu * nu;
    hp eps = pow10(-static_cast<long>(hp::default_precision()));
    AsymptoticSums out{hp(1), hp(0), hp(1), hp(0)};
    hp term(1);
    hp prev_abs = hp(1);
    for (int k = 1; k < 100000; ++k) {
        hp next = term * (mu - hp((2 * k - 1) * (2 * k - 1))) / (hp(8 * k) * z);
        if (next == 0) {
            out.last = 0;
            return out;
        }
        hp a = abs(next);
        if (a > prev_abs && k > 2) {
            out.last = prev_abs;
            return out;
        }
        term = next;
        prev_abs = a;
        if (modified) {
            out.s += term;
        } else {
            // term carries a_k / z^k; sign pattern (-1)^{floor(k/2)}
            int r = k % 4;
            hp signed_term = (r == 0 || r == 1) ? term : hp(-term);
            if (k % 2 == 0)
                out.p += signed_term;
            else
                out.q += signed_term;
        }
        if (a <= eps * (modified ? abs(out.s) : hp(1))) {
            out.last = a;
            return out;
        }
    }
    throw ConvergenceError("bessel asymptotic series did not settle");
}

template <class F>
hp richardson_near_integer(const hp& nu, const PrecisionContext& ctx, F&& eval) {
    // K, Y analytic in nu: symmetric differences at nu +- h and nu +- 2h
    hp h = pow10(-static_cast<long>(ctx.digits / 3));
    hp g1 = (eval(nu + h) + eval(nu - h)) / 2;
    hp g2 = (eval(nu + 2 * h) + eval(nu - 2 * h)) / 2;
    return (4 * g1 - g2) / 3;
}

}  // namespace

hp bessel_crossover(const PrecisionContext& ctx) {
    double z = std::max(30.0, (ctx.digits + 5) * kLn10 / 2.0);
    return hp(std::ceil(z));
}

hp bessel_I(const BesselOrder& order, const hp& z, const PrecisionContext& ctx) {
    if (!(z > 0)) throw DomainError("bessel_I: z must be positive");
    precision_scope scope(ctx.working() + 10);
    hp nu = promote(order.nu);
    if (is_integer(nu) && nu < 0) nu = -nu;
    hp r = power_series(nu, promote(z), +1, 10000000);
    return at_precision(r, ctx.digits);
}

hp bessel_K_series(const hp& nu_in, const hp& z_in, const PrecisionContext& ctx) {
    double zd = to_double(z_in);
    hp nu0 = abs(nu_in);
    double s = std::fabs(std::sin(M_PI * to_double(nu0 - floor(nu0))));
    double lost = 2 * zd * kLog10e + (s > 0 ? -std::log10(s) : 0.0);
    precision_scope scope(ctx.working() + digits_for_cancellation(lost) + 5);
    hp nu = promote(nu0);
    hp z = promote(z_in);
    hp pi = pi_hp();
    hp ip = power_series(nu, z, +1, 10000000);
    hp im = power_series(-nu, z, +1, 10000000);
    hp r = pi / 2 * (im - ip) / sin(pi * nu);
    return at_precision(r, ctx.working());
}

hp bessel_K_asymptotic(const hp& nu_in, const hp& z_in, const PrecisionContext& ctx) {
    precision_scope scope(ctx.working() + 5);
    hp nu = promote(nu_in);
    hp z = promote(z_in);
    auto sums = hankel_sums(nu, z, true);
    hp r = sqrt(pi_hp() / (2 * z)) * exp(-z) * sums.s;
    return at_precision(r, ctx.working());
}

hp bessel_K(const BesselOrder& order, const hp& z, const PrecisionContext& ctx) {
    if (!(z > 0)) throw DomainError("bessel_K: z must be positive");
    hp nu = abs(order.nu);
    hp r;
    if (z >= bessel_crossover(ctx)) {
        r = bessel_K_asymptotic(nu, z, ctx);
    } else if (order.near_integer) {
        if (!order.allow_limit) throw NearIntegerOrderError("bessel_K: order too close to an integer");
        PrecisionContext inner = with_guard(ctx, static_cast<int>(ctx.digits / 3 + 5));
        precision_scope scope(inner.working());
        r = richardson_near_integer(promote(nu), ctx,
                                    [&](const hp& v) { return bessel_K_series(v, z, inner); });
    } else {
        r = bessel_K_series(nu, z, ctx);
    }
    return at_precision(r, ctx.digits);
}

hp bessel_J_series(const hp& nu_in, const hp& z_in, const PrecisionContext& ctx) {
    double lost = to_double(z_in) * kLog10e;
    precision_scope scope(ctx.working() + digits_for_cancellation(lost) + 5);
    hp nu = promote(nu_in);
    hp z = promote(z_in);
    if (is_integer(nu) && nu < 0) {
        hp r = power_series(-nu, z, -1, 10000000);
        if (static_cast<long>(-nu.convert_to<long>()) % 2) r = -r;
        return at_precision(r, ctx.working());
    }
    return at_precision(power_series(nu, z, -1, 10000000), ctx.working());
}

namespace {

void hankel_pq(const hp& nu, const hp& z, hp& p, hp& q, hp& omega) {
    auto sums = hankel_sums(nu, z, false);
    p = sums.p;
    q = sums.q;
    omega = z - (nu / 2 + hp(1) / 4) * pi_hp();
}

}  // namespace

hp bessel_J_asymptotic(const hp& nu_in, const hp& z_in, const PrecisionContext& ctx) {
    precision_scope scope(ctx.working() + 5);
    hp nu = promote(nu_in);
    hp z = promote(z_in);
    hp p, q, omega;
    hankel_pq(nu, z, p, q, omega);
    hp r = sqrt(2 / (pi_hp() * z)) * (p * cos(omega) - q * sin(omega));
    return at_precision(r, ctx.working());
}

hp bessel_Y_asymptotic(const hp& nu_in, const hp& z_in, const PrecisionContext& ctx) {
    precision_scope scope(ctx.working() + 5);
    hp nu = promote(nu_in);
    hp z = promote(z_in);
    hp p, q, omega;
    hankel_pq(nu, z, p, q, omega);
    hp r = sqrt(2 / (pi_hp() * z)) * (p * sin(omega) + q * cos(omega));
    return at_precision(r, ctx.working());
}

hp bessel_J(const BesselOrder& order, const hp& z, const PrecisionContext& ctx) {
    if (!(z > 0)) throw DomainError("bessel_J: z must be positive");
    hp r = z >= bessel_crossover(ctx) ? bessel_J_asymptotic(order.nu, z, ctx)
                                      : bessel_J_series(order.nu, z, ctx);
    return at_precision(r, ctx.digits);
}

namespace {

hp bessel_Y_series(const hp& nu_in, const hp& z, const PrecisionContext& ctx) {
    hp nu0 = nu_in;
    double s = std::fabs(std::sin(M_PI * to_double(nu0 - floor(nu0))));
    PrecisionContext inner = with_guard(ctx, static_cast<int>(digits_for_cancellation(-std::log10(s)) + 5));
    precision_scope scope(inner.working());
    hp nu = promote(nu0);
    hp pi = pi_hp();
    hp jp = bessel_J_series(nu, z, inner);
    hp jm = bessel_J_series(-nu, z, inner);
    hp r = (jp * cos(nu * pi) - jm) / sin(nu * pi);
    return at_precision(r, ctx.working());
}

}  // namespace

hp bessel_Y(const BesselOrder& order, const hp& z, const PrecisionContext& ctx) {
    if (!(z > 0)) throw DomainError("bessel_Y: z must be positive");
    hp r;
    if (z >= bessel_crossover(ctx)) {
        r = bessel_Y_asymptotic(order.nu, z, ctx);
    } else if (order.near_integer) {
        if (!order.allow_limit) throw NearIntegerOrderError("bessel_Y: order too close to an integer");
        PrecisionContext inner = with_guard(ctx, static_cast<int>(ctx.digits / 3 + 5));
        precision_scope scope(inner.working());
        r = richardson_near_integer(promote(order.nu), ctx,
                                    [&](const hp& v) { return bessel_Y_series(v, z, inner); });
    } else {
        r = bessel_Y_series(order.nu, z, ctx);
    }
    return at_precision(r, ctx.digits);
}

hp bessel_M(const BesselOrder& order, const hp& z, const PrecisionContext& ctx) {
    hp y = bessel_Y(order, z, ctx);
    hp k = bessel_K(order, z, ctx);
    precision_scope scope(ctx.working());
    return at_precision(-y - 2 / pi_hp() * k, ctx.digits);
}

// ---------------------------------------------------------------------------
// Bernoulli numbers and polynomials

const rational& bernoulli_number(unsigned n) {
    static std::mutex mu;
    static std::vector<rational> cache{rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        rational acc(0);
        boost::multiprecision::mpz_int c(1);  // C(m+1, 0)
        for (unsigned k = 0; k < m; ++k) {
            acc += rational(c) * cache[k];
            c = c * (m + 1 - k) / (k + 1);
        }
        cache.push_back(-acc / rational(m + 1));
    }
    return cache[n];
}

namespace {

hp to_hp(const rational& r) {
    hp num(boost::multiprecision::numerator(r).str());
    hp den(boost::multiprecision::denominator(r).str());
    return num / den;
}

hp bernoulli_poly_any(unsigned n, const hp& theta) {
    hp sum(0);
    hp binom(1);
    for (unsigned k = 0; k <= n; ++k) {
        const rational& b = bernoulli_number(k);
        if (b != 0) sum += binom * to_hp(b) * pow(theta, static_cast<long>(n - k));
        binom = binom * (n - k) / (k + 1);
    }
    return sum;
}

}  // namespace

hp bernoulli_poly(unsigned n, const hp& theta, const PrecisionContext& ctx) {
    if (theta < 0 || theta > 1) throw DomainError("bernoulli_poly: theta must lie in [0,1]");
    precision_scope scope(ctx.working());
    return at_precision(bernoulli_poly_any(n, promote(theta)), ctx.digits);
}

// ---------------------------------------------------------------------------
// Hurwitz zeta

namespace {

hp hurwitz_em(const hp& s, const hp& a, const PrecisionContext& ctx) {
    double sd = to_double(s);
    double ad = to_double(a);
    double m_base = std::max<double>(0.5 * ctx.working(), std::fabs(sd));
    for (int attempt = 0; attempt < 12; ++attempt) {
        double m = m_base * std::pow(2.0, attempt);
        long n_direct = std::max<long>(0, static_cast<long>(std::ceil(m - ad)));
        double b_d = ad + n_direct;
        double lost = sd < 1 ? (1 - sd) * std::log10(b_d) : 0.0;
        precision_scope scope(ctx.working() + digits_for_cancellation(lost) + 10);
        hp sp = promote(s);
        hp ap = promote(a);
        hp eps = pow10(-static_cast<long>(ctx.working() + 5));
        Accumulator acc;
        for (long n = 0; n < n_direct; ++n) acc.add(pow(ap + n, -sp));
        hp b = ap + n_direct;
        acc.add(pow(b, 1 - sp) / (sp - 1));
        hp bs = pow(b, -sp);
        acc.add(bs / 2);
        hp poch = sp;  // s (s+1) ... (s+2j-2)
        hp pw = bs / b;
        hp b2 = b * b;
        hp fact(2);  // (2j)!
        bool ok = false;
        hp prev = -1;
        for (unsigned j = 1; j < 400; ++j) {
            hp term = to_hp(bernoulli_number(2 * j)) / fact * poch * pw;
            acc.add(term);
            hp at = abs(term);
            if (at <= eps * abs(acc.value()) || term == 0) {
                ok = true;
                break;
            }
            if (prev >= 0 && at > prev) break;
            prev = at;
            poch *= (sp + 2 * j - 1) * (sp + 2 * j);
            pw /= b2;
            fact *= (2 * j + 1) * (2 * j + 2);
        }
        if (ok) return at_precision(acc.value(), ctx.working());
    }
    throw ConvergenceError("hurwitz_zeta: Euler-Maclaurin correction did not converge");
}

}  // namespace

hp hurwitz_zeta(const hp& s, const hp& alpha, const PrecisionContext& ctx) {
    if (s == 1) throw PoleError("hurwitz_zeta: pole at s = 1");
    if (!(alpha > 0)) throw DomainError("hurwitz_zeta: alpha must be positive");
    if (is_nonpositive_integer(s)) {
        precision_scope scope(ctx.working());
        unsigned n = static_cast<unsigned>(-s.convert_to<long>());
        hp r = -bernoulli_poly_any(n + 1, promote(alpha)) / (n + 1);
        return at_precision(r, ctx.digits);
    }
    return at_precision(hurwitz_em(s, alpha, ctx), ctx.digits);
}

hp riemann_zeta(const hp& s, const PrecisionContext& ctx) {
    precision_scope scope(ctx.working());
    return hurwitz_zeta(s, hp(1), ctx);
}

hp zeta_pair(const hp& s, const hp& theta, ZetaPairKind kind, const PrecisionContext& ctx) {
    if (!(theta > 0 && theta < 1)) throw DomainError("zeta_pair: theta must lie in (0,1)");
    precision_scope scope(ctx.working());
    hp th = promote(theta);
    if (s == 1) {
        if (kind == ZetaPairKind::sum) throw PoleError("zeta_pair: sum kind has a pole at s = 1");
        hp pi = pi_hp();
        return at_precision(pi * cos(pi * th) / sin(pi * th), ctx.digits);
    }
    PrecisionContext inner = with_guard(ctx, 5);
    hp a = hurwitz_zeta(s, th, inner);
    hp b = hurwitz_zeta(s, 1 - th, inner);
    return at_precision(kind == ZetaPairKind::difference ? a - b : a + b, ctx.digits);
}

hp digamma(const hp& alpha, const PrecisionContext& ctx) {
    if (!(alpha > 0)) throw DomainError("digamma: alpha must be positive");
    precision_scope scope(ctx.working());
    return at_precision(mpfr_digamma_value(promote(alpha)), ctx.digits);
}

}  // namespace zb
