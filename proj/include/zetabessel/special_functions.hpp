// Gamma, Bessel I/J/Y/K/M of real order, Bernoulli numbers and polynomials,
// Riemann and Hurwitz zeta, digamma.
#pragma once

#include "zetabessel/precision.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace zb {

using rational = boost::multiprecision::mpq_rational;

struct BesselOrder {
    hp nu;
    bool near_integer = false;
    bool allow_limit = true;  // evaluate near-integer orders by extrapolation

    static BesselOrder make(const hp& nu, const PrecisionContext& ctx, bool allow_limit = true);
};

enum class ZetaPairKind { difference, sum };

hp gamma(const hp& s, const PrecisionContext& ctx);

hp bessel_I(const BesselOrder& order, const hp& z, const PrecisionContext& ctx);
hp bessel_J(const BesselOrder& order, const hp& z, const PrecisionContext& ctx);
hp bessel_Y(const BesselOrder& order, const hp& z, const PrecisionContext& ctx);
hp bessel_K(const BesselOrder& order, const hp& z, const PrecisionContext& ctx);
hp bessel_M(const BesselOrder& order, const hp& z, const PrecisionContext& ctx);

// Individual branches, exposed for cross-checks.
hp bessel_J_series(const hp& nu, const hp& z, const PrecisionContext& ctx);
hp bessel_J_asymptotic(const hp& nu, const hp& z, const PrecisionContext& ctx);
hp bessel_Y_asymptotic(const hp& nu, const hp& z, const PrecisionContext& ctx);
hp bessel_K_series(const hp& nu, const hp& z, const PrecisionContext& ctx);
hp bessel_K_asymptotic(const hp& nu, const hp& z, const PrecisionContext& ctx);
// argument above which the large-z expansions are accurate to ctx.digits
hp bessel_crossover(const PrecisionContext& ctx);

// Exact Bernoulli numbers B_n (B_1 = -1/2).
const rational& bernoulli_number(unsigned n);
hp bernoulli_poly(unsigned n, const hp& theta, const PrecisionContext& ctx);

hp hurwitz_zeta(const hp& s, const hp& alpha, const PrecisionContext& ctx);
hp riemann_zeta(const hp& s, const PrecisionContext& ctx);
hp zeta_pair(const hp& s, const hp& theta, ZetaPairKind kind, const PrecisionContext& ctx);
hp digamma(const hp& alpha, const PrecisionContext& ctx);

// helpers used across modules
bool is_integer(const hp& v);
bool is_nonpositive_integer(const hp& v);
hp binomial(const hp& a, unsigned j);  // generalized binomial C(a, j), current precision

}  // namespace zb
