// Truncated series evaluators with tail control.
//
//   bessel_lhs_series   sum_n w(n) n^{nu/2} K_nu(a sqrt(n x))
//   rational_rhs_series sum_n w(n) (1 + c n)^{-A}
//   theta_grid_series   sum_{i,m} (i+psi)^alpha (m+theta)^beta (1 + s (i+psi)(m+theta))^{-A}
//   cohen_tail_series   sum_{i,m} e^alpha f^beta (u^s - x^s) / (u^2 - x^2),  u = e f
//   arith_cohen_series  sum_n w(n) (n^s - X^s) / (n (n^2 - X^2))
//
// The rational and Cohen shapes are summed directly up to a cutoff, past which
// the kernel is expanded in inverse powers and each power is summed in closed
// form (Hurwitz zeta or the weight's Dirichlet series).
#pragma once

#include "zetabessel/arithmetic.hpp"
#include "zetabessel/special_functions.hpp"

#include <functional>
#include <vector>

namespace zb {

struct TailEstimate {
    hpc value;
    hp bound;  // size of the omitted part
    std::int64_t terms_used = 0;

    TailEstimate& operator+=(const TailEstimate& o);
    TailEstimate scaled(const hpc& factor) const;
};

using ArithWeight = std::function<hpc(std::int64_t)>;
// D(p) = sum_n w(n) n^{-p}
using DirichletSeries = std::function<hpc(const hp& p, const PrecisionContext& ctx)>;

ArithWeight weight_of(const DivisorWeight& w, const PrecisionContext& ctx);

// |w(n)| <= constant * n^exponent, used for the tail envelope
struct WeightEnvelope {
    hp constant;
    hp exponent;
};
WeightEnvelope envelope_of(const DivisorWeight& w);

// sum_{n>=1} w(n) n^{nu/2} K_nu(a sqrt(n x)), times `prefactor`
TailEstimate bessel_kernel_series(const ArithWeight& w, const WeightEnvelope& env, const hp& nu, const hp& a,
                                  const hp& x, const hpc& prefactor, const EvaluationBudget& budget,
                                  const PrecisionContext& ctx);

// (a^2 x / 4)^{nu/2+k+1} sum_n w(n) n^{nu/2} K_nu(a sqrt(n x))
TailEstimate bessel_lhs_series(const DivisorWeight& w, const hp& nu, const hp& a, const hp& x, int k,
                               const EvaluationBudget& budget, const PrecisionContext& ctx);

TailEstimate rational_rhs_series(const ArithWeight& w, const DirichletSeries& D, const hp& c, const hp& A,
                                 const EvaluationBudget& budget, const PrecisionContext& ctx);

struct GridCell {
    int sign = 1;
    hp theta;  // shift of the m index
    hp psi;    // shift of the i index
};

struct GridSpec {
    hp alpha;
    hp beta;
    int i0 = 1;
};

// one cell of the rational grid
TailEstimate lattice_sum(const GridSpec& g, const hp& theta, const hp& psi, const hp& s, const hp& A,
                         const EvaluationBudget& budget, const PrecisionContext& ctx);
TailEstimate theta_grid_series(const GridSpec& g, const std::vector<GridCell>& cells, const hp& s, const hp& A,
                               const EvaluationBudget& budget, const PrecisionContext& ctx);
// plain box sum over i0 <= i < i0+I, 0 <= m < M, for cross-checks
hp lattice_box(const GridSpec& g, const hp& theta, const hp& psi, const hp& s, const hp& A, int I, int M,
               const PrecisionContext& ctx);

// one cell of the Cohen grid
TailEstimate cohen_lattice_sum(const GridSpec& g, const hp& theta, const hp& psi, const hp& x, const hp& s,
                               const EvaluationBudget& budget, const PrecisionContext& ctx);
TailEstimate cohen_tail_series(const GridSpec& g, const std::vector<GridCell>& cells, const hp& x, const hp& s,
                               const EvaluationBudget& budget, const PrecisionContext& ctx);
// (u^s - x^s)/(u^2 - x^2) with the removable singularity at u = x
hp cohen_kernel(const hp& u, const hp& x, const hp& s, const hp& threshold);

TailEstimate arith_cohen_series(const ArithWeight& w, const DirichletSeries& D, const hp& X, const hp& s,
                                const EvaluationBudget& budget, const PrecisionContext& ctx);

// distance of x from the pole set {(n + psi)(m + theta)} relative to x
hp pole_set_distance(const hp& x, const hp& theta, const hp& psi, int i0);

}  // namespace zb
