#include "zetabessel/series.hpp"

#include <cmath>

namespace zb {

TailEstimate& TailEstimate::operator+=(const TailEstimate& o) {
    value += o.value;
    bound += o.bound;
    terms_used += o.terms_used;
    return *this;
}

TailEstimate TailEstimate::scaled(const hpc& factor) const {
    TailEstimate t = *this;
    t.value *= factor;
    t.bound *= abs(factor);
    return t;
}

ArithWeight weight_of(const DivisorWeight& w, const PrecisionContext& ctx) {
    // follows the caller's default precision when that is higher
    return [w, ctx](std::int64_t n) {
        PrecisionContext c = ctx;
        unsigned cur = hp::default_precision();
        if (cur > c.working()) c.digits = cur - c.guard_digits;
        return weighted_divisor_sum(n, w, c);
    };
}

WeightEnvelope envelope_of(const DivisorWeight& w) {
    // |sum_{d|n} d^z u(d)| <= d(n) max(1, n^z) <= 2 sqrt(n) n^{max(z,0)}
    hp z = w.z > 0 ? w.z : hp(0);
    return {hp(2), z + hp(1) / 2};
}

namespace {

hp eps_for(unsigned digits) { return pow10(-static_cast<long>(digits)); }

// w(1..n0-1), re-evaluated when a caller needs more digits than cached
class HeadWeights {
public:
    HeadWeights(const ArithWeight& w, std::int64_t n0) : w_(w), n0_(n0) {}

    const std::vector<hpc>& at(unsigned digits10) {
        if (digits10 > digits_) {
            digits_ = digits10 + digits10 / 2;
            precision_scope scope(digits_);
            vals_.clear();
            for (std::int64_t n = 1; n < n0_; ++n) vals_.push_back(w_(n));
        }
        return vals_;
    }

private:
    const ArithWeight& w_;
    std::int64_t n0_;
    unsigned digits_ = 0;
    std::vector<hpc> vals_;
};

// bound for sum_{m>n} C m^beta K_nu(a sqrt(m x)); returns negative if the
// envelope is not yet decreasing
hp bessel_tail_bound(const WeightEnvelope& env, const hp& nu, const hp& a, const hp& x, std::int64_t n) {
    hp beta = env.exponent + nu / 2;
    hp y0 = a * sqrt(x * n);
    hp s = 2 * beta + hp(3) / 2;  // exponent of the incomplete gamma
    if (y0 < 2 * (s + 1) || y0 < 2) return hp(-1);
    hp kappa = 1 + abs(4 * nu * nu - 1) / (4 * y0);
    hp ax = a * a * x;
    hp gamma_tail = pow(y0, s - 1) * exp(-y0) * 2;
    return env.constant * kappa * sqrt(pi_hp() / 2) * 2 / ax * pow(ax, -beta) * gamma_tail;
}

}  // namespace

TailEstimate bessel_kernel_series(const ArithWeight& w, const WeightEnvelope& env, const hp& nu, const hp& a,
                                  const hp& x, const hpc& prefactor, const EvaluationBudget& budget,
                                  const PrecisionContext& ctx) {
    if (!(a > 0) || !(x > 0)) throw DomainError("bessel series: a and x must be positive");
    precision_scope scope(ctx.working());
    BesselOrder order = BesselOrder::make(nu, ctx);
    hp nup = promote(nu), ap = promote(a), xp = promote(x);
    hp pref_abs = abs(prefactor);
    hpc sum;
    TailEstimate out;
    for (std::int64_t n = 1;; ++n) {
        if (n > budget.max_terms_outer)
            throw ConvergenceError("bessel series: max_terms_outer reached before the tail bound met tail_epsilon");
        hpc wn = w(n);
        if (wn.re != 0 || wn.im != 0) {
            hp k = bessel_K(order, ap * sqrt(xp * n), ctx);
            sum += wn * (pow(hp(n), nup / 2) * k);
        }
        hp b = bessel_tail_bound(env, nup, ap, xp, n);
        if (b >= 0 && b * pref_abs <= budget.tail_epsilon) {
            out.bound = b * pref_abs;
            out.terms_used = n;
            break;
        }
    }
    out.value = at_precision(sum * prefactor, ctx.digits);
    out.bound = at_precision(out.bound, ctx.digits);
    return out;
}

TailEstimate bessel_lhs_series(const DivisorWeight& w, const hp& nu, const hp& a, const hp& x, int k,
                               const EvaluationBudget& budget, const PrecisionContext& ctx) {
    w.validate();
    if (w.kind == WeightKind::zero) return TailEstimate{hpc(), hp(0), 0};
    precision_scope scope(ctx.working());
    hp pref = pow(promote(a) * a * x / 4, promote(nu) / 2 + k + 1);
    return bessel_kernel_series(weight_of(w, ctx), envelope_of(w), nu, a, x, hpc(pref), budget, ctx);
}

// ---------------------------------------------------------------------------

TailEstimate rational_rhs_series(const ArithWeight& w, const DirichletSeries& D, const hp& c, const hp& A,
                                 const EvaluationBudget& budget, const PrecisionContext& ctx) {
    if (!(c > 0)) throw DomainError("rational series: c must be positive");
    precision_scope scope(ctx.working());
    hp cp = promote(c), Ap = promote(A);
    std::int64_t n0 = std::max<std::int64_t>(1, static_cast<std::int64_t>(ceil(8 / cp).convert_to<double>()));
    if (n0 > budget.max_terms_outer) throw ConvergenceError("rational series: direct range exceeds budget");
    std::vector<hpc> ws;
    hpc direct;
    for (std::int64_t n = 1; n < n0; ++n) {
        ws.push_back(w(n));
        direct += ws.back() * pow(1 + cp * n, -Ap);
    }
    HeadWeights head(w, n0);
    hp eps = eps_for(ctx.working());
    hpc tail;
    hp binom(1);
    hp last(0);
    std::int64_t j = 0;
    for (;; ++j) {
        if (j > budget.max_terms_inner) throw ConvergenceError("rational series: expansion did not converge");
        hp p = Ap + j;
        // D(p) minus the head cancels about p*log10(n0) digits
        unsigned extra = static_cast<unsigned>(p.convert_to<double>() * std::log10(double(n0))) + 5;
        PrecisionContext inner = with_guard(ctx, static_cast<int>(extra));
        hpc rest;
        {
            precision_scope s2(inner.working());
            rest = D(promote(p), inner);
            const auto& hw = head.at(inner.working());
            for (std::int64_t n = 1; n < n0; ++n) rest -= hw[n - 1] * pow(hp(n), -promote(p));
            rest = at_precision(rest, ctx.working());
        }
        hpc t = rest * (binom * pow(cp, -Ap - j));
        tail += t;
        last = abs(t);
        if (j > 2 && last <= eps * abs(direct + tail)) break;
        binom = binom * (-Ap - j) / (j + 1);
    }
    TailEstimate out;
    out.value = at_precision(direct + tail, ctx.digits);
    out.bound = at_precision(last, ctx.digits);
    out.terms_used = n0 - 1 + j + 1;
    return out;
}

// ---------------------------------------------------------------------------

TailEstimate lattice_sum(const GridSpec& g, const hp& theta, const hp& psi, const hp& s, const hp& A,
                         const EvaluationBudget& budget, const PrecisionContext& ctx) {
    if (!(theta > 0) || !(s > 0)) throw DomainError("lattice: theta and s must be positive");
    precision_scope scope(ctx.working() + 5);
    PrecisionContext zc = with_guard(ctx, 5);
    hp th = promote(theta), ps = promote(psi), sp = promote(s), Ap = promote(A);
    hp al = promote(g.alpha), be = promote(g.beta);
    hp e_min = g.i0 + ps;
    if (!(e_min > 0)) throw DomainError("lattice: first shifted index must be positive");
    hp U = 8 / sp;      // direct summation while s e f < 8
    hp f_lim = U / e_min;
    hp eps = eps_for(ctx.working() + 2);
    Accumulator total;
    hp bound(0);
    std::int64_t terms = 0;

    auto expand = [&](auto&& term_j) {
        hp binom(1);
        for (unsigned j = 0;; ++j) {
            if (j > 100000) throw ConvergenceError("lattice: expansion did not converge");
            hp t = binom * pow(sp, -Ap - j) * term_j(j);
            total.add(t);
            if (j > 1 && abs(t) <= eps * abs(total.value())) {
                bound += abs(t);
                return;
            }
            binom = binom * (-Ap - j) / (j + 1);
        }
    };

    std::int64_t m = 0;
    for (; m + th < f_lim; ++m) {
        hp f = m + th;
        std::int64_t i = g.i0;
        for (; (i + ps) * f < U; ++i) {
            if (++terms > budget.max_terms_outer) throw ConvergenceError("lattice: direct range exceeds budget");
            hp e = i + ps;
            total.add(pow(e, al) * pow(f, be) * pow(1 + sp * e * f, -Ap));
        }
        hp e_start = i + ps;
        hp fpow = pow(f, be - Ap);
        expand([&](unsigned j) { return fpow / pow(f, hp(j)) * hurwitz_zeta(Ap + j - al, e_start, zc); });
    }
    hp f_start = m + th;
    hp e_start = g.i0 + ps;
    expand([&](unsigned j) {
        return hurwitz_zeta(Ap + j - al, e_start, zc) * hurwitz_zeta(Ap + j - be, f_start, zc);
    });
    TailEstimate out;
    out.value = hpc(at_precision(total.value(), ctx.digits));
    out.bound = at_precision(bound, ctx.digits);
    out.terms_used = terms;
    return out;
}

TailEstimate theta_grid_series(const GridSpec& g, const std::vector<GridCell>& cells, const hp& s, const hp& A,
                               const EvaluationBudget& budget, const PrecisionContext& ctx) {
    TailEstimate out{hpc(), hp(0), 0};
    precision_scope scope(ctx.working());
    for (const auto& c : cells) {
        if (!(c.theta > 0 && c.theta < 1)) throw DomainError("theta grid: theta must lie in (0,1)");
        auto t = lattice_sum(g, c.theta, c.psi, s, A, budget, ctx);
        out += t.scaled(hpc(hp(c.sign)));
    }
    return out;
}

hp lattice_box(const GridSpec& g, const hp& theta, const hp& psi, const hp& s, const hp& A, int I, int M,
               const PrecisionContext& ctx) {
    precision_scope scope(ctx.working());
    Accumulator acc;
    for (int m = 0; m < M; ++m) {
        hp f = m + promote(theta);
        for (int i = g.i0; i < g.i0 + I; ++i) {
            hp e = i + promote(psi);
            acc.add(pow(e, promote(g.alpha)) * pow(f, promote(g.beta)) * pow(1 + promote(s) * e * f, -promote(A)));
        }
    }
    return at_precision(acc.value(), ctx.digits);
}

// ---------------------------------------------------------------------------

hp cohen_kernel(const hp& u, const hp& x, const hp& s, const hp& threshold) {
    hp gap = u - x;
    if (abs(gap) >= threshold * x) return (pow(u, s) - pow(x, s)) / (u * u - x * x);
    // (u^s - x^s)/(u - x) = sum_{k>=1} C(s,k) x^{s-k} gap^{k-1}
    hp eps = eps_for(hp::default_precision());
    hp sum(0);
    hp binom = s;
    hp xp = pow(x, s - 1);
    hp gp(1);
    for (unsigned k = 1; k < 1000; ++k) {
        hp t = binom * xp * gp;
        sum += t;
        if (abs(t) <= eps * abs(sum) || t == 0) break;
        binom = binom * (s - k) / (k + 1);
        xp /= x;
        gp *= gap;
    }
    return sum / (u + x);
}

TailEstimate cohen_lattice_sum(const GridSpec& g, const hp& theta, const hp& psi, const hp& x, const hp& s,
                               const EvaluationBudget& budget, const PrecisionContext& ctx) {
    if (!(theta > 0) || !(x > 0)) throw DomainError("Cohen lattice: theta and x must be positive");
    precision_scope scope(ctx.working() + 5);
    PrecisionContext zc = with_guard(ctx, 5);
    hp th = promote(theta), ps = promote(psi), xp = promote(x), sp = promote(s);
    hp al = promote(g.alpha), be = promote(g.beta);
    hp thr = promote(budget.singularity_threshold);
    hp e_min = g.i0 + ps;
    if (!(e_min > 0)) throw DomainError("Cohen lattice: first shifted index must be positive");
    hp U = 4 * xp;
    hp f_lim = U / e_min;
    hp eps = eps_for(ctx.working() + 2);
    hp x2 = xp * xp;
    hp xs = pow(xp, sp);
    Accumulator total;
    hp bound(0);
    std::int64_t terms = 0;

    // families x^{2j} u^{-(2+2j-s)} and -x^{s+2j} u^{-(2+2j)}
    auto expand = [&](auto&& sum_for_power) {
        hp c1(1);
        hp c2 = -xs;
        for (unsigned j = 0;; ++j) {
            if (j > 100000) throw ConvergenceError("Cohen lattice: expansion did not converge");
            hp t = c1 * sum_for_power(2 + 2 * j - sp) + c2 * sum_for_power(hp(2 + 2 * j));
            total.add(t);
            if (j > 1 && abs(t) <= eps * abs(total.value())) {
                bound += abs(t);
                return;
            }
            c1 *= x2;
            c2 *= x2;
        }
    };

    std::int64_t m = 0;
    for (; m + th < f_lim; ++m) {
        hp f = m + th;
        std::int64_t i = g.i0;
        for (; (i + ps) * f < U; ++i) {
            if (++terms > budget.max_terms_outer) throw ConvergenceError("Cohen lattice: direct range exceeds budget");
            hp e = i + ps;
            hp u = e * f;
            total.add(pow(e, al) * pow(f, be) * cohen_kernel(u, xp, sp, thr));
        }
        hp e_start = i + ps;
        expand([&](const hp& p) { return pow(f, be - p) * hurwitz_zeta(p - al, e_start, zc); });
    }
    hp f_start = m + th;
    expand([&](const hp& p) {
        return hurwitz_zeta(p - al, e_min, zc) * hurwitz_zeta(p - be, f_start, zc);
    });
    TailEstimate out;
    out.value = hpc(at_precision(total.value(), ctx.digits));
    out.bound = at_precision(bound, ctx.digits);
    out.terms_used = terms;
    return out;
}

TailEstimate cohen_tail_series(const GridSpec& g, const std::vector<GridCell>& cells, const hp& x, const hp& s,
                               const EvaluationBudget& budget, const PrecisionContext& ctx) {
    TailEstimate out{hpc(), hp(0), 0};
    precision_scope scope(ctx.working());
    for (const auto& c : cells) {
        auto t = cohen_lattice_sum(g, c.theta, c.psi, x, s, budget, ctx);
        out += t.scaled(hpc(hp(c.sign)));
    }
    return out;
}

TailEstimate arith_cohen_series(const ArithWeight& w, const DirichletSeries& D, const hp& X, const hp& s,
                                const EvaluationBudget& budget, const PrecisionContext& ctx) {
    if (!(X > 0)) throw DomainError("arithmetic Cohen series: X must be positive");
    precision_scope scope(ctx.working());
    hp Xp = promote(X), sp = promote(s);
    hp thr = promote(budget.singularity_threshold);
    std::int64_t n0 = static_cast<std::int64_t>(ceil(4 * Xp).convert_to<double>()) + 1;
    if (n0 > budget.max_terms_outer) throw ConvergenceError("arithmetic Cohen series: direct range exceeds budget");
    std::vector<hpc> ws;
    hpc direct;
    for (std::int64_t n = 1; n < n0; ++n) {
        ws.push_back(w(n));
        hp u(n);
        direct += ws.back() * (cohen_kernel(u, Xp, sp, thr) / u);
    }
    HeadWeights head(w, n0);
    hp eps = eps_for(ctx.working());
    hp x2 = Xp * Xp;
    hp c1(1);
    hp c2 = -pow(Xp, sp);
    hpc tail;
    hp last(0);
    unsigned j = 0;
    auto rest_at = [&](const hp& p) {
        unsigned extra = static_cast<unsigned>(std::max(0.0, p.convert_to<double>()) * std::log10(double(n0))) + 5;
        PrecisionContext inner = with_guard(ctx, static_cast<int>(extra));
        precision_scope s2(inner.working());
        hpc r = D(promote(p), inner);
        const auto& hw = head.at(inner.working());
        for (std::int64_t n = 1; n < n0; ++n) r -= hw[n - 1] * pow(hp(n), -promote(p));
        return at_precision(r, ctx.working());
    };
    for (;; ++j) {
        if (j > static_cast<unsigned>(budget.max_terms_inner))
            throw ConvergenceError("arithmetic Cohen series: expansion did not converge");
        hpc t = rest_at(3 + 2 * j - sp) * c1 + rest_at(hp(3 + 2 * j)) * c2;
        tail += t;
        last = abs(t);
        if (j > 2 && last <= eps * abs(direct + tail)) break;
        c1 *= x2;
        c2 *= x2;
    }
    TailEstimate out;
    out.value = at_precision(direct + tail, ctx.digits);
    out.bound = at_precision(last, ctx.digits);
    out.terms_used = n0 - 1 + j + 1;
    return out;
}

hp pole_set_distance(const hp& x, const hp& theta, const hp& psi, int i0) {
    hp e_min = i0 + psi;
    hp best(-1);
    for (std::int64_t m = 0;; ++m) {
        hp f = m + theta;
        if (f * e_min > 2 * x) break;
        hp i_real = x / f - psi;
        for (hp cand : {floor(i_real), ceil(i_real)}) {
            if (cand < i0) cand = hp(i0);
            hp d = abs((cand + psi) * f - x) / x;
            if (best < 0 || d < best) best = d;
        }
    }
    return best < 0 ? hp(1) : best;
}

}  // namespace zb
