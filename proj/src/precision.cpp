#include "zetabessel/precision.hpp"

#include <cmath>
#include <sstream>

namespace zb {

hp PrecisionContext::epsilon() const { return pow10(-static_cast<long>(digits)); }

PrecisionContext make_context(unsigned digits, unsigned guard_digits) {
    if (digits < 15) throw DomainError("precision must be at least 15 digits");
    return PrecisionContext{digits, guard_digits};
}

PrecisionContext with_guard(const PrecisionContext& ctx, int extra) {
    if (extra < 0) throw DomainError("with_guard: extra digits must be non-negative");
    PrecisionContext out = ctx;
    out.digits += static_cast<unsigned>(extra);
    return out;
}

precision_scope::precision_scope(unsigned digits10) : saved_(hp::default_precision()) {
    hp::default_precision(digits10);
}

precision_scope::~precision_scope() { hp::default_precision(saved_); }

hp at_precision(const hp& v, unsigned digits10) { return hp(v, digits10); }

hp promote(const hp& v) {
    unsigned d = hp::default_precision();
    if (v.precision() >= d) return v;
    return hp(v, d);
}

hp parse_hp(std::string_view text, unsigned digits10) {
    precision_scope scope(digits10);
    std::string s(text);
    // accept simple fractions such as "1/3"
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        hp num(s.substr(0, slash));
        hp den(s.substr(slash + 1));
        if (den == 0) throw DomainError("division by zero in '" + s + "'");
        return num / den;
    }
    try {
        return hp(s);
    } catch (const std::exception&) {
        throw DomainError("not a decimal number: '" + s + "'");
    }
}

std::string to_decimal(const hp& v, unsigned digits10) {
    if (boost::multiprecision::isnan(v)) return "nan";
    if (boost::multiprecision::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v.str(static_cast<std::streamsize>(digits10), std::ios_base::scientific);
}

hp pi_hp() {
    hp r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

hp pow10(long e) {
    hp r(10);
    return boost::multiprecision::pow(r, e);
}

hp mpfr_digamma_value(const hp& x) {
    hp r;
    mpfr_digamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

hp mpfr_zeta_value(const hp& s) {
    hp r;
    mpfr_zeta(r.backend().data(), s.backend().data(), MPFR_RNDN);
    return r;
}

hpc& hpc::operator/=(const hpc& o) {
    hp den = o.re * o.re + o.im * o.im;
    hp r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = r;
    return *this;
}

hp abs(const hpc& a) { return boost::multiprecision::hypot(a.re, a.im); }

hpc expi(const hp& phase) { return hpc(cos(phase), sin(phase)); }

hpc at_precision(const hpc& v, unsigned digits10) {
    return hpc(hp(v.re, digits10), hp(v.im, digits10));
}

hp compensated_sum(std::span<const hp> terms) {
    Accumulator acc;
    for (const auto& t : terms) acc.add(t);
    return acc.value();
}

void Accumulator::add(const hp& x) {
    hp t = sum_ + x;
    if (abs(sum_) >= abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
    ++n_;
}

void EvaluationBudget::validate() const {
    if (max_terms_outer <= 0 || max_terms_inner <= 0)
        throw DomainError("budget term limits must be positive");
    if (!(tail_epsilon > 0)) throw DomainError("tail_epsilon must be positive");
    if (!(singularity_threshold > 0) || singularity_threshold > hp("0.01"))
        throw DomainError("singularity_threshold must lie in (0, 0.01]");
}

EvaluationBudget default_budget(const PrecisionContext& ctx, const hp& target_tolerance) {
    precision_scope scope(ctx.digits);
    EvaluationBudget b;
    b.tail_epsilon = pow10(-static_cast<long>(ctx.digits / 2));
    b.singularity_threshold = hp("1e-6");
    b.target_tolerance = target_tolerance;
    return b;
}

}  // namespace zb
