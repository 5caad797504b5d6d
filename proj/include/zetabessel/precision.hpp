// High-precision scalar, complex pair and precision contexts.
#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zb {

using hp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                         boost::multiprecision::et_off>;

// ---------------------------------------------------------------------------
// errors

struct zb_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleError : zb_error {
    using zb_error::zb_error;
};
struct ConvergenceError : zb_error {
    using zb_error::zb_error;
};
struct NearIntegerOrderError : zb_error {
    using zb_error::zb_error;
};
struct DomainError : zb_error {
    using zb_error::zb_error;
};
struct GcdError : zb_error {
    using zb_error::zb_error;
};
struct SizeError : zb_error {
    using zb_error::zb_error;
};
struct QuadratureError : zb_error {
    using zb_error::zb_error;
};
struct PoleProximityError : zb_error {
    using zb_error::zb_error;
};
// a theorem hypothesis is violated by the supplied parameters
struct HypothesisError : zb_error {
    using zb_error::zb_error;
};

// ---------------------------------------------------------------------------
// contexts

struct PrecisionContext {
    unsigned digits = 60;
    unsigned guard_digits = 20;

    unsigned working() const { return digits + guard_digits; }
    hp epsilon() const;  // 10^-digits
};

PrecisionContext make_context(unsigned digits, unsigned guard_digits = 20);
PrecisionContext with_guard(const PrecisionContext& ctx, int extra);

// Sets the mpfr default precision for new temporaries and restores it on exit.
// Boost 1.74 keeps this default process-wide, so scopes must not be shared
// between threads; parallel work runs in separate processes.
class precision_scope {
public:
    explicit precision_scope(unsigned digits10);
    ~precision_scope();
    precision_scope(const precision_scope&) = delete;
    precision_scope& operator=(const precision_scope&) = delete;

private:
    unsigned saved_;
};

hp at_precision(const hp& v, unsigned digits10);
hp promote(const hp& v);  // copy at the current default precision if that is higher
hp parse_hp(std::string_view text, unsigned digits10);
std::string to_decimal(const hp& v, unsigned digits10);

hp pi_hp();  // at the current default precision
hp pow10(long e);
hp mpfr_digamma_value(const hp& x);
hp mpfr_zeta_value(const hp& s);

// ---------------------------------------------------------------------------
// complex pair

struct hpc {
    hp re;
    hp im;

    hpc() : re(0), im(0) {}
    hpc(const hp& r) : re(r), im(0) {}  // NOLINT
    hpc(const hp& r, const hp& i) : re(r), im(i) {}

    hpc& operator+=(const hpc& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    hpc& operator-=(const hpc& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    hpc& operator*=(const hpc& o) {
        hp r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    hpc& operator*=(const hp& s) {
        re *= s;
        im *= s;
        return *this;
    }
    hpc& operator/=(const hp& s) {
        re /= s;
        im /= s;
        return *this;
    }
    hpc& operator/=(const hpc& o);
};

inline hpc operator+(hpc a, const hpc& b) { return a += b; }
inline hpc operator-(hpc a, const hpc& b) { return a -= b; }
inline hpc operator*(hpc a, const hpc& b) { return a *= b; }
inline hpc operator*(hpc a, const hp& s) { return a *= s; }
inline hpc operator*(const hp& s, hpc a) { return a *= s; }
inline hpc operator/(hpc a, const hp& s) { return a /= s; }
inline hpc operator/(hpc a, const hpc& b) { return a /= b; }
inline hpc operator-(const hpc& a) { return hpc(-a.re, -a.im); }

inline hpc conj(const hpc& a) { return hpc(a.re, -a.im); }
hp abs(const hpc& a);
hpc expi(const hp& phase);  // e^{i phase}
inline hpc I_unit() { return hpc(hp(0), hp(1)); }
hpc at_precision(const hpc& v, unsigned digits10);

// ---------------------------------------------------------------------------
// summation and budgets

// Neumaier compensated summation at the current default precision.
hp compensated_sum(std::span<const hp> terms);

class Accumulator {
public:
    void add(const hp& x);
    hp value() const { return sum_ + comp_; }
    std::size_t count() const { return n_; }

private:
    hp sum_{0};
    hp comp_{0};
    std::size_t n_ = 0;
};

struct EvaluationBudget {
    std::int64_t max_terms_outer = 200000;
    std::int64_t max_terms_inner = 200000;
    hp tail_epsilon;           // absolute target for omitted tails
    hp singularity_threshold;  // relative closeness that triggers a limit formula
    hp target_tolerance;

    void validate() const;
};

EvaluationBudget default_budget(const PrecisionContext& ctx, const hp& target_tolerance);

}  // namespace zb
