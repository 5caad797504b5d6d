#include "zetabessel/arithmetic.hpp"

#include <algorithm>
#include <mutex>

namespace zb {

DivisorWeight DivisorWeight::sigma(const hp& z) {
    DivisorWeight w;
    w.kind = WeightKind::plain_sigma;
    w.z = z;
    return w;
}

DivisorWeight DivisorWeight::sigma_chi(const hp& z, const DirichletCharacter& chi) {
    DivisorWeight w = sigma(z);
    w.kind = WeightKind::sigma_chi;
    w.chi = chi;
    return w;
}

DivisorWeight DivisorWeight::sigma_bar_chi(const hp& z, const DirichletCharacter& chi) {
    DivisorWeight w = sigma(z);
    w.kind = WeightKind::sigma_bar_chi;
    w.chi = chi;
    return w;
}

DivisorWeight DivisorWeight::sigma_chi1_chi2(const hp& z, const DirichletCharacter& chi1,
                                             const DirichletCharacter& chi2) {
    DivisorWeight w = sigma(z);
    w.kind = WeightKind::sigma_chi1_chi2;
    w.chi = chi1;
    w.chi2 = chi2;
    return w;
}

DivisorWeight DivisorWeight::trig(WeightKind kind, const hp& z, const hp& theta) {
    DivisorWeight w = sigma(z);
    w.kind = kind;
    w.theta = theta;
    w.validate();
    return w;
}

DivisorWeight DivisorWeight::trig_product(const hp& z, Trig first, const hp& theta, Trig second,
                                          const hp& psi) {
    DivisorWeight w = sigma(z);
    w.kind = WeightKind::trig_product;
    w.first = first;
    w.second = second;
    w.theta = theta;
    w.psi = psi;
    w.validate();
    return w;
}

DivisorWeight DivisorWeight::none() {
    DivisorWeight w;
    w.kind = WeightKind::zero;
    w.z = 0;
    return w;
}

bool DivisorWeight::is_real() const {
    auto real_chi = [](const std::optional<DirichletCharacter>& c) {
        if (!c) return true;
        for (auto a : c->angle)
            if (a > 0 && 2 * a != c->order) return false;
        return true;
    };
    return real_chi(chi) && real_chi(chi2);
}

void DivisorWeight::validate() const {
    auto in_unit = [](const hp& t) { return t > 0 && t < 1; };
    switch (kind) {
        case WeightKind::trig_sin_d:
        case WeightKind::trig_sin_n_over_d:
        case WeightKind::trig_cos_d:
        case WeightKind::trig_cos_n_over_d:
            if (!in_unit(theta)) throw DomainError("trig weight: theta must lie in (0,1)");
            break;
        case WeightKind::trig_product:
            if (!in_unit(theta) || !in_unit(psi)) throw DomainError("trig weight: theta, psi must lie in (0,1)");
            break;
        case WeightKind::sigma_chi:
        case WeightKind::sigma_bar_chi:
            if (!chi) throw DomainError("character weight without a character");
            break;
        case WeightKind::sigma_chi1_chi2:
            if (!chi || !chi2) throw DomainError("two-character weight needs both characters");
            break;
        default: break;
    }
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    if (n < 1) throw DomainError("divisors: n must be positive");
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

namespace {

hp trig_value(Trig t, const hp& arg) { return t == Trig::sin ? sin(arg) : cos(arg); }

// summand for divisor d with cofactor e = n/d
hpc summand(std::int64_t d, std::int64_t e, const DivisorWeight& w, const hp& two_pi) {
    hp dz = w.z == 0 ? hp(1) : pow(hp(d), w.z);
    hp dd(d), ee(e);
    switch (w.kind) {
        case WeightKind::zero: return hpc();
        case WeightKind::plain_sigma: return hpc(dz);
        case WeightKind::sigma_chi: return w.chi->value(d) * dz;
        case WeightKind::sigma_bar_chi: return w.chi->value(e) * dz;
        case WeightKind::sigma_chi1_chi2: return w.chi->value(d) * w.chi2->value(e) * dz;
        case WeightKind::trig_sin_d: return hpc(dz * sin(two_pi * dd * w.theta));
        case WeightKind::trig_cos_d: return hpc(dz * cos(two_pi * dd * w.theta));
        case WeightKind::trig_sin_n_over_d: return hpc(dz * sin(two_pi * ee * w.theta));
        case WeightKind::trig_cos_n_over_d: return hpc(dz * cos(two_pi * ee * w.theta));
        case WeightKind::trig_product:
            return hpc(dz * trig_value(w.first, two_pi * dd * w.theta) * trig_value(w.second, two_pi * ee * w.psi));
    }
    return hpc();
}

}  // namespace

hpc weighted_divisor_sum(std::int64_t n, const DivisorWeight& w, const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("weighted_divisor_sum: n must be positive");
    precision_scope scope(ctx.working());
    hp two_pi = 2 * pi_hp();
    hpc sum;
    for (auto d : divisors(n)) sum += summand(d, n / d, w, two_pi);
    return at_precision(sum, ctx.digits);
}

hpc weighted_divisor_sum_reindexed(std::int64_t n, const DivisorWeight& w, const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("weighted_divisor_sum: n must be positive");
    precision_scope scope(ctx.working());
    hp two_pi = 2 * pi_hp();
    hpc sum;
    for (auto e : divisors(n)) sum += summand(n / e, e, w, two_pi);
    return at_precision(sum, ctx.digits);
}

std::int64_t r2(std::int64_t n) {
    if (n < 0) throw DomainError("r2: n must be non-negative");
    std::int64_t count = 0;
    for (std::int64_t x = 0; x * x <= n; ++x) {
        std::int64_t rest = n - x * x;
        std::int64_t y = 0;
        while ((y + 1) * (y + 1) <= rest) ++y;
        if (y * y != rest) continue;
        // sign choices, not double counting zeros
        count += (x == 0 ? 1 : 2) * (y == 0 ? 1 : 2);
    }
    return count;
}

std::int64_t r6_formula(std::int64_t n) {
    if (n < 1) throw DomainError("r6_formula: n must be positive");
    std::int64_t a = 0, b = 0;
    for (auto d : divisors(n)) {
        std::int64_t e = n / d;
        if (e % 2 == 1) a += (((e - 1) / 2) % 2 ? -1 : 1) * d * d;
        if (d % 2 == 1) b += (((d - 1) / 2) % 2 ? -1 : 1) * d * d;
    }
    return 16 * a - 4 * b;
}

std::int64_t r6_bruteforce(std::int64_t n) {
    if (n < 0) throw DomainError("r6_bruteforce: n must be non-negative");
    if (n > 10000) throw SizeError("r6_bruteforce: n limited to 10^4");
    static std::mutex mu;
    static std::vector<std::int64_t> t2, t4;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<std::int64_t>(t2.size()) <= n) {
        std::size_t old = t2.size();
        t2.resize(n + 1);
        for (std::size_t m = old; m < t2.size(); ++m) t2[m] = r2(static_cast<std::int64_t>(m));
        std::size_t old4 = t4.size();
        t4.resize(n + 1);
        for (std::size_t m = old4; m < t4.size(); ++m) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i <= m; ++i) s += t2[i] * t2[m - i];
            t4[m] = s;
        }
    }
    std::int64_t s = 0;
    for (std::int64_t i = 0; i <= n; ++i) s += t2[i] * t4[n - i];
    return s;
}

}  // namespace zb
