// Divisor-type arithmetic weights and sums of squares.
#pragma once

#include "zetabessel/characters.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace zb {

enum class WeightKind {
    plain_sigma,        // d^z
    sigma_chi,          // d^z chi(d)
    sigma_bar_chi,      // d^z chi(n/d)
    sigma_chi1_chi2,    // d^z chi1(d) chi2(n/d)
    trig_sin_d,         // d^z sin(2 pi d theta)
    trig_sin_n_over_d,  // d^z sin(2 pi n theta / d)
    trig_cos_d,
    trig_cos_n_over_d,
    trig_product,  // d^z f1(2 pi d theta) f2(2 pi n psi / d)
    zero,
};

enum class Trig { sin, cos };

struct DivisorWeight {
    WeightKind kind = WeightKind::plain_sigma;
    hp z;
    std::optional<DirichletCharacter> chi;   // chi or chi1
    std::optional<DirichletCharacter> chi2;
    hp theta;
    hp psi;
    Trig first = Trig::sin;   // applied to d
    Trig second = Trig::sin;  // applied to n/d

    static DivisorWeight sigma(const hp& z);
    static DivisorWeight sigma_chi(const hp& z, const DirichletCharacter& chi);
    static DivisorWeight sigma_bar_chi(const hp& z, const DirichletCharacter& chi);
    static DivisorWeight sigma_chi1_chi2(const hp& z, const DirichletCharacter& chi1,
                                         const DirichletCharacter& chi2);
    static DivisorWeight trig(WeightKind kind, const hp& z, const hp& theta);
    static DivisorWeight trig_product(const hp& z, Trig first, const hp& theta, Trig second, const hp& psi);
    static DivisorWeight none();

    bool is_real() const;
    void validate() const;
};

std::vector<std::int64_t> divisors(std::int64_t n);

hpc weighted_divisor_sum(std::int64_t n, const DivisorWeight& w, const PrecisionContext& ctx);
// same sum with the summation variable d replaced by n/d
hpc weighted_divisor_sum_reindexed(std::int64_t n, const DivisorWeight& w, const PrecisionContext& ctx);

std::int64_t r2(std::int64_t n);
std::int64_t r6_formula(std::int64_t n);
std::int64_t r6_bruteforce(std::int64_t n);

}  // namespace zb
