// Dirichlet characters, Gauss sums and Dirichlet L-functions.
#pragma once

#include "zetabessel/precision.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace zb {

enum class Parity { even, odd };

// Values are stored as angle numerators: chi(n) = exp(2 pi i angle[n mod q] / order).
struct DirichletCharacter {
    std::int64_t q = 1;
    std::int64_t order = 1;        // common denominator of the angles (group exponent)
    std::vector<int> exponents;    // coordinates in the dual of the generator basis
    std::vector<std::int64_t> angle;  // -1 on non-units
    Parity parity = Parity::even;
    bool is_primitive = true;
    bool is_principal = true;
    std::int64_t conductor = 1;
    std::size_t index = 0;  // position inside its CharacterGroup

    bool is_unit(std::int64_t n) const { return angle[mod(n)] >= 0; }
    std::int64_t angle_of(std::int64_t n) const { return angle[mod(n)]; }
    hpc value(std::int64_t n) const;  // at the current default precision
    DirichletCharacter conjugate() const;
    bool odd() const { return parity == Parity::odd; }

private:
    std::size_t mod(std::int64_t n) const {
        std::int64_t r = n % q;
        return static_cast<std::size_t>(r < 0 ? r + q : r);
    }
};

struct CharacterGroup {
    std::int64_t q = 1;
    std::int64_t phi = 1;
    std::vector<DirichletCharacter> characters;

    std::vector<const DirichletCharacter*> with_parity(Parity p) const;
    const DirichletCharacter& principal() const { return characters.front(); }
    // character table index of the conjugate of characters[i]
    std::size_t conjugate_index(std::size_t i) const;
};

CharacterGroup enumerate_characters(std::int64_t q);

hpc gauss_sum(const DirichletCharacter& chi, const PrecisionContext& ctx);
hpc gauss_factorization(const DirichletCharacter& chi, std::int64_t n, const PrecisionContext& ctx);
hpc dirichlet_L(const hp& s, const DirichletCharacter& chi, const PrecisionContext& ctx);

enum class TrigKind { sine, cosine };
hp trig_from_characters(std::int64_t d, std::int64_t h, std::int64_t q, TrigKind kind,
                        const PrecisionContext& ctx);

// Exact sums of roots of unity: multiset of angle numerators modulo `order`.
class RootOfUnitySum {
public:
    explicit RootOfUnitySum(std::int64_t order) : order_(order), counts_(order, 0) {}
    void add(std::int64_t angle, std::int64_t mult = 1);
    // integer value if the sum is rational, reduced modulo the cyclotomic polynomial
    std::optional<std::int64_t> exact_integer() const;

private:
    std::int64_t order_;
    std::vector<std::int64_t> counts_;
};

// sum over characters of the given parity of chi(a) conj(chi(h)), exactly
std::optional<std::int64_t> parity_orthogonality_sum(const CharacterGroup& g, Parity p, std::int64_t a,
                                                     std::int64_t h);

std::int64_t gcd_i(std::int64_t a, std::int64_t b);
std::int64_t euler_phi(std::int64_t n);

}  // namespace zb
