#include "support.hpp"

#include "zetabessel/characters.hpp"
#include "zetabessel/special_functions.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <numeric>

using namespace zb;

namespace {

const PrecisionContext ctx = make_context(50);

// brute-force character values: exp(2 pi i angle / order)
hpc chi_at(const DirichletCharacter& c, std::int64_t n) { return c.value(n); }

}  // namespace

TEST_CASE("group sizes and euler phi") {
    for (std::int64_t q = 1; q <= 60; ++q) {
        std::int64_t phi = 0;
        for (std::int64_t n = 1; n <= q; ++n) phi += std::gcd(n, q) == 1;
        CHECK(euler_phi(q) == phi);
        CharacterGroup g = enumerate_characters(q);
        CHECK(g.phi == phi);
        CHECK(static_cast<std::int64_t>(g.characters.size()) == phi);
        CHECK(g.principal().is_principal);
    }
    CHECK(enumerate_characters(5).with_parity(Parity::odd).size() == 2);
    CHECK(enumerate_characters(8).with_parity(Parity::odd).size() == 2);
}

TEST_CASE("characters are multiplicative, periodic and orthogonal") {
    precision_scope s(60);
    for (std::int64_t q : {3, 4, 5, 7, 8, 9, 12, 15, 16, 21, 24}) {
        CharacterGroup g = enumerate_characters(q);
        for (const auto& c : g.characters) {
            for (std::int64_t m = 0; m < q; ++m) {
                CHECK(c.is_unit(m) == (std::gcd(m, q) == 1));
                CHECK(abs(chi_at(c, m + q) - chi_at(c, m)) < pow10(-55));
                for (std::int64_t n = 0; n < q; ++n)
                    CHECK(abs(chi_at(c, m * n) - chi_at(c, m) * chi_at(c, n)) < pow10(-55));
            }
            hpc minus_one = chi_at(c, -1);
            CHECK(abs(minus_one - hp(c.odd() ? -1 : 1)) < pow10(-55));
            const auto& cc = g.characters[g.conjugate_index(c.index)];
            for (std::int64_t n = 1; n < q; ++n) CHECK(abs(chi_at(cc, n) - conj(chi_at(c, n))) < pow10(-55));
        }
        // row orthogonality
        for (const auto& a : g.characters) {
            for (const auto& b : g.characters) {
                hpc sum;
                for (std::int64_t n = 0; n < q; ++n) sum += chi_at(a, n) * conj(chi_at(b, n));
                hp want = a.index == b.index ? hp(g.phi) : hp(0);
                CHECK(abs(sum - want) < pow10(-50));
            }
        }
    }
}

TEST_CASE("primitivity and conductor by brute force") {
    for (std::int64_t q : {4, 8, 9, 12, 15, 20}) {
        CharacterGroup g = enumerate_characters(q);
        for (const auto& c : g.characters) {
            // smallest d | q such that chi is constant on units congruent mod d
            std::int64_t cond = q;
            for (std::int64_t d = 1; d <= q; ++d) {
                if (q % d) continue;
                bool ok = true;
                for (std::int64_t a = 1; a < q && ok; ++a)
                    for (std::int64_t b = 1; b < q && ok; ++b)
                        if (c.is_unit(a) && c.is_unit(b) && (a - b) % d == 0 && c.angle_of(a) != c.angle_of(b))
                            ok = false;
                if (ok) {
                    cond = d;
                    break;
                }
            }
            CHECK(c.conductor == cond);
            CHECK(c.is_primitive == (cond == q));
        }
    }
}

TEST_CASE("gauss sums: |tau|^2 = q and tau(chi) tau(chi-bar) = chi(-1) q") {
    precision_scope s(70);
    for (std::int64_t q = 3; q <= 30; ++q) {
        CharacterGroup g = enumerate_characters(q);
        for (const auto& c : g.characters) {
            if (!c.is_primitive) continue;
            hpc t = gauss_sum(c, ctx);
            hpc tb = gauss_sum(c.conjugate(), ctx);
            CHECK(abs(abs(t) * abs(t) - q) < pow10(-45));
            CHECK(abs(t * tb - hpc(hp(c.odd() ? -q : q))) < pow10(-45));
            // separability: sum chi-bar(h) e(hn/q) = chi(n) tau(chi-bar)
            for (std::int64_t n = 1; n < q; ++n)
                CHECK(abs(gauss_factorization(c, n, ctx) - c.value(n) * tb) < pow10(-45));
        }
    }
}

TEST_CASE("dirichlet L values") {
    precision_scope s(80);
    hp pi = pi_hp();
    CharacterGroup g4 = enumerate_characters(4);
    const DirichletCharacter& chi4 = *g4.with_parity(Parity::odd).front();
    CHECK_REL(dirichlet_L(hp(1), chi4, ctx).re, pi / 4, -48);
    CHECK_REL(dirichlet_L(hp(2), chi4, ctx).re,
              parse_hp("0.915965594177219015054603514932384110774149374281672134266498", 80), -48);
    CharacterGroup g3 = enumerate_characters(3);
    const DirichletCharacter& chi3 = *g3.with_parity(Parity::odd).front();
    CHECK_REL(dirichlet_L(hp(1), chi3, ctx).re, pi / (3 * sqrt(hp(3))), -48);
    // principal character: zeta times the Euler factors
    CharacterGroup g6 = enumerate_characters(6);
    hp z3 = mpfr_zeta_value(hp(3));
    CHECK_REL(dirichlet_L(hp(3), g6.principal(), ctx).re, z3 * (1 - pow(hp(2), -3)) * (1 - pow(hp(3), -3)), -48);
    // complex character mod 5 against a direct Hurwitz decomposition
    CharacterGroup g5 = enumerate_characters(5);
    for (const auto& c : g5.characters) {
        hp sv = parse_hp("2.5", 80);
        hpc want;
        for (std::int64_t h = 1; h < 5; ++h) want += c.value(h) * hurwitz_zeta(sv, hp(h) / 5, ctx);
        want *= pow(hp(5), -sv);
        CHECK(abs(dirichlet_L(sv, c, ctx) - want) < pow10(-45));
    }
}

TEST_CASE("trigonometric functions from character sums") {
    precision_scope s(70);
    hp pi = pi_hp();
    for (std::int64_t q : {3, 5, 7, 8}) {
        for (std::int64_t h = 1; h < q; ++h) {
            if (std::gcd(h, q) != 1) continue;
            for (std::int64_t d = 1; d < 12; ++d) {
                if (std::gcd(d, q) != 1) continue;
                hp arg = 2 * pi * d * h / q;
                CHECK(abs(trig_from_characters(d, h, q, TrigKind::sine, ctx) - sin(arg)) < pow10(-45));
                CHECK(abs(trig_from_characters(d, h, q, TrigKind::cosine, ctx) - cos(arg)) < pow10(-45));
            }
        }
    }
}

TEST_CASE("exact root-of-unity sums") {
    RootOfUnitySum a(6);
    for (int k = 0; k < 6; ++k) a.add(k);
    REQUIRE(a.exact_integer());
    CHECK(*a.exact_integer() == 0);
    RootOfUnitySum b(4);
    b.add(0, 3);
    b.add(2);
    CHECK(*b.exact_integer() == 2);
    RootOfUnitySum c(4);
    c.add(1);
    CHECK(!c.exact_integer());
    CharacterGroup g = enumerate_characters(7);
    // sum over odd chi of chi(a) chi-bar(h) = phi/2 (delta_{a,h} - delta_{a,-h})
    CHECK(*parity_orthogonality_sum(g, Parity::odd, 3, 3) == 3);
    CHECK(*parity_orthogonality_sum(g, Parity::odd, 4, 3) == -3);
    CHECK(*parity_orthogonality_sum(g, Parity::odd, 2, 3) == 0);
    CHECK(*parity_orthogonality_sum(g, Parity::even, 4, 3) == 3);
}
