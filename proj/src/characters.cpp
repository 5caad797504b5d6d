#include "zetabessel/characters.hpp"

#include "zetabessel/special_functions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace zb {

std::int64_t gcd_i(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = a % m;
    if (a1 < 0) a1 += m;
    std::int64_t b = a1;
    while (b) {
        std::int64_t t = g / b;
        std::tie(g, b) = std::make_pair(b, g - t * b);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    return ((x % m) + m) % m;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_primitive_root(std::int64_t g, std::int64_t p) {
    for (auto [r, e] : factorize(p - 1))
        if (powmod(g, (p - 1) / r, p) == 1) return false;
    return true;
}

struct Generator {
    std::int64_t value;  // lifted to modulus q
    std::int64_t order;
};

std::vector<Generator> unit_generators(std::int64_t q) {
    std::vector<Generator> gens;
    for (auto [p, e] : factorize(q)) {
        std::int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        std::vector<std::pair<std::int64_t, std::int64_t>> local;  // (residue mod pe, order)
        if (p == 2) {
            if (e == 2) local.emplace_back(3, 2);
            if (e >= 3) {
                local.emplace_back(pe - 1, 2);
                local.emplace_back(5, pe / 4);
            }
        } else {
            std::int64_t g = 2;
            while (!is_primitive_root(g, p)) ++g;
            if (e > 1 && powmod(g, p - 1, p * p) == 1) g += p;
            local.emplace_back(g, pe / p * (p - 1));
        }
        std::int64_t rest = q / pe;
        for (auto [g, ord] : local) {
            // g mod pe, 1 mod rest
            std::int64_t lifted = (mulmod(mulmod(g, rest, q), inverse_mod(rest % pe, pe), q) +
                                   mulmod(pe, inverse_mod(pe % rest, rest), q)) %
                                  q;
            if (rest == 1) lifted = g % q;
            gens.push_back({lifted, ord});
        }
    }
    return gens;
}

const std::vector<std::int64_t>& cyclotomic(std::int64_t n) {
    static std::mutex mu;
    static std::map<std::int64_t, std::vector<std::int64_t>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // X^n - 1 divided by Phi_d for proper divisors d
    std::vector<std::int64_t> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (std::int64_t d = 1; d < n; ++d) {
        if (n % d) continue;
        const auto& div = cyclotomic(d);
        std::size_t dd = div.size() - 1;
        std::vector<std::int64_t> quot(poly.size() - dd, 0);
        for (std::size_t i = poly.size() - 1; i + 1 > dd; --i) {
            std::int64_t c = poly[i];
            quot[i - dd] = c;
            for (std::size_t j = 0; j <= dd; ++j) poly[i - dd + j] -= c * div[j];
            if (i == dd) break;
        }
        poly = quot;
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, poly).first->second;
}

}  // namespace

hpc DirichletCharacter::value(std::int64_t n) const {
    std::int64_t a = angle_of(n);
    if (a < 0) return hpc();
    if ((4 * a) % order == 0) {
        switch ((4 * a / order) % 4) {
            case 0: return hpc(hp(1));
            case 1: return hpc(hp(0), hp(1));
            case 2: return hpc(hp(-1));
            default: return hpc(hp(0), hp(-1));
        }
    }
    return expi(2 * pi_hp() * a / order);
}

DirichletCharacter DirichletCharacter::conjugate() const {
    DirichletCharacter c = *this;
    for (auto& a : c.angle)
        if (a > 0) a = order - a;
    return c;
}

std::vector<const DirichletCharacter*> CharacterGroup::with_parity(Parity p) const {
    std::vector<const DirichletCharacter*> out;
    for (const auto& c : characters)
        if (c.parity == p) out.push_back(&c);
    return out;
}

std::size_t CharacterGroup::conjugate_index(std::size_t i) const {
    const auto& a = characters.at(i).angle;
    for (std::size_t j = 0; j < characters.size(); ++j) {
        const auto& b = characters[j].angle;
        bool ok = true;
        for (std::size_t n = 0; n < a.size() && ok; ++n)
            ok = (a[n] < 0) || ((a[n] + b[n]) % characters[j].order == 0);
        if (ok) return j;
    }
    throw DomainError("conjugate character not found");
}

CharacterGroup enumerate_characters(std::int64_t q) {
    if (q < 1) throw DomainError("enumerate_characters: q must be positive");
    if (q > 1000) throw SizeError("enumerate_characters: q limited to 1000");
    auto gens = unit_generators(q);
    std::int64_t L = 1;
    for (const auto& g : gens) L = std::lcm(L, g.order);

    // discrete logarithms of every unit with respect to the generators
    std::vector<std::vector<int>> logs(q);
    std::size_t ng = gens.size();
    std::int64_t total = 1;
    for (const auto& gen : gens) total *= gen.order;
    auto decode = [&](std::int64_t idx) {
        std::vector<int> e(ng, 0);
        for (std::size_t i = ng; i-- > 0;) {
            e[i] = static_cast<int>(idx % gens[i].order);
            idx /= gens[i].order;
        }
        return e;
    };
    for (std::int64_t idx = 0; idx < total; ++idx) {
        auto e = decode(idx);
        std::int64_t n = 1 % q;
        for (std::size_t i = 0; i < ng; ++i) n = mulmod(n, powmod(gens[i].value, e[i], q), q);
        logs[n] = e;
    }

    CharacterGroup g;
    g.q = q;
    g.phi = euler_phi(q);
    for (std::int64_t idx = 0; idx < total; ++idx) {
        auto c = decode(idx);
        DirichletCharacter chi;
        chi.q = q;
        chi.order = L;
        chi.exponents = c;
        chi.angle.assign(q, -1);
        for (std::int64_t n = 0; n < q; ++n) {
            if (std::gcd(n, q) != 1) continue;
            std::int64_t a = 0;
            for (std::size_t i = 0; i < ng; ++i) a += static_cast<std::int64_t>(c[i]) * logs[n][i] * (L / gens[i].order);
            chi.angle[n] = a % L;
        }
        chi.is_principal = std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
        chi.parity = chi.angle[(q - 1) % q] == 0 ? Parity::even : Parity::odd;
        for (std::int64_t d = 1; d <= q; ++d) {
            if (q % d) continue;
            bool trivial = true;
            for (std::int64_t n = 1; n < q && trivial; n += d)
                if (chi.angle[n] > 0) trivial = false;
            if (q == 1 || trivial) {
                chi.conductor = d;
                break;
            }
        }
        chi.is_primitive = chi.conductor == q;
        chi.index = g.characters.size();
        g.characters.push_back(std::move(chi));

    }
    return g;
}

hpc gauss_sum(const DirichletCharacter& chi, const PrecisionContext& ctx) {
    precision_scope scope(ctx.working());
    hp two_pi = 2 * pi_hp();
    std::int64_t den = chi.order * chi.q;
    hpc sum;
    for (std::int64_t h = 1; h <= chi.q; ++h) {
        std::int64_t a = chi.angle_of(h);
        if (a < 0) continue;
        std::int64_t num = (a * chi.q + h * chi.order) % den;
        sum += expi(two_pi * num / den);
    }
    return at_precision(sum, ctx.digits);
}

hpc gauss_factorization(const DirichletCharacter& chi, std::int64_t n, const PrecisionContext& ctx) {
    precision_scope scope(ctx.working());
    hp two_pi = 2 * pi_hp();
    std::int64_t den = chi.order * chi.q;
    hpc sum;
    for (std::int64_t h = 1; h <= chi.q; ++h) {
        std::int64_t a = chi.angle_of(h);
        if (a < 0) continue;
        std::int64_t nh = ((n % chi.q) * h) % chi.q;
        if (nh < 0) nh += chi.q;
        std::int64_t num = ((chi.order - a) % chi.order * chi.q + nh * chi.order) % den;
        sum += expi(two_pi * num / den);
    }
    return at_precision(sum, ctx.digits);
}

hpc dirichlet_L(const hp& s, const DirichletCharacter& chi, const PrecisionContext& ctx) {
    precision_scope scope(ctx.working());
    PrecisionContext inner = with_guard(ctx, 5);
    hp sp = promote(s);
    hp q(chi.q);
    hpc sum;
    if (sp == 1) {
        if (chi.is_principal) throw PoleError("dirichlet_L: pole of the principal character at s = 1");
        for (std::int64_t r = 1; r <= chi.q; ++r)
            if (chi.is_unit(r)) sum += chi.value(r) * digamma(hp(r) / q, inner);
        return at_precision(-sum / q, ctx.digits);
    }
    for (std::int64_t r = 1; r <= chi.q; ++r)
        if (chi.is_unit(r)) sum += chi.value(r) * hurwitz_zeta(sp, hp(r) / q, inner);
    return at_precision(sum / pow(q, sp), ctx.digits);
}

hp trig_from_characters(std::int64_t d, std::int64_t h, std::int64_t q, TrigKind kind,
                        const PrecisionContext& ctx) {
    if (q < 1 || std::gcd(d, q) != 1 || std::gcd(h, q) != 1)
        throw GcdError("trig_from_characters: need gcd(d,q) = gcd(h,q) = 1");
    auto g = enumerate_characters(q);
    precision_scope scope(ctx.working());
    Parity p = kind == TrigKind::sine ? Parity::odd : Parity::even;
    hpc sum;
    for (const auto* chi : g.with_parity(p))
        sum += chi->value(d) * chi->value(h) * gauss_sum(chi->conjugate(), ctx);
    // sine: sum / (i phi); cosine: sum / phi
    hp r = kind == TrigKind::sine ? sum.im : sum.re;
    return at_precision(r / g.phi, ctx.digits);
}

void RootOfUnitySum::add(std::int64_t angle, std::int64_t mult) {
    std::int64_t a = angle % order_;
    if (a < 0) a += order_;
    counts_[a] += mult;
}

std::optional<std::int64_t> RootOfUnitySum::exact_integer() const {
    const auto& phi = cyclotomic(order_);
    std::size_t deg = phi.size() - 1;
    std::vector<std::int64_t> r = counts_;
    for (std::size_t i = r.size(); i-- > deg;) {
        std::int64_t c = r[i];
        if (!c) continue;
        for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi[j];
    }
    for (std::size_t i = 1; i < std::min(deg, r.size()); ++i)
        if (r[i] != 0) return std::nullopt;
    return r[0];
}

std::optional<std::int64_t> parity_orthogonality_sum(const CharacterGroup& g, Parity p, std::int64_t a,
                                                     std::int64_t h) {
    std::int64_t L = g.characters.front().order;
    RootOfUnitySum sum(L);
    for (const auto* chi : g.with_parity(p)) {
        std::int64_t x = chi->angle_of(a), y = chi->angle_of(h);
        if (x < 0 || y < 0) continue;
        sum.add(x - y);
    }
    return sum.exact_integer();
}

}  // namespace zb
