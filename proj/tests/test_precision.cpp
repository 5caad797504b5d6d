#include "support.hpp"

#include <vector>

using namespace zb;

TEST_CASE("context and scope") {
    PrecisionContext ctx = make_context(40);
    CHECK(ctx.digits == 40);
    CHECK(ctx.working() == 60);
    CHECK(with_guard(ctx, 10).digits == 50);
    CHECK(ctx.epsilon() == pow10(-40));

    unsigned before = hp::default_precision();
    {
        precision_scope s(123);
        CHECK(hp::default_precision() == 123);
        {
            precision_scope inner(200);
            CHECK(hp::default_precision() == 200);
        }
        CHECK(hp::default_precision() == 123);
    }
    CHECK(hp::default_precision() == before);
}

TEST_CASE("decimal round trip") {
    hp v = parse_hp("1/3", 50);
    precision_scope s(50);
    CHECK(abs(v * 3 - 1) < pow10(-48));
    hp w = parse_hp(to_decimal(v, 45), 50);
    CHECK(abs(v - w) < pow10(-44));
    CHECK(abs(parse_hp("-2.5e-3", 30) + hp(1) / 400) < pow10(-29));
    CHECK_THROWS_AS(parse_hp("abc", 30), DomainError);
    CHECK_THROWS_AS(parse_hp("1/0", 30), DomainError);
}

TEST_CASE("compensated summation keeps small terms") {
    precision_scope s(30);
    std::vector<hp> t{hp("1e20"), hp(1), hp("-1e20"), hp(1)};
    CHECK(compensated_sum(t) == 2);
    Accumulator acc;
    for (const auto& x : t) acc.add(x);
    CHECK(acc.value() == 2);
    CHECK(acc.count() == 4);
}

TEST_CASE("complex pair arithmetic") {
    precision_scope s(40);
    hpc a(hp(1), hp(2)), b(hp(3), hp(-1));
    hpc p = a * b;
    CHECK(p.re == 5);
    CHECK(p.im == 5);
    hpc q = p / b;
    CHECK(abs(q - a) < pow10(-38));
    hpc e = expi(pi_hp() / 2);
    CHECK(abs(e - I_unit()) < pow10(-38));
    CHECK(abs(hpc(hp(3), hp(4))) == 5);
}

TEST_CASE("budget validation") {
    PrecisionContext ctx = make_context(30);
    EvaluationBudget b = default_budget(ctx, hp("1e-8"));
    CHECK_NOTHROW(b.validate());
    b.max_terms_outer = 0;
    CHECK_THROWS(b.validate());
}
