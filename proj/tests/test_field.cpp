#include <doctest.h>

#include "ffplane/field.hpp"

using namespace ffplane;

namespace {

std::vector<u64> small_primes(u64 limit) {
    std::vector<u64> ps;
    for (u64 n = 3; n < limit; ++n)
        if (FieldCtx::is_prime(n)) ps.push_back(n);
    return ps;
}

}  // namespace

TEST_CASE("context rejects non-primes and p = 2") {
    CHECK_THROWS(FieldCtx(2));
    CHECK_THROWS(FieldCtx(9));
    CHECK_THROWS(FieldCtx(1));
    CHECK_NOTHROW(FieldCtx(3));
}

TEST_CASE("quadratic character against exhaustive square tables") {
    for (u64 p : small_primes(50)) {
        FieldCtx ctx(p);
        std::vector<char> is_square(p, 0);
        for (u64 a = 0; a < p; ++a) is_square[ctx.mul(a, a)] = 1;
        for (u64 a = 0; a < p; ++a) {
            int expected = a == 0 ? 0 : (is_square[a] ? 1 : -1);
            CHECK(quadratic_character(Scalar(ctx, a)) == expected);
        }
    }
}

TEST_CASE("character is multiplicative and detects -1 by p mod 4") {
    for (u64 p : small_primes(200)) {
        FieldCtx ctx(p);
        CHECK(ctx.chi(p - 1) == (p % 4 == 1 ? 1 : -1));
        SplitMix64 rng(p);
        for (int i = 0; i < 50; ++i) {
            u64 a = 1 + rng.below(p - 1);
            u64 b = 1 + rng.below(p - 1);
            CHECK(ctx.chi(ctx.mul(a, b)) == ctx.chi(a) * ctx.chi(b));
        }
    }
}

TEST_CASE("worked character examples at p = 7") {
    FieldCtx ctx(7);
    CHECK(quadratic_character(scalar(ctx, 0)) == 0);
    CHECK(quadratic_character(scalar(ctx, 2)) == 1);
    CHECK(quadratic_character(scalar(ctx, -1)) == -1);
}

TEST_CASE("square roots: canonical, exact, correct field") {
    for (u64 p : small_primes(50)) {
        FieldCtx ctx(p);
        for (u64 a = 0; a < p; ++a) {
            SqrtResult r = sqrt_mod(Scalar(ctx, a));
            // the extension root always squares back
            CHECK(r.ext * r.ext == Scalar(ctx, a));
            int chi = ctx.chi(a);
            CHECK(r.base.has_value() == (chi >= 0));
            if (r.base) {
                CHECK(*r.base * *r.base == Scalar(ctx, a));
                CHECK(r.base->a0() <= p / 2);
                // exhaustive oracle: smallest root in [0, p/2]
                u64 expect = p;
                for (u64 x = 0; x <= p / 2; ++x)
                    if (ctx.mul(x, x) == a) {
                        expect = x;
                        break;
                    }
                CHECK(r.base->a0() == expect);
            } else {
                CHECK(r.ext.a0() == 0);  // pure omega multiple
            }
        }
    }
}

TEST_CASE("worked square-root examples at p = 7") {
    FieldCtx ctx(7);
    CHECK(sqrt_mod(scalar(ctx, 4)).base->a0() == 2);
    CHECK(sqrt_mod(scalar(ctx, 2)).base->a0() == 3);
    SqrtResult r = sqrt_mod(scalar(ctx, 3));
    CHECK(!r.base);
    CHECK(r.ext.a0() == 0);
    CHECK(r.ext.a1() != 0);
    CHECK(r.ext * r.ext == scalar(ctx, 3));
}

TEST_CASE("tonelli-shanks agrees with exhaustive search below 50 and runs at large p") {
    FieldCtx big(1000003);
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        u64 a = rng.below(big.p());
        u64 sq = big.mul(a, a);
        auto r = big.sqrt_base(sq);
        REQUIRE(r.has_value());
        CHECK(big.mul(*r, *r) == sq);
    }
}

TEST_CASE("extension arithmetic is a field") {
    FieldCtx ctx(11);
    SplitMix64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Scalar a(ctx, rng.below(11), rng.below(11));
        Scalar b(ctx, rng.below(11), rng.below(11));
        Scalar c(ctx, rng.below(11), rng.below(11));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == scalar(ctx, 1));
        // base-field closure
        Scalar ab(ctx, rng.below(11)), bb(ctx, rng.below(11));
        CHECK((ab * bb).in_base());
        CHECK((ab + bb).in_base());
    }
    Scalar w = Scalar::omega(ctx);
    CHECK(w * w == scalar(ctx, (i64)ctx.ext_nonresidue()));
}
