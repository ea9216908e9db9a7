#include <doctest.h>

#include <unordered_set>

#include "ffplane/keys.hpp"
#include "ffplane/plane.hpp"

using namespace ffplane;

TEST_CASE("distance worked examples") {
    FieldCtx f7(7), f13(13);
    CHECK(distance(point(f7, 1, 2), point(f7, 4, 6)) == scalar(f7, 4));
    CHECK(distance(point(f13, 3, 5), point(f13, 3, 5)).is_zero());
    CHECK(distance(point(f13, 0, 0), point(f13, 1, 5)).is_zero());
    CHECK(distance(point(f7, 1, 2), point(f7, 4, 6)) == distance(point(f7, 4, 6), point(f7, 1, 2)));
}

TEST_CASE("isotropy of vectors") {
    FieldCtx f13(13), f7(7);
    CHECK(is_isotropic(point(f13, 1, 5)));
    CHECK(!is_isotropic(point(f7, 1, 5)));
    CHECK(is_isotropic(point(f7, 0, 0)));
}

TEST_CASE("bisector worked examples and properties") {
    FieldCtx f7(7), f13(13);
    Line l = bisector(point(f7, 0, 0), point(f7, 2, 0));
    CHECK(l.contains(point(f7, 1, 0)));
    CHECK(l.contains(point(f7, 1, 3)));
    CHECK(l == Line(scalar(f7, 1), scalar(f7, 0), scalar(f7, 1)));  // x = 1

    Line diag = bisector(point(f7, 1, 0), point(f7, 0, 1));
    CHECK(diag.contains(point(f7, 0, 0)));
    CHECK(diag.contains(point(f7, 3, 3)));

    CHECK(bisector(point(f13, 0, 0), point(f13, 1, 5)).isotropic());
    CHECK_THROWS_WITH(bisector(point(f7, 1, 1), point(f7, 1, 1)), "degenerate bisector");
}

TEST_CASE("bisector is exactly the equidistant locus, exhaustively") {
    for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL}) {
        FieldCtx ctx(p);
        SplitMix64 rng(p);
        for (int trial = 0; trial < 10; ++trial) {
            PlanePoint a = point(ctx, (i64)rng.below(p), (i64)rng.below(p));
            PlanePoint b = point(ctx, (i64)rng.below(p), (i64)rng.below(p));
            if (a == b) continue;
            Line l = bisector(a, b);
            for (u64 x = 0; x < p; ++x)
                for (u64 y = 0; y < p; ++y) {
                    PlanePoint q = point(ctx, (i64)x, (i64)y);
                    CHECK(l.contains(q) == (distance(a, q) == distance(b, q)));
                }
        }
    }
}

TEST_CASE("reflection worked examples, involution, fixed points") {
    FieldCtx f7(7);
    Line vert(scalar(f7, 1), scalar(f7, 0), scalar(f7, 1));  // x = 1
    CHECK(reflect(vert, point(f7, 0, 0)) == point(f7, 2, 0));
    Line diag = bisector(point(f7, 1, 0), point(f7, 0, 1));
    CHECK(reflect(diag, point(f7, 1, 0)) == point(f7, 0, 1));
    CHECK(reflect(vert, point(f7, 1, 4)) == point(f7, 1, 4));

    FieldCtx f13(13);
    Line iso = bisector(point(f13, 0, 0), point(f13, 1, 5));
    CHECK_THROWS_WITH(reflect(iso, point(f13, 2, 2)), "reflection undefined");

    SplitMix64 rng(42);
    for (int i = 0; i < 100; ++i) {
        PlanePoint q = point(f7, (i64)rng.below(7), (i64)rng.below(7));
        CHECK(reflect(vert, reflect(vert, q)) == q);
        CHECK(reflect(diag, reflect(diag, q)) == q);
    }
}

TEST_CASE("reflection preserves distances to the axis") {
    FieldCtx ctx(11);
    SplitMix64 rng(5);
    for (int i = 0; i < 50; ++i) {
        PlanePoint a = point(ctx, (i64)rng.below(11), (i64)rng.below(11));
        PlanePoint b = point(ctx, (i64)rng.below(11), (i64)rng.below(11));
        if (a == b || is_isotropic(a - b)) continue;
        Line l = bisector(a, b);
        PlanePoint q = point(ctx, (i64)rng.below(11), (i64)rng.below(11));
        PlanePoint qr = reflect(l, q);
        for (u64 x = 0; x < 11; ++x)
            for (u64 y = 0; y < 11; ++y) {
                PlanePoint m = point(ctx, (i64)x, (i64)y);
                if (l.contains(m)) CHECK(distance(q, m) == distance(qr, m));
            }
    }
}

TEST_CASE("unit circle cardinality p - chi(-1)") {
    FieldCtx f7(7), f13(13);
    auto c7 = unit_circle(f7);
    CHECK(c7.size() == 8);
    bool has22 = false;
    for (const PlanePoint& q : c7) has22 |= q == point(f7, 2, 2);
    CHECK(has22);
    CHECK(unit_circle(f13).size() == 12);
    for (u64 p = 3; p < 100; ++p) {
        if (!FieldCtx::is_prime(p)) continue;
        FieldCtx ctx(p);
        auto c = unit_circle(ctx);
        CHECK((i64)c.size() == (i64)p - ctx.chi(p - 1));
        bool has10 = false, hasm10 = false;
        for (const PlanePoint& q : c) {
            has10 |= q == point(ctx, 1, 0);
            hasm10 |= q == point(ctx, -1, 0);
            CHECK(q.x * q.x + q.y * q.y == scalar(ctx, 1));
        }
        CHECK(has10);
        CHECK(hasm10);
    }
}

TEST_CASE("rigid motions: group axioms and distance invariance") {
    for (u64 p : {7ULL, 11ULL, 13ULL}) {
        FieldCtx ctxp(p);
        auto circ = unit_circle(ctxp);
        SplitMix64 prng(p * 3 + 1);
        for (int i = 0; i < 1000; ++i) {
            const PlanePoint& uv = circ[prng.below(circ.size())];
            RigidMotion g(uv.x, uv.y, Scalar(ctxp, prng.below(p)), Scalar(ctxp, prng.below(p)));
            PlanePoint x = point(ctxp, (i64)prng.below(p), (i64)prng.below(p));
            PlanePoint y = point(ctxp, (i64)prng.below(p), (i64)prng.below(p));
            CHECK(distance(apply(g, x), apply(g, y)) == distance(x, y));
        }
    }
    FieldCtx ctx(11);
    auto circle = unit_circle(ctx);
    SplitMix64 rng(9);
    auto rand_motion = [&]() {
        const PlanePoint& uv = circle[rng.below(circle.size())];
        return RigidMotion(uv.x, uv.y, Scalar(ctx, rng.below(11)), Scalar(ctx, rng.below(11)));
    };
    for (int i = 0; i < 200; ++i) {
        RigidMotion g = rand_motion(), h = rand_motion(), k = rand_motion();
        CHECK(compose(compose(g, h), k) == compose(g, compose(h, k)));
        CHECK(compose(g, inverse(g)) == RigidMotion::identity(ctx));
        PlanePoint x = point(ctx, (i64)rng.below(11), (i64)rng.below(11));
        PlanePoint y = point(ctx, (i64)rng.below(11), (i64)rng.below(11));
        CHECK(distance(apply(g, x), apply(g, y)) == distance(x, y));
        CHECK(apply(compose(g, h), x) == apply(g, apply(h, x)));
    }
    CHECK(apply(RigidMotion::translation(scalar(ctx, 3), scalar(ctx, 4)), point(ctx, 0, 0)) ==
          point(ctx, 3, 4));
    FieldCtx f7(7);
    CHECK(apply(RigidMotion::rotation(scalar(f7, 0), scalar(f7, 1)), point(f7, 1, 0)) == point(f7, 0, 1));
}

TEST_CASE("rigid_motion_between: unique transporter of segments") {
    FieldCtx f7(7);
    Segment s1{point(f7, 0, 0), point(f7, 1, 0)};
    Segment s2{point(f7, 0, 0), point(f7, 0, 1)};
    auto g = rigid_motion_between(s1, s2);
    REQUIRE(g.has_value());
    CHECK(g->u == scalar(f7, 0));
    CHECK(g->v == scalar(f7, 1));
    CHECK(apply(*g, s1.a) == s2.a);
    CHECK(apply(*g, s1.b) == s2.b);

    CHECK(*rigid_motion_between(s1, s1) == RigidMotion::identity(f7));
    Segment s3{point(f7, 0, 0), point(f7, 3, 1)};  // length 3
    CHECK(!rigid_motion_between(s1, s3).has_value());

    FieldCtx f13(13);
    Segment iso{point(f13, 0, 0), point(f13, 1, 5)};
    CHECK(!rigid_motion_between(iso, iso).has_value());

    // uniqueness: random same-length pairs map correctly and match exhaustion
    SplitMix64 rng(11);
    auto circle = unit_circle(f7);
    for (int i = 0; i < 100; ++i) {
        PlanePoint a = point(f7, (i64)rng.below(7), (i64)rng.below(7));
        PlanePoint b = point(f7, (i64)rng.below(7), (i64)rng.below(7));
        if (distance(a, b).is_zero()) continue;
        const PlanePoint& uv = circle[rng.below(circle.size())];
        RigidMotion g2(uv.x, uv.y, Scalar(f7, rng.below(7)), Scalar(f7, rng.below(7)));
        Segment src{a, b}, dst = apply(g2, src);
        auto between = rigid_motion_between(src, dst);
        REQUIRE(between.has_value());
        CHECK(*between == g2);
    }
}

TEST_CASE("composition of two reflections is a rigid motion") {
    FieldCtx ctx(13);
    SplitMix64 rng(17);
    int tried = 0;
    while (tried < 50) {
        PlanePoint a = point(ctx, (i64)rng.below(13), (i64)rng.below(13));
        PlanePoint b = point(ctx, (i64)rng.below(13), (i64)rng.below(13));
        PlanePoint c = point(ctx, (i64)rng.below(13), (i64)rng.below(13));
        PlanePoint d = point(ctx, (i64)rng.below(13), (i64)rng.below(13));
        if (a == b || c == d || is_isotropic(a - b) || is_isotropic(c - d)) continue;
        ++tried;
        Line l1 = bisector(a, b), l2 = bisector(c, d);
        auto refl2 = [&](const PlanePoint& q) { return reflect(l2, reflect(l1, q)); };
        PlanePoint p0 = point(ctx, 0, 0), p1 = point(ctx, 1, 0);
        if (distance(p0, p1).is_zero()) continue;
        auto g = rigid_motion_between({p0, p1}, {refl2(p0), refl2(p1)});
        REQUIRE(g.has_value());
        for (int i = 0; i < 20; ++i) {
            PlanePoint q = point(ctx, (i64)rng.below(13), (i64)rng.below(13));
            CHECK(apply(*g, q) == refl2(q));
        }
    }
}

TEST_CASE("line canonicalization gives structural equality") {
    FieldCtx ctx(7);
    Line a(scalar(ctx, 2), scalar(ctx, 4), scalar(ctx, 6));
    Line b(scalar(ctx, 1), scalar(ctx, 2), scalar(ctx, 3));
    CHECK(a == b);
    std::unordered_set<Line, LineHash> set;
    set.insert(a);
    set.insert(b);
    CHECK(set.size() == 1);
    CHECK_THROWS(Line(scalar(ctx, 0), scalar(ctx, 0), scalar(ctx, 3)));
}

TEST_CASE("circle membership incl. zero radius") {
    FieldCtx f13(13);
    Circle c{point(f13, 2, 3), scalar(f13, 0)};
    CHECK(c.contains(point(f13, 2, 3)));
    CHECK(c.contains(point(f13, 3, 8)));  // (1,5) offset is isotropic
    CHECK(!c.contains(point(f13, 3, 3)));
}
