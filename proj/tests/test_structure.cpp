#include <doctest.h>

#include "ffplane/gen.hpp"
#include "ffplane/structure.hpp"

using namespace ffplane;

namespace {

PointSet random_set(const FieldCtx& ctx, u64 n, u64 seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::UniformRandom;
    spec.size = n;
    spec.seed = seed;
    return generate(ctx, spec);
}

}  // namespace

TEST_CASE("rich curves: line-heavy construction") {
    FieldCtx ctx(31);
    GeneratorSpec online;
    online.kind = GeneratorSpec::Kind::OnLine;
    online.size = 20;
    online.seed = 1;
    GeneratorSpec rest;
    rest.kind = GeneratorSpec::Kind::UniformRandom;
    rest.size = 12;
    rest.seed = 2;
    GeneratorSpec u;
    u.kind = GeneratorSpec::Kind::Union;
    u.parts = {online, rest};
    PointSet A = generate(ctx, u);
    RichFamily fam = rich_curves(A, 16);
    CHECK(fam.curves.size() == 1);
    CHECK(fam.curves[0].curve.kind == Curve::Kind::Line);
    CHECK(fam.curves[0].count >= 20);

    // k above |A| gives an empty family
    CHECK(rich_curves(A, (u64)A.size() + 1).curves.empty());
}

TEST_CASE("rich curves: circle detection and the family bounds") {
    FieldCtx ctx(31);
    GeneratorSpec circ;
    circ.kind = GeneratorSpec::Kind::OnCircle;
    circ.size = 30;
    circ.r2 = 1;
    circ.seed = 5;
    GeneratorSpec grid;
    grid.kind = GeneratorSpec::Kind::Grid;
    grid.width = 8;
    grid.height = 8;
    grid.x0 = 10;
    grid.y0 = 10;
    GeneratorSpec u;
    u.kind = GeneratorSpec::Kind::Union;
    u.parts = {circ, grid};
    PointSet A = generate(ctx, u);
    u64 k = isqrt_ceil((i128)8 * A.size());
    RichFamily fam = rich_curves(A, k);
    bool circle_listed = false;
    for (const RichCurve& rc : fam.curves)
        if (rc.curve.kind == Curve::Kind::Circle && rc.count >= (i64)k) circle_listed = true;
    CHECK(circle_listed == (30 >= (i64)k));
    for (const auto& c : fam.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
    // family bounds on random sets as well
    for (u64 seed = 0; seed < 6; ++seed) {
        PointSet R = random_set(ctx, 40 + 10 * seed, seed);
        RichFamily rf = rich_curves(R, isqrt_ceil((i128)8 * R.size()));
        for (const auto& c : rf.checks) {
            INFO("seed=" << seed << " " << c.name);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("prune-curve cost bound") {
    FieldCtx f11(11);
    // all points on one line: removing it wipes the set
    GeneratorSpec online;
    online.kind = GeneratorSpec::Kind::OnLine;
    online.size = 9;
    online.seed = 3;
    PointSet L = generate(f11, online);
    auto [curve, count] = richest_curve(L);
    CHECK(count == 9);
    CheckRecord rec = prune_curve_check(L, curve);
    CHECK(rec.pass);
    CHECK(L.without_curve(curve).points.empty());

    // a curve disjoint from A changes nothing
    PointSet A = random_set(f11, 20, 9);
    Circle far{point(f11, 0, 0), scalar(f11, 3)};
    bool disjoint = true;
    for (const PlanePoint& q : A.points) disjoint &= !far.contains(q);
    if (disjoint) {
        PointSet B = A.without_curve(Curve::of(far));
        CHECK(B.points.size() == A.points.size());
        CHECK(count_isosceles_fast(A).t_star == count_isosceles_fast(B).t_star);
    }

    // randomized recounts across primes
    for (u64 p : {7ULL, 11ULL, 13ULL}) {
        FieldCtx ctx(p);
        for (u64 seed = 0; seed < 12; ++seed) {
            PointSet R = random_set(ctx, 10 + seed, seed * 13 + p);
            auto [gamma, cnt] = richest_curve(R);
            CheckRecord r = prune_curve_check(R, gamma);
            INFO("p=" << p << " seed=" << seed);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("prune-iterate: removal budget and cost") {
    FieldCtx ctx(31);
    // random sets have no curve above the threshold
    PointSet R = random_set(ctx, 40, 17);
    PruneResult none = prune_iterate(R);
    CHECK(none.removed.empty());
    CHECK(none.pruned.points.size() == R.points.size());

    // four full lines collapse
    GeneratorSpec lines;
    lines.kind = GeneratorSpec::Kind::ParallelRichLines;
    lines.lines = 4;
    lines.size = 31;
    lines.seed = 0;
    PointSet L = generate(ctx, lines);
    REQUIRE(L.size() == 124);
    PruneResult res = prune_iterate(L);
    CHECK(res.removed.size() == 4);
    CHECK(res.pruned.points.empty());
    for (const auto& c : res.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("decomposition: plain random sets have an empty heavy part") {
    FieldCtx ctx(13);
    PointSet A = random_set(ctx, 18, 23);
    BisectorTable table = bisector_table(A);
    RichFamily probe = rich_curves(A, isqrt_ceil((i128)8 * A.size()));
    Decomposition dec = decompose(A, table);
    if (probe.curves.empty()) {
        CHECK(dec.l1.empty());
        CHECK(dec.t1_bal_num == 0);
    }
    CHECK(dec.l1.size() + dec.l2.size() > 0);
    for (const auto& c : dec.checks) {
        INFO(c.name << " lhs=" << c.lhs << " rhs=" << c.rhs);
        if (c.asserted) CHECK(c.pass);
    }
    // the split covers exactly the lines with b* > 0
    i64 support = 0;
    for (const auto& [l, e] : table.lines)
        if (e.b_star > 0) ++support;
    CHECK((i64)(dec.l1.size() + dec.l2.size()) == support);
    for (const Line& l : dec.l1) CHECK(!dec.l2.count(l));
}

TEST_CASE("decomposition: concentric structure lands in the heavy class") {
    // two full circles of 32 points each about (6, 6): k = 23, so both are
    // rich, and |A_c| = 64 exceeds K = (|A|^4 / p^2)^{1/3} ~ 25.9
    FieldCtx ctx(31);
    GeneratorSpec cc;
    cc.kind = GeneratorSpec::Kind::ConcentricCircles;
    cc.x0 = 6;
    cc.y0 = 6;
    cc.radii = {1, 2};
    cc.size = 32;
    cc.seed = 2;
    PointSet A = generate(ctx, cc);
    REQUIRE(A.size() == 64);
    BisectorTable table = bisector_table(A);
    Decomposition dec = decompose(A, table);
    PlanePoint centre = point(ctx, 6, 6);
    bool centre_heavy = false;
    for (const PlanePoint& c : dec.c1) centre_heavy |= c == centre;
    CHECK(centre_heavy);
    i64 heavy_through_centre = 0;
    for (const Line& l : dec.l1)
        if (l.contains(centre)) ++heavy_through_centre;
    CHECK(heavy_through_centre > 0);
    for (const auto& c : dec.checks) {
        INFO(c.name);
        if (c.asserted) CHECK(c.pass);
    }
}

TEST_CASE("light-part energy and the moment bounds") {
    for (u64 p : {11ULL, 13ULL}) {
        FieldCtx ctx(p);
        for (u64 seed = 0; seed < 5; ++seed) {
            PointSet A = random_set(ctx, 14 + 4 * seed, 41 * p + seed);
            BisectorTable table = bisector_table(A);
            Decomposition dec = decompose(A, table);
            B2StarResult b2 = b2_star(A, dec, table);
            CHECK(b2.b2_star <= table.energy_star());
            for (const auto& c : b2.checks) {
                INFO("p=" << p << " seed=" << seed << " " << c.name << " lhs=" << c.lhs << " rhs=" << c.rhs);
                if (c.asserted) CHECK(c.pass);
            }
        }
    }
}

TEST_CASE("annulus worked examples") {
    FieldCtx ctx(11);
    // translated pair: parallel lines through the endpoints
    Segment y{point(ctx, 1, 1), point(ctx, 2, 3)};
    Segment z{point(ctx, 1, 4), point(ctx, 2, 6)};  // y shifted by (0, 3)
    auto ann = annulus_of(y, z);
    REQUIRE(ann);
    CHECK(ann->first.kind == Curve::Kind::Line);
    CHECK(ann->first.contains(y.a));
    CHECK(ann->first.contains(z.a));
    CHECK(ann->second.contains(y.b));
    CHECK(ann->second.contains(z.b));

    // rotated pair: concentric circles about the rotation centre
    RigidMotion rot = RigidMotion::rotation_about(point(ctx, 5, 5), scalar(ctx, 0), scalar(ctx, 1));
    Segment z2 = apply(rot, y);
    auto ann2 = annulus_of(y, z2);
    REQUIRE(ann2);
    CHECK(ann2->first.kind == Curve::Kind::Circle);
    CHECK(ann2->first.circle.center == point(ctx, 5, 5));
    CHECK(ann2->first.contains(y.a));
    CHECK(ann2->first.contains(z2.a));
    CHECK(ann2->second.contains(y.b));
    CHECK(ann2->second.contains(z2.b));

    CHECK_THROWS(annulus_of(y, y));
}

TEST_CASE("annulus agrees with the brute-force symmetric family") {
    for (u64 p : {7ULL, 11ULL}) {
        FieldCtx ctx(p);
        SplitMix64 rng(p * 5);
        int done = 0;
        while (done < 8) {
            PlanePoint a = point(ctx, (i64)rng.below(p), (i64)rng.below(p));
            PlanePoint b = point(ctx, (i64)rng.below(p), (i64)rng.below(p));
            PlanePoint c = point(ctx, (i64)rng.below(p), (i64)rng.below(p));
            PlanePoint d = point(ctx, (i64)rng.below(p), (i64)rng.below(p));
            Segment y{a, b}, z{c, d};
            if (y.length().is_zero() || y.length() != z.length()) continue;
            if (y == z) continue;
            ++done;
            auto ann = annulus_of(y, z);
            auto family = common_symmetric_segments(y, z);
            if (!ann) {
                CHECK(family.empty());
                continue;
            }
            CHECK(!family.empty());
            for (const Segment& w : family) {
                CHECK(ann->first.contains(w.a));
                CHECK(ann->second.contains(w.b));
            }
        }
    }
}

TEST_CASE("claim-T2 pipeline on random sets") {
    for (u64 p : {11ULL, 13ULL}) {
        FieldCtx ctx(p);
        for (u64 seed = 0; seed < 3; ++seed) {
            PointSet A = random_set(ctx, 16 + 4 * seed, seed * 7 + p);
            BisectorTable table = bisector_table(A);
            Decomposition dec = decompose(A, table);
            ClaimT2Report rep = claim_t2_pipeline(A, dec, table);
            CHECK(rep.b2_star <= table.energy_star());
            for (const auto& c : rep.checks) {
                INFO("p=" << p << " seed=" << seed << " " << c.name << " lhs=" << c.lhs << " rhs=" << c.rhs);
                if (c.asserted) CHECK(c.pass);
            }
        }
    }
}

TEST_CASE("K override changes the heavy threshold") {
    FieldCtx ctx(13);
    GeneratorSpec cc;
    cc.kind = GeneratorSpec::Kind::ConcentricCircles;
    cc.x0 = 0;
    cc.y0 = 0;
    cc.radii = {1, 3};
    cc.size = 10;
    cc.seed = 8;
    PointSet A = generate(ctx, cc);
    BisectorTable table = bisector_table(A);
    KParam tiny;
    tiny.is_default = false;
    tiny.value = Rat(1);
    Decomposition dec_tiny = decompose(A, table, tiny);
    KParam huge;
    huge.is_default = false;
    huge.value = Rat(1000);
    Decomposition dec_huge = decompose(A, table, huge);
    CHECK(dec_tiny.l1.size() >= dec_huge.l1.size());
    CHECK(dec_huge.l1.empty());
}
