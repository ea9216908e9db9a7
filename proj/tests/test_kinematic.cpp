#include <doctest.h>

#include "ffplane/gen.hpp"
#include "ffplane/kinematic.hpp"
#include "ffplane/stats.hpp"
#include "ffplane/suites.hpp"

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

TEST_CASE("kappa worked examples") {
    FieldCtx f7(7);
    CHECK(kappa(RigidMotion::identity(f7)) ==
          ProjPoint({scalar(f7, 1), scalar(f7, 0), scalar(f7, 0), scalar(f7, 0)}));
    // translation by (1, 2): [2:0:1:-2] = [1:0:4:6]
    CHECK(kappa(RigidMotion::translation(scalar(f7, 1), scalar(f7, 2))) ==
          ProjPoint({scalar(f7, 1), scalar(f7, 0), scalar(f7, 4), scalar(f7, 6)}));
    // quarter turn: [1:1:0:0]
    CHECK(kappa(RigidMotion::rotation(scalar(f7, 0), scalar(f7, 1))) ==
          ProjPoint({scalar(f7, 1), scalar(f7, 1), scalar(f7, 0), scalar(f7, 0)}));
    // u = -1 branch: [0:2:t:s]
    RigidMotion half_turn(scalar(f7, -1), scalar(f7, 0), scalar(f7, 3), scalar(f7, 5));
    CHECK(kappa(half_turn) == ProjPoint({scalar(f7, 0), scalar(f7, 2), scalar(f7, 5), scalar(f7, 3)}));
}

TEST_CASE("kappa_inv worked examples and errors") {
    FieldCtx f7(7), f13(13);
    CHECK(kappa_inv(ProjPoint({scalar(f7, 1), scalar(f7, 0), scalar(f7, 0), scalar(f7, 0)})) ==
          RigidMotion::identity(f7));
    CHECK(kappa_inv(ProjPoint({scalar(f7, 1), scalar(f7, 1), scalar(f7, 0), scalar(f7, 0)})) ==
          RigidMotion::rotation(scalar(f7, 0), scalar(f7, 1)));
    CHECK_THROWS_WITH(kappa_inv(ProjPoint({scalar(f13, 1), scalar(f13, 5), scalar(f13, 2), scalar(f13, 3)})),
                      "exceptional set");
}

TEST_CASE("kappa round trip over the whole group and at large p") {
    FieldCtx f7(7);
    for (const PlanePoint& uv : unit_circle(f7))
        for (u64 s = 0; s < 7; ++s)
            for (u64 t = 0; t < 7; ++t) {
                RigidMotion g(uv.x, uv.y, Scalar(f7, s), Scalar(f7, t));
                ProjPoint k = kappa(g);
                CHECK(!k.exceptional());
                CHECK(kappa_inv(k) == g);
            }
    FieldCtx f101(101);
    auto circle = unit_circle(f101);
    SplitMix64 rng(13);
    for (int i = 0; i < 500; ++i) {
        RigidMotion g = random_motion(f101, circle, rng);
        CHECK(kappa_inv(kappa(g)) == g);
    }
}

TEST_CASE("kappa_inv is a right inverse on every non-exceptional point") {
    FieldCtx f5(5);
    for (u64 a = 0; a < 5; ++a)
        for (u64 b = 0; b < 5; ++b)
            for (u64 c = 0; c < 5; ++c) {
                ProjPoint pts[] = {
                    ProjPoint({scalar(f5, 1), Scalar(f5, a), Scalar(f5, b), Scalar(f5, c)}),
                    ProjPoint({scalar(f5, 0), scalar(f5, 1), Scalar(f5, b), Scalar(f5, c)}),
                };
                for (const ProjPoint& X : pts) {
                    if (X.exceptional()) continue;
                    CHECK(kappa(kappa_inv(X)) == X);
                }
            }
}

TEST_CASE("equivariance through the even-subalgebra multiplication matrices") {
    for (u64 p : {7ULL, 13ULL, 31ULL}) {
        FieldCtx ctx(p);
        CheckRecord rec = equivariance_check(ctx, 200, 2024 + p);
        INFO(rec.name);
        CHECK(rec.pass);
    }
    FieldCtx f7(7);
    ProjMap id_map = left_map(RigidMotion::identity(f7));
    ProjPoint e = ProjPoint({scalar(f7, 1), scalar(f7, 0), scalar(f7, 0), scalar(f7, 0)});
    SplitMix64 rng(5);
    auto circle = unit_circle(f7);
    for (int i = 0; i < 50; ++i) {
        RigidMotion g = random_motion(f7, circle, rng);
        CHECK(id_map.apply(kappa(g)) == kappa(g));
        CHECK(left_map(g).apply(kappa(inverse(g))) == e);
    }
}

TEST_CASE("transporter lines") {
    FieldCtx f7(7);
    // stabilizer of the origin maps onto X2 = X3 = 0
    ProjLine rot_line = transporter_line(point(f7, 0, 0), point(f7, 0, 0));
    for (const PlanePoint& uv : unit_circle(f7)) {
        ProjPoint k = kappa(RigidMotion::rotation(uv.x, uv.y));
        CHECK(rot_line.contains(k));
        CHECK(k.X[2].is_zero());
        CHECK(k.X[3].is_zero());
    }
    // all 8 transporter images are collinear of rank exactly 2
    PlanePoint x = point(f7, 0, 0), y = point(f7, 1, 0);
    ProjLine txy = transporter_line(x, y);
    std::vector<std::array<Scalar, 4>> rows;
    for (const PlanePoint& uv : unit_circle(f7)) {
        ProjPoint k = kappa(transporter_element(x, y, uv.x, uv.y));
        CHECK(txy.contains(k));
        CHECK(!k.exceptional());
        rows.push_back(k.X);
    }
    CHECK(rows.size() == 8);
    CHECK(projective_rank(rows) == 2);

    FieldCtx f13(13);
    CheckRecord rec = transporter_check(f13, 50, 99);
    INFO(rec.name);
    CHECK(rec.pass);
}

TEST_CASE("axis plane: x-axis maps to X2 = 0 exactly") {
    FieldCtx f7(7);
    Line x_axis(scalar(f7, 0), scalar(f7, 1), scalar(f7, 0));
    ProjPlane pl = r_tau_plane(x_axis);
    CHECK(pl == ProjPlane({scalar(f7, 0), scalar(f7, 0), scalar(f7, 1), scalar(f7, 0)}));
    // every rotation about every axis point lands inside
    for (u64 x0 = 0; x0 < 7; ++x0)
        for (const PlanePoint& uv : unit_circle(f7)) {
            RigidMotion r = RigidMotion::rotation_about(point(f7, (i64)x0, 0), uv.x, uv.y);
            CHECK(pl.contains(kappa(r)));
        }
    Line y_axis(scalar(f7, 1), scalar(f7, 0), scalar(f7, 0));
    ProjPlane ply = r_tau_plane(y_axis);
    for (u64 y0 = 0; y0 < 7; ++y0)
        for (const PlanePoint& uv : unit_circle(f7)) {
            RigidMotion r = RigidMotion::rotation_about(point(f7, 0, (i64)y0), uv.x, uv.y);
            CHECK(ply.contains(kappa(r)));
        }
    FieldCtx f13(13);
    Line iso = bisector(point(f13, 0, 0), point(f13, 1, 5));
    CHECK_THROWS(r_tau_plane(iso));
}

TEST_CASE("axis plane over an extension line") {
    FieldCtx f7(7);
    Scalar w = Scalar::omega(f7);
    Line ext_line(-w, scalar(f7, 1), scalar(f7, 0));  // y = w x
    REQUIRE(!ext_line.isotropic());
    ProjPlane pl = r_tau_plane(ext_line);
    auto [q1, q2] = two_points_on(ext_line);
    for (const PlanePoint& uv : unit_circle_ext_sample(f7, 6)) {
        CHECK(pl.contains(kappa(RigidMotion::rotation_about(q1, uv.x, uv.y))));
        CHECK(pl.contains(kappa(RigidMotion::rotation_about(q2, uv.x, uv.y))));
    }
}

TEST_CASE("choose_tau: vacuous class takes the first line in search order") {
    FieldCtx f7(7);
    std::vector<RigidMotion> only_identity = {RigidMotion::identity(f7)};
    TauChoice tau = choose_tau(only_identity, f7);
    CHECK(!tau.in_extension);
    CHECK(tau.axis == Line(scalar(f7, 0), scalar(f7, 1), scalar(f7, 0)));  // the x-axis
}

TEST_CASE("inadmissible axis is rejected") {
    FieldCtx f7(7);
    // two unit segments related by a rotation about the origin, which lies on
    // the x-axis, so the x-axis must be rejected
    std::vector<Segment> segs = {{point(f7, 0, 0), point(f7, 1, 0)}, {point(f7, 0, 0), point(f7, 0, 1)}};
    Line x_axis(scalar(f7, 0), scalar(f7, 1), scalar(f7, 0));
    CHECK_THROWS_WITH(build_incidence_system(segs, x_axis), "fixed point on axis");
    std::vector<Segment> sorted = segs;
    std::sort(sorted.begin(), sorted.end(), segment_lex_less);
    TauChoice tau = choose_tau(class_motions(sorted), f7);
    KinematicSystem sys = build_incidence_system(sorted, tau.axis, tau.in_extension);
    CHECK(sys.points.size() == 2);
    CHECK(sys.planes.size() == 2);
    CHECK(incidence_count(sys) == axial_pair_count(sorted, AxialMode::Permissive));
}

TEST_CASE("axial pair counting conventions") {
    FieldCtx f7(7);
    // a segment is symmetric to itself across its own supporting line
    std::vector<Segment> one = {{point(f7, 0, 0), point(f7, 1, 0)}};
    CHECK(axial_pair_count(one, AxialMode::Permissive) == 1);
    CHECK(axial_pair_count(one, AxialMode::Strict) == 0);
    // reversal is symmetric across the perpendicular bisector
    std::vector<Segment> both = {{point(f7, 0, 0), point(f7, 1, 0)}, {point(f7, 1, 0), point(f7, 0, 0)}};
    CHECK(axial_pair_count(both, AxialMode::Permissive) == 4);
    // isotropic-line segments admit no axes at all
    FieldCtx f13(13);
    GeneratorSpec iso;
    iso.kind = GeneratorSpec::Kind::IsotropicLine;
    iso.size = 4;
    iso.seed = 6;
    PointSet A = generate(f13, iso);
    auto s0 = segment_classes(A)[0];
    CHECK(axial_pair_count(s0, AxialMode::Permissive) == 0);
}

TEST_CASE("claim-1 equality on random sets") {
    for (u64 p : {7ULL, 11ULL, 13ULL}) {
        FieldCtx ctx(p);
        for (u64 seed = 0; seed < 4; ++seed) {
            PointSet A = random_set(ctx, 10 + 3 * seed, seed * 17 + p);
            for (const auto& [r, segs] : segment_classes(A)) {
                if (r == 0) continue;
                AxialCountResult res = axial_incidence_count(segs, ctx);
                INFO("p=" << p << " seed=" << seed << " r=" << r);
                CHECK(res.oracle == res.pipeline);
                CHECK(res.oracle >= (i64)segs.size());  // self-symmetry floor
            }
        }
    }
}

TEST_CASE("bisector-energy accounting through axial pairs") {
    for (u64 p : {7ULL, 13ULL}) {
        FieldCtx ctx(p);
        for (u64 seed = 0; seed < 6; ++seed) {
            PointSet A = random_set(ctx, 12 + 2 * seed, seed * 29 + p);
            BisectorTable table = bisector_table(A);
            i128 bstar = table.energy_star();
            TriangleCounts tri = count_isosceles_fast(A);
            auto classes = segment_classes(A);
            i128 sum_strict = 0, sum_perm = 0, class_sizes = 0, strict_s0 = 0;
            for (const auto& [r, segs] : classes) {
                if (r == 0) {
                    strict_s0 = axial_pair_count(segs, AxialMode::Strict);
                    continue;
                }
                sum_strict += axial_pair_count(segs, AxialMode::Strict);
                sum_perm += axial_pair_count(segs, AxialMode::Permissive);
                class_sizes += (i128)segs.size();
            }
            INFO("p=" << p << " seed=" << seed);
            // exact decomposition of the starred energy
            CHECK(bstar == sum_strict + class_sizes + strict_s0);
            // permissive counts exceed strict ones by the shared-apex triangles
            CHECK(sum_perm == sum_strict + 2 * tri.t_ni + class_sizes);
            // the zero-length error term obeys the coarse bound
            i128 m = max_collinear_cocircular(A);
            i128 n = (i128)A.size();
            CHECK(strict_s0 <= 2 * m * n * n);
        }
    }
}

TEST_CASE("rotation-heavy class at p = 5 exhausts the 30 base lines") {
    // with all 25 plane points in play, every base line passes through some
    // product fixed point, so the axis must come from the extension
    FieldCtx f5(5);
    std::vector<PlanePoint> all;
    for (u64 x = 0; x < 5; ++x)
        for (u64 y = 0; y < 5; ++y) all.push_back(point(f5, (i64)x, (i64)y));
    PointSet A = PointSet::of(f5, all);
    auto classes = segment_classes(A);
    REQUIRE(classes.count(1));
    const auto& segs = classes[1];
    std::vector<Segment> sorted = segs;
    std::sort(sorted.begin(), sorted.end(), segment_lex_less);
    TauChoice tau = choose_tau(class_motions(sorted), f5);
    CHECK(tau.in_extension);
    AxialCountResult res = axial_incidence_count(segs, f5);
    CHECK(res.oracle == res.pipeline);
}

TEST_CASE("empty class gives an empty system") {
    std::vector<Segment> none;
    CHECK(axial_pair_count(none, AxialMode::Permissive) == 0);
    FieldCtx f7(7);
    KinematicSystem sys = build_incidence_system(none, Line(scalar(f7, 0), scalar(f7, 1), scalar(f7, 0)));
    CHECK(sys.points.empty());
    CHECK(incidence_count(sys) == 0);
}
