#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "ffplane/clifford.hpp"
#include "ffplane/kinematic.hpp"
#include "ffplane/report.hpp"

namespace ffplane {

namespace detail {

/// Independent reduction of a basis product: concatenate the generator
/// strings and bubble-sort with sign flips, collapsing squares via the
/// generator rules. Cross-checks the bitmask table.
inline std::pair<Scalar, int> reduce_by_string(const CliffordCtx& cl, int a, int b) {
    std::vector<int> gens;
    for (int i = 0; i < 3; ++i)
        if (a & (1 << i)) gens.push_back(i);
    for (int i = 0; i < 3; ++i)
        if (b & (1 << i)) gens.push_back(i);
    Scalar coeff = scalar(cl.field(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
            if (gens[i] == gens[i + 1]) {
                coeff = coeff * cl.generator_square(gens[i]);
                gens.erase(gens.begin() + i, gens.begin() + i + 2);
                changed = true;
                break;
            }
            if (gens[i] > gens[i + 1]) {
                std::swap(gens[i], gens[i + 1]);
                coeff = -coeff;
                changed = true;
                break;
            }
        }
    }
    int idx = 0;
    for (int g : gens) idx |= 1 << g;
    return {coeff, idx};
}

inline CliffordElement random_element(const CliffordCtx& cl, SplitMix64& rng) {
    CliffordElement e = CliffordElement::zero(cl);
    for (int i = 0; i < 8; ++i) e.c[i] = Scalar(cl.field(), rng.below(cl.field().p()));
    return e;
}

inline EvenUnit random_even_unit(const CliffordCtx& cl, SplitMix64& rng) {
    const FieldCtx& f = cl.field();
    for (;;) {
        EvenUnit g(cl, Scalar(f, rng.below(f.p())), Scalar(f, rng.below(f.p())),
                   Scalar(f, rng.below(f.p())), Scalar(f, rng.below(f.p())));
        if (g.invertible()) return g;
    }
}

}  // namespace detail

/// The Clifford-algebra verification suite for one (p, lambda).
inline std::vector<CheckRecord> clifford_suite(const FieldCtx& ctx, Scalar lambda, u64 samples, u64 seed) {
    std::vector<CheckRecord> out;
    CliffordCtx cl(ctx, lambda);
    SplitMix64 rng(seed);
    const u64 p = ctx.p();
    Scalar zero = scalar(ctx, 0), one = scalar(ctx, 1);

    // 64 basis products, table vs independent string reduction
    int table_mismatch = 0;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            auto [coeff, idx] = detail::reduce_by_string(cl, a, b);
            if (coeff != cl.table_coeff(a, b)) ++table_mismatch;
            if (!coeff.is_zero() && idx != cl.table_index(a, b)) ++table_mismatch;
        }
    out.push_back(CheckRecord::eq("basis-table-double-derivation", "clifford-table", table_mismatch, 0));

    // associativity and the conjugation anti-homomorphism hold on arbitrary
    // elements; a a* is scalar on the even subalgebra and on V (not on mixed
    // grades: e0 + e123 squares its conjugate to e0 + 2 e123), so norm
    // multiplicativity is sampled where the norm exists
    int assoc_fail = 0, conj_fail = 0, norm_fail = 0, grade_fail = 0, nonscalar_mixed = 0;
    for (u64 i = 0; i < samples; ++i) {
        CliffordElement a = detail::random_element(cl, rng);
        CliffordElement b = detail::random_element(cl, rng);
        CliffordElement c = detail::random_element(cl, rng);
        if (!(cl_mul(cl_mul(a, b), c) == cl_mul(a, cl_mul(b, c)))) ++assoc_fail;
        if (!(conjugate(cl_mul(a, b)) == cl_mul(conjugate(b), conjugate(a)))) ++conj_fail;
        CliffordElement ae = a, be = b;
        for (int k : {kE1, kE2, kE3, kE123}) {
            ae.c[k] = zero;
            be.c[k] = zero;
        }
        if (!cl_mul(ae, be).even()) ++grade_fail;
        if (cl_norm(cl_mul(ae, be)) != cl_norm(ae) * cl_norm(be)) ++norm_fail;
        CliffordElement av = CliffordElement::vector(cl, a.c[kE1], a.c[kE2], a.c[kE3]);
        CliffordElement bv = CliffordElement::vector(cl, b.c[kE1], b.c[kE2], b.c[kE3]);
        if (cl_norm(cl_mul(av, bv)) != cl_norm(av) * cl_norm(bv)) ++norm_fail;
        if (!cl_mul(a, conjugate(a)).is_scalar()) ++nonscalar_mixed;
    }
    out.push_back(CheckRecord::eq("associativity-failures", "clifford-algebra", assoc_fail, 0));
    out.push_back(CheckRecord::eq("conjugation-antihomomorphism-failures", "clifford-algebra", conj_fail, 0));
    out.push_back(CheckRecord::eq("norm-multiplicativity-failures", "clifford-algebra", norm_fail, 0));
    out.push_back(CheckRecord::eq("even-grading-failures", "clifford-algebra", grade_fail, 0));
    out.push_back(CheckRecord::info("mixed-grade-nonscalar-products", "clifford-algebra",
                                    to_string_i128(nonscalar_mixed), "diagnostic"));

    // sandwich: closed forms, e3 fixed, quadratic form preserved
    int sandwich_fail = 0, e3_fail = 0, q_fail = 0, dual_fail = 0, scale_fail = 0;
    for (u64 i = 0; i < samples; ++i) {
        EvenUnit g = detail::random_even_unit(cl, rng);
        Scalar ninv = g.norm().inverse();
        Scalar two = scalar(ctx, 2);
        CliffordElement s1 = sandwich(g, CliffordElement::basis(cl, kE1));
        if (s1.c[kE1] != (g.g0 * g.g0 + lambda * g.g12 * g.g12) * ninv ||
            s1.c[kE2] != -(two * g.g0 * g.g12) * ninv ||
            s1.c[kE3] != -(two * (g.g0 * g.g13 + lambda * g.g12 * g.g23)) * ninv)
            ++sandwich_fail;
        CliffordElement s2 = sandwich(g, CliffordElement::basis(cl, kE2));
        if (s2.c[kE1] != -(two * lambda * g.g0 * g.g12) * ninv ||
            s2.c[kE2] != (g.g0 * g.g0 + lambda * g.g12 * g.g12) * ninv ||
            s2.c[kE3] != (two * lambda * (g.g0 * g.g23 + g.g12 * g.g13)) * ninv)
            ++sandwich_fail;
        if (!(sandwich(g, CliffordElement::basis(cl, kE3)) == CliffordElement::basis(cl, kE3))) ++e3_fail;

        // Q(v) = v^2 as an algebra element; preserved under the sandwich
        CliffordElement v = CliffordElement::vector(cl, Scalar(ctx, rng.below(p)), Scalar(ctx, rng.below(p)),
                                                    Scalar(ctx, rng.below(p)));
        CliffordElement sv = sandwich(g, v);
        if (!(cl_mul(v, v) == cl_mul(sv, sv))) ++q_fail;

        // dual_rep is the transpose of the sandwich matrix
        Motion3 d = dual_rep(g);
        CliffordElement cols[3] = {s1, s2, sandwich(g, CliffordElement::basis(cl, kE3))};
        static constexpr int vec_idx[3] = {kE1, kE2, kE3};
        for (int r = 0; r < 3; ++r)
            for (int csl = 0; csl < 3; ++csl)
                if (d.m[r][csl] != cols[r].c[vec_idx[csl]]) ++dual_fail;
        // SF(Q0) shape: top-left block is (u, v; lambda v, u) with u^2 - lambda v^2 = 1
        Scalar u = d.m[0][0], vv = d.m[0][1];
        if (d.m[1][0] != lambda * vv || d.m[1][1] != u || u * u - lambda * vv * vv != one) ++dual_fail;
        // constant on scalar multiples
        Scalar f = Scalar(ctx, 1 + rng.below(p - 1));
        EvenUnit gf(cl, g.g0 * f, g.g12 * f, g.g13 * f, g.g23 * f);
        if (!(dual_rep(gf) == d)) ++scale_fail;
        // homomorphism of g -> dual_rep(g*)
        EvenUnit h = detail::random_even_unit(cl, rng);
        auto conj_unit = [&](const EvenUnit& x) { return EvenUnit(cl, x.g0, -x.g12, -x.g13, -x.g23); };
        Motion3 lhs = dual_rep(conj_unit(even_mul(g, h)));
        Motion3 a = dual_rep(conj_unit(g)), b2 = dual_rep(conj_unit(h));
        Motion3 prod;
        for (int r = 0; r < 3; ++r)
            for (int csl = 0; csl < 3; ++csl) {
                Scalar s = a.m[r][0] * b2.m[0][csl];
                for (int k = 1; k < 3; ++k) s += a.m[r][k] * b2.m[k][csl];
                prod.m[r][csl] = s;
            }
        if (!(lhs == prod)) ++dual_fail;
    }
    out.push_back(CheckRecord::eq("sandwich-closed-form-failures", "clifford-sandwich", sandwich_fail, 0));
    out.push_back(CheckRecord::eq("sandwich-fixes-e3-failures", "clifford-sandwich", e3_fail, 0));
    out.push_back(CheckRecord::eq("sandwich-preserves-form-failures", "clifford-sandwich", q_fail, 0));
    out.push_back(CheckRecord::eq("dual-representation-failures", "clifford-dual", dual_fail, 0));
    out.push_back(CheckRecord::eq("dual-scale-invariance-failures", "clifford-dual", scale_fail, 0));

    // censuses, exhaustive for small p
    if (p <= 13) {
        i128 units = 0;
        std::unordered_set<std::string> motions;
        for (u64 g0 = 0; g0 < p; ++g0)
            for (u64 g12 = 0; g12 < p; ++g12)
                for (u64 g13 = 0; g13 < p; ++g13)
                    for (u64 g23 = 0; g23 < p; ++g23) {
                        if (g0 == 0 && g12 == 0 && g13 == 0 && g23 == 0) continue;
                        EvenUnit g(cl, Scalar(ctx, g0), Scalar(ctx, g12), Scalar(ctx, g13), Scalar(ctx, g23));
                        if (!g.invertible()) continue;
                        ++units;
                        Motion3 d = dual_rep(g);
                        std::string key;
                        for (int r = 0; r < 2; ++r)
                            for (int csl = 0; csl < 3; ++csl)
                                key += std::to_string(d.m[r][csl].a0()) + ",";
                        motions.insert(key);
                    }
        i128 classes = units / (i128)(p - 1);  // Z = scalars acts freely
        int chi_l = ctx.chi(lambda.a0());
        i128 expected = (i128)p * p * (p - chi_l);
        out.push_back(CheckRecord::eq("unit-class-count", "clifford-census", classes, expected));
        out.push_back(CheckRecord::eq("dual-image-size", "clifford-census", (i128)motions.size(), expected));
        out.push_back(CheckRecord::eq("kernel-is-centre", "clifford-census", (i128)motions.size(), classes));

        // excluded projective set {g0^2 = lambda g12^2}: line or two planes
        i128 total_proj = ((i128)p * p * p * p - 1) / (p - 1);
        out.push_back(
            CheckRecord::eq("excluded-set-size", "clifford-census", total_proj - classes,
                            chi_l == 1 ? (i128)2 * p * p + p + 1 : (chi_l == -1 ? (i128)p + 1 : -1)));

        // rational parameterization covers the rotation subgroup minus (1,0)
        std::unordered_set<u64> hits;
        int param_fail = 0;
        for (u64 t = 0; t < p; ++t) {
            Scalar ts(ctx, t);
            Scalar den = ts * ts - lambda;
            if (den.is_zero()) continue;
            Scalar dinv = den.inverse();
            Scalar u = (ts * ts + lambda) * dinv;
            Scalar vv = -(ts + ts) * dinv;
            if (u * u - lambda * vv * vv != one) ++param_fail;
            hits.insert(u.a0() * p + vv.a0());
        }
        out.push_back(CheckRecord::eq("rotation-parameterization-failures", "clifford-census", param_fail, 0));
        out.push_back(CheckRecord::eq("rotation-parameterization-image", "clifford-census", (i128)hits.size(),
                                      (i128)(p - chi_l) - 1));
    }
    return out;
}

/// Exhaustive kinematic census: image size, exceptional-set structure, and
/// the round trip over the whole group.
struct KinematicCensus {
    i128 group_order = 0;
    i128 image_size = 0;
    i128 proj_points = 0;
    i128 exceptional = 0;
    bool roundtrip_ok = true;
    bool image_is_complement = true;  ///< image == FP^3 minus exceptional set
    std::vector<CheckRecord> checks;
};

inline KinematicCensus kinematic_census(const FieldCtx& ctx) {
    KinematicCensus cen;
    const u64 p = ctx.p();
    int chi_m1 = ctx.chi(p - 1);
    std::vector<PlanePoint> circle = unit_circle(ctx);
    std::unordered_set<ProjPoint, ProjPointHash> image;
    for (const PlanePoint& uv : circle)
        for (u64 s = 0; s < p; ++s)
            for (u64 t = 0; t < p; ++t) {
                RigidMotion g(uv.x, uv.y, Scalar(ctx, s), Scalar(ctx, t));
                ProjPoint k = kappa(g);
                image.insert(k);
                if (!(kappa_inv(k) == g)) cen.roundtrip_ok = false;
                ++cen.group_order;
            }
    cen.image_size = (i128)image.size();
    // enumerate all of FP^3: [1:*:*:*], [0:1:*:*], [0:0:1:*], [0:0:0:1]
    auto scan = [&](int lead) {
        std::vector<std::array<u64, 4>> coords;
        std::array<u64, 4> v{0, 0, 0, 0};
        v[lead] = 1;
        u64 cells = 1;
        for (int j = lead + 1; j < 4; ++j) cells *= p;
        for (u64 idx = 0; idx < cells; ++idx) {
            u64 rest = idx;
            for (int j = lead + 1; j < 4; ++j) {
                v[j] = rest % p;
                rest /= p;
            }
            coords.push_back(v);
        }
        return coords;
    };
    for (int lead = 0; lead < 4; ++lead)
        for (const auto& v : scan(lead)) {
            ProjPoint pt(std::array<Scalar, 4>{Scalar(ctx, v[0]), Scalar(ctx, v[1]), Scalar(ctx, v[2]),
                                               Scalar(ctx, v[3])});
            ++cen.proj_points;
            bool exc = pt.exceptional();
            if (exc) ++cen.exceptional;
            if (exc == (image.count(pt) > 0)) cen.image_is_complement = false;
        }
    i128 expected_group = (i128)p * p * (p - chi_m1);
    i128 expected_points = ((i128)p * p * p * p - 1) / (p - 1);
    i128 expected_exceptional = chi_m1 == 1 ? (i128)2 * p * p + p + 1 : (i128)p + 1;
    cen.checks.push_back(CheckRecord::eq("group-order", "kinematic-census", cen.group_order, expected_group));
    cen.checks.push_back(CheckRecord::eq("image-size", "kinematic-census", cen.image_size, expected_group));
    cen.checks.push_back(CheckRecord::eq("proj-space-size", "kinematic-census", cen.proj_points, expected_points));
    cen.checks.push_back(
        CheckRecord::eq("exceptional-size", "kinematic-census", cen.exceptional, expected_exceptional));
    cen.checks.push_back(
        CheckRecord::eq("image-complements-exceptional", "kinematic-census", cen.image_is_complement ? 1 : 0, 1));
    cen.checks.push_back(CheckRecord::eq("roundtrip", "kinematic-roundtrip", cen.roundtrip_ok ? 1 : 0, 1));
    return cen;
}

inline RigidMotion random_motion(const FieldCtx& ctx, const std::vector<PlanePoint>& circle,
                                 SplitMix64& rng) {
    const PlanePoint& uv = circle[rng.below(circle.size())];
    return RigidMotion(uv.x, uv.y, Scalar(ctx, rng.below(ctx.p())), Scalar(ctx, rng.below(ctx.p())));
}

/// Random equivariance checks for both translation actions.
inline CheckRecord equivariance_check(const FieldCtx& ctx, u64 samples, u64 seed) {
    SplitMix64 rng(seed);
    std::vector<PlanePoint> circle = unit_circle(ctx);
    int fail = 0;
    for (u64 i = 0; i < samples; ++i) {
        RigidMotion g = random_motion(ctx, circle, rng);
        RigidMotion x = random_motion(ctx, circle, rng);
        if (!(kappa(compose(g, x)) == left_map(g).apply(kappa(x)))) ++fail;
        if (!(kappa(compose(x, g)) == right_map(g).apply(kappa(x)))) ++fail;
    }
    return CheckRecord::eq("equivariance-failures-p" + std::to_string(ctx.p()), "kinematic-equivariance",
                           fail, 0);
}

/// Transporter sets map to projective lines of full rank 2.
inline CheckRecord transporter_check(const FieldCtx& ctx, u64 samples, u64 seed) {
    SplitMix64 rng(seed);
    std::vector<PlanePoint> circle = unit_circle(ctx);
    int fail = 0;
    for (u64 i = 0; i < samples; ++i) {
        PlanePoint x = point(ctx, (i64)rng.below(ctx.p()), (i64)rng.below(ctx.p()));
        PlanePoint y = point(ctx, (i64)rng.below(ctx.p()), (i64)rng.below(ctx.p()));
        ProjLine line = transporter_line(x, y);
        std::vector<std::array<Scalar, 4>> rows;
        for (const PlanePoint& uv : circle) {
            ProjPoint k = kappa(transporter_element(x, y, uv.x, uv.y));
            if (k.exceptional() || !line.contains(k)) ++fail;
            rows.push_back(k.X);
        }
        if (projective_rank(rows) != 2) ++fail;
    }
    return CheckRecord::eq("transporter-failures-p" + std::to_string(ctx.p()), "kinematic-transporters",
                           fail, 0);
}

}  // namespace ffplane
