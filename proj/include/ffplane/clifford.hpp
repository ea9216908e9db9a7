#pragma once

#include <array>
#include <bit>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffplane/field.hpp"

namespace ffplane {

// Cl(V, Q) for V = F^3 with Q(x,y,z) = Q0(x,y), Q0(e1) = 1, Q0(e2) = -lambda,
// e3^2 = 0. Basis monomials are indexed by generator bitmasks:
//   bit 0 = e1, bit 1 = e2, bit 2 = e3, so
//   0:e0  1:e1  2:e2  3:e12  4:e3  5:e13  6:e23  7:e123.
// The even subalgebra is spanned by e0, e12, e13, e23.

inline constexpr int kE0 = 0, kE1 = 1, kE2 = 2, kE12 = 3, kE3 = 4, kE13 = 5, kE23 = 6, kE123 = 7;

class CliffordCtx {
public:
    CliffordCtx(const FieldCtx& field, Scalar lambda) : field_(&field), lambda_(lambda) {
        if (lambda.is_zero()) throw std::invalid_argument("lambda must be nonzero");
        gen_sq_ = {scalar(field, 1), -lambda, scalar(field, 0)};
        build_table();
    }

    const FieldCtx& field() const { return *field_; }
    Scalar lambda() const { return lambda_; }
    Scalar generator_square(int i) const { return gen_sq_[i]; }

    /// Product of basis monomials: coefficient (possibly 0) and resulting index.
    Scalar table_coeff(int a, int b) const { return table_coeff_[a][b]; }
    int table_index(int a, int b) const { return table_index_[a][b]; }

private:
    void build_table() {
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
                auto [coeff, idx] = reduce_monomial(a, b);
                table_coeff_[a][b] = coeff;
                table_index_[a][b] = idx;
            }
    }

    /// e_S * e_T by moving each generator of T into place across S, one swap
    /// and one generator-square at a time.
    std::pair<Scalar, int> reduce_monomial(int s, int t) const {
        Scalar coeff = scalar(*field_, 1);
        for (int j = 0; j < 3; ++j) {
            if (!(t & (1 << j))) continue;
            int higher = s >> (j + 1);
            if (std::popcount((unsigned)higher) % 2 == 1) coeff = -coeff;
            if (s & (1 << j)) {
                coeff = coeff * gen_sq_[j];
                s &= ~(1 << j);
            } else {
                s |= (1 << j);
            }
        }
        return {coeff, s};
    }

    const FieldCtx* field_;
    Scalar lambda_;
    std::array<Scalar, 3> gen_sq_;
    std::array<std::array<Scalar, 8>, 8> table_coeff_;
    std::array<std::array<int, 8>, 8> table_index_;
};

struct CliffordElement {
    const CliffordCtx* ctx = nullptr;
    std::array<Scalar, 8> c;

    static CliffordElement zero(const CliffordCtx& ctx) {
        CliffordElement e;
        e.ctx = &ctx;
        e.c.fill(scalar(ctx.field(), 0));
        return e;
    }
    static CliffordElement basis(const CliffordCtx& ctx, int idx) {
        CliffordElement e = zero(ctx);
        e.c[idx] = scalar(ctx.field(), 1);
        return e;
    }
    static CliffordElement scalar_elem(const CliffordCtx& ctx, Scalar v) {
        CliffordElement e = zero(ctx);
        e.c[kE0] = v;
        return e;
    }
    /// Vector a1 e1 + a2 e2 + a3 e3 of V.
    static CliffordElement vector(const CliffordCtx& ctx, Scalar a1, Scalar a2, Scalar a3) {
        CliffordElement e = zero(ctx);
        e.c[kE1] = a1;
        e.c[kE2] = a2;
        e.c[kE3] = a3;
        return e;
    }

    bool operator==(const CliffordElement& o) const { return c == o.c; }

    CliffordElement operator+(const CliffordElement& o) const {
        CliffordElement r = *this;
        for (int i = 0; i < 8; ++i) r.c[i] += o.c[i];
        return r;
    }
    CliffordElement operator-(const CliffordElement& o) const {
        CliffordElement r = *this;
        for (int i = 0; i < 8; ++i) r.c[i] -= o.c[i];
        return r;
    }
    CliffordElement scaled(Scalar f) const {
        CliffordElement r = *this;
        for (int i = 0; i < 8; ++i) r.c[i] *= f;
        return r;
    }

    bool is_scalar() const {
        for (int i = 1; i < 8; ++i)
            if (!c[i].is_zero()) return false;
        return true;
    }
    bool in_vector_space() const {
        return c[kE0].is_zero() && c[kE12].is_zero() && c[kE13].is_zero() && c[kE23].is_zero() &&
               c[kE123].is_zero();
    }
    bool even() const { return c[kE1].is_zero() && c[kE2].is_zero() && c[kE3].is_zero() && c[kE123].is_zero(); }
};

inline CliffordElement cl_mul(const CliffordElement& a, const CliffordElement& b) {
    const CliffordCtx& ctx = *a.ctx;
    CliffordElement r = CliffordElement::zero(ctx);
    for (int i = 0; i < 8; ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < 8; ++j) {
            if (b.c[j].is_zero()) continue;
            Scalar coeff = ctx.table_coeff(i, j);
            if (coeff.is_zero()) continue;
            r.c[ctx.table_index(i, j)] += a.c[i] * b.c[j] * coeff;
        }
    }
    return r;
}

/// Conjugation: e_{i1..ik} -> (-1)^k e_{ik..i1}, i.e. (-1)^{k(k+1)/2} on grade k.
inline CliffordElement conjugate(const CliffordElement& a) {
    CliffordElement r = a;
    for (int i = 0; i < 8; ++i) {
        int k = std::popcount((unsigned)i);
        if ((k * (k + 1) / 2) % 2 == 1) r.c[i] = -r.c[i];
    }
    return r;
}

/// Main involution: -1 on odd grades, +1 on even grades.
inline CliffordElement main_involution(const CliffordElement& a) {
    CliffordElement r = a;
    for (int i = 0; i < 8; ++i)
        if (std::popcount((unsigned)i) % 2 == 1) r.c[i] = -r.c[i];
    return r;
}

/// N(a) = a a*; scalar for every element of this algebra.
inline Scalar cl_norm(const CliffordElement& a) {
    CliffordElement n = cl_mul(a, conjugate(a));
    if (!n.is_scalar()) throw std::domain_error("norm is not scalar");
    return n.c[kE0];
}

/// Unit of the even subalgebra: g0 e0 + g12 e12 + g13 e13 + g23 e23 with
/// N(g) = g0^2 - lambda g12^2 != 0.
struct EvenUnit {
    const CliffordCtx* ctx = nullptr;
    Scalar g0, g12, g13, g23;

    EvenUnit() = default;
    EvenUnit(const CliffordCtx& c, Scalar g0_, Scalar g12_, Scalar g13_, Scalar g23_)
        : ctx(&c), g0(g0_), g12(g12_), g13(g13_), g23(g23_) {}

    Scalar norm() const { return g0 * g0 - ctx->lambda() * (g12 * g12); }
    bool invertible() const { return !norm().is_zero(); }

    CliffordElement element() const {
        CliffordElement e = CliffordElement::zero(*ctx);
        e.c[kE0] = g0;
        e.c[kE12] = g12;
        e.c[kE13] = g13;
        e.c[kE23] = g23;
        return e;
    }
    static EvenUnit from_element(const CliffordCtx& ctx, const CliffordElement& e) {
        return EvenUnit(ctx, e.c[kE0], e.c[kE12], e.c[kE13], e.c[kE23]);
    }

    EvenUnit inverse() const {
        if (!invertible()) throw std::domain_error("even element is not a unit");
        Scalar ninv = norm().inverse();
        // g^{-1} = g* / N(g); conjugation negates e12, e13, e23
        return EvenUnit(*ctx, g0 * ninv, -(g12 * ninv), -(g13 * ninv), -(g23 * ninv));
    }
};

inline EvenUnit even_mul(const EvenUnit& a, const EvenUnit& b) {
    return EvenUnit::from_element(*a.ctx, cl_mul(a.element(), b.element()));
}

/// g v g^{-1} for v in V; lands back in V and fixes e3.
inline CliffordElement sandwich(const EvenUnit& g, const CliffordElement& v) {
    if (!g.invertible()) throw std::domain_error("even element is not a unit");
    if (!v.in_vector_space()) throw std::invalid_argument("sandwich operand must lie in V");
    CliffordElement r = cl_mul(cl_mul(g.element(), v), g.inverse().element());
    if (!r.in_vector_space()) throw std::logic_error("sandwich left the vector space");
    return r;
}

/// The 3x3 matrix of the dual action on V*; rows follow the closed form
///   [ g0^2 + l g12^2   -2 g0 g12          -2 (g0 g13 + l g12 g23) ]
///   [ -2 l g0 g12       g0^2 + l g12^2     2 l (g0 g23 + g12 g13) ]  / N(g)
///   [ 0                 0                  N(g)                   ]
/// and lands in the rigid-motion shape for Q0. Constant on scalar multiples.
struct Motion3 {
    std::array<std::array<Scalar, 3>, 3> m;
    bool operator==(const Motion3& o) const { return m == o.m; }
};

inline Motion3 dual_rep(const EvenUnit& g) {
    if (!g.invertible()) throw std::domain_error("even element is not a unit");
    const Scalar l = g.ctx->lambda();
    const FieldCtx& f = g.ctx->field();
    Scalar n = g.norm();
    Scalar ninv = n.inverse();
    Scalar two = scalar(f, 2);
    Motion3 r;
    r.m[0][0] = (g.g0 * g.g0 + l * g.g12 * g.g12) * ninv;
    r.m[0][1] = -(two * g.g0 * g.g12) * ninv;
    r.m[0][2] = -(two * (g.g0 * g.g13 + l * g.g12 * g.g23)) * ninv;
    r.m[1][0] = -(two * l * g.g0 * g.g12) * ninv;
    r.m[1][1] = r.m[0][0];
    r.m[1][2] = (two * l * (g.g0 * g.g23 + g.g12 * g.g13)) * ninv;
    r.m[2][0] = scalar(f, 0);
    r.m[2][1] = scalar(f, 0);
    r.m[2][2] = scalar(f, 1);
    return r;
}

/// 4x4 matrix (even-basis coordinates, order e0,e12,e13,e23) of v -> v * g.
inline std::array<std::array<Scalar, 4>, 4> even_right_mult_matrix(const EvenUnit& g) {
    const CliffordCtx& ctx = *g.ctx;
    static constexpr int even_idx[4] = {kE0, kE12, kE13, kE23};
    std::array<std::array<Scalar, 4>, 4> m;
    for (int col = 0; col < 4; ++col) {
        CliffordElement prod = cl_mul(CliffordElement::basis(ctx, even_idx[col]), g.element());
        for (int row = 0; row < 4; ++row) m[row][col] = prod.c[even_idx[row]];
    }
    return m;
}

/// 4x4 matrix of v -> g * v.
inline std::array<std::array<Scalar, 4>, 4> even_left_mult_matrix(const EvenUnit& g) {
    const CliffordCtx& ctx = *g.ctx;
    static constexpr int even_idx[4] = {kE0, kE12, kE13, kE23};
    std::array<std::array<Scalar, 4>, 4> m;
    for (int col = 0; col < 4; ++col) {
        CliffordElement prod = cl_mul(g.element(), CliffordElement::basis(ctx, even_idx[col]));
        for (int row = 0; row < 4; ++row) m[row][col] = prod.c[even_idx[row]];
    }
    return m;
}

}  // namespace ffplane
