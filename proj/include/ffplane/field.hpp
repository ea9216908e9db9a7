#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ffplane/util.hpp"

namespace ffplane {

/// Arithmetic context for F_p and its quadratic extension F_{p^2} = F_p[w],
/// w^2 = ext_nonresidue. p must be an odd prime.
class FieldCtx {
public:
    explicit FieldCtx(u64 p) : p_(p) {
        if (p < 3 || !is_prime(p)) throw std::invalid_argument("modulus must be an odd prime >= 3");
        ext_nonresidue_ = smallest_nonresidue();
    }

    u64 p() const { return p_; }
    u64 ext_nonresidue() const { return ext_nonresidue_; }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p_; }
    u64 reduce(i64 v) const {
        i64 m = v % (i64)p_;
        return m < 0 ? (u64)(m + (i64)p_) : (u64)m;
    }

    u64 pow(u64 a, u64 e) const {
        u64 r = 1 % p_;
        a %= p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    u64 inv(u64 a) const {
        if (a % p_ == 0) throw std::domain_error("inverse of zero");
        return pow(a, p_ - 2);
    }

    /// Quadratic character of a base-field residue: 0, 1 or -1.
    int chi(u64 a) const {
        a %= p_;
        if (a == 0) return 0;
        u64 e = pow(a, (p_ - 1) / 2);
        return e == 1 ? 1 : -1;
    }

    /// Square root in F_p when the character is >= 0; canonical representative in [0, p/2].
    std::optional<u64> sqrt_base(u64 a) const {
        a %= p_;
        if (a == 0) return 0;
        if (chi(a) != 1) return std::nullopt;
        u64 r = tonelli_shanks(a);
        return canonical_root(r);
    }

    static bool is_prime(u64 n) {
        if (n < 2) return false;
        for (u64 d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    u64 canonical_root(u64 r) const {
        u64 other = neg(r);
        return r <= other ? r : other;
    }

    u64 smallest_nonresidue() const {
        for (u64 a = 2; a < p_; ++a)
            if (chi(a) == -1) return a;
        throw std::logic_error("no quadratic non-residue found");
    }

    u64 tonelli_shanks(u64 a) const {
        if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
        u64 q = p_ - 1;
        u64 s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = ext_nonresidue_;
        u64 m = s;
        u64 c = pow(z, q);
        u64 t = pow(a, q);
        u64 r = pow(a, (q + 1) / 2);
        while (t != 1) {
            u64 i = 0;
            u64 t2 = t;
            while (t2 != 1) {
                t2 = mul(t2, t2);
                ++i;
                if (i == m) throw std::logic_error("tonelli-shanks: input is a non-residue");
            }
            u64 b = pow(c, u64(1) << (m - i - 1));
            m = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
        return r;
    }

    u64 p_;
    u64 ext_nonresidue_;
};

/// Element of F_{p^2} = F_p[w]: a0 + a1*w with w^2 = ctx.ext_nonresidue().
/// Base-field values have a1 == 0 and stay base-field under base-field ops.
class Scalar {
public:
    Scalar() : ctx_(nullptr), a0_(0), a1_(0) {}
    Scalar(const FieldCtx& ctx, u64 a0, u64 a1 = 0) : ctx_(&ctx), a0_(a0 % ctx.p()), a1_(a1 % ctx.p()) {}

    static Scalar from_int(const FieldCtx& ctx, i64 v) { return Scalar(ctx, ctx.reduce(v)); }
    static Scalar omega(const FieldCtx& ctx) { return Scalar(ctx, 0, 1); }

    const FieldCtx& ctx() const {
        assert(ctx_);
        return *ctx_;
    }
    u64 a0() const { return a0_; }
    u64 a1() const { return a1_; }
    bool in_base() const { return a1_ == 0; }
    bool is_zero() const { return a0_ == 0 && a1_ == 0; }

    bool operator==(const Scalar& o) const { return a0_ == o.a0_ && a1_ == o.a1_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator+(const Scalar& o) const {
        const FieldCtx& c = ctx();
        return Scalar(c, c.add(a0_, o.a0_), c.add(a1_, o.a1_));
    }
    Scalar operator-(const Scalar& o) const {
        const FieldCtx& c = ctx();
        return Scalar(c, c.sub(a0_, o.a0_), c.sub(a1_, o.a1_));
    }
    Scalar operator-() const {
        const FieldCtx& c = ctx();
        return Scalar(c, c.neg(a0_), c.neg(a1_));
    }
    Scalar operator*(const Scalar& o) const {
        const FieldCtx& c = ctx();
        // (a0 + a1 w)(b0 + b1 w) = a0 b0 + nr a1 b1 + (a0 b1 + a1 b0) w
        u64 r0 = c.add(c.mul(a0_, o.a0_), c.mul(c.ext_nonresidue(), c.mul(a1_, o.a1_)));
        u64 r1 = c.add(c.mul(a0_, o.a1_), c.mul(a1_, o.a0_));
        return Scalar(c, r0, r1);
    }
    Scalar inverse() const {
        const FieldCtx& c = ctx();
        if (is_zero()) throw std::domain_error("inverse of zero");
        if (a1_ == 0) return Scalar(c, c.inv(a0_));
        // norm = a0^2 - nr a1^2, nonzero since w is not in F_p
        u64 n = c.sub(c.mul(a0_, a0_), c.mul(c.ext_nonresidue(), c.mul(a1_, a1_)));
        u64 ninv = c.inv(n);
        return Scalar(c, c.mul(a0_, ninv), c.mul(c.neg(a1_), ninv));
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

private:
    const FieldCtx* ctx_;
    u64 a0_, a1_;
};

inline Scalar scalar(const FieldCtx& ctx, i64 v) { return Scalar::from_int(ctx, v); }

/// Character of a base-field scalar; 0 iff zero, 1 iff nonzero square mod p.
inline int quadratic_character(const Scalar& a) {
    if (!a.in_base()) throw std::invalid_argument("quadratic character is defined on base-field values");
    return a.ctx().chi(a.a0());
}

struct SqrtResult {
    std::optional<Scalar> base;  ///< present iff the character is >= 0
    Scalar ext;                  ///< always satisfies ext^2 == a
};

/// Deterministic square root of a base-field value: the base-field root with
/// representative in [0, p/2] when one exists, and an extension root w*c otherwise.
inline SqrtResult sqrt_mod(const Scalar& a) {
    if (!a.in_base()) throw std::invalid_argument("sqrt_mod expects a base-field value");
    const FieldCtx& c = a.ctx();
    SqrtResult out;
    auto b = c.sqrt_base(a.a0());
    if (b) {
        out.base = Scalar(c, *b);
        out.ext = *out.base;
        return out;
    }
    // a = nr * (a / nr) with a/nr a square; root is w * sqrt(a/nr)
    u64 q = c.mul(a.a0(), c.inv(c.ext_nonresidue()));
    auto r = c.sqrt_base(q);
    assert(r);
    out.ext = Scalar(c, 0, *r);
    return out;
}

}  // namespace ffplane
