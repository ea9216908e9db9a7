#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ffplane/field.hpp"

namespace ffplane {

struct PlanePoint {
    Scalar x, y;

    PlanePoint() = default;
    PlanePoint(Scalar x_, Scalar y_) : x(x_), y(y_) {}

    bool operator==(const PlanePoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const PlanePoint& o) const { return !(*this == o); }

    PlanePoint operator+(const PlanePoint& o) const { return {x + o.x, y + o.y}; }
    PlanePoint operator-(const PlanePoint& o) const { return {x - o.x, y - o.y}; }

    Scalar dot(const PlanePoint& o) const { return x * o.x + y * o.y; }
    bool in_base() const { return x.in_base() && y.in_base(); }
};

inline PlanePoint point(const FieldCtx& ctx, i64 x, i64 y) {
    return {Scalar::from_int(ctx, x), Scalar::from_int(ctx, y)};
}

/// d(x,y) = (x-y).(x-y); the algebraic squared distance, not a metric.
inline Scalar distance(const PlanePoint& a, const PlanePoint& b) {
    PlanePoint d = a - b;
    return d.dot(d);
}

/// Zero vector counts as isotropic.
inline bool is_isotropic(const PlanePoint& v) { return v.dot(v).is_zero(); }

/// Ordered pair of points; length() is the shared squared distance.
struct Segment {
    PlanePoint a, b;

    Segment() = default;
    Segment(PlanePoint a_, PlanePoint b_) : a(a_), b(b_) {}

    Scalar length() const { return distance(a, b); }
    bool operator==(const Segment& o) const { return a == o.a && b == o.b; }
    bool nontrivial_isotropic() const { return !(a == b) && length().is_zero(); }
};

/// Line alpha*x + beta*y = gamma, canonicalized so the first nonzero of
/// (alpha, beta) is 1; equality of lines is structural equality.
struct Line {
    Scalar alpha, beta, gamma;

    Line() = default;
    Line(Scalar a, Scalar b, Scalar g) : alpha(a), beta(b), gamma(g) { canonicalize(); }

    void canonicalize() {
        if (!alpha.is_zero()) {
            Scalar inv = alpha.inverse();
            alpha = alpha * inv;
            beta = beta * inv;
            gamma = gamma * inv;
        } else if (!beta.is_zero()) {
            Scalar inv = beta.inverse();
            beta = beta * inv;
            gamma = gamma * inv;
        } else {
            throw std::invalid_argument("degenerate line: (alpha, beta) = (0, 0)");
        }
    }

    bool operator==(const Line& o) const { return alpha == o.alpha && beta == o.beta && gamma == o.gamma; }

    bool contains(const PlanePoint& q) const { return (alpha * q.x + beta * q.y - gamma).is_zero(); }

    /// Isotropic iff the normal (equivalently the direction) is isotropic.
    bool isotropic() const { return (alpha * alpha + beta * beta).is_zero(); }

    PlanePoint normal() const { return {alpha, beta}; }
    PlanePoint direction() const { return {-beta, alpha}; }
};

struct Circle {
    PlanePoint center;
    Scalar r2;  ///< squared-distance radius; r2 = 0 is the isotropic point pair/line union

    bool operator==(const Circle& o) const { return center == o.center && r2 == o.r2; }
    bool contains(const PlanePoint& q) const { return distance(q, center) == r2; }
};

/// Line-or-circle object of F^2.
struct Curve {
    enum class Kind { Line, Circle } kind;
    Line line;      ///< valid when kind == Line
    Circle circle;  ///< valid when kind == Circle

    static Curve of(const Line& l) {
        Curve c;
        c.kind = Kind::Line;
        c.line = l;
        return c;
    }
    static Curve of(const Circle& ci) {
        Curve c;
        c.kind = Kind::Circle;
        c.circle = ci;
        return c;
    }

    bool contains(const PlanePoint& q) const {
        return kind == Kind::Line ? line.contains(q) : circle.contains(q);
    }
    bool operator==(const Curve& o) const {
        if (kind != o.kind) return false;
        return kind == Kind::Line ? line == o.line : circle == o.circle;
    }
};

/// Perpendicular bisector of distinct points: 2 x.(a-b) = d(a,0) - d(b,0).
/// Isotropic exactly when a - b is; the midpoint always lies on it.
inline Line bisector(const PlanePoint& a, const PlanePoint& b) {
    if (a == b) throw std::invalid_argument("degenerate bisector");
    Scalar two = scalar(a.x.ctx(), 2);
    PlanePoint d = a - b;
    PlanePoint zero = point(a.x.ctx(), 0, 0);
    return Line(two * d.x, two * d.y, distance(a, zero) - distance(b, zero));
}

/// Reflection across a non-isotropic line; involution fixing exactly the line.
inline PlanePoint reflect(const Line& l, const PlanePoint& q) {
    if (l.isotropic()) throw std::invalid_argument("reflection undefined");
    PlanePoint n = l.normal();
    Scalar two = scalar(q.x.ctx(), 2);
    Scalar factor = two * (q.dot(n) - l.gamma) / n.dot(n);
    return {q.x - factor * n.x, q.y - factor * n.y};
}

inline Segment reflect(const Line& l, const Segment& s) { return {reflect(l, s.a), reflect(l, s.b)}; }

/// Positively oriented rigid motion in the 3x3 form
///   [ u -v  s ]
///   [ v  u  t ]   with u^2 + v^2 = 1.
///   [ 0  0  1 ]
struct RigidMotion {
    Scalar u, v, s, t;

    RigidMotion() = default;
    RigidMotion(Scalar u_, Scalar v_, Scalar s_, Scalar t_) : u(u_), v(v_), s(s_), t(t_) {
        Scalar one = scalar(u.ctx(), 1);
        if (u * u + v * v != one) throw std::invalid_argument("rotation part is not on the unit circle");
    }

    static RigidMotion identity(const FieldCtx& ctx) {
        return RigidMotion(scalar(ctx, 1), scalar(ctx, 0), scalar(ctx, 0), scalar(ctx, 0));
    }
    static RigidMotion translation(Scalar s, Scalar t) {
        const FieldCtx& c = s.ctx();
        return RigidMotion(scalar(c, 1), scalar(c, 0), s, t);
    }
    static RigidMotion rotation(Scalar u, Scalar v) {
        const FieldCtx& c = u.ctx();
        return RigidMotion(u, v, scalar(c, 0), scalar(c, 0));
    }
    /// Rotation by (u, v) about the point c.
    static RigidMotion rotation_about(const PlanePoint& c, Scalar u, Scalar v) {
        Scalar one = scalar(u.ctx(), 1);
        return RigidMotion(u, v, (one - u) * c.x + v * c.y, -v * c.x + (one - u) * c.y);
    }

    bool operator==(const RigidMotion& o) const { return u == o.u && v == o.v && s == o.s && t == o.t; }
    bool is_identity() const {
        const FieldCtx& c = u.ctx();
        return *this == identity(c);
    }
};

inline PlanePoint apply(const RigidMotion& g, const PlanePoint& q) {
    return {g.u * q.x - g.v * q.y + g.s, g.v * q.x + g.u * q.y + g.t};
}

inline Segment apply(const RigidMotion& g, const Segment& s) { return {apply(g, s.a), apply(g, s.b)}; }

inline RigidMotion compose(const RigidMotion& g, const RigidMotion& h) {
    return RigidMotion(g.u * h.u - g.v * h.v, g.u * h.v + g.v * h.u,
                       g.u * h.s - g.v * h.t + g.s, g.v * h.s + g.u * h.t + g.t);
}

inline RigidMotion inverse(const RigidMotion& g) {
    // rotation part conjugate, translation part -R^{-1} (s,t)
    Scalar iu = g.u, iv = -g.v;
    return RigidMotion(iu, iv, -(iu * g.s - iv * g.t), -(iv * g.s + iu * g.t));
}

/// Fixed point of a motion when unique (u != 1); rotations have exactly one.
inline std::optional<PlanePoint> fixed_point(const RigidMotion& g) {
    const FieldCtx& c = g.u.ctx();
    Scalar one = scalar(c, 1);
    // (I - R) x = (s, t); det(I - R) = (1-u)^2 + v^2 = 2(1-u)
    Scalar det = (one - g.u) * (one - g.u) + g.v * g.v;
    if (det.is_zero()) return std::nullopt;
    Scalar dinv = det.inverse();
    // inverse of [[1-u, v], [-v, 1-u]]
    Scalar x = dinv * ((one - g.u) * g.s - g.v * g.t);
    Scalar y = dinv * (g.v * g.s + (one - g.u) * g.t);
    return PlanePoint{x, y};
}

/// All (u,v) with u^2 + v^2 = 1; cardinality p - chi(-1).
inline std::vector<PlanePoint> unit_circle(const FieldCtx& ctx) {
    std::vector<PlanePoint> pts;
    for (u64 u = 0; u < ctx.p(); ++u) {
        u64 v2 = ctx.sub(1 % ctx.p(), ctx.mul(u, u));
        auto v = ctx.sqrt_base(v2);
        if (!v) continue;
        pts.push_back({Scalar(ctx, u), Scalar(ctx, *v)});
        if (*v != 0 && ctx.neg(*v) != *v) pts.push_back({Scalar(ctx, u), Scalar(ctx, ctx.neg(*v))});
    }
    return pts;
}

/// Unit-circle points over F_{p^2} through the rational parameterization
/// t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)); count chosen for plane-spanning uses.
inline std::vector<PlanePoint> unit_circle_ext_sample(const FieldCtx& ctx, std::size_t count) {
    std::vector<PlanePoint> pts;
    Scalar one = scalar(ctx, 1);
    for (u64 a1 = 0; a1 < ctx.p() && pts.size() < count; ++a1) {
        for (u64 a0 = 0; a0 < ctx.p() && pts.size() < count; ++a0) {
            if (a0 == 0 && a1 == 0) continue;  // skip t = 0 (the identity rotation)
            Scalar t(ctx, a0, a1);
            Scalar den = one + t * t;
            if (den.is_zero()) continue;
            Scalar dinv = den.inverse();
            pts.push_back({(one - t * t) * dinv, (t + t) * dinv});
        }
    }
    return pts;
}

/// The unique g in SF_2 with g(s1) = s2, when the common length is nonzero.
inline std::optional<RigidMotion> rigid_motion_between(const Segment& s1, const Segment& s2) {
    Scalar r = s1.length();
    if (r != s2.length() || r.is_zero()) return std::nullopt;
    PlanePoint w = s1.b - s1.a;
    PlanePoint w2 = s2.b - s2.a;
    Scalar rinv = r.inverse();
    Scalar u = (w.x * w2.x + w.y * w2.y) * rinv;
    Scalar v = (w.x * w2.y - w.y * w2.x) * rinv;
    // translation = s2.a - R * s1.a
    Scalar s = s2.a.x - (u * s1.a.x - v * s1.a.y);
    Scalar t = s2.a.y - (v * s1.a.x + u * s1.a.y);
    return RigidMotion(u, v, s, t);
}

/// Canonical projective direction of a nonzero vector (first nonzero
/// coordinate scaled to 1).
inline PlanePoint canonical_direction(const PlanePoint& v) {
    if (!v.x.is_zero()) {
        Scalar inv = v.x.inverse();
        return {v.x * inv, v.y * inv};
    }
    if (v.y.is_zero()) throw std::invalid_argument("zero direction");
    return {v.x, v.y * v.y.inverse()};
}

/// Line through two distinct points.
inline Line line_through(const PlanePoint& a, const PlanePoint& b) {
    if (a == b) throw std::invalid_argument("line through equal points");
    PlanePoint d = b - a;
    // normal (dy, -dx), offset via a
    return Line(d.y, -d.x, d.y * a.x - d.x * a.y);
}

/// Circle through three points, if they are not collinear; r2 may be 0.
inline std::optional<Circle> circle_through(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) {
    if (a == b || b == c || a == c) return std::nullopt;
    Line l1 = bisector(a, b);
    Line l2 = bisector(b, c);
    // intersect alpha1 x + beta1 y = gamma1 with alpha2 x + beta2 y = gamma2
    Scalar det = l1.alpha * l2.beta - l2.alpha * l1.beta;
    if (det.is_zero()) return std::nullopt;
    Scalar dinv = det.inverse();
    Scalar x = (l1.gamma * l2.beta - l2.gamma * l1.beta) * dinv;
    Scalar y = (l1.alpha * l2.gamma - l2.alpha * l1.gamma) * dinv;
    PlanePoint center{x, y};
    return Circle{center, distance(a, center)};
}

}  // namespace ffplane
