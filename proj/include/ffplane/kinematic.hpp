#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ffplane/clifford.hpp"
#include "ffplane/keys.hpp"
#include "ffplane/plane.hpp"
#include "ffplane/proj.hpp"

namespace ffplane {

/// Embedding of SF_2(F) into FP^3. For u != -1 the square-root-free form
/// [2(u+1) : 2v : s(u+1)+tv : sv-t(u+1)] applies; at u = -1 (so v = 0) the
/// half-angle pair is (0, 1) and the image is [0 : 2 : t : s]. The image never
/// meets {X0^2 + X1^2 = 0}.
inline ProjPoint kappa(const RigidMotion& g) {
    const FieldCtx& c = g.u.ctx();
    Scalar one = scalar(c, 1), two = scalar(c, 2);
    if (g.u != -one) {
        Scalar up1 = g.u + one;
        return ProjPoint({two * up1, two * g.v, g.s * up1 + g.t * g.v, g.s * g.v - g.t * up1});
    }
    return ProjPoint({scalar(c, 0), two, g.t, g.s});
}

/// Inverse of kappa on the non-exceptional locus.
inline RigidMotion kappa_inv(const ProjPoint& X) {
    if (X.exceptional()) throw std::domain_error("exceptional set");
    const Scalar &X0 = X.X[0], &X1 = X.X[1], &X2 = X.X[2], &X3 = X.X[3];
    Scalar d = X0 * X0 + X1 * X1;
    Scalar dinv = d.inverse();
    Scalar two = scalar(X0.ctx(), 2);
    Scalar u = (X0 * X0 - X1 * X1) * dinv;
    Scalar v = two * X0 * X1 * dinv;
    Scalar s = two * (X1 * X3 + X0 * X2) * dinv;
    Scalar t = two * (X1 * X2 - X0 * X3) * dinv;
    return RigidMotion(u, v, s, t);
}

namespace detail {

/// kappa coordinates correspond to even-subalgebra coordinates (lambda = -1)
/// through the sign flip on the third slot: [X0:X1:X2:X3] = [g0:g12:-g13:g23].
inline ProjMap remap_even_matrix(const std::array<std::array<Scalar, 4>, 4>& m) {
    ProjMap out;
    out.m = m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if ((i == 2) != (j == 2)) out.m[i][j] = -out.m[i][j];
    return out;
}

inline EvenUnit even_of_motion(const CliffordCtx& cl, const RigidMotion& g) {
    ProjPoint k = kappa(g);
    return EvenUnit(cl, k.X[0], k.X[1], -k.X[2], k.X[3]);
}

}  // namespace detail

/// Projective map phi_g with kappa(g x) = phi_g(kappa(x)); built from the
/// right-multiplication matrix of the even Clifford subalgebra at lambda = -1.
inline ProjMap left_map(const RigidMotion& g) {
    const FieldCtx& f = g.u.ctx();
    CliffordCtx cl(f, scalar(f, -1));
    return detail::remap_even_matrix(even_right_mult_matrix(detail::even_of_motion(cl, g)));
}

/// Projective map phi^g with kappa(x g) = phi^g(kappa(x)).
inline ProjMap right_map(const RigidMotion& g) {
    const FieldCtx& f = g.u.ctx();
    CliffordCtx cl(f, scalar(f, -1));
    return detail::remap_even_matrix(even_left_mult_matrix(detail::even_of_motion(cl, g)));
}

/// The unique motion with g(x) = y and rotation part (u, v).
inline RigidMotion transporter_element(const PlanePoint& x, const PlanePoint& y, Scalar u, Scalar v) {
    Scalar s = y.x - (u * x.x - v * x.y);
    Scalar t = y.y - (v * x.x + u * x.y);
    return RigidMotion(u, v, s, t);
}

/// kappa(T_xy) for T_xy = {g : gx = y}: a projective line.
inline ProjLine transporter_line(const PlanePoint& x, const PlanePoint& y) {
    const FieldCtx& c = x.x.ctx();
    RigidMotion g1 = transporter_element(x, y, scalar(c, 1), scalar(c, 0));
    RigidMotion g2 = transporter_element(x, y, scalar(c, 0), scalar(c, 1));
    auto line = ProjLine::through(kappa(g1), kappa(g2));
    if (!line) throw std::logic_error("transporter images coincide");
    return *line;
}

/// Plane through three projective points in general position.
inline ProjPlane plane_through(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
    const FieldCtx& ctx = a.X[0].ctx();
    std::array<std::array<Scalar, 4>, 3> rows = {a.X, b.X, c.X};
    // null space of the 3x4 system rows . coeff = 0
    std::array<int, 4> pivot_col = {-1, -1, -1, -1};
    int rank = 0;
    for (int col = 0; col < 4 && rank < 3; ++col) {
        int sel = -1;
        for (int r = rank; r < 3; ++r)
            if (!rows[r][col].is_zero()) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        Scalar inv = rows[rank][col].inverse();
        for (int j = 0; j < 4; ++j) rows[rank][j] = rows[rank][j] * inv;
        for (int r = 0; r < 3; ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            Scalar f = rows[r][col];
            for (int j = 0; j < 4; ++j) rows[r][j] = rows[r][j] - f * rows[rank][j];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    if (rank != 3) throw std::invalid_argument("points do not span a plane");
    int free_col = 0;
    while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
    std::array<Scalar, 4> coeff;
    for (int j = 0; j < 4; ++j) coeff[j] = scalar(ctx, 0);
    coeff[free_col] = scalar(ctx, 1);
    for (int r = 0; r < rank; ++r) coeff[pivot_col[r]] = -rows[r][free_col];
    return ProjPlane(coeff);
}

/// Two distinct points on a line.
inline std::pair<PlanePoint, PlanePoint> two_points_on(const Line& l) {
    const FieldCtx& c = l.alpha.ctx();
    Scalar zero = scalar(c, 0), one = scalar(c, 1);
    if (!l.beta.is_zero()) {
        Scalar binv = l.beta.inverse();
        return {PlanePoint{zero, l.gamma * binv}, PlanePoint{one, (l.gamma - l.alpha) * binv}};
    }
    Scalar x = l.gamma * l.alpha.inverse();
    return {PlanePoint{x, zero}, PlanePoint{x, one}};
}

/// The plane of FP^3 containing kappa of every rotation about every point of
/// the (non-isotropic) axis; for the x-axis this is exactly X2 = 0.
inline ProjPlane r_tau_plane(const Line& ltau) {
    if (ltau.isotropic()) throw std::invalid_argument("isotropic axis");
    const FieldCtx& c = ltau.alpha.ctx();
    auto [q1, q2] = two_points_on(ltau);
    Scalar zero = scalar(c, 0), one = scalar(c, 1);
    ProjPoint p0 = kappa(RigidMotion::identity(c));
    ProjPoint p1 = kappa(RigidMotion::rotation_about(q1, zero, one));
    ProjPoint p2 = kappa(RigidMotion::rotation_about(q2, zero, one));
    return plane_through(p0, p1, p2);
}

/// Segment classes S_r keyed by the base-field distance value.
struct SegmentClass {
    u64 r;
    std::vector<Segment> segments;
};

/// Deterministic lexicographic order for base-field segments.
inline bool segment_lex_less(const Segment& a, const Segment& b) {
    auto key = [](const Segment& s) {
        return std::array<u64, 4>{s.a.x.a0(), s.a.y.a0(), s.b.x.a0(), s.b.y.a0()};
    };
    return key(a) < key(b);
}

enum class AxialMode {
    Permissive,  ///< endpoints may lie on the axis (fixed by the reflection)
    Strict       ///< all four endpoints strictly off the axis
};

/// The unique non-isotropic reflection axis relating x to y, if any.
/// Segments must share a context and have equal lengths.
inline std::optional<Line> axial_axis(const Segment& x, const Segment& y) {
    if (x == y) {
        if (x.length().is_zero()) return std::nullopt;  // isotropic supporting line
        return line_through(x.a, x.b);
    }
    if (x.a == y.a) {
        PlanePoint d = x.b - y.b;
        if (is_isotropic(d)) return std::nullopt;
        return bisector(x.b, y.b);  // contains the shared endpoint automatically
    }
    if (x.b == y.b) {
        PlanePoint d = x.a - y.a;
        if (is_isotropic(d)) return std::nullopt;
        return bisector(x.a, y.a);
    }
    PlanePoint d = x.a - y.a;
    if (is_isotropic(d)) return std::nullopt;
    Line l = bisector(x.a, y.a);
    if (bisector(x.b, y.b) == l) return l;
    return std::nullopt;
}

using LineSet = std::unordered_set<Line, LineHash>;

/// Ordered pairs (x, y) of equal-length segments related by an axial symmetry.
/// `allowed` restricts the axis to a given line family when non-null.
inline i64 axial_pair_count(const std::vector<Segment>& segs, AxialMode mode, const LineSet* allowed = nullptr) {
    i64 count = 0;
    for (const Segment& x : segs) {
        for (const Segment& y : segs) {
            bool shares = (x == y) || x.a == y.a || x.b == y.b;
            if (mode == AxialMode::Strict && shares) continue;
            auto axis = axial_axis(x, y);
            if (!axis) continue;
            if (allowed && !allowed->count(*axis)) continue;
            ++count;
        }
    }
    return count;
}

/// Point-plane system realizing the axial-pair count of one segment class.
struct KinematicSystem {
    std::vector<Segment> segments;  ///< class members, lex order
    std::vector<ProjPoint> points;  ///< points[i] belongs to segments[i]
    std::vector<ProjPlane> planes;  ///< planes[i] belongs to segments[i]
    Line tau;                       ///< chosen axis (base field or extension)
    bool tau_in_extension = false;
};

/// Fixed points of all products g_i^{-1} g_j, i != j. Products of base-field
/// motions are base-field motions, so every centre is an F_p^2 point; pure
/// translations contribute nothing.
inline std::unordered_set<PlanePoint, PointHash> product_fixed_points(const std::vector<RigidMotion>& G) {
    std::unordered_set<PlanePoint, PointHash> centers;
    for (std::size_t i = 0; i < G.size(); ++i) {
        RigidMotion gi_inv = inverse(G[i]);
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j) continue;
            if (auto c = fixed_point(compose(gi_inv, G[j]))) centers.insert(*c);
        }
    }
    return centers;
}

/// No product of distinct class motions may fix a point of the axis.
inline bool axis_admissible(const std::unordered_set<PlanePoint, PointHash>& centers, const Line& axis) {
    for (const PlanePoint& c : centers)
        if (axis.contains(c)) return false;
    return true;
}

struct TauChoice {
    Line axis;
    bool in_extension = false;
};

/// Deterministic axis search. Base lines go offset-major (through the origin
/// first, slopes 0..p-1 then vertical); when every base line passes through
/// some product fixed point, lines with base slope and extension offset
/// follow. Those contain no F_p^2 point at all, while all product fixed
/// points lie in F_p^2, so the extension phase always succeeds.
inline TauChoice choose_tau(const std::vector<RigidMotion>& G, const FieldCtx& ctx) {
    Scalar one = scalar(ctx, 1), zero = scalar(ctx, 0);
    auto centers = product_fixed_points(G);
    for (u64 c = 0; c < ctx.p(); ++c) {
        Scalar off = Scalar(ctx, c);
        for (u64 m = 0; m < ctx.p(); ++m) {
            Scalar slope = Scalar(ctx, m);
            if ((slope * slope + one).is_zero()) continue;
            Line cand(-slope, one, off);  // y = m x + c
            if (axis_admissible(centers, cand)) return {cand, false};
        }
        Line vertical(one, zero, off);
        if (axis_admissible(centers, vertical)) return {vertical, false};
    }
    for (u64 c1 = 1; c1 < ctx.p(); ++c1)
        for (u64 c0 = 0; c0 < ctx.p(); ++c0) {
            Scalar off(ctx, c0, c1);
            for (u64 m = 0; m < ctx.p(); ++m) {
                Scalar slope(ctx, m);
                if ((slope * slope + one).is_zero()) continue;
                Line cand(-slope, one, off);
                if (axis_admissible(centers, cand)) return {cand, true};
            }
            Line vertical(one, zero, off);
            if (axis_admissible(centers, vertical)) return {vertical, true};
        }
    throw std::logic_error("axis search fell through the extension phase");
}

/// Motions identifying each segment with the lexicographically least one.
inline std::vector<RigidMotion> class_motions(const std::vector<Segment>& segs) {
    std::vector<RigidMotion> G;
    G.reserve(segs.size());
    const Segment& s_r = segs.front();
    for (const Segment& s : segs) {
        auto g = rigid_motion_between(s, s_r);
        if (!g) throw std::invalid_argument("segment class is not a single nonzero length");
        G.push_back(*g);
    }
    return G;
}

/// Claim-1 construction: |P| = |segments| points and one plane per segment;
/// the incidences of (P, Pi) count exactly the axially-symmetric ordered
/// pairs of the class.
inline KinematicSystem build_incidence_system(std::vector<Segment> segs, const Line& ltau,
                                              bool tau_in_extension = false) {
    if (segs.empty()) return {};
    std::sort(segs.begin(), segs.end(), segment_lex_less);
    if (segs.front().length().is_zero()) throw std::invalid_argument("segment class must have nonzero length");

    std::vector<RigidMotion> G = class_motions(segs);
    if (!axis_admissible(product_fixed_points(G), ltau)) throw std::invalid_argument("fixed point on axis");
    ProjPlane base_plane = r_tau_plane(ltau);

    KinematicSystem sys;
    sys.segments = segs;
    sys.tau = ltau;
    sys.tau_in_extension = tau_in_extension;
    const Segment& s_r = segs.front();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        // plane for the segment through its motion g (g . seg = s_r)
        sys.planes.push_back(left_map(G[i]).apply(base_plane));
        // point for the segment through the motion sending its tau-image to s_r
        Segment reflected = reflect(ltau, segs[i]);
        auto h = rigid_motion_between(reflected, s_r);
        if (!h) throw std::logic_error("reflected segment lost its length");
        sys.points.push_back(kappa(*h));
    }

    // the axis plane has trivial left stabilizer, so distinct segments always
    // get distinct planes; a collision here means an implementation bug
    std::unordered_set<ProjPlane, ProjPlaneHash> unique_planes(sys.planes.begin(), sys.planes.end());
    if (unique_planes.size() != sys.planes.size()) throw std::logic_error("plane collision");
    return sys;
}

inline i64 incidence_count(const KinematicSystem& sys) {
    i64 count = 0;
    for (const ProjPoint& p : sys.points)
        for (const ProjPlane& pl : sys.planes)
            if (pl.contains(p)) ++count;
    return count;
}

/// Oracle and pipeline count for one class; the two must agree exactly.
struct AxialCountResult {
    i64 oracle = 0;    ///< direct reflection enumeration
    i64 pipeline = 0;  ///< point-plane incidences of the kinematic system
    bool tau_in_extension = false;
};

inline AxialCountResult axial_incidence_count(const std::vector<Segment>& segs, const FieldCtx& ctx) {
    AxialCountResult res;
    if (segs.empty()) return res;
    res.oracle = axial_pair_count(segs, AxialMode::Permissive);
    std::vector<Segment> sorted = segs;
    std::sort(sorted.begin(), sorted.end(), segment_lex_less);
    TauChoice tau = choose_tau(class_motions(sorted), ctx);
    KinematicSystem sys = build_incidence_system(sorted, tau.axis, tau.in_extension);
    res.pipeline = incidence_count(sys);
    res.tau_in_extension = tau.in_extension;
    return res;
}

}  // namespace ffplane
