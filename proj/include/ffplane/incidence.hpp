#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ffplane/keys.hpp"
#include "ffplane/proj.hpp"
#include "ffplane/report.hpp"

namespace ffplane {

/// Homogeneous solutions of a stack of 4-coefficient equations.
inline std::vector<std::array<Scalar, 4>> nullspace4(std::vector<std::array<Scalar, 4>> rows,
                                                     const FieldCtx& ctx) {
    const int n = (int)rows.size();
    std::array<int, 4> pivot_col = {-1, -1, -1, -1};
    int rank = 0;
    for (int col = 0; col < 4 && rank < n; ++col) {
        int sel = -1;
        for (int r = rank; r < n; ++r)
            if (!rows[r][col].is_zero()) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        Scalar inv = rows[rank][col].inverse();
        for (int j = 0; j < 4; ++j) rows[rank][j] = rows[rank][j] * inv;
        for (int r = 0; r < n; ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            Scalar f = rows[r][col];
            for (int j = 0; j < 4; ++j) rows[r][j] = rows[r][j] - f * rows[rank][j];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    std::vector<std::array<Scalar, 4>> basis;
    for (int free_col = 0; free_col < 4; ++free_col) {
        bool is_pivot = false;
        for (int r = 0; r < rank; ++r) is_pivot |= pivot_col[r] == free_col;
        if (is_pivot) continue;
        std::array<Scalar, 4> v;
        for (int j = 0; j < 4; ++j) v[j] = scalar(ctx, 0);
        v[free_col] = scalar(ctx, 1);
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][free_col];
        basis.push_back(v);
    }
    return basis;
}

/// Intersection line of two distinct planes.
inline std::optional<ProjLine> plane_intersection(const ProjPlane& a, const ProjPlane& b,
                                                  const FieldCtx& ctx) {
    if (a == b) return std::nullopt;
    auto basis = nullspace4({a.c, b.c}, ctx);
    if (basis.size() != 2) return std::nullopt;
    return ProjLine::through(ProjPoint(basis[0]), ProjPoint(basis[1]));
}

struct IncidenceSystem {
    std::vector<ProjPoint> points;
    std::vector<ProjPlane> planes;
    std::vector<ProjLine> lines;  ///< forbidden lines for restricted counts

    static IncidenceSystem of(std::vector<ProjPoint> pts, std::vector<ProjPlane> pls,
                              std::vector<ProjLine> ls = {}) {
        IncidenceSystem s;
        std::unordered_set<ProjPoint, ProjPointHash> sp;
        for (auto& p : pts)
            if (sp.insert(p).second) s.points.push_back(p);
        std::unordered_set<ProjPlane, ProjPlaneHash> spl;
        for (auto& p : pls)
            if (spl.insert(p).second) s.planes.push_back(p);
        std::unordered_set<ProjLine, ProjLineHash> sl;
        for (auto& l : ls)
            if (sl.insert(l).second) s.lines.push_back(l);
        return s;
    }
};

inline i64 incidence_count(const IncidenceSystem& sys) {
    i64 n = 0;
    for (const ProjPoint& p : sys.points)
        for (const ProjPlane& pl : sys.planes)
            if (pl.contains(p)) ++n;
    return n;
}

/// Definitional rescan; kept independent of any precomputation.
inline i64 incidence_count_oracle(const std::vector<ProjPoint>& pts, const std::vector<ProjPlane>& pls) {
    i64 n = 0;
    for (const ProjPoint& p : pts) {
        for (const ProjPlane& pl : pls) {
            Scalar s = pl.c[0] * p.X[0] + pl.c[1] * p.X[1] + pl.c[2] * p.X[2] + pl.c[3] * p.X[3];
            if (s.is_zero()) ++n;
        }
    }
    return n;
}

/// Incidences excluding pairs joined through a forbidden line: (p, pi) is
/// dropped iff some l in L has p on l and l inside pi.
inline i64 restricted_incidence_count(const IncidenceSystem& sys) {
    // per-line memberships once, then subtract excluded incident pairs
    std::vector<std::vector<std::size_t>> pts_on(sys.lines.size());
    std::vector<std::vector<std::size_t>> planes_over(sys.lines.size());
    for (std::size_t li = 0; li < sys.lines.size(); ++li) {
        for (std::size_t i = 0; i < sys.points.size(); ++i)
            if (sys.lines[li].contains(sys.points[i])) pts_on[li].push_back(i);
        for (std::size_t j = 0; j < sys.planes.size(); ++j)
            if (sys.lines[li].contained_in(sys.planes[j])) planes_over[li].push_back(j);
    }
    std::unordered_set<u64> excluded;
    for (std::size_t li = 0; li < sys.lines.size(); ++li)
        for (std::size_t i : pts_on[li])
            for (std::size_t j : planes_over[li]) excluded.insert(i * (u64)sys.planes.size() + j);
    i64 n = 0;
    for (std::size_t i = 0; i < sys.points.size(); ++i)
        for (std::size_t j = 0; j < sys.planes.size(); ++j)
            if (sys.planes[j].contains(sys.points[i]) && !excluded.count(i * (u64)sys.planes.size() + j))
                ++n;
    return n;
}

/// Literal definition scan, O(|P| |Pi| |L|).
inline i64 restricted_incidence_count_oracle(const IncidenceSystem& sys) {
    i64 n = 0;
    for (const ProjPoint& p : sys.points)
        for (const ProjPlane& pl : sys.planes) {
            if (!pl.contains(p)) continue;
            bool dropped = false;
            for (const ProjLine& l : sys.lines)
                if (l.contains(p) && l.contained_in(pl)) {
                    dropped = true;
                    break;
                }
            if (!dropped) ++n;
        }
    return n;
}

/// Maximum number of collinear points, by spanned-line hashing.
inline i64 max_collinear(const std::vector<ProjPoint>& pts) {
    if (pts.size() <= 2) return (i64)pts.size();
    std::unordered_map<ProjLine, i64, ProjLineHash> pair_count;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            auto l = ProjLine::through(pts[i], pts[j]);
            if (l) ++pair_count[*l];
        }
    i64 best = 2;
    for (const auto& [l, pairs] : pair_count)
        best = std::max(best, (i64)((1 + isqrt_floor(1 + 8 * (i128)pairs)) / 2));
    return best;
}

/// Richness of lines outside the forbidden family: the larger of the maximum
/// number of points on such a line and the maximum number of planes through
/// such a line.
inline i64 max_rich_line_off(const IncidenceSystem& sys, const FieldCtx& ctx) {
    std::unordered_set<ProjLine, ProjLineHash> forbidden(sys.lines.begin(), sys.lines.end());
    i64 best = 0;
    {
        std::unordered_map<ProjLine, i64, ProjLineHash> pair_count;
        for (std::size_t i = 0; i < sys.points.size(); ++i)
            for (std::size_t j = i + 1; j < sys.points.size(); ++j) {
                auto l = ProjLine::through(sys.points[i], sys.points[j]);
                if (l && !forbidden.count(*l)) ++pair_count[*l];
            }
        for (const auto& [l, pairs] : pair_count)
            best = std::max(best, (i64)((1 + isqrt_floor(1 + 8 * (i128)pairs)) / 2));
    }
    {
        std::unordered_map<ProjLine, i64, ProjLineHash> pair_count;
        for (std::size_t i = 0; i < sys.planes.size(); ++i)
            for (std::size_t j = i + 1; j < sys.planes.size(); ++j) {
                auto l = plane_intersection(sys.planes[i], sys.planes[j], ctx);
                if (l && !forbidden.count(*l)) ++pair_count[*l];
            }
        for (const auto& [l, pairs] : pair_count)
            best = std::max(best, (i64)((1 + isqrt_floor(1 + 8 * (i128)pairs)) / 2));
    }
    return best;
}

/// Diagnostic ratios against the incidence bounds; exact rational brackets
/// around the irrational denominators, no fixed constant asserted.
struct RudnevReport {
    i64 incidences = 0;
    std::size_t n_points = 0, n_planes = 0;
    i64 k = 0;
    bool precondition_ok = true;  ///< |P| <= |Pi| (and |P| vs p^2 reported)
    Rat ratio_lower{0}, ratio_upper{0};

    std::optional<i64> restricted;  ///< set when forbidden lines are present
    i64 mu = 0;
    Rat restricted_lower{0}, restricted_upper{0};
};

inline RudnevReport rudnev_ratio(const IncidenceSystem& sys, const FieldCtx& ctx) {
    RudnevReport rep;
    rep.n_points = sys.points.size();
    rep.n_planes = sys.planes.size();
    rep.incidences = incidence_count(sys);
    rep.k = max_collinear(sys.points);
    rep.precondition_ok = rep.n_points <= rep.n_planes;
    if (rep.n_points > 0 && rep.n_planes > 0) {
        i128 low = ((i128)isqrt_floor((i128)rep.n_points) + rep.k) * (i128)rep.n_planes;
        i128 high = ((i128)isqrt_ceil((i128)rep.n_points) + rep.k) * (i128)rep.n_planes;
        rep.ratio_lower = Rat(rep.incidences, high);
        rep.ratio_upper = Rat(rep.incidences, low > 0 ? low : 1);
    }
    if (!sys.lines.empty() || rep.n_points == rep.n_planes) {
        rep.restricted = restricted_incidence_count(sys);
        rep.mu = max_rich_line_off(sys, ctx);
        i128 n = (i128)rep.n_points;
        if (n > 0) {
            i128 low = n * isqrt_floor(n) + rep.mu * n;
            i128 high = n * isqrt_ceil(n) + rep.mu * n;
            rep.restricted_lower = Rat(*rep.restricted, high > 0 ? high : 1);
            rep.restricted_upper = Rat(*rep.restricted, low > 0 ? low : 1);
        }
    }
    return rep;
}

}  // namespace ffplane
