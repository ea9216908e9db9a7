#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "ffplane/field.hpp"

namespace ffplane {

namespace detail {

/// Scale a homogeneous coordinate vector so its first nonzero entry is 1.
template <std::size_t N>
inline std::array<Scalar, N> canonical_homogeneous(std::array<Scalar, N> v) {
    for (std::size_t i = 0; i < N; ++i) {
        if (!v[i].is_zero()) {
            Scalar inv = v[i].inverse();
            for (std::size_t j = i; j < N; ++j) v[j] = v[j] * inv;
            return v;
        }
    }
    throw std::invalid_argument("zero homogeneous vector");
}

}  // namespace detail

/// Point of FP^3, canonical (first nonzero coordinate = 1).
struct ProjPoint {
    std::array<Scalar, 4> X;

    ProjPoint() = default;
    explicit ProjPoint(std::array<Scalar, 4> coords) : X(detail::canonical_homogeneous(coords)) {}

    bool operator==(const ProjPoint& o) const { return X == o.X; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

    /// On the removed locus X0^2 + X1^2 = 0 of the kinematic embedding.
    bool exceptional() const { return (X[0] * X[0] + X[1] * X[1]).is_zero(); }
};

/// Plane of FP^3 as a canonical homogeneous coefficient vector.
struct ProjPlane {
    std::array<Scalar, 4> c;

    ProjPlane() = default;
    explicit ProjPlane(std::array<Scalar, 4> coeffs) : c(detail::canonical_homogeneous(coeffs)) {}

    bool operator==(const ProjPlane& o) const { return c == o.c; }

    bool contains(const ProjPoint& p) const {
        Scalar s = c[0] * p.X[0];
        for (int i = 1; i < 4; ++i) s += c[i] * p.X[i];
        return s.is_zero();
    }
};

/// Line of FP^3 as the row-reduced echelon basis of its 2-dimensional span;
/// the RREF rows are a canonical key for hashing and equality.
struct ProjLine {
    std::array<std::array<Scalar, 4>, 2> rows;

    static std::optional<ProjLine> through(const ProjPoint& a, const ProjPoint& b) {
        if (a == b) return std::nullopt;
        ProjLine l;
        l.rows[0] = a.X;
        l.rows[1] = b.X;
        l.reduce();
        return l;
    }

    void reduce() {
        int pivot_row = 0;
        for (int col = 0; col < 4 && pivot_row < 2; ++col) {
            int sel = -1;
            for (int r = pivot_row; r < 2; ++r)
                if (!rows[r][col].is_zero()) {
                    sel = r;
                    break;
                }
            if (sel < 0) continue;
            std::swap(rows[pivot_row], rows[sel]);
            Scalar inv = rows[pivot_row][col].inverse();
            for (int j = col; j < 4; ++j) rows[pivot_row][j] = rows[pivot_row][j] * inv;
            for (int r = 0; r < 2; ++r) {
                if (r == pivot_row || rows[r][col].is_zero()) continue;
                Scalar f = rows[r][col];
                for (int j = col; j < 4; ++j) rows[r][j] = rows[r][j] - f * rows[pivot_row][j];
            }
            ++pivot_row;
        }
        if (pivot_row < 2) throw std::invalid_argument("projective line needs two independent points");
    }

    bool operator==(const ProjLine& o) const { return rows == o.rows; }

    bool contains(const ProjPoint& p) const {
        // p in span(rows) iff eliminating p against the RREF rows leaves zero
        std::array<Scalar, 4> v = p.X;
        for (int r = 0; r < 2; ++r) {
            int lead = -1;
            for (int j = 0; j < 4; ++j)
                if (!rows[r][j].is_zero()) {
                    lead = j;
                    break;
                }
            if (lead >= 0 && !v[lead].is_zero()) {
                Scalar f = v[lead];
                for (int j = 0; j < 4; ++j) v[j] = v[j] - f * rows[r][j];
            }
        }
        for (const Scalar& s : v)
            if (!s.is_zero()) return false;
        return true;
    }

    /// The line lies in the plane iff both basis rows satisfy its equation.
    bool contained_in(const ProjPlane& pl) const {
        for (const auto& row : rows) {
            Scalar s = pl.c[0] * row[0];
            for (int i = 1; i < 4; ++i) s += pl.c[i] * row[i];
            if (!s.is_zero()) return false;
        }
        return true;
    }
};

/// Invertible projective map of FP^3, stored as a 4x4 matrix up to scale.
struct ProjMap {
    std::array<std::array<Scalar, 4>, 4> m;

    static ProjMap identity(const FieldCtx& ctx) {
        ProjMap p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) p.m[i][j] = scalar(ctx, i == j ? 1 : 0);
        return p;
    }

    ProjPoint apply(const ProjPoint& x) const {
        std::array<Scalar, 4> y;
        for (int i = 0; i < 4; ++i) {
            Scalar s = m[i][0] * x.X[0];
            for (int j = 1; j < 4; ++j) s += m[i][j] * x.X[j];
            y[i] = s;
        }
        return ProjPoint(y);
    }

    ProjMap compose(const ProjMap& o) const {
        ProjMap r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Scalar s = m[i][0] * o.m[0][j];
                for (int k = 1; k < 4; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    /// Plane coefficients transform by the inverse transpose: the image plane
    /// of pi under this map has coefficients (M^{-1})^T pi.
    ProjPlane apply(const ProjPlane& pi) const {
        ProjMap inv = inverse();
        std::array<Scalar, 4> c;
        for (int i = 0; i < 4; ++i) {
            Scalar s = inv.m[0][i] * pi.c[0];
            for (int j = 1; j < 4; ++j) s += inv.m[j][i] * pi.c[j];
            c[i] = s;
        }
        return ProjPlane(c);
    }

    ProjMap inverse() const {
        // Gauss-Jordan on [m | I]
        const FieldCtx& ctx = m[0][0].ctx();
        std::array<std::array<Scalar, 8>, 4> a;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                a[i][j] = m[i][j];
                a[i][4 + j] = scalar(ctx, i == j ? 1 : 0);
            }
        }
        for (int col = 0; col < 4; ++col) {
            int sel = -1;
            for (int r = col; r < 4; ++r)
                if (!a[r][col].is_zero()) {
                    sel = r;
                    break;
                }
            if (sel < 0) throw std::domain_error("projective map is singular");
            std::swap(a[col], a[sel]);
            Scalar inv = a[col][col].inverse();
            for (int j = 0; j < 8; ++j) a[col][j] = a[col][j] * inv;
            for (int r = 0; r < 4; ++r) {
                if (r == col || a[r][col].is_zero()) continue;
                Scalar f = a[r][col];
                for (int j = 0; j < 8; ++j) a[r][j] = a[r][j] - f * a[col][j];
            }
        }
        ProjMap out;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out.m[i][j] = a[i][4 + j];
        return out;
    }
};

/// Rank over the field of a list of homogeneous 4-vectors.
inline int projective_rank(std::vector<std::array<Scalar, 4>> rows) {
    int rank = 0;
    std::size_t n = rows.size();
    for (int col = 0; col < 4 && rank < (int)n; ++col) {
        std::size_t sel = n;
        for (std::size_t r = rank; r < n; ++r)
            if (!rows[r][col].is_zero()) {
                sel = r;
                break;
            }
        if (sel == n) continue;
        std::swap(rows[rank], rows[sel]);
        Scalar inv = rows[rank][col].inverse();
        for (int j = col; j < 4; ++j) rows[rank][j] = rows[rank][j] * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if ((int)r == rank || rows[r][col].is_zero()) continue;
            Scalar f = rows[r][col];
            for (int j = col; j < 4; ++j) rows[r][j] = rows[r][j] - f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace ffplane
