#pragma once

#include <cstddef>

#include "ffplane/plane.hpp"
#include "ffplane/proj.hpp"

// Hash functors for the canonical geometric value types. All keyed objects
// are canonicalized on construction, so structural hashing is sound.

namespace ffplane {

struct ScalarHash {
    std::size_t operator()(const Scalar& s) const {
        std::size_t h = std::hash<u64>{}(s.a0());
        hash_mix(h, std::hash<u64>{}(s.a1()));
        return h;
    }
};

struct PointHash {
    std::size_t operator()(const PlanePoint& p) const {
        std::size_t h = ScalarHash{}(p.x);
        hash_mix(h, ScalarHash{}(p.y));
        return h;
    }
};

struct SegmentHash {
    std::size_t operator()(const Segment& s) const {
        std::size_t h = PointHash{}(s.a);
        hash_mix(h, PointHash{}(s.b));
        return h;
    }
};

struct LineHash {
    std::size_t operator()(const Line& l) const {
        std::size_t h = ScalarHash{}(l.alpha);
        hash_mix(h, ScalarHash{}(l.beta));
        hash_mix(h, ScalarHash{}(l.gamma));
        return h;
    }
};

struct CircleHash {
    std::size_t operator()(const Circle& c) const {
        std::size_t h = PointHash{}(c.center);
        hash_mix(h, ScalarHash{}(c.r2));
        return h;
    }
};

struct CurveHash {
    std::size_t operator()(const Curve& c) const {
        std::size_t h = c.kind == Curve::Kind::Line ? LineHash{}(c.line) : CircleHash{}(c.circle);
        hash_mix(h, (std::size_t)c.kind);
        return h;
    }
};

struct ProjPointHash {
    std::size_t operator()(const ProjPoint& p) const {
        std::size_t h = 0;
        for (const Scalar& s : p.X) hash_mix(h, ScalarHash{}(s));
        return h;
    }
};

struct ProjPlaneHash {
    std::size_t operator()(const ProjPlane& p) const {
        std::size_t h = 1;
        for (const Scalar& s : p.c) hash_mix(h, ScalarHash{}(s));
        return h;
    }
};

struct ProjLineHash {
    std::size_t operator()(const ProjLine& l) const {
        std::size_t h = 2;
        for (const auto& row : l.rows)
            for (const Scalar& s : row) hash_mix(h, ScalarHash{}(s));
        return h;
    }
};

}  // namespace ffplane
