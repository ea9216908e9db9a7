#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffplane/stats.hpp"

namespace ffplane {

/// Deterministic seeded point-set generators. Identical spec and seed produce
/// identical sets; all randomness flows through one SplitMix64 stream.
struct GeneratorSpec {
    enum class Kind {
        Grid,
        UniformRandom,
        OnLine,
        OnCircle,
        IsotropicLine,
        ParallelRichLines,
        ConcentricCircles,
        Union
    };

    Kind kind = Kind::UniformRandom;
    u64 seed = 0;
    u64 size = 0;        ///< sample size (per curve for multi-curve kinds)
    u64 width = 0, height = 0;  ///< grid shape
    i64 x0 = 0, y0 = 0;  ///< anchor: grid corner, line point, circle centre
    i64 dx = 1, dy = 0;  ///< line direction
    u64 r2 = 1;          ///< circle squared radius
    u64 lines = 0;       ///< parallel line count
    std::vector<u64> radii;           ///< concentric circle radii
    std::vector<GeneratorSpec> parts;  ///< union members

    std::string describe() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::Grid: os << "grid " << width << "x" << height << " at (" << x0 << "," << y0 << ")"; break;
            case Kind::UniformRandom: os << "uniform n=" << size << " seed=" << seed; break;
            case Kind::OnLine: os << "line n=" << size << " dir=(" << dx << "," << dy << ") seed=" << seed; break;
            case Kind::OnCircle: os << "circle n=" << size << " r2=" << r2 << " seed=" << seed; break;
            case Kind::IsotropicLine: os << "isotropic-line n=" << size << " seed=" << seed; break;
            case Kind::ParallelRichLines:
                os << "parallel-lines " << lines << "x" << size << " seed=" << seed;
                break;
            case Kind::ConcentricCircles:
                os << "concentric-circles " << radii.size() << "x" << size << " seed=" << seed;
                break;
            case Kind::Union: os << "union of " << parts.size(); break;
        }
        return os.str();
    }
};

namespace detail {

/// First k values of a seeded permutation of [0, n), by sparse Fisher-Yates.
inline std::vector<u64> sample_without_replacement(u64 n, u64 k, SplitMix64& rng) {
    if (k > n) throw std::invalid_argument("sample larger than population");
    std::unordered_map<u64, u64> swapped;
    auto at = [&](u64 i) {
        auto it = swapped.find(i);
        return it == swapped.end() ? i : it->second;
    };
    std::vector<u64> out;
    out.reserve(k);
    for (u64 i = 0; i < k; ++i) {
        u64 j = i + rng.below(n - i);
        u64 vi = at(i), vj = at(j);
        swapped[j] = vi;
        out.push_back(vj);
    }
    return out;
}

}  // namespace detail

inline PointSet generate(const FieldCtx& ctx, const GeneratorSpec& spec) {
    const u64 p = ctx.p();
    SplitMix64 rng(spec.seed);
    std::vector<PlanePoint> pts;

    switch (spec.kind) {
        case GeneratorSpec::Kind::Grid: {
            if (spec.width > p || spec.height > p) throw std::invalid_argument("grid exceeds field size");
            for (u64 i = 0; i < spec.width; ++i)
                for (u64 j = 0; j < spec.height; ++j)
                    pts.push_back(point(ctx, spec.x0 + (i64)i, spec.y0 + (i64)j));
            break;
        }
        case GeneratorSpec::Kind::UniformRandom: {
            if (spec.size > p * p) throw std::invalid_argument("sample exceeds plane size");
            for (u64 cell : detail::sample_without_replacement(p * p, spec.size, rng))
                pts.push_back(point(ctx, (i64)(cell % p), (i64)(cell / p)));
            break;
        }
        case GeneratorSpec::Kind::OnLine: {
            if (spec.size > p) throw std::invalid_argument("line holds at most p points");
            if (spec.dx % (i64)p == 0 && spec.dy % (i64)p == 0)
                throw std::invalid_argument("line direction must be nonzero");
            for (u64 t : detail::sample_without_replacement(p, spec.size, rng))
                pts.push_back(point(ctx, spec.x0 + (i64)t * spec.dx, spec.y0 + (i64)t * spec.dy));
            break;
        }
        case GeneratorSpec::Kind::OnCircle: {
            PlanePoint c = point(ctx, spec.x0, spec.y0);
            std::vector<PlanePoint> on;
            for (u64 x = 0; x < p; ++x)
                for (u64 y = 0; y < p; ++y) {
                    PlanePoint q = point(ctx, (i64)x, (i64)y);
                    if (distance(q, c).a0() == spec.r2 % p) on.push_back(q);
                }
            if (spec.size > on.size()) throw std::invalid_argument("circle capacity exceeded");
            for (u64 i : detail::sample_without_replacement(on.size(), spec.size, rng)) pts.push_back(on[i]);
            break;
        }
        case GeneratorSpec::Kind::IsotropicLine: {
            if (ctx.chi(p - 1) != 1) throw std::invalid_argument("no isotropic directions: -1 is a non-square");
            u64 im = *ctx.sqrt_base(p - 1);
            if (spec.size > p) throw std::invalid_argument("line holds at most p points");
            for (u64 t : detail::sample_without_replacement(p, spec.size, rng))
                pts.push_back(point(ctx, spec.x0 + (i64)t, spec.y0 + (i64)(t * im % p)));
            break;
        }
        case GeneratorSpec::Kind::ParallelRichLines: {
            if (spec.lines > p || spec.size > p) throw std::invalid_argument("capacity exceeded");
            for (u64 k = 0; k < spec.lines; ++k)
                for (u64 x : detail::sample_without_replacement(p, spec.size, rng))
                    pts.push_back(point(ctx, (i64)x, spec.y0 + (i64)k));
            break;
        }
        case GeneratorSpec::Kind::ConcentricCircles: {
            for (u64 r2 : spec.radii) {
                GeneratorSpec sub;
                sub.kind = GeneratorSpec::Kind::OnCircle;
                sub.seed = rng.next();
                sub.size = spec.size;
                sub.x0 = spec.x0;
                sub.y0 = spec.y0;
                sub.r2 = r2;
                for (const PlanePoint& q : generate(ctx, sub).points) pts.push_back(q);
            }
            break;
        }
        case GeneratorSpec::Kind::Union: {
            for (const GeneratorSpec& part : spec.parts)
                for (const PlanePoint& q : generate(ctx, part).points) pts.push_back(q);
            break;
        }
    }
    return PointSet::of(ctx, std::move(pts), spec.describe());
}

/// CSV format: first line "p=<modulus>", then one "x,y" residue pair per line.
inline void write_csv(std::ostream& os, const PointSet& A) {
    os << "p=" << A.ctx->p() << "\n";
    for (const PlanePoint& q : A.points) os << q.x.a0() << "," << q.y.a0() << "\n";
}

inline void write_csv_file(const std::string& path, const PointSet& A) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_csv(f, A);
}

struct CsvPointSet {
    u64 p;
    std::vector<std::pair<u64, u64>> coords;
};

inline CsvPointSet read_csv(std::istream& is) {
    CsvPointSet out;
    std::string line;
    if (!std::getline(is, line) || line.rfind("p=", 0) != 0)
        throw std::runtime_error("point CSV must start with p=<modulus>");
    out.p = std::stoull(line.substr(2));
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("bad CSV row: " + line);
        out.coords.push_back({std::stoull(line.substr(0, comma)), std::stoull(line.substr(comma + 1))});
    }
    return out;
}

/// Owns the field context the loaded points reference.
struct LoadedPointSet {
    std::unique_ptr<FieldCtx> ctx;
    PointSet set;
};

inline LoadedPointSet read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    CsvPointSet raw = read_csv(f);
    LoadedPointSet out;
    out.ctx = std::make_unique<FieldCtx>(raw.p);
    std::vector<PlanePoint> pts;
    for (auto [x, y] : raw.coords) pts.push_back(point(*out.ctx, (i64)x, (i64)y));
    out.set = PointSet::of(*out.ctx, std::move(pts), "csv:" + path);
    return out;
}

}  // namespace ffplane
