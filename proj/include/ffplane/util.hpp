#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ffplane {

using i128 = __int128;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 x = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    std::string s;
    while (x > 0) {
        s.push_back(char('0' + int(x % 10)));
        x /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

/// Largest n with n*n <= v.
inline u64 isqrt_floor(i128 v) {
    if (v < 0) throw std::domain_error("isqrt of negative value");
    u64 r = (u64)std::sqrt((double)v);
    while (r > 0 && (i128)r * r > v) --r;
    while ((i128)(r + 1) * (r + 1) <= v) ++r;
    return r;
}

inline u64 isqrt_ceil(i128 v) {
    u64 f = isqrt_floor(v);
    return ((i128)f * f == v) ? f : f + 1;
}

/// Largest n with n*n*n <= v.
inline u64 icbrt_floor(i128 v) {
    if (v < 0) throw std::domain_error("icbrt of negative value");
    u64 r = (u64)std::cbrt((double)v);
    while (r > 0 && (i128)r * r * r > v) --r;
    while ((i128)(r + 1) * (r + 1) * (r + 1) <= v) ++r;
    return r;
}

inline void hash_mix(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

/// Exact rational with 128-bit numerator/denominator, reduced, den > 0.
struct Rat {
    i128 num = 0;
    i128 den = 1;

    Rat() = default;
    Rat(i128 n, i128 d = 1) : num(n), den(d) { reduce(); }

    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void reduce() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
    Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
    Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
    Rat operator/(const Rat& o) const {
        if (o.num == 0) throw std::domain_error("rational division by zero");
        return Rat(num * o.den, den * o.num);
    }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator<=(const Rat& o) const { return num * o.den <= o.num * den; }
    bool operator<(const Rat& o) const { return num * o.den < o.num * den; }

    double approx() const { return (double)num / (double)den; }
    std::string str() const { return to_string_i128(num) + "/" + to_string_i128(den); }
};

/// SplitMix64: the project-wide deterministic PRNG stream.
/// next() advances the state by the golden-gamma increment and mixes;
/// identical seeds give identical streams on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(u64 seed) : state_(seed) {}

    u64 next() {
        u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) by rejection; bound > 0.
    u64 below(u64 bound) {
        u64 threshold = (0 - bound) % bound;
        for (;;) {
            u64 r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    u64 state_;
};

}  // namespace ffplane
