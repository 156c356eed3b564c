#pragma once
// Brute-force voxel oracles shared by the tests. They only use integer
// boxes and their own rational arithmetic, nothing from the solver beyond
// the Box/Point3 value types.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "orthoguard/geometry.hpp"

namespace oracle {

using orthoguard::Box;
using orthoguard::Coord;
using orthoguard::Point3;

/// Unit-cell occupancy of a union of integer boxes.
class Voxels {
public:
    explicit Voxels(const std::vector<Box>& boxes) {
        lo_ = boxes.front().lo;
        hi_ = boxes.front().hi;
        for (const Box& b : boxes)
            for (int i = 0; i < 3; ++i) {
                lo_[i] = std::min(lo_[i], b.lo[i]);
                hi_[i] = std::max(hi_[i], b.hi[i]);
            }
        for (const Box& b : boxes)
            for (Coord x = b.lo.x; x < b.hi.x; ++x)
                for (Coord y = b.lo.y; y < b.hi.y; ++y)
                    for (Coord z = b.lo.z; z < b.hi.z; ++z) cells_.insert({x, y, z});
    }

    bool occupied(Coord x, Coord y, Coord z) const { return cells_.count({x, y, z}) != 0; }
    std::size_t size() const { return cells_.size(); }
    const Point3& lo() const { return lo_; }
    const Point3& hi() const { return hi_; }

private:
    std::set<std::tuple<Coord, Coord, Coord>> cells_;
    Point3 lo_, hi_;
};

struct EdgeCount {
    int m = 0;
    int r = 0;
};

/// Counts maximal edges of the voxel union. A unit lattice segment is an
/// edge when exactly one (convex) or three (reflex) of its four surrounding
/// cells are filled; consecutive unit segments with the same surrounding
/// pattern form one edge.
inline EdgeCount count_edges(const Voxels& v) {
    EdgeCount out;
    for (int a = 0; a < 3; ++a) {
        const int u = (a + 1) % 3, w = (a + 2) % 3;
        for (Coord cu = v.lo()[u]; cu <= v.hi()[u]; ++cu)
            for (Coord cw = v.lo()[w]; cw <= v.hi()[w]; ++cw) {
                int prev = -1;
                for (Coord ca = v.lo()[a]; ca < v.hi()[a]; ++ca) {
                    int pattern = 0, filled = 0;
                    for (int q = 0; q < 4; ++q) {
                        Coord c[3];
                        c[a] = ca;
                        c[u] = cu - 1 + (q & 1);
                        c[w] = cw - 1 + (q >> 1);
                        if (v.occupied(c[0], c[1], c[2])) {
                            pattern |= 1 << q;
                            ++filled;
                        }
                    }
                    const bool edge = filled == 1 || filled == 3;
                    if (edge && pattern != prev) {
                        ++out.m;
                        out.r += filled == 3;
                    }
                    prev = edge ? pattern : -1;
                }
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rational visibility by walking the unit grid.

struct Q {
    __int128 n = 0, d = 1;
    Q() = default;
    Q(__int128 num, __int128 den = 1) : n(num), d(den) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
    }
    friend Q operator+(Q a, Q b) { return {a.n * b.d + b.n * a.d, a.d * b.d}; }
    friend Q operator-(Q a, Q b) { return {a.n * b.d - b.n * a.d, a.d * b.d}; }
    friend Q operator*(Q a, Q b) { return {a.n * b.n, a.d * b.d}; }
    friend Q operator/(Q a, Q b) { return {a.n * b.d, a.d * b.n}; }
    friend bool operator<(Q a, Q b) { return a.n * b.d < b.n * a.d; }
    friend bool operator==(Q a, Q b) { return a.n == b.n && a.d == b.d; }
    bool integral() const { return d == 1; }
    Coord floor() const {
        __int128 f = n / d;
        if (n % d != 0 && n < 0) --f;
        return static_cast<Coord>(f);
    }
};

using QPoint = std::array<Q, 3>;

/// Closed voxel union membership.
inline bool point_inside(const Voxels& v, const QPoint& p) {
    std::array<std::vector<Coord>, 3> cand;
    for (int i = 0; i < 3; ++i) {
        const Coord f = p[i].floor();
        cand[i].push_back(f);
        if (p[i].integral()) cand[i].push_back(f - 1);
    }
    for (Coord x : cand[0])
        for (Coord y : cand[1])
            for (Coord z : cand[2])
                if (v.occupied(x, y, z)) return true;
    return false;
}

inline QPoint along(const QPoint& a, const QPoint& b, Q t) {
    QPoint p;
    for (int i = 0; i < 3; ++i) p[i] = a[i] + t * (b[i] - a[i]);
    return p;
}

/// Splits [a,b] at every crossing of an integer plane; each open piece lies
/// in one fixed set of closed cells, so its midpoint decides it.
inline bool segment_inside(const Voxels& v, const QPoint& a, const QPoint& b) {
    std::vector<Q> ts{Q(0), Q(1)};
    for (int i = 0; i < 3; ++i) {
        if (a[i] == b[i]) continue;
        Q lo = a[i] < b[i] ? a[i] : b[i], hi = a[i] < b[i] ? b[i] : a[i];
        for (Coord k = lo.floor(); k <= hi.floor() + 1; ++k) {
            const Q t = (Q(k) - a[i]) / (b[i] - a[i]);
            if (Q(0) < t && t < Q(1)) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (const Q& t : ts)
        if (!point_inside(v, along(a, b, t))) return false;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
        if (!point_inside(v, along(a, b, (ts[k] + ts[k + 1]) / Q(2)))) return false;
    return true;
}

}  // namespace oracle
