#pragma once
// Exact segment-in-solid test over the brick partition and sampled coverage
// certification for open and closed reflex-edge guards.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

#include "orthoguard/decomp.hpp"
#include "orthoguard/geometry.hpp"
#include "orthoguard/guard.hpp"

namespace orthoguard {

using Int128 = __int128;

/// Point with a common positive denominator, kept reduced.
struct RationalPoint {
    std::array<std::int64_t, 3> num{0, 0, 0};
    std::int64_t den = 1;

    RationalPoint() = default;
    RationalPoint(const Point3& p) : num{p.x, p.y, p.z}, den(1) {}
    RationalPoint(std::array<std::int64_t, 3> n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den < 0) {
            den = -den;
            for (auto& v : num) v = -v;
        }
        std::int64_t g = den;
        for (auto v : num) g = std::gcd(g, v);
        if (g > 1) {
            den /= g;
            for (auto& v : num) v /= g;
        }
    }
    double operator[](int i) const { return static_cast<double>(num[i]) / static_cast<double>(den); }
    auto operator<=>(const RationalPoint&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const RationalPoint& p) {
    os << '(';
    for (int i = 0; i < 3; ++i) {
        if (i) os << ", ";
        os << p.num[i];
        if (p.den != 1) os << '/' << p.den;
    }
    return os << ')';
}

/// a + (i/n)(b - a) for integer endpoints.
inline RationalPoint lerp(const Point3& a, const Point3& b, std::int64_t i, std::int64_t n) {
    std::array<std::int64_t, 3> v{};
    for (int k = 0; k < 3; ++k) v[k] = a[k] * n + i * (b[k] - a[k]);
    return {v, n};
}

inline RationalPoint permute(const RationalPoint& p, const Rotation& rot, bool inverse) {
    RationalPoint q = p;
    for (int i = 0; i < 3; ++i) {
        if (inverse) q.num[rot.perm[i]] = p.num[i];
        else q.num[i] = p.num[rot.perm[i]];
    }
    return q;
}

namespace detail {

/// Nonnegative-denominator fraction over 128-bit integers.
struct Frac {
    Int128 n = 0;
    Int128 d = 1;
};
inline bool operator<(const Frac& a, const Frac& b) { return a.n * b.d < b.n * a.d; }
inline bool operator<=(const Frac& a, const Frac& b) { return a.n * b.d <= b.n * a.d; }

/// Segment a->b in scaled integer form: P(t) = (A + t(B - A)) / D.
struct ScaledSegment {
    std::array<Int128, 3> A{}, B{};
    Int128 D = 1;

    ScaledSegment(const RationalPoint& a, const RationalPoint& b) {
        D = Int128(a.den) * b.den;
        for (int i = 0; i < 3; ++i) {
            A[i] = Int128(a.num[i]) * b.den;
            B[i] = Int128(b.num[i]) * a.den;
        }
    }

    /// Parameter interval of the segment inside the closed box; false when
    /// empty or outside [0,1].
    bool clip(const Box& box, Frac& lo, Frac& hi) const {
        lo = {0, 1};
        hi = {1, 1};
        for (int i = 0; i < 3; ++i) {
            const Int128 l = Int128(box.lo[i]) * D - A[i];
            const Int128 h = Int128(box.hi[i]) * D - A[i];
            const Int128 dir = B[i] - A[i];
            if (dir == 0) {
                if (l > 0 || h < 0) return false;
                continue;
            }
            Frac enter{l, dir}, leave{h, dir};
            if (dir < 0) {
                enter = {-h, -dir};
                leave = {-l, -dir};
            }
            if (lo < enter) lo = enter;
            if (leave < hi) hi = leave;
            if (hi < lo) return false;
        }
        return true;
    }
};

}  // namespace detail

/// True iff every point of [a,b] lies in the union of the closed bricks.
/// Clips the segment to each brick and checks that the parameter intervals
/// cover [0,1].
inline bool segment_inside(const RationalPoint& a, const RationalPoint& b, const std::vector<Brick>& bricks) {
    const detail::ScaledSegment s(a, b);
    std::vector<std::pair<detail::Frac, detail::Frac>> iv;
    for (const Brick& br : bricks) {
        detail::Frac lo, hi;
        if (s.clip(br.box, lo, hi)) iv.push_back({lo, hi});
    }
    std::sort(iv.begin(), iv.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    detail::Frac reach{0, 1};
    bool started = false;
    for (const auto& [lo, hi] : iv) {
        if (reach < lo) return false;
        if (!started || reach < hi) reach = hi;
        started = true;
    }
    return started && detail::Frac{1, 1} <= reach;
}

/// Bricks bucketed by z-slab so that segment tests only touch bricks near
/// the segment. Same answers as segment_inside over the full list.
class BrickIndex {
public:
    explicit BrickIndex(std::vector<Brick> bricks) : bricks_(std::move(bricks)) {
        for (const Brick& b : bricks_) {
            levels_.push_back(b.box.lo.z);
            levels_.push_back(b.box.hi.z);
        }
        std::sort(levels_.begin(), levels_.end());
        levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
        slabs_.resize(levels_.empty() ? 0 : levels_.size() - 1);
        for (std::size_t i = 0; i < bricks_.size(); ++i) {
            const auto lo = std::lower_bound(levels_.begin(), levels_.end(), bricks_[i].box.lo.z) - levels_.begin();
            const auto hi = std::lower_bound(levels_.begin(), levels_.end(), bricks_[i].box.hi.z) - levels_.begin();
            for (auto k = lo; k < hi; ++k) slabs_[k].push_back(i);
        }
    }

    const std::vector<Brick>& bricks() const { return bricks_; }

    /// Greedy walk: from the current parameter, jump to the furthest exit
    /// among bricks containing the current point.
    bool segment_inside(const RationalPoint& a, const RationalPoint& b) const {
        const detail::ScaledSegment s(a, b);
        detail::Frac t{0, 1};
        const detail::Frac one{1, 1};
        for (;;) {
            detail::Frac best = t;
            bool any = false;
            for_each_candidate(s, t, [&](std::size_t i) {
                detail::Frac lo, hi;
                if (!s.clip(bricks_[i].box, lo, hi)) return;
                if (t < lo || hi < t) return;
                any = true;
                if (best < hi) best = hi;
            });
            if (!any) return false;
            if (one <= best) return true;
            if (best <= t) return false;
            t = best;
        }
    }

private:
    template <class F>
    void for_each_candidate(const detail::ScaledSegment& s, const detail::Frac& t, F&& f) const {
        // z of P(t) as zn / zd
        const Int128 zn = s.A[2] * t.d + t.n * (s.B[2] - s.A[2]);
        const Int128 zd = s.D * t.d;
        auto count = [&](bool inclusive) {  // levels below z (or at z when inclusive)
            std::size_t lo = 0, hi = levels_.size();
            while (lo < hi) {
                const std::size_t mid = (lo + hi) / 2;
                const Int128 l = Int128(levels_[mid]) * zd;
                if (inclusive ? l <= zn : l < zn) lo = mid + 1;
                else hi = mid;
            }
            return lo;
        };
        // slab j spans [levels_[j], levels_[j+1]]
        const std::size_t lt = count(false), le = count(true);
        if (le == 0 || slabs_.empty()) return;
        const std::size_t first = lt == 0 ? 0 : lt - 1;
        const std::size_t last = std::min(le - 1, slabs_.size() - 1);
        for (std::size_t j = first; j <= last; ++j)
            for (std::size_t i : slabs_[j]) f(i);
    }

    std::vector<Brick> bricks_;
    std::vector<Coord> levels_;
    std::vector<std::vector<std::size_t>> slabs_;
};

// ---------------------------------------------------------------------------
// Sampling

/// Edge sample parameters: open guards skip the endpoints.
inline std::vector<RationalPoint> edge_samples(const Point3& a, const Point3& b, GuardMode mode, int k) {
    std::vector<RationalPoint> out;
    if (mode == GuardMode::Open) {
        for (int i = 1; i <= k; ++i) out.push_back(lerp(a, b, i, k + 1));
    } else {
        for (int i = 0; i < k; ++i) out.push_back(lerp(a, b, i, k - 1));
    }
    return out;
}

/// Per brick: a d*d*d lattice at half-step offsets plus the centre.
inline std::vector<RationalPoint> sample_points(const std::vector<Brick>& bricks, int d) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "sample density must be at least 1");
    std::vector<RationalPoint> out;
    for (const Brick& b : bricks) {
        std::vector<RationalPoint> pts;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    const std::array<int, 3> c{i, j, k};
                    std::array<std::int64_t, 3> n{};
                    for (int ax = 0; ax < 3; ++ax) n[ax] = 2 * d * b.box.lo[ax] + (2 * c[ax] + 1) * b.box.extent(axis_from_index(ax));
                    pts.emplace_back(n, 2 * d);
                }
        std::array<std::int64_t, 3> n{};
        for (int ax = 0; ax < 3; ++ax) n[ax] = b.box.lo[ax] + b.box.hi[ax];
        const RationalPoint centre(n, 2);
        if (std::find(pts.begin(), pts.end(), centre) == pts.end()) pts.push_back(centre);
        out.insert(out.end(), pts.begin(), pts.end());
    }
    return out;
}

inline bool guard_sees_point(const BrickIndex& index, const Point3& a, const Point3& b, const RationalPoint& p, GuardMode mode, int k) {
    for (const auto& q : edge_samples(a, b, mode, k))
        if (index.segment_inside(q, p)) return true;
    return false;
}

inline bool guard_sees_point(const std::vector<Brick>& bricks, const Point3& a, const Point3& b, const RationalPoint& p, GuardMode mode, int k) {
    for (const auto& q : edge_samples(a, b, mode, k))
        if (segment_inside(q, p, bricks)) return true;
    return false;
}

/// Euclidean distance from p to segment [a,b] (used for ordering only).
inline double distance_to_segment(const RationalPoint& p, const Point3& a, const Point3& b) {
    double ab[3], ap[3], len2 = 0, dotp = 0;
    for (int i = 0; i < 3; ++i) {
        ab[i] = static_cast<double>(b[i] - a[i]);
        ap[i] = p[i] - static_cast<double>(a[i]);
        len2 += ab[i] * ab[i];
        dotp += ab[i] * ap[i];
    }
    const double t = len2 > 0 ? std::clamp(dotp / len2, 0.0, 1.0) : 0.0;
    double d2 = 0;
    for (int i = 0; i < 3; ++i) d2 += (ap[i] - t * ab[i]) * (ap[i] - t * ab[i]);
    return std::sqrt(d2);
}

struct CoverageFailure {
    RationalPoint point;
    double nearest_guard_distance = 0;
};

struct CoverageReport {
    std::size_t samples = 0;
    std::size_t covered = 0;
    std::vector<CoverageFailure> failures;
    GuardMode mode = GuardMode::Open;

    bool pass() const { return failures.empty(); }
};

struct CoverageOptions {
    int density = 3;
    int edge_samples = 16;
};

/// Checks sampled interior points against guard edges given in the frame of
/// the bricks. Guards are tried nearest first.
inline CoverageReport coverage_check(const BrickIndex& index, const std::vector<std::pair<Point3, Point3>>& guards, GuardMode mode,
                                     bool convex, CoverageOptions opt = {}) {
    if (opt.edge_samples < (mode == GuardMode::Open ? 1 : 2))
        throw Error(ErrorCode::InvalidArgument, "too few edge samples");
    CoverageReport rep;
    rep.mode = mode;
    const auto pts = sample_points(index.bricks(), opt.density);
    rep.samples = pts.size();
    if (convex && guards.empty()) {
        rep.covered = rep.samples;
        return rep;
    }
    std::vector<std::vector<RationalPoint>> samples;
    for (const auto& [a, b] : guards) samples.push_back(edge_samples(a, b, mode, opt.edge_samples));
    std::vector<std::pair<double, std::size_t>> order(guards.size());
    for (const auto& p : pts) {
        for (std::size_t g = 0; g < guards.size(); ++g) order[g] = {distance_to_segment(p, guards[g].first, guards[g].second), g};
        std::sort(order.begin(), order.end());
        bool seen = false;
        for (const auto& [dist, g] : order) {
            for (const auto& q : samples[g])
                if (index.segment_inside(q, p)) {
                    seen = true;
                    break;
                }
            if (seen) break;
        }
        if (seen) ++rep.covered;
        else rep.failures.push_back({p, order.empty() ? INFINITY : order.front().first});
    }
    return rep;
}

/// Coverage of a guard set produced for (or read against) the analysed
/// polyhedron. Guards and reported points are in the input frame.
inline CoverageReport coverage_check(const Analysis& a, const std::vector<GuardEdge>& guards, GuardMode mode, CoverageOptions opt = {}) {
    const BrickIndex index(a.decomp.bricks);
    std::vector<std::pair<Point3, Point3>> g;
    for (const auto& e : guards) g.push_back({a.rotation.apply(e.a), a.rotation.apply(e.b)});
    auto rep = coverage_check(index, g, mode, a.r() == 0, opt);
    for (auto& f : rep.failures) f.point = permute(f.point, a.rotation, true);
    return rep;
}

inline CoverageReport coverage_check(const Analysis& a, const GuardSet& gs, CoverageOptions opt = {}) {
    return coverage_check(a, gs.guards, gs.mode, opt);
}

}  // namespace orthoguard
