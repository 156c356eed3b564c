#pragma once
// Deterministic and seeded generators for the structural families the guard
// pipeline reasons about, plus the box-union to boundary conversion they all
// share.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orthoguard/geometry.hpp"
#include "orthoguard/model.hpp"

namespace orthoguard {

/// Seeded stream: std::mt19937_64 (whose output sequence is fixed by the
/// C++ standard) with bounded draws done by rejection, so the same seed
/// yields the same shapes with every conforming standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform integer in [lo, hi].
    Coord uniform(Coord lo, Coord hi) {
        if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty range");
        const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<Coord>(next());
        const std::uint64_t reject_below = (0 - range) % range;  // 2^64 mod range
        std::uint64_t x = next();
        while (x < reject_below) x = next();
        return lo + static_cast<Coord>(x % range);
    }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<Coord>(n) - 1)); }
    bool chance(int numerator, int denominator) { return uniform(0, denominator - 1) < numerator; }

private:
    std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Union of boxes -> boundary representation

namespace detail {

struct PlaneRects {
    std::vector<Rect> hi;  // faces of boxes whose upper side lies on the plane
    std::vector<Rect> lo;
};

/// Traces the boundary loops of one plane region with the region on the
/// left. Returns loops of grid points grouped per 4-connected component,
/// outer loop first.
inline std::vector<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>>
trace_region(const std::vector<std::vector<char>>& in, std::size_t nu, std::size_t nv) {
    using GP = std::pair<std::size_t, std::size_t>;
    auto inside = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
        return i >= 0 && j >= 0 && static_cast<std::size_t>(i) < nu && static_cast<std::size_t>(j) < nv && in[i][j];
    };
    // Directions: 0 +u, 1 +v, 2 -u, 3 -v (counterclockwise order).
    static constexpr int du[4] = {1, 0, -1, 0};
    static constexpr int dv[4] = {0, 1, 0, -1};
    std::map<GP, std::vector<std::pair<int, bool>>> out;  // start -> (dir, used)
    std::vector<std::vector<std::size_t>> comp(nu, std::vector<std::size_t>(nv, npos));
    std::size_t ncomp = 0;
    for (std::size_t i = 0; i < nu; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            if (!in[i][j]) continue;
            const auto si = static_cast<std::ptrdiff_t>(i), sj = static_cast<std::ptrdiff_t>(j);
            if (!inside(si, sj - 1)) out[{i, j}].push_back({0, false});
            if (!inside(si + 1, sj)) out[{i + 1, j}].push_back({1, false});
            if (!inside(si, sj + 1)) out[{i + 1, j + 1}].push_back({2, false});
            if (!inside(si - 1, sj)) out[{i, j + 1}].push_back({3, false});
            if (comp[i][j] != npos) continue;
            std::vector<GP> stack{{i, j}};
            comp[i][j] = ncomp;
            while (!stack.empty()) {
                auto [a, b] = stack.back();
                stack.pop_back();
                for (int d = 0; d < 4; ++d) {
                    const std::ptrdiff_t x = static_cast<std::ptrdiff_t>(a) + du[d], y = static_cast<std::ptrdiff_t>(b) + dv[d];
                    if (inside(x, y) && comp[x][y] == npos) {
                        comp[x][y] = ncomp;
                        stack.push_back({static_cast<std::size_t>(x), static_cast<std::size_t>(y)});
                    }
                }
            }
            ++ncomp;
        }

    std::vector<std::vector<std::vector<GP>>> faces(ncomp);
    for (auto& [start, list] : out) {
        for (auto& first : list) {
            if (first.second) continue;
            std::vector<GP> loop;
            std::vector<int> dirs;
            GP at = start;
            int dir = first.first;
            first.second = true;
            for (;;) {
                loop.push_back(at);
                dirs.push_back(dir);
                at = {at.first + du[dir], at.second + dv[dir]};
                if (at == start) {
                    // Closed only if the start edge is the next one taken.
                    bool pending = false;
                    for (auto& e : out[at])
                        if (!e.second) pending = true;
                    if (!pending) break;
                }
                auto& cand = out[at];
                // Leftmost turn keeps the loop on one cell component at pinches.
                int best = -1;
                for (int turn : {1, 0, 3}) {
                    const int want = (dir + turn) % 4;
                    for (std::size_t c = 0; c < cand.size(); ++c)
                        if (!cand[c].second && cand[c].first == want) {
                            best = static_cast<int>(c);
                            break;
                        }
                    if (best >= 0) break;
                }
                if (best < 0) break;
                cand[best].second = true;
                dir = cand[best].first;
                if (at == start && dir == first.first) break;
            }
            // Drop straight-through vertices.
            std::vector<GP> simple;
            for (std::size_t k = 0; k < loop.size(); ++k)
                if (dirs[k] != dirs[(k + loop.size() - 1) % loop.size()]) simple.push_back(loop[k]);
            const GP a = loop[0];
            const int d0 = dirs[0];
            std::size_t ci = 0, cj = 0;
            switch (d0) {
            case 0: ci = a.first, cj = a.second; break;
            case 1: ci = a.first - 1, cj = a.second; break;
            case 2: ci = a.first - 1, cj = a.second - 1; break;
            default: ci = a.first, cj = a.second - 1; break;
            }
            // Signed area decides outer (positive) versus hole.
            long double area = 0;
            for (std::size_t k = 0; k < simple.size(); ++k) {
                const auto& p = simple[k];
                const auto& q = simple[(k + 1) % simple.size()];
                area += static_cast<long double>(p.first) * q.second - static_cast<long double>(q.first) * p.second;
            }
            auto& face = faces[comp[ci][cj]];
            if (area > 0) face.insert(face.begin(), std::move(simple));
            else face.push_back(std::move(simple));
        }
    }
    return faces;
}

}  // namespace detail

/// Boundary of the union of interior-disjoint boxes. Coplanar neighbouring
/// box faces are fused into maximal faces; collinear loop vertices dropped.
inline Polyhedron boxes_to_polyhedron(const std::vector<Box>& boxes) {
    for (const Box& b : boxes)
        if (!b.valid()) throw Error(ErrorCode::InvalidArgument, "degenerate box");
    std::vector<std::vector<std::vector<Point3>>> faces;
    for (Axis n : kAxes) {
        auto [u, v] = plane_uv(n);
        std::map<Coord, detail::PlaneRects> planes;
        for (const Box& b : boxes) {
            Rect r{b.lo[u], b.lo[v], b.hi[u], b.hi[v]};
            planes[b.hi[n]].hi.push_back(r);
            planes[b.lo[n]].lo.push_back(r);
        }
        for (auto& [c, pr] : planes) {
            std::vector<Coord> us, vs;
            for (const auto* list : {&pr.hi, &pr.lo})
                for (const Rect& r : *list) {
                    us.insert(us.end(), {r.x0, r.x1});
                    vs.insert(vs.end(), {r.y0, r.y1});
                }
            std::sort(us.begin(), us.end());
            us.erase(std::unique(us.begin(), us.end()), us.end());
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            const std::size_t nu = us.size() - 1, nv = vs.size() - 1;
            std::vector<std::vector<char>> hi(nu, std::vector<char>(nv, 0)), lo = hi;
            auto paint = [&](const std::vector<Rect>& rects, std::vector<std::vector<char>>& grid) {
                for (const Rect& r : rects) {
                    auto i0 = std::lower_bound(us.begin(), us.end(), r.x0) - us.begin();
                    auto i1 = std::lower_bound(us.begin(), us.end(), r.x1) - us.begin();
                    auto j0 = std::lower_bound(vs.begin(), vs.end(), r.y0) - vs.begin();
                    auto j1 = std::lower_bound(vs.begin(), vs.end(), r.y1) - vs.begin();
                    for (auto i = i0; i < i1; ++i)
                        for (auto j = j0; j < j1; ++j) grid[i][j] = 1;
                }
            };
            paint(pr.hi, hi);
            paint(pr.lo, lo);
            for (int sign : {1, -1}) {
                std::vector<std::vector<char>> region(nu, std::vector<char>(nv, 0));
                bool any = false;
                for (std::size_t i = 0; i < nu; ++i)
                    for (std::size_t j = 0; j < nv; ++j) {
                        region[i][j] = sign > 0 ? (hi[i][j] && !lo[i][j]) : (lo[i][j] && !hi[i][j]);
                        any = any || region[i][j];
                    }
                if (!any) continue;
                for (auto& gloops : detail::trace_region(region, nu, nv)) {
                    std::vector<std::vector<Point3>> face;
                    for (auto& gl : gloops) {
                        std::vector<Point3> loop;
                        for (auto [i, j] : gl) {
                            Point3 p;
                            p[n] = c;
                            p[u] = us[i];
                            p[v] = vs[j];
                            loop.push_back(p);
                        }
                        if (sign < 0) std::reverse(loop.begin(), loop.end());
                        face.push_back(std::move(loop));
                    }
                    faces.push_back(std::move(face));
                }
            }
        }
    }
    std::vector<Point3> pts;
    for (const auto& f : faces)
        for (const auto& l : f) pts.insert(pts.end(), l.begin(), l.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Polyhedron p;
    p.vertices = pts;
    for (const auto& f : faces) {
        Face face;
        for (const auto& l : f) {
            std::vector<std::size_t> idx;
            for (const Point3& q : l) idx.push_back(static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), q) - pts.begin()));
            face.loops.push_back(std::move(idx));
        }
        p.faces.push_back(std::move(face));
    }
    return p;
}

inline std::vector<Box> mirror_z(std::vector<Box> boxes) {
    for (Box& b : boxes) {
        const Coord lo = -b.hi.z, hi = -b.lo.z;
        b.lo.z = lo;
        b.hi.z = hi;
    }
    return boxes;
}

inline std::vector<Box> translate(std::vector<Box> boxes, const Point3& d) {
    for (Box& b : boxes) {
        b.lo = b.lo + d;
        b.hi = b.hi + d;
    }
    return boxes;
}

// ---------------------------------------------------------------------------
// Families. Each returns the boxes it was built from; the polyhedron is
// boxes_to_polyhedron of them.

struct Generated {
    std::vector<Box> boxes;
    Polyhedron poly;
};

inline Generated finish(std::vector<Box> boxes) {
    Polyhedron p = boxes_to_polyhedron(boxes);
    return {std::move(boxes), std::move(p)};
}

inline Generated gen_cuboid(Coord dx = 1, Coord dy = 1, Coord dz = 1) {
    if (dx < 1 || dy < 1 || dz < 1) throw Error(ErrorCode::InvalidArgument, "cuboid sides must be positive");
    return finish({Box{{0, 0, 0}, {dx, dy, dz}}});
}

/// (x, z) vertices of an orthogonal polygon, extruded along Y over [0, depth].
using Polygon2 = std::vector<std::pair<Coord, Coord>>;

inline void check_simple_orthogonal(const Polygon2& poly) {
    const std::size_t k = poly.size();
    if (k < 4 || k % 2 != 0) throw Error(ErrorCode::InvalidArgument, "orthogonal polygon needs an even number (>= 4) of vertices");
    for (std::size_t i = 0; i < k; ++i) {
        auto [x0, z0] = poly[i];
        auto [x1, z1] = poly[(i + 1) % k];
        auto [x2, z2] = poly[(i + 2) % k];
        const bool h1 = z0 == z1 && x0 != x1, v1 = x0 == x1 && z0 != z1;
        const bool h2 = z1 == z2 && x1 != x2;
        if (!(h1 || v1)) throw Error(ErrorCode::InvalidArgument, "polygon edge is not axis-parallel");
        if (h1 == h2) throw Error(ErrorCode::InvalidArgument, "polygon edges must alternate direction");
    }
    auto overlaps = [](Coord a0, Coord a1, Coord b0, Coord b1) {
        return std::max(std::min(a0, a1), std::min(b0, b1)) <= std::min(std::max(a0, a1), std::max(b0, b1));
    };
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            if (j == i + 1 || (i == 0 && j == k - 1)) continue;
            auto [ax0, az0] = poly[i];
            auto [ax1, az1] = poly[(i + 1) % k];
            auto [bx0, bz0] = poly[j];
            auto [bx1, bz1] = poly[(j + 1) % k];
            if (overlaps(ax0, ax1, bx0, bx1) && overlaps(az0, az1, bz0, bz1))
                throw Error(ErrorCode::InvalidArgument, "polygon is not simple");
        }
}

inline Generated gen_extrude(const Polygon2& poly, Coord depth = 1) {
    check_simple_orthogonal(poly);
    if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
    std::vector<Coord> xs, zs;
    for (auto [x, z] : poly) {
        xs.push_back(x);
        zs.push_back(z);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    std::vector<Box> boxes;
    for (std::size_t j = 0; j + 1 < zs.size(); ++j) {
        // Crossing test at doubled coordinates of each cell centre, merged into runs along x.
        const Coord cz2 = zs[j] + zs[j + 1];
        std::size_t run = npos;
        for (std::size_t i = 0; i + 1 <= xs.size(); ++i) {
            bool in = false;
            if (i + 1 < xs.size()) {
                const Coord cx2 = xs[i] + xs[i + 1];
                for (std::size_t e = 0; e < poly.size(); ++e) {
                    auto [x0, z0] = poly[e];
                    auto [x1, z1] = poly[(e + 1) % poly.size()];
                    if (x0 != x1) continue;
                    if (2 * x0 > cx2 && std::min(2 * z0, 2 * z1) < cz2 && cz2 < std::max(2 * z0, 2 * z1)) in = !in;
                }
            }
            if (in && run == npos) run = i;
            if (!in && run != npos) {
                boxes.push_back(Box{{xs[run], 0, zs[j]}, {xs[i], depth, zs[j + 1]}});
                run = npos;
            }
        }
    }
    return finish(std::move(boxes));
}

/// Cross-section: spine [0,2k-1]x[0,1] carrying k unit teeth [2i,2i+1]x[1,2].
inline Polygon2 comb_polygon(int k) {
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "comb needs k >= 2");
    Polygon2 p{{0, 0}, {2 * k - 1, 0}, {2 * k - 1, 2}};
    for (int i = k - 1; i >= 1; --i) {
        p.push_back({2 * i, 2});
        p.push_back({2 * i, 1});
        p.push_back({2 * i - 1, 1});
        p.push_back({2 * i - 1, 2});
    }
    p.push_back({0, 2});
    return p;
}

inline Generated gen_comb(int k) { return gen_extrude(comb_polygon(k), 1); }

/// The two bricks of the worked example: a type-(t) contact.
inline Generated gen_figure2() {
    return finish({Box{{0, 1, 0}, {4, 5, 1}}, Box{{1, 0, 1}, {4, 5, 2}}});
}

/// Rectangular ring of genus `loops`: loops+1 parallel lower bars bridged by
/// two upper bars.
inline Generated gen_ring(Coord arm, int loops = 1) {
    if (arm < 3) throw Error(ErrorCode::InvalidArgument, "ring arm length must be >= 3");
    if (loops < 1) throw Error(ErrorCode::InvalidArgument, "ring needs at least one loop");
    std::vector<Box> boxes;
    for (int k = 0; k <= loops; ++k) boxes.push_back(Box{{0, k * (arm - 1), 0}, {arm, k * (arm - 1) + 1, 1}});
    const Coord len = loops * (arm - 1) + 1;
    boxes.push_back(Box{{0, 0, 1}, {1, len, 2}});
    boxes.push_back(Box{{arm - 1, 0, 1}, {arm, len, 2}});
    return finish(std::move(boxes));
}

namespace detail {

inline bool collides(const std::vector<Box>& boxes, const Box& b, std::size_t except) {
    for (std::size_t i = 0; i < boxes.size(); ++i)
        if (i != except && boxes[i].touches(b)) return true;
    return false;
}

/// Side states of a child footprint against its parent: -1 the child is
/// inset (parent sticks out), 0 flush, +1 the child overhangs. Order:
/// x-low, x-high, y-low, y-high.
inline std::optional<Rect> child_rect(const Rect& parent, const std::array<int, 4>& state, const std::array<Coord, 4>& amount) {
    Rect r = parent;
    r.x0 = parent.x0 + (state[0] < 0 ? amount[0] : state[0] > 0 ? -amount[0] : 0);
    r.x1 = parent.x1 + (state[1] < 0 ? -amount[1] : state[1] > 0 ? amount[1] : 0);
    r.y0 = parent.y0 + (state[2] < 0 ? amount[2] : state[2] > 0 ? -amount[2] : 0);
    r.y1 = parent.y1 + (state[3] < 0 ? -amount[3] : state[3] > 0 ? amount[3] : 0);
    const Rect overlap = intersect(r, parent);
    if (overlap.x0 >= overlap.x1 || overlap.y0 >= overlap.y1) return std::nullopt;
    return r;
}

/// Grows a tree of boxes by vertical attachments; `pick_state` chooses side
/// states. New boxes touch only their parent.
template <class PickState>
std::vector<Box> grow(Rng& rng, std::vector<Box> boxes, std::size_t target, PickState pick_state) {
    std::vector<int> above(boxes.size(), 0), below(boxes.size(), 0);
    std::size_t attempts = 0;
    const std::size_t budget = 2000 * (target + 1);
    while (boxes.size() < target) {
        if (++attempts > budget) throw Error(ErrorCode::InvalidArgument, "generator could not place another box");
        const std::size_t p = rng.index(boxes.size());
        const bool up = rng.chance(1, 2);
        if ((up ? above[p] : below[p]) >= 2) continue;
        std::array<int, 4> state{};
        std::array<Coord, 4> amount{};
        pick_state(rng, state, amount);
        auto fp = child_rect(footprint(boxes[p]), state, amount);
        if (!fp) continue;
        const Coord h = rng.uniform(1, 3);
        const Coord z0 = up ? boxes[p].hi.z : boxes[p].lo.z - h;
        Box b{{fp->x0, fp->y0, z0}, {fp->x1, fp->y1, z0 + h}};
        if (collides(boxes, b, p)) continue;
        (up ? above[p] : below[p])++;
        boxes.push_back(b);
        above.push_back(up ? 0 : 1);
        below.push_back(up ? 1 : 0);
    }
    return boxes;
}

inline Box random_base(Rng& rng) {
    return Box{{0, 0, 0}, {rng.uniform(2, 6), rng.uniform(2, 6), rng.uniform(1, 3)}};
}

}  // namespace detail

/// Random stack: every contact primitive (three sides flush, one side of
/// either brick sticking out).
inline Generated gen_stack(std::uint64_t seed, std::size_t bricks) {
    if (bricks < 1) throw Error(ErrorCode::InvalidArgument, "stack needs at least one brick");
    Rng rng(seed);
    auto boxes = detail::grow(rng, {detail::random_base(rng)}, bricks, [](Rng& r, std::array<int, 4>& s, std::array<Coord, 4>& a) {
        const std::size_t side = r.index(4);
        s[side] = r.chance(1, 2) ? -1 : 1;
        a[side] = r.uniform(1, 3);
    });
    return finish(std::move(boxes));
}

/// Random vertical attachments of every contact type, collars included,
/// optionally grown from a ring of genus `loops`.
inline Generated gen_composite(std::uint64_t seed, std::size_t bricks, int loops = 0) {
    Rng rng(seed);
    std::vector<Box> start = loops > 0 ? gen_ring(rng.uniform(3, 5), loops).boxes : std::vector<Box>{detail::random_base(rng)};
    if (loops > 0)
        for (Box& b : start) {
            // Stretch the ring vertically so attachments have room.
            b.lo.z *= 2;
            b.hi.z *= 2;
        }
    const std::size_t target = std::max(bricks, start.size());
    auto boxes = detail::grow(rng, std::move(start), target, [](Rng& r, std::array<int, 4>& s, std::array<Coord, 4>& a) {
        const Coord roll = r.uniform(0, 9);
        if (roll < 3) {
            s.fill(roll == 0 ? 1 : -1);  // collar
        } else if (roll < 6) {
            s[r.index(4)] = r.chance(1, 2) ? -1 : 1;
        } else {
            do {
                for (int& x : s) x = static_cast<int>(r.uniform(-1, 1));
            } while (s == std::array<int, 4>{});
        }
        for (Coord& x : a) x = r.uniform(1, 2);
    });
    return finish(std::move(boxes));
}

namespace detail {

inline void castle_node(Rng& rng, std::vector<Box>& out, const Rect& fp, Coord z0, int depth, int levels) {
    const Coord h = rng.uniform(1, 3);
    out.push_back(Box{{fp.x0, fp.y0, z0}, {fp.x1, fp.y1, z0 + h}});
    if (depth + 1 >= levels) return;
    if (depth > 0 && !rng.chance(3, 4)) return;
    bool along_x = rng.chance(1, 2);
    const Coord ex = fp.x1 - fp.x0, ey = fp.y1 - fp.y0;
    if ((along_x ? ex : ey) < 3) along_x = !along_x;
    const Coord e = along_x ? ex : ey;
    if (e < 3) return;
    const Coord w = (e - 1) / 2;
    Rect a = fp, b = fp;
    if (along_x) {
        a.x1 = fp.x0 + w;
        b.x0 = fp.x1 - w;
    } else {
        a.y1 = fp.y0 + w;
        b.y0 = fp.y1 - w;
    }
    castle_node(rng, out, a, z0 + h, depth + 1, levels);
    castle_node(rng, out, b, z0 + h, depth + 1, levels);
}

}  // namespace detail

/// Castle of the given depth: the base always carries two bricks, deeper
/// bricks carry two with probability 3/4.
inline std::vector<Box> castle_boxes(Rng& rng, int levels, const Rect& base, Coord z0 = 0) {
    if (levels < 1) throw Error(ErrorCode::InvalidArgument, "castle needs levels >= 1");
    std::vector<Box> out;
    detail::castle_node(rng, out, base, z0, 0, levels);
    return out;
}

inline Coord castle_width(int levels) { return Coord{1} << (levels + 1); }

inline Generated gen_castle(std::uint64_t seed, int levels) {
    Rng rng(seed);
    const Coord w = castle_width(levels);
    return finish(castle_boxes(rng, levels, Rect{0, 0, w, w}));
}

/// Castle standing on an upside-down castle, the two bases joined by a
/// primitive contact (the upper base is one unit short on the x-high side).
inline Generated gen_double_castle(std::uint64_t seed, int levels) {
    Rng rng(seed);
    const Coord w = castle_width(levels);
    std::vector<Box> lower = mirror_z(castle_boxes(rng, levels, Rect{0, 0, w, w}));
    std::vector<Box> upper = castle_boxes(rng, levels, Rect{0, 0, w - 1, w});
    lower.insert(lower.end(), upper.begin(), upper.end());
    return finish(std::move(lower));
}

/// Random x-monotone prism: unit-spaced columns, each a z-interval
/// overlapping its neighbour's, extruded along Y.
inline Generated gen_monotone_prism(std::uint64_t seed, int columns) {
    if (columns < 1) throw Error(ErrorCode::InvalidArgument, "prism needs at least one column");
    Rng rng(seed);
    std::vector<Box> boxes;
    Coord x = 0, lo = 0, hi = rng.uniform(1, 4);
    const Coord depth = rng.uniform(1, 3);
    for (int c = 0; c < columns; ++c) {
        const Coord w = rng.uniform(1, 3);
        boxes.push_back(Box{{x, 0, lo}, {x + w, depth, hi}});
        x += w;
        Coord nlo, nhi;
        do {
            nlo = rng.uniform(lo - 2, hi - 1);
            nhi = rng.uniform(std::max(nlo, lo) + 1, hi + 2);
        } while (nhi <= nlo || std::min(nhi, hi) <= std::max(nlo, lo));
        lo = nlo;
        hi = nhi;
    }
    return finish(std::move(boxes));
}

// ---------------------------------------------------------------------------
// Command-line facing description

struct GenSpec {
    std::string family;  // cuboid extrude comb stack castle doubleCastle ring figure2 composite monotone
    std::uint64_t seed = 1;
    int k = 3;
    int n = 5;
    int levels = 2;
    int arm = 3;
    int loops = 1;
    Coord sx = 1, sy = 1, sz = 1;
    Coord depth = 1;
    Polygon2 polygon;
};

inline Generated generate(const GenSpec& s) {
    if (s.family == "cuboid") return gen_cuboid(s.sx, s.sy, s.sz);
    if (s.family == "extrude") return gen_extrude(s.polygon, s.depth);
    if (s.family == "comb") return gen_comb(s.k);
    if (s.family == "stack") return gen_stack(s.seed, static_cast<std::size_t>(std::max(s.n, 0)));
    if (s.family == "castle") return gen_castle(s.seed, s.levels);
    if (s.family == "doubleCastle") return gen_double_castle(s.seed, s.levels);
    if (s.family == "ring") return gen_ring(s.arm, s.loops);
    if (s.family == "figure2") return gen_figure2();
    if (s.family == "composite") return gen_composite(s.seed, static_cast<std::size_t>(std::max(s.n, 1)), s.loops);
    if (s.family == "monotone") return gen_monotone_prism(s.seed, s.n);
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + s.family + "'");
}

}  // namespace orthoguard
