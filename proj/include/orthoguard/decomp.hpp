#pragma once
// Partition of a normalized 2-reflex polyhedron into maximal bricks, their
// contact rectangles, the brick graph, and the per-face contact-line sweep.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "orthoguard/geometry.hpp"
#include "orthoguard/model.hpp"

namespace orthoguard {

struct Brick {
    std::size_t id = 0;
    Box box;
};

/// Shared part of the top face of `lower` and the bottom face of `upper`.
struct ContactRectangle {
    std::size_t id = 0;
    Coord z = 0;
    Rect rect;
    std::size_t lower = npos;
    std::size_t upper = npos;
    std::vector<std::size_t> reflex_edges;  // indices into EdgeSet::edges
};

struct Decomposition {
    std::vector<Brick> bricks;
    std::vector<ContactRectangle> contacts;
};

// ---------------------------------------------------------------------------
// Brick extraction

namespace detail {

struct LevelFace {
    std::size_t face;
    int sign;  // +1 top face (solid below), -1 bottom face (solid above)
    Rect bbox;
};

struct ActiveBrick {
    std::size_t id;
    Rect fp;
};

/// XOR-fills the cells enclosed by the loops of `faces` on the grid (xs, ys).
inline void rasterize(const Polyhedron& p, const std::vector<const LevelFace*>& faces, const std::vector<Coord>& xs,
                      const std::vector<Coord>& ys, std::vector<std::vector<char>>& grid) {
    const std::size_t nx = xs.size() - 1, ny = ys.size() - 1;
    std::vector<std::vector<char>> toggle(nx + 1, std::vector<char>(ny, 0));
    auto xi = [&](Coord x) { return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin()); };
    auto yi = [&](Coord y) { return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin()); };
    for (const LevelFace* lf : faces)
        for (const auto& loop : p.faces[lf->face].loops)
            for (std::size_t k = 0; k < loop.size(); ++k) {
                const Point3& a = p.vertices[loop[k]];
                const Point3& b = p.vertices[loop[(k + 1) % loop.size()]];
                if (a.x != b.x) continue;
                const std::size_t i = xi(a.x);
                for (std::size_t j = yi(std::min(a.y, b.y)); j < yi(std::max(a.y, b.y)); ++j) toggle[i][j] ^= 1;
            }
    for (std::size_t j = 0; j < ny; ++j) {
        char acc = 0;
        for (std::size_t i = 0; i < nx; ++i) {
            acc ^= toggle[i][j];
            grid[i][j] ^= acc;
        }
    }
}

}  // namespace detail

/// Bricks and contacts by a sweep over the horizontal face levels: at every
/// level the cross-section changes only inside clusters of bricks touching
/// a horizontal face there; each cluster is re-cut into rectangles.
/// Throws BrickNotBox when a cross-section component is not a rectangle.
inline Decomposition extract_bricks_and_contacts(const Polyhedron& p, const AdjacencyTables& adj, const EdgeSet& e) {
    std::map<Coord, std::vector<detail::LevelFace>> levels;
    for (std::size_t f = 0; f < p.faces.size(); ++f) {
        const FacePlane& pl = adj.planes[f];
        if (pl.axis != Axis::Z) continue;
        Rect bb{std::numeric_limits<Coord>::max(), std::numeric_limits<Coord>::max(), std::numeric_limits<Coord>::min(),
                std::numeric_limits<Coord>::min()};
        for (std::size_t v : p.faces[f].loops[0]) {
            const Point3& q = p.vertices[v];
            bb.x0 = std::min(bb.x0, q.x);
            bb.y0 = std::min(bb.y0, q.y);
            bb.x1 = std::max(bb.x1, q.x);
            bb.y1 = std::max(bb.y1, q.y);
        }
        levels[pl.offset].push_back({f, pl.sign, bb});
    }

    Decomposition out;
    std::vector<detail::ActiveBrick> active;
    for (auto& [z, faces] : levels) {
        // Cluster faces and the active bricks they touch.
        std::vector<std::size_t> touched;
        for (std::size_t a = 0; a < active.size(); ++a)
            for (const auto& lf : faces)
                if (lf.bbox.touches(active[a].fp)) {
                    touched.push_back(a);
                    break;
                }
        const std::size_t nf = faces.size();
        DisjointSets ds(nf + touched.size());
        for (std::size_t i = 0; i < nf; ++i)
            for (std::size_t j = i + 1; j < nf; ++j)
                if (faces[i].bbox.touches(faces[j].bbox)) ds.unite(i, j);
        for (std::size_t t = 0; t < touched.size(); ++t)
            for (std::size_t i = 0; i < nf; ++i)
                if (faces[i].bbox.touches(active[touched[t]].fp)) ds.unite(i, nf + t);

        std::vector<bool> ends(active.size(), false);
        std::vector<detail::ActiveBrick> born;
        std::vector<std::size_t> roots;
        for (std::size_t i = 0; i < nf; ++i)
            if (std::find(roots.begin(), roots.end(), ds.find(i)) == roots.end()) roots.push_back(ds.find(i));

        for (std::size_t root : roots) {
            std::vector<const detail::LevelFace*> tops, bottoms;
            std::vector<std::size_t> cands;
            std::vector<Coord> xs, ys;
            for (std::size_t i = 0; i < nf; ++i) {
                if (ds.find(i) != root) continue;
                (faces[i].sign > 0 ? tops : bottoms).push_back(&faces[i]);
                for (const auto& loop : p.faces[faces[i].face].loops)
                    for (std::size_t v : loop) {
                        xs.push_back(p.vertices[v].x);
                        ys.push_back(p.vertices[v].y);
                    }
            }
            for (std::size_t t = 0; t < touched.size(); ++t) {
                if (ds.find(nf + t) != root) continue;
                cands.push_back(touched[t]);
                const Rect& r = active[touched[t]].fp;
                xs.insert(xs.end(), {r.x0, r.x1});
                ys.insert(ys.end(), {r.y0, r.y1});
            }
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
            std::sort(ys.begin(), ys.end());
            ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
            const std::size_t nx = xs.size() - 1, ny = ys.size() - 1;
            auto xi = [&](Coord x) { return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin()); };
            auto yi = [&](Coord y) { return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin()); };

            std::vector<std::vector<std::size_t>> owner(nx, std::vector<std::size_t>(ny, npos));
            for (std::size_t c : cands) {
                const Rect& r = active[c].fp;
                for (std::size_t i = xi(r.x0); i < xi(r.x1); ++i)
                    for (std::size_t j = yi(r.y0); j < yi(r.y1); ++j) owner[i][j] = c;
            }
            std::vector<std::vector<char>> top(nx, std::vector<char>(ny, 0)), bottom = top;
            detail::rasterize(p, tops, xs, ys, top);
            detail::rasterize(p, bottoms, xs, ys, bottom);

            std::vector<std::vector<char>> above(nx, std::vector<char>(ny, 0));
            for (std::size_t i = 0; i < nx; ++i)
                for (std::size_t j = 0; j < ny; ++j) {
                    const bool below = owner[i][j] != npos;
                    if (top[i][j] && !below)
                        throw Error(ErrorCode::BrickNotBox, "top face at z=" + std::to_string(z) + " has no solid beneath it");
                    if (bottom[i][j] && below)
                        throw Error(ErrorCode::BrickNotBox, "bottom face at z=" + std::to_string(z) + " overlaps solid beneath it");
                    above[i][j] = (below && !top[i][j]) || bottom[i][j];
                }

            std::vector<bool> continued(cands.size(), false);
            std::vector<detail::ActiveBrick> fresh;
            std::vector<std::vector<char>> seen(nx, std::vector<char>(ny, 0));
            for (std::size_t i = 0; i < nx; ++i)
                for (std::size_t j = 0; j < ny; ++j) {
                    if (!above[i][j] || seen[i][j]) continue;
                    std::size_t i0 = i, i1 = i, j0 = j, j1 = j, cells = 0;
                    std::vector<std::pair<std::size_t, std::size_t>> stack{{i, j}};
                    seen[i][j] = 1;
                    while (!stack.empty()) {
                        auto [a, b] = stack.back();
                        stack.pop_back();
                        ++cells;
                        i0 = std::min(i0, a), i1 = std::max(i1, a), j0 = std::min(j0, b), j1 = std::max(j1, b);
                        auto push = [&](std::size_t x, std::size_t y) {
                            if (above[x][y] && !seen[x][y]) {
                                seen[x][y] = 1;
                                stack.push_back({x, y});
                            }
                        };
                        if (a > 0) push(a - 1, b);
                        if (a + 1 < nx) push(a + 1, b);
                        if (b > 0) push(a, b - 1);
                        if (b + 1 < ny) push(a, b + 1);
                    }
                    if (cells != (i1 - i0 + 1) * (j1 - j0 + 1))
                        throw Error(ErrorCode::BrickNotBox, "cross-section above z=" + std::to_string(z) + " is not a rectangle");
                    const Rect r{xs[i0], ys[j0], xs[i1 + 1], ys[j1 + 1]};
                    bool same = false;
                    for (std::size_t c = 0; c < cands.size(); ++c)
                        if (active[cands[c]].fp == r) {
                            continued[c] = true;
                            same = true;
                        }
                    if (!same) {
                        fresh.push_back({out.bricks.size(), r});
                        out.bricks.push_back({out.bricks.size(), Box{{r.x0, r.y0, z}, {r.x1, r.y1, z}}});
                    }
                }
            for (std::size_t c = 0; c < cands.size(); ++c) {
                if (continued[c]) continue;
                ends[cands[c]] = true;
                out.bricks[active[cands[c]].id].box.hi.z = z;
            }
            for (std::size_t c = 0; c < cands.size(); ++c) {
                if (continued[c]) continue;
                const detail::ActiveBrick& low = active[cands[c]];
                for (const auto& nb : fresh) {
                    const Rect r = intersect(low.fp, nb.fp);
                    if (r.x0 >= r.x1 || r.y0 >= r.y1) continue;
                    out.contacts.push_back({out.contacts.size(), z, r, low.id, nb.id, {}});
                }
            }
            born.insert(born.end(), fresh.begin(), fresh.end());
        }
        std::vector<detail::ActiveBrick> next;
        for (std::size_t a = 0; a < active.size(); ++a)
            if (!ends[a]) next.push_back(active[a]);
        next.insert(next.end(), born.begin(), born.end());
        active = std::move(next);
    }
    if (!active.empty()) throw Error(ErrorCode::BrickNotBox, "solid is not closed above");

    // Bordering reflex edges: one per side on which the two footprints differ.
    for (std::size_t c = 0; c < out.contacts.size(); ++c) {
        ContactRectangle& cr = out.contacts[c];
        const Rect lo = footprint(out.bricks[cr.lower].box), up = footprint(out.bricks[cr.upper].box);
        const Rect& r = cr.rect;
        struct Side {
            bool flush;
            Axis axis;
            Point3 a, b;
        };
        const Side sides[4] = {
            {lo.x1 == up.x1, Axis::Y, {r.x1, r.y0, cr.z}, {r.x1, r.y1, cr.z}},
            {lo.y1 == up.y1, Axis::X, {r.x0, r.y1, cr.z}, {r.x1, r.y1, cr.z}},
            {lo.x0 == up.x0, Axis::Y, {r.x0, r.y0, cr.z}, {r.x0, r.y1, cr.z}},
            {lo.y0 == up.y0, Axis::X, {r.x0, r.y0, cr.z}, {r.x1, r.y0, cr.z}},
        };
        for (const Side& s : sides) {
            if (s.flush) continue;
            const std::size_t id = e.find_containing(s.axis, s.a, s.b);
            if (id == npos || !e.edges[id].reflex()) {
                std::ostringstream os;
                os << "contact side " << s.a << "-" << s.b << " is not on a reflex edge";
                throw Error(ErrorCode::BrickNotBox, os.str());
            }
            cr.reflex_edges.push_back(id);
        }
    }
    (void)adj;
    return out;
}

// ---------------------------------------------------------------------------
// Brick graph

struct BrickGraph {
    struct Arc {
        std::size_t to;
        std::size_t edge;
    };
    std::size_t nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (lower, upper) per contact id
    std::vector<std::vector<Arc>> adj;

    std::size_t other(std::size_t edge, std::size_t node) const {
        return edges[edge].first == node ? edges[edge].second : edges[edge].first;
    }

    /// Connected components as sorted node lists, ordered by smallest node.
    std::vector<std::vector<std::size_t>> components(const std::vector<bool>* alive = nullptr) const {
        DisjointSets ds(nodes);
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (!alive || (*alive)[i]) ds.unite(edges[i].first, edges[i].second);
        std::map<std::size_t, std::vector<std::size_t>> by_root;
        for (std::size_t v = 0; v < nodes; ++v) by_root[ds.find(v)].push_back(v);
        std::vector<std::vector<std::size_t>> out;
        for (auto& [r, list] : by_root) out.push_back(std::move(list));
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline BrickGraph build_brick_graph(const std::vector<Brick>& bricks, const std::vector<ContactRectangle>& contacts) {
    BrickGraph g;
    g.nodes = bricks.size();
    g.adj.assign(g.nodes, {});
    for (const ContactRectangle& c : contacts) {
        g.adj[c.lower].push_back({c.upper, g.edges.size()});
        g.adj[c.upper].push_back({c.lower, g.edges.size()});
        g.edges.push_back({c.lower, c.upper});
    }
    return g;
}

/// Cycle rank: |E| - |V| + number of components.
inline std::size_t graph_genus(const BrickGraph& g) {
    return g.edges.size() + g.components().size() - g.nodes;
}

// ---------------------------------------------------------------------------
// Contact-line sweep over vertical faces

enum class ContactLineKind { AtReflexVertex, AtDummy, Extension };

inline const char* contact_line_kind_name(ContactLineKind k) {
    switch (k) {
    case ContactLineKind::AtReflexVertex: return "atReflexVertex";
    case ContactLineKind::AtDummy: return "atDummy";
    case ContactLineKind::Extension: return "extension";
    }
    return "?";
}

struct ContactLine {
    Point3 a;  // a < b
    Point3 b;
    Point3 origin;
    ContactLineKind kind = ContactLineKind::AtReflexVertex;
    std::size_t face = npos;

    auto key() const { return std::tie(face, a, b); }
};

struct DummyVertex {
    Point3 at;
    std::size_t face = npos;  // face the dummy is handed to
};

struct SweepResult {
    std::vector<ContactLine> lines;
    std::vector<DummyVertex> dummies;
};

namespace detail {

/// A vertical boundary edge of a vertical face in face coordinates (h, z).
struct VEdge {
    Coord h, zlo, zhi;
    int inside;  // the face lies on the +inside side in h
};

struct FaceFrame {
    Axis n;
    Axis h;
    Coord offset;
    Point3 at(Coord hv, Coord z) const {
        Point3 p;
        p[n] = offset;
        p[h] = hv;
        p[Axis::Z] = z;
        return p;
    }
};

inline FaceFrame frame_of(const FacePlane& pl) {
    return {pl.axis, pl.axis == Axis::X ? Axis::Y : Axis::X, pl.offset};
}

inline std::vector<VEdge> vertical_edges(const Polyhedron& p, std::size_t f, const FacePlane& pl) {
    const FaceFrame fr = frame_of(pl);
    std::vector<VEdge> out;
    for (const auto& loop : p.faces[f].loops)
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const Point3& a = p.vertices[loop[k]];
            const Point3& b = p.vertices[loop[(k + 1) % loop.size()]];
            if (a.z == b.z) continue;
            // Interior lies to the left of a->b seen from the outward normal.
            const Point3 left = cross(pl.normal(), b - a);
            out.push_back({a[fr.h], std::min(a.z, b.z), std::max(a.z, b.z), left[fr.h] > 0 ? 1 : -1});
        }
    return out;
}

struct SweepEvent {
    Coord h, z;
    int dirs;  // bit 0: towards -h, bit 1: towards +h
    ContactLineKind kind;
    bool from_dummy;
};

}  // namespace detail

/// Twin face across the vertical boundary of `f` at point `q`, or npos.
inline std::size_t face_across(const AdjacencyTables& adj, std::size_t f, const Point3& q) {
    Point3 lo = q, hi = q;
    // Elementary segment endpoints are the nearest vertices on the line.
    std::vector<Coord> below = adj.lines.strictly_between(Axis::Z, Point3{q.x, q.y, std::numeric_limits<Coord>::min() / 4}, q);
    std::vector<Coord> above = adj.lines.strictly_between(Axis::Z, q, Point3{q.x, q.y, std::numeric_limits<Coord>::max() / 4});
    if (below.empty() || above.empty()) return npos;
    lo.z = below.back();
    hi.z = above.front();
    for (auto [a, b] : {std::pair{lo, hi}, std::pair{hi, lo}}) {
        const std::size_t s = adj.find_segment(a, b);
        if (s != npos && adj.segments[s].face == f) return adj.segments[adj.segments[s].twin].face;
    }
    return npos;
}

/// Draws the contact line from dummy vertex `w` into face `f` (already swept)
/// up to the nearest vertical edge. No further dummies are created.
inline std::optional<ContactLine> extend_contact_line(const Polyhedron& p, const AdjacencyTables& adj, const DummyVertex& w) {
    const FacePlane& pl = adj.planes[w.face];
    const detail::FaceFrame fr = detail::frame_of(pl);
    const auto edges = detail::vertical_edges(p, w.face, pl);
    const Coord h = w.at[fr.h], z = w.at.z;
    int dir = 0;
    for (const auto& ve : edges)
        if (ve.h == h && ve.zlo < z && z < ve.zhi) dir = ve.inside;
    if (dir == 0) return std::nullopt;
    std::optional<Coord> best;
    for (const auto& ve : edges)
        if (ve.zlo <= z && z <= ve.zhi && (ve.h - h) * dir > 0 && (!best || (ve.h - h) * dir < (*best - h) * dir)) best = ve.h;
    if (!best) return std::nullopt;
    Point3 a = fr.at(h, z), b = fr.at(*best, z);
    if (b < a) std::swap(a, b);
    return ContactLine{a, b, w.at, ContactLineKind::Extension, w.face};
}

/// Plane sweep of one vertical face, top to bottom, drawing horizontal
/// contact lines from every vertex that is reflex in the face or lies on a
/// reflex edge of the polyhedron, and from `pending` dummy vertices. Lines
/// ending inside a vertical edge create dummies for the face across it.
inline SweepResult sweep_face(const Polyhedron& p, std::size_t f, const AdjacencyTables& adj, const EdgeSet& e,
                              const std::vector<Point3>& pending = {}) {
    const FacePlane& pl = adj.planes[f];
    SweepResult res;
    if (!pl.vertical()) return res;
    const detail::FaceFrame fr = detail::frame_of(pl);
    const Point3 nrm = pl.normal();
    std::vector<detail::VEdge> edges = detail::vertical_edges(p, f, pl);

    std::vector<detail::SweepEvent> events;
    for (const auto& loop : p.faces[f].loops) {
        const std::size_t k = loop.size();
        for (std::size_t i = 0; i < k; ++i) {
            const Point3& prev = p.vertices[loop[(i + k - 1) % k]];
            const Point3& cur = p.vertices[loop[i]];
            const Point3& next = p.vertices[loop[(i + 1) % k]];
            const Coord turn = dot(cross(cur - prev, next - cur), nrm);
            const Coord h = cur[fr.h];
            if (turn < 0) {
                // Reflex in the face: continue the horizontal incident edge.
                const Point3& other = prev.z == cur.z ? prev : next;
                const int dir = other[fr.h] < h ? 2 : 1;
                events.push_back({h, cur.z, dir, ContactLineKind::AtReflexVertex, false});
            } else if (turn == 0 && prev.z == cur.z && e.point_on_reflex_edge(cur)) {
                events.push_back({h, cur.z, 3, ContactLineKind::AtReflexVertex, false});
            }
            // Polyhedron vertices strictly inside this loop edge.
            Axis ea = cur.z != next.z ? Axis::Z : fr.h;
            for (Coord c : adj.lines.strictly_between(ea, cur, next)) {
                Point3 q = cur;
                q[ea] = c;
                if (!e.point_on_reflex_edge(q)) continue;
                if (ea != Axis::Z) {
                    events.push_back({q[fr.h], q.z, 3, ContactLineKind::AtReflexVertex, false});
                } else {
                    const Point3 left = cross(nrm, next - cur);
                    events.push_back({q[fr.h], q.z, left[fr.h] > 0 ? 2 : 1, ContactLineKind::AtReflexVertex, false});
                }
            }
        }
    }
    for (const Point3& w : pending) {
        const Coord h = w[fr.h];
        for (const auto& ve : edges)
            if (ve.h == h && ve.zlo < w.z && w.z < ve.zhi)
                events.push_back({h, w.z, ve.inside > 0 ? 2 : 1, ContactLineKind::AtDummy, true});
    }

    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return std::tie(b.z, a.h) < std::tie(a.z, b.h); });
    std::vector<std::size_t> by_top(edges.size()), by_bottom(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) by_top[i] = by_bottom[i] = i;
    std::sort(by_top.begin(), by_top.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(edges[b].zhi, edges[a].h) < std::tie(edges[a].zhi, edges[b].h);
    });
    std::sort(by_bottom.begin(), by_bottom.end(), [&](std::size_t a, std::size_t b) { return edges[a].zlo > edges[b].zlo; });

    std::multimap<Coord, std::size_t> status;
    std::vector<std::multimap<Coord, std::size_t>::iterator> where(edges.size(), status.end());
    std::size_t ti = 0, bi = 0;
    std::set<std::tuple<Point3, Point3>> drawn;
    for (const auto& ev : events) {
        while (ti < by_top.size() && edges[by_top[ti]].zhi >= ev.z) {
            where[by_top[ti]] = status.emplace(edges[by_top[ti]].h, by_top[ti]);
            ++ti;
        }
        while (bi < by_bottom.size() && edges[by_bottom[bi]].zlo > ev.z) {
            if (where[by_bottom[bi]] != status.end()) status.erase(where[by_bottom[bi]]);
            where[by_bottom[bi]] = status.end();
            ++bi;
        }
        Coord lo_h = ev.h, hi_h = ev.h;
        for (int bit = 0; bit < 2; ++bit) {
            if (!(ev.dirs & (1 << bit))) continue;
            std::optional<Coord> hit;
            if (bit == 1) {
                auto it = status.upper_bound(ev.h);
                if (it != status.end()) hit = it->first;
            } else {
                auto it = status.lower_bound(ev.h);
                if (it != status.begin()) hit = std::prev(it)->first;
            }
            if (!hit) continue;
            (bit == 1 ? hi_h : lo_h) = *hit;
            const Point3 land = fr.at(*hit, ev.z);
            if (adj.vertex_index.count(land) == 0) {
                const std::size_t target = face_across(adj, f, land);
                if (target != npos) res.dummies.push_back({land, target});
            }
        }
        if (lo_h == hi_h) continue;
        const Point3 a = fr.at(lo_h, ev.z), b = fr.at(hi_h, ev.z);
        if (drawn.insert({a, b}).second) res.lines.push_back({a, b, fr.at(ev.h, ev.z), ev.kind, f});
    }
    return res;
}

/// Sweeps every vertical face in `order` (input order when empty), handing
/// dummy vertices to unswept faces and extending into swept ones. Lines are
/// returned deduplicated and sorted.
inline SweepResult sweep_all_faces(const Polyhedron& p, const AdjacencyTables& adj, const EdgeSet& e,
                                   std::vector<std::size_t> order = {}) {
    if (order.empty())
        for (std::size_t f = 0; f < p.faces.size(); ++f) order.push_back(f);
    std::vector<bool> done(p.faces.size(), false);
    std::vector<std::vector<Point3>> pending(p.faces.size());
    SweepResult all;
    for (std::size_t f : order) {
        if (!adj.planes[f].vertical()) continue;
        SweepResult r = sweep_face(p, f, adj, e, pending[f]);
        done[f] = true;
        all.lines.insert(all.lines.end(), r.lines.begin(), r.lines.end());
        for (const DummyVertex& w : r.dummies) {
            all.dummies.push_back(w);
            if (!done[w.face]) pending[w.face].push_back(w.at);
            else if (auto line = extend_contact_line(p, adj, w)) all.lines.push_back(*line);
        }
    }
    std::sort(all.lines.begin(), all.lines.end(), [](const ContactLine& x, const ContactLine& y) { return x.key() < y.key(); });
    all.lines.erase(std::unique(all.lines.begin(), all.lines.end(),
                                [](const ContactLine& x, const ContactLine& y) { return x.key() == y.key(); }),
                    all.lines.end());
    return all;
}

}  // namespace orthoguard
