#pragma once
// Reflex-edge guard placement: non-primitive resolution, spanning forest,
// parity adjustment, odd cuts, and guarding of the resulting double castles
// through the monotone and castle procedures.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "orthoguard/classify.hpp"
#include "orthoguard/decomp.hpp"
#include "orthoguard/geometry.hpp"
#include "orthoguard/model.hpp"

namespace orthoguard {

/// Everything derived from an input polyhedron before guards are chosen.
/// Geometry is held in the normalized frame (no vertical reflex edges).
struct Analysis {
    Polyhedron input;
    Rotation rotation;
    Polyhedron solid;
    AdjacencyTables adj;
    EdgeSet edges;
    std::size_t genus_euler = 0;
    std::size_t genus_graph = 0;
    Decomposition decomp;
    BrickGraph graph;
    std::vector<ContactClass> classes;
    std::size_t collars = 0;

    std::size_t m() const { return edges.m(); }
    std::size_t r() const { return edges.r(); }
};

inline Analysis analyse(const Polyhedron& p) {
    const ValidationReport report = validate(p);
    if (!report.ok) throw Error(ErrorCode::InvalidPolyhedron, report.summary());
    Analysis a;
    a.input = p;
    {
        const AdjacencyTables adj0 = build_adjacency(p);
        const EdgeSet e0 = classify_edges(p, adj0);
        a.rotation = orientation_for(e0);
    }
    a.solid = a.rotation.identity() ? p : rotate(p, a.rotation);
    a.adj = build_adjacency(a.solid);
    a.edges = classify_edges(a.solid, a.adj);
    a.genus_euler = euler_genus(a.solid, a.adj);
    a.decomp = extract_bricks_and_contacts(a.solid, a.adj, a.edges);
    a.graph = build_brick_graph(a.decomp.bricks, a.decomp.contacts);
    a.genus_graph = graph_genus(a.graph);
    a.classes = classify_contacts(a.decomp);
    a.collars = count_collars(a.classes);
    return a;
}

// ---------------------------------------------------------------------------
// Results

enum class GuardMode : std::uint8_t { Open, Closed };
inline const char* guard_mode_name(GuardMode m) { return m == GuardMode::Open ? "open" : "closed"; }
inline std::optional<GuardMode> parse_guard_mode(const std::string& s) {
    if (s == "open") return GuardMode::Open;
    if (s == "closed") return GuardMode::Closed;
    return std::nullopt;
}

enum class GuardStatus : std::uint8_t { Guarded, Convex };

struct Certificate {
    std::int64_t r = 0, g = 0, b = 0, m = 0;
    std::int64_t bound_r = 0;  // floor((r-g)/2) - b + 1
    std::int64_t bound_m = 0;  // floor((m-4)/8) + g
    std::int64_t count = 0;

    std::int64_t bound() const { return std::min(bound_r, bound_m); }
};

inline Certificate make_certificate(std::size_t r, std::size_t g, std::size_t b, std::size_t m, std::size_t count) {
    Certificate c;
    c.r = static_cast<std::int64_t>(r);
    c.g = static_cast<std::int64_t>(g);
    c.b = static_cast<std::int64_t>(b);
    c.m = static_cast<std::int64_t>(m);
    c.bound_r = floor_div(c.r - c.g, 2) - c.b + 1;
    c.bound_m = floor_div(c.m - 4, 8) + c.g;
    c.count = static_cast<std::int64_t>(count);
    return c;
}

/// A guard edge in the input frame.
struct GuardEdge {
    Point3 a;
    Point3 b;
    Axis axis = Axis::X;
    std::size_t edge = npos;  // index into Analysis::edges (normalized frame)
};

struct GuardSet {
    std::vector<GuardEdge> guards;
    GuardMode mode = GuardMode::Open;
    GuardStatus status = GuardStatus::Guarded;
    Certificate certificate;
};

/// Per graph edge: why it was removed, if it was.
struct PipelineState {
    enum Cut : std::uint8_t { None, NonPrimitive, Forest, Parity, OddCut };
    std::vector<Cut> cut;  // per contact / graph edge
    std::vector<std::size_t> component;
    std::vector<std::size_t> direct_guards;  // edge ids placed on isolated bricks

    bool alive(std::size_t e) const { return cut[e] == None; }
    std::vector<bool> alive_mask() const {
        std::vector<bool> m(cut.size());
        for (std::size_t i = 0; i < cut.size(); ++i) m[i] = alive(i);
        return m;
    }
};

// ---------------------------------------------------------------------------
// Monotone guarding

/// Sorted along the horizontal axis perpendicular to the (common) edge
/// axis, ties broken by edge coordinates; guards at odd 1-based positions
/// plus the last one when the count is even.
inline std::vector<std::size_t> guard_monotone(const EdgeSet& e, std::vector<std::size_t> reflex) {
    if (reflex.empty()) throw Error(ErrorCode::InvalidArgument, "monotone guarding needs at least one reflex edge");
    const Axis a = e.edges[reflex.front()].axis;
    for (std::size_t r : reflex)
        if (e.edges[r].axis != a) throw Error(ErrorCode::InvalidArgument, "monotone guarding needs parallel reflex edges");
    const Axis perp = a == Axis::X ? Axis::Y : Axis::X;
    std::sort(reflex.begin(), reflex.end(), [&](std::size_t x, std::size_t y) {
        const Edge& ex = e.edges[x];
        const Edge& ey = e.edges[y];
        return std::tuple(ex.a[perp], ex.a, ex.b, x) < std::tuple(ey.a[perp], ey.a, ey.b, y);
    });
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < reflex.size(); i += 2) out.push_back(reflex[i]);
    if (reflex.size() % 2 == 0) out.push_back(reflex.back());
    return out;
}

// ---------------------------------------------------------------------------
// Castles and double castles

namespace detail {

/// Castle structure inside one double castle, with precomputed prism data.
class CastleGuarder {
public:
    CastleGuarder(const ComponentView& c, const CastleShape& shape)
        : c_(c), shape_(shape), info_(prism_info_precompute(c, shape)) {}

    const PrismInfo& info(std::size_t v) const { return info_[v]; }

    std::vector<BrickGraph::Arc> kids(std::size_t v) const { return c_.neighbours(v, shape_.up); }

    std::size_t joint_edge(const BrickGraph::Arc& arc) const { return c_.decomp->contacts[arc.edge].reflex_edges.front(); }

    /// Reflex edges of the sub-castle dangling from v.
    std::vector<std::size_t> reflex_below(std::size_t v) const {
        std::vector<std::size_t> out, stack{v};
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (const auto& k : kids(x)) {
                out.push_back(joint_edge(k));
                stack.push_back(k.to);
            }
        }
        return out;
    }

    bool parallel(const PrismInfo& p, std::size_t edge) const { return !p.axis || *p.axis == c_.edges->edges[edge].axis; }

    /// Sub-castle at v is not a prism: at most (its reflex count)/2 guards.
    void guard_castle(std::size_t v, std::vector<std::size_t>& out) const {
        auto ks = kids(v);
        if (ks.size() != 2) throw Error(ErrorCode::ComponentNotDoubleCastle, "non-prism castle without two children");
        const PrismInfo& p0 = info_[ks[0].to];
        const PrismInfo& p1 = info_[ks[1].to];
        if (!p0.prism && !p1.prism) {
            guard_castle(ks[0].to, out);
            guard_castle(ks[1].to, out);
            out.push_back(joint_edge(ks[0]));
            return;
        }
        if (p0.prism != p1.prism) {
            const auto& pr = p0.prism ? ks[0] : ks[1];
            const auto& np = p0.prism ? ks[1] : ks[0];
            guard_castle(np.to, out);
            guard_prism_with_base(pr, out);
            return;
        }
        // Both prisms: one of them runs across its joint edge.
        std::size_t cross = 2;
        for (std::size_t i = 0; i < 2 && cross == 2; ++i)
            if (!parallel(info_[ks[i].to], joint_edge(ks[i]))) cross = i;
        if (cross == 2) throw Error(ErrorCode::ComponentNotDoubleCastle, "castle of parallel prisms is itself a prism");
        out.push_back(joint_edge(ks[cross]));
        guard_prism_with_base(ks[1 - cross], out);
    }

    /// Prism child plus the base brick it stands on.
    void guard_prism_with_base(const BrickGraph::Arc& child, std::vector<std::size_t>& out) const {
        const std::size_t e = joint_edge(child);
        if (parallel(info_[child.to], e)) {
            auto reflex = reflex_below(child.to);
            reflex.push_back(e);
            for (std::size_t g : guard_monotone(*c_.edges, reflex)) out.push_back(g);
        } else {
            out.push_back(e);
        }
    }

    std::size_t reflex_count(std::size_t v) const { return reflex_below(v).size(); }

private:
    const ComponentView& c_;
    CastleShape shape_;
    std::vector<PrismInfo> info_;
};

}  // namespace detail

/// Guards for a double castle (component `c`, joined at graph edge `joint`).
inline std::vector<std::size_t> guard_double_castle(const ComponentView& c, std::size_t joint) {
    const auto [u, v] = c.graph->edges[joint];  // u below v
    const std::size_t e = c.decomp->contacts[joint].reflex_edges.front();
    const detail::CastleGuarder upper(c, {v, true});
    const detail::CastleGuarder lower(c, {u, false});
    const PrismInfo& pu = upper.info(v);
    const PrismInfo& pl = lower.info(u);
    std::vector<std::size_t> out;
    if (!pu.prism && !pl.prism) {
        upper.guard_castle(v, out);
        lower.guard_castle(u, out);
    } else if (pu.prism != pl.prism) {
        const auto& pg = pu.prism ? upper : lower;
        const auto& ng = pu.prism ? lower : upper;
        const std::size_t pb = pu.prism ? v : u, nb = pu.prism ? u : v;
        ng.guard_castle(nb, out);
        auto reflex = pg.reflex_below(pb);
        if (reflex.empty()) out.push_back(e);
        else
            for (std::size_t g : guard_monotone(*c.edges, reflex)) out.push_back(g);
    } else {
        const bool par_u = upper.parallel(pu, e), par_l = lower.parallel(pl, e);
        if (par_u && par_l) {
            auto reflex = upper.reflex_below(v);
            auto more = lower.reflex_below(u);
            reflex.insert(reflex.end(), more.begin(), more.end());
            reflex.push_back(e);
            for (std::size_t g : guard_monotone(*c.edges, reflex)) out.push_back(g);
        } else {
            out.push_back(e);
            if (par_u != par_l) {
                auto reflex = par_u ? upper.reflex_below(v) : lower.reflex_below(u);
                if (!reflex.empty())
                    for (std::size_t g : guard_monotone(*c.edges, reflex)) out.push_back(g);
            }
        }
    }
    return out;
}

/// Castle guarding on its own (base `shape.base`); the castle must not be a
/// prism.
inline std::vector<std::size_t> guard_castle(const ComponentView& c, const CastleShape& shape) {
    const detail::CastleGuarder g(c, shape);
    if (g.info(shape.base).prism) throw Error(ErrorCode::InvalidArgument, "castle is a prism; use monotone guarding");
    std::vector<std::size_t> out;
    g.guard_castle(shape.base, out);
    return out;
}

// ---------------------------------------------------------------------------
// Graph phases

/// Drops every non-primitive contact from the graph.
inline void resolve_nonprimitive(PipelineState& st, const std::vector<ContactClass>& classes) {
    for (std::size_t e = 0; e < classes.size(); ++e)
        if (st.cut[e] == PipelineState::None && !classes[e].primitive()) st.cut[e] = PipelineState::NonPrimitive;
}

/// Depth-first traversal from each unvisited node in id order, removing
/// edges that lead to already visited nodes.
inline void spanning_forest(PipelineState& st, const BrickGraph& g) {
    std::vector<bool> seen(g.nodes, false);
    std::vector<bool> tree(g.edges.size(), false);
    for (std::size_t root = 0; root < g.nodes; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == g.adj[v].size()) {
                stack.pop_back();
                continue;
            }
            const auto arc = g.adj[v][next++];
            if (!st.alive(arc.edge) || tree[arc.edge]) continue;
            if (seen[arc.to]) {
                st.cut[arc.edge] = PipelineState::Forest;
                continue;
            }
            seen[arc.to] = true;
            tree[arc.edge] = true;
            stack.push_back({arc.to, 0});
        }
    }
}

namespace detail {

inline std::vector<std::vector<std::size_t>> alive_components(const PipelineState& st, const BrickGraph& g) {
    const auto mask = st.alive_mask();
    return g.components(&mask);
}

inline std::size_t alive_degree(const PipelineState& st, const BrickGraph& g, std::size_t v) {
    std::size_t d = 0;
    for (const auto& arc : g.adj[v]) d += st.alive(arc.edge);
    return d;
}

}  // namespace detail

/// Makes every tree even by detaching its smallest-id leaf, then guards each
/// isolated brick with the smallest reflex edge of a bordering contact.
inline void parity_adjust(PipelineState& st, const BrickGraph& g, const Decomposition& d, const EdgeSet& e) {
    for (const auto& comp : detail::alive_components(st, g)) {
        if (comp.size() % 2 == 0 || comp.size() == 1) continue;
        for (std::size_t v : comp)
            if (detail::alive_degree(st, g, v) == 1) {
                for (const auto& arc : g.adj[v])
                    if (st.alive(arc.edge)) st.cut[arc.edge] = PipelineState::Parity;
                break;
            }
    }
    std::vector<bool> used(e.edges.size(), false);
    for (std::size_t v = 0; v < g.nodes; ++v) {
        if (detail::alive_degree(st, g, v) != 0) continue;
        std::vector<std::size_t> cand;
        for (const auto& arc : g.adj[v])
            for (std::size_t r : d.contacts[arc.edge].reflex_edges) cand.push_back(r);
        if (cand.empty()) throw Error(ErrorCode::IsolatedConvexBrick, "brick " + std::to_string(v) + " borders no contact rectangle");
        std::sort(cand.begin(), cand.end(), [&](std::size_t x, std::size_t y) {
            return std::tuple(e.edges[x].a, e.edges[x].b, x) < std::tuple(e.edges[y].a, e.edges[y].b, y);
        });
        for (std::size_t r : cand)
            if (!used[r]) {
                used[r] = true;
                st.direct_guards.push_back(r);
                break;
            }
        // Every candidate already guarded: that guard sees this brick too.
    }
}

/// Removes every edge whose dangling subtree (rooted at the smallest node of
/// its tree) has even size.
inline void odd_cut_partition(PipelineState& st, const BrickGraph& g) {
    for (const auto& comp : detail::alive_components(st, g)) {
        if (comp.size() < 2) continue;
        if (comp.size() % 2 != 0) throw Error(ErrorCode::PostconditionViolation, "odd component left after parity adjustment");
        std::vector<std::size_t> order, parent_edge(g.nodes, npos), size(g.nodes, 1);
        std::vector<std::size_t> stack{comp.front()};
        std::vector<bool> seen(g.nodes, false);
        seen[comp.front()] = true;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (const auto& arc : g.adj[v])
                if (st.alive(arc.edge) && !seen[arc.to]) {
                    seen[arc.to] = true;
                    parent_edge[arc.to] = arc.edge;
                    stack.push_back(arc.to);
                }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const std::size_t v = *it;
            if (parent_edge[v] == npos) continue;
            size[g.other(parent_edge[v], v)] += size[v];
        }
        for (std::size_t v : order)
            if (parent_edge[v] != npos && size[v] % 2 == 0) st.cut[parent_edge[v]] = PipelineState::OddCut;
    }
}

namespace detail {

/// Castle test in O(size) for a tree component given its base.
inline bool castle_from(const ComponentView& c, std::size_t base, bool up, std::size_t cut) {
    std::vector<std::size_t> stack{base};
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        std::size_t grow = 0, back = 0;
        for (const auto& arc : c.graph->adj[v]) {
            if (arc.edge == cut || !c.edge_alive(arc.edge)) continue;
            const bool is_up = c.graph->edges[arc.edge].first == v;
            if (is_up == up) {
                ++grow;
                stack.push_back(arc.to);
            } else {
                ++back;
            }
        }
        if (grow != 0 && grow != 2) return false;
        if (back != (v == base ? 0u : 1u)) return false;
    }
    return true;
}

}  // namespace detail

/// Base-to-base contact of a double castle component, or npos.
inline std::size_t find_double_castle_joint(const ComponentView& c) {
    for (std::size_t e : c.internal_edges()) {
        const auto [u, v] = c.graph->edges[e];
        if (c.neighbours(u, true).size() != 1 || c.neighbours(v, false).size() != 1) continue;
        if (detail::castle_from(c, v, true, e) && detail::castle_from(c, u, false, e)) return e;
    }
    return npos;
}

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineTrace {
    PipelineState state;
    std::vector<std::vector<std::size_t>> double_castles;  // node lists
};

inline GuardEdge to_input_frame(const Analysis& a, std::size_t edge) {
    const Edge& e = a.edges.edges[edge];
    GuardEdge g{a.rotation.invert(e.a), a.rotation.invert(e.b), a.rotation.invert(e.axis), edge};
    if (g.b < g.a) std::swap(g.a, g.b);
    return g;
}

inline GuardSet place_guards(const Analysis& a, GuardMode mode, PipelineTrace* trace = nullptr) {
    if (a.genus_euler != a.genus_graph)
        throw Error(ErrorCode::PostconditionViolation, "Euler genus " + std::to_string(a.genus_euler) + " differs from brick-graph genus " +
                                                           std::to_string(a.genus_graph));
    GuardSet out;
    out.mode = mode;
    const std::size_t r = a.r();
    if (r == 0) {
        out.status = GuardStatus::Convex;
        out.certificate = make_certificate(0, a.genus_euler, a.collars, a.m(), 0);
        return out;
    }

    PipelineState st;
    st.cut.assign(a.graph.edges.size(), PipelineState::None);
    resolve_nonprimitive(st, a.classes);
    spanning_forest(st, a.graph);
    parity_adjust(st, a.graph, a.decomp, a.edges);
    odd_cut_partition(st, a.graph);

    std::vector<std::size_t> chosen = st.direct_guards;
    const auto mask = st.alive_mask();
    std::vector<std::vector<std::size_t>> castles;
    for (const auto& comp : a.graph.components(&mask)) {
        if (comp.size() < 2) continue;
        ComponentView view{&a.graph, &a.decomp, &a.edges, comp, mask};
        const std::size_t joint = find_double_castle_joint(view);
        if (joint == npos)
            throw Error(ErrorCode::ComponentNotDoubleCastle,
                        "component with " + std::to_string(comp.size()) + " bricks starting at brick " + std::to_string(comp.front()));
        for (std::size_t g : guard_double_castle(view, joint)) chosen.push_back(g);
        castles.push_back(comp);
    }
    std::sort(chosen.begin(), chosen.end(), [&](std::size_t x, std::size_t y) { return a.edges.edges[x].key() < a.edges.edges[y].key(); });
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    for (std::size_t g : chosen) {
        if (!a.edges.edges[g].reflex()) throw Error(ErrorCode::PostconditionViolation, "guard on a convex edge");
        out.guards.push_back(to_input_frame(a, g));
    }
    out.certificate = make_certificate(r, a.genus_euler, a.collars, a.m(), out.guards.size());
    if (out.certificate.count > out.certificate.bound())
        throw Error(ErrorCode::PostconditionViolation, std::to_string(out.certificate.count) + " guards exceed the bound " +
                                                           std::to_string(out.certificate.bound()));
    if (trace) {
        trace->state = std::move(st);
        trace->double_castles = std::move(castles);
    }
    return out;
}

inline GuardSet place_guards(const Polyhedron& p, GuardMode mode = GuardMode::Open) { return place_guards(analyse(p), mode); }

// ---------------------------------------------------------------------------
// Counting identities

struct Stats {
    std::size_t n = 0, m = 0, r = 0;
    std::size_t genus_euler = 0, genus_graph = 0;
    std::size_t b = 0;
    std::size_t bricks = 0;
    std::array<std::size_t, 4> contacts{};  // indexed by ContactKind
    bool stack = false;                     // every contact primitive
    std::int64_t collar_rhs = 0;             // 4r - 12g - 4b + 12
    std::int64_t weak_rhs = 0;              // 3r - 12g + 12
    std::int64_t stack_rhs = 0;             // 6r - 12g + 12
    Certificate bounds;

    bool collar_holds() const { return static_cast<std::int64_t>(m) >= collar_rhs; }
    bool weak_holds() const { return static_cast<std::int64_t>(m) >= weak_rhs; }
    bool stack_identity_holds() const { return static_cast<std::int64_t>(m) == stack_rhs; }
};

inline Stats compute_stats(const Analysis& a) {
    Stats s;
    s.n = a.input.n();
    s.m = a.m();
    s.r = a.r();
    s.genus_euler = a.genus_euler;
    s.genus_graph = a.genus_graph;
    s.b = a.collars;
    s.bricks = a.decomp.bricks.size();
    s.stack = true;
    for (const auto& c : a.classes) {
        ++s.contacts[static_cast<std::size_t>(c.kind)];
        s.stack = s.stack && c.primitive();
    }
    const auto r = static_cast<std::int64_t>(s.r), g = static_cast<std::int64_t>(s.genus_euler), b = static_cast<std::int64_t>(s.b);
    s.collar_rhs = 4 * r - 12 * g - 4 * b + 12;
    s.weak_rhs = 3 * r - 12 * g + 12;
    s.stack_rhs = 6 * r - 12 * g + 12;
    s.bounds = make_certificate(s.r, s.genus_euler, s.b, s.m, 0);
    return s;
}

}  // namespace orthoguard
