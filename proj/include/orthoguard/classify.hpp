#pragma once
// Contact typing (primitive / collar / other), the collar count b, and the
// structural predicates used by the guard pipeline: stack, castle, double
// castle, prism and monotone.

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "orthoguard/decomp.hpp"
#include "orthoguard/geometry.hpp"
#include "orthoguard/model.hpp"

namespace orthoguard {

/// How one side of a contact rectangle looks: both bricks flush, or one of
/// them sticking out past the other.
enum class SideState : std::uint8_t { Flush, LowerOut, UpperOut };

inline char side_letter(SideState s) { return s == SideState::Flush ? 'F' : s == SideState::LowerOut ? 'L' : 'U'; }

/// Side states in cyclic order x-high, y-high, x-low, y-low.
inline std::array<SideState, 4> side_states(const Box& lower, const Box& upper) {
    auto st = [](Coord lo_side, Coord up_side, bool high) {
        if (lo_side == up_side) return SideState::Flush;
        return (lo_side > up_side) == high ? SideState::LowerOut : SideState::UpperOut;
    };
    return {st(lower.hi.x, upper.hi.x, true), st(lower.hi.y, upper.hi.y, true), st(lower.lo.x, upper.lo.x, false),
            st(lower.lo.y, upper.lo.y, false)};
}

enum class ContactKind : std::uint8_t { PrimitiveD, PrimitiveI, Collar, Other };

inline const char* contact_kind_name(ContactKind k) {
    switch (k) {
    case ContactKind::PrimitiveD: return "primitive_d";
    case ContactKind::PrimitiveI: return "primitive_i";
    case ContactKind::Collar: return "collar";
    case ContactKind::Other: return "other";
    }
    return "?";
}

struct ContactClass {
    ContactKind kind = ContactKind::Other;
    int reflex_edge_count = 0;

    bool primitive() const noexcept { return kind == ContactKind::PrimitiveD || kind == ContactKind::PrimitiveI; }
};

/// Pure function of the two boxes. A primitive contact has exactly one side
/// where a brick sticks out; the brick that sticks out is the parent
/// (lower parent: primitive_d, upper parent: primitive_i). A collar has all
/// four sides sticking out from the same brick.
inline ContactClass classify_contact(const ContactRectangle& r, const Brick& lower, const Brick& upper) {
    (void)r;
    const auto s = side_states(lower.box, upper.box);
    int lower_out = 0, upper_out = 0;
    for (SideState x : s) {
        lower_out += x == SideState::LowerOut;
        upper_out += x == SideState::UpperOut;
    }
    ContactClass c;
    c.reflex_edge_count = lower_out + upper_out;
    if (c.reflex_edge_count == 1) c.kind = lower_out ? ContactKind::PrimitiveD : ContactKind::PrimitiveI;
    else if (lower_out == 4 || upper_out == 4) c.kind = ContactKind::Collar;
    return c;
}

inline std::vector<ContactClass> classify_contacts(const Decomposition& d) {
    std::vector<ContactClass> out;
    out.reserve(d.contacts.size());
    for (const auto& c : d.contacts) out.push_back(classify_contact(c, d.bricks[c.lower], d.bricks[c.upper]));
    return out;
}

inline std::size_t count_collars(const std::vector<ContactClass>& classes) {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [](const ContactClass& c) { return c.kind == ContactKind::Collar; }));
}

// ---------------------------------------------------------------------------
// Components of the brick graph

/// A connected set of bricks together with the graph edges still alive.
struct ComponentView {
    const BrickGraph* graph = nullptr;
    const Decomposition* decomp = nullptr;
    const EdgeSet* edges = nullptr;
    std::vector<std::size_t> nodes;  // sorted
    std::vector<bool> alive;          // per graph edge; empty means all

    bool contains(std::size_t v) const { return std::binary_search(nodes.begin(), nodes.end(), v); }
    bool edge_alive(std::size_t e) const {
        return (alive.empty() || alive[e]) && contains(graph->edges[e].first) && contains(graph->edges[e].second);
    }
    std::vector<std::size_t> internal_edges() const {
        std::vector<std::size_t> out;
        for (std::size_t v : nodes)
            for (const auto& arc : graph->adj[v])
                if (v == graph->edges[arc.edge].first && edge_alive(arc.edge)) out.push_back(arc.edge);
        std::sort(out.begin(), out.end());
        return out;
    }
    /// Neighbours above (`up`) or below through alive internal edges.
    std::vector<BrickGraph::Arc> neighbours(std::size_t v, bool up) const {
        std::vector<BrickGraph::Arc> out;
        for (const auto& arc : graph->adj[v])
            if (edge_alive(arc.edge) && (graph->edges[arc.edge].first == v) == up) out.push_back(arc);
        return out;
    }
    /// Reflex edges of the component viewed as a solid on its own.
    std::vector<std::size_t> reflex_edges() const {
        std::vector<std::size_t> out;
        for (std::size_t e : internal_edges())
            for (std::size_t r : decomp->contacts[e].reflex_edges) out.push_back(r);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

inline ComponentView whole(const BrickGraph& g, const Decomposition& d, const EdgeSet& e) {
    ComponentView c{&g, &d, &e, {}, {}};
    for (std::size_t v = 0; v < g.nodes; ++v) c.nodes.push_back(v);
    return c;
}

/// Sub-castle structure rooted at a base brick: children are the
/// neighbours on the `up` side.
struct CastleShape {
    std::size_t base = npos;
    bool up = true;
};

struct PrismInfo {
    bool prism = true;
    std::optional<Axis> axis;  // empty: no reflex edges
};

struct ShapeInfo {
    bool is_stack = false;
    bool is_tree = false;
    bool is_castle = false;
    bool is_upside_down_castle = false;
    bool is_double_castle = false;
    bool prism = false;
    std::optional<Axis> prism_axis;
    std::optional<Axis> monotone;
    std::size_t base_brick = npos;
    std::size_t joint_edge = npos;  // base-to-base contact of a double castle
};

namespace detail {

/// Nodes reachable from `root` without crossing `cut`.
inline std::vector<std::size_t> side_of(const ComponentView& c, std::size_t root, std::size_t cut) {
    std::vector<std::size_t> out{root}, stack{root};
    std::vector<std::size_t> seen{root};
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (const auto& arc : c.graph->adj[v]) {
            if (arc.edge == cut || !c.edge_alive(arc.edge)) continue;
            if (std::find(seen.begin(), seen.end(), arc.to) != seen.end()) continue;
            seen.push_back(arc.to);
            out.push_back(arc.to);
            stack.push_back(arc.to);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool all_primitive(const ComponentView& c, const std::vector<ContactClass>& cls) {
    for (std::size_t e : c.internal_edges())
        if (!cls[e].primitive()) return false;
    return true;
}

}  // namespace detail

/// True when `c` is a castle with base `base` growing in direction `up`:
/// every brick has zero or two neighbours on the growing side and, except
/// the base, exactly one on the other.
inline bool is_castle_from(const ComponentView& c, const std::vector<ContactClass>& cls, std::size_t base, bool up) {
    if (!detail::all_primitive(c, cls)) return false;
    if (c.internal_edges().size() + 1 != c.nodes.size()) return false;
    for (std::size_t v : c.nodes) {
        const std::size_t grow = c.neighbours(v, up).size();
        const std::size_t back = c.neighbours(v, !up).size();
        if (grow != 0 && grow != 2) return false;
        if (back != (v == base ? 0u : 1u)) return false;
    }
    return true;
}

inline std::optional<std::size_t> castle_base(const ComponentView& c, const std::vector<ContactClass>& cls, bool up) {
    std::optional<std::size_t> base;
    for (std::size_t v : c.nodes)
        if (c.neighbours(v, !up).empty()) {
            if (base) return std::nullopt;
            base = v;
        }
    if (base && is_castle_from(c, cls, *base, up)) return base;
    return std::nullopt;
}

/// Axis of every reflex edge, if they share one.
inline PrismInfo prism_of(const EdgeSet& e, const std::vector<std::size_t>& reflex) {
    PrismInfo info;
    for (std::size_t r : reflex) {
        if (!info.axis) info.axis = e.edges[r].axis;
        else if (*info.axis != e.edges[r].axis) return {false, std::nullopt};
    }
    return info;
}

/// Single-segment test for every vertical line through the bricks of a
/// prism with extrusion axis `a`.
inline bool vertical_lines_single_segment(const ComponentView& c, Axis a) {
    const Axis perp = a == Axis::X ? Axis::Y : Axis::X;
    std::vector<Coord> cuts;
    for (std::size_t v : c.nodes) {
        cuts.push_back(c.decomp->bricks[v].box.lo[perp]);
        cuts.push_back(c.decomp->bricks[v].box.hi[perp]);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        std::vector<std::pair<Coord, Coord>> iv;
        for (std::size_t v : c.nodes) {
            const Box& b = c.decomp->bricks[v].box;
            if (b.lo[perp] <= cuts[i] && cuts[i + 1] <= b.hi[perp]) iv.push_back({b.lo.z, b.hi.z});
        }
        std::sort(iv.begin(), iv.end());
        for (std::size_t k = 1; k < iv.size(); ++k) {
            if (iv[k].first > iv[k - 1].second) return false;
            iv[k].second = std::max(iv[k].second, iv[k - 1].second);
        }
    }
    return true;
}

inline ShapeInfo shape_info(const ComponentView& c, const std::vector<ContactClass>& cls) {
    ShapeInfo s;
    const auto internal = c.internal_edges();
    s.is_stack = detail::all_primitive(c, cls);
    s.is_tree = internal.size() + 1 == c.nodes.size();
    if (auto b = castle_base(c, cls, true)) {
        s.is_castle = true;
        s.base_brick = *b;
    }
    if (auto b = castle_base(c, cls, false)) {
        s.is_upside_down_castle = true;
        if (s.base_brick == npos) s.base_brick = *b;
    }
    if (s.is_stack && s.is_tree) {
        for (std::size_t e : internal) {
            const auto [u, v] = c.graph->edges[e];  // u below v
            if (c.neighbours(u, true).size() != 1 || c.neighbours(v, false).size() != 1) continue;
            ComponentView upper = c, lower = c;
            upper.nodes = detail::side_of(c, v, e);
            lower.nodes = detail::side_of(c, u, e);
            if (is_castle_from(upper, cls, v, true) && is_castle_from(lower, cls, u, false)) {
                s.is_double_castle = true;
                s.joint_edge = e;
                break;
            }
        }
    }
    const PrismInfo p = prism_of(*c.edges, c.reflex_edges());
    s.prism = p.prism;
    s.prism_axis = p.axis;
    if (p.prism && p.axis && vertical_lines_single_segment(c, *p.axis)) s.monotone = p.axis;
    return s;
}

/// For every brick of the castle rooted at `shape.base`, whether the
/// sub-castle dangling from it is a prism and along which axis. Computed in
/// one post-order pass over the castle tree.
inline std::vector<PrismInfo> prism_info_precompute(const ComponentView& c, const CastleShape& shape) {
    std::vector<PrismInfo> info(c.graph->nodes);
    std::vector<std::pair<std::size_t, bool>> stack{{shape.base, false}};
    while (!stack.empty()) {
        auto [v, expanded] = stack.back();
        stack.pop_back();
        const auto kids = c.neighbours(v, shape.up);
        if (!expanded) {
            stack.push_back({v, true});
            for (const auto& k : kids) stack.push_back({k.to, false});
            continue;
        }
        PrismInfo p;
        auto absorb = [&](std::optional<Axis> a) {
            if (!p.prism || !a) return;
            if (!p.axis) p.axis = a;
            else if (*p.axis != *a) p = {false, std::nullopt};
        };
        for (const auto& k : kids) {
            if (!info[k.to].prism) p = {false, std::nullopt};
            absorb(info[k.to].axis);
            for (std::size_t r : c.decomp->contacts[k.edge].reflex_edges) absorb(c.edges->edges[r].axis);
        }
        info[v] = p;
    }
    return info;
}

}  // namespace orthoguard
