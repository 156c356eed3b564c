#pragma once
// Boundary representation of orthogonal polyhedra: the ORP text format,
// validation, adjacency tables, maximal-edge classification, orientation
// normalization and the Euler genus.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orthoguard/geometry.hpp"

namespace orthoguard {

// ---------------------------------------------------------------------------
// Representation

/// A face is a planar orthogonal polygon. The first loop is the outer
/// boundary (counterclockwise w.r.t. the outward normal), the rest are holes
/// (clockwise).
struct Face {
    std::vector<std::vector<std::size_t>> loops;
};

struct Polyhedron {
    std::vector<Point3> vertices;
    std::vector<Face> faces;

    std::size_t n() const noexcept { return vertices.size(); }
};

/// Supporting plane of a face together with its outward normal direction.
struct FacePlane {
    Axis axis = Axis::X;
    Coord offset = 0;
    int sign = 1;

    bool vertical() const noexcept { return axis != Axis::Z; }
    Point3 normal() const noexcept { return unit(axis, sign); }
    constexpr auto operator<=>(const FacePlane&) const = default;
};

/// In-plane coordinate axes (u, v) for a plane normal to `n`, chosen so that
/// u x v = +n.
constexpr std::pair<int, int> plane_uv(Axis n) noexcept {
    const int i = index(n);
    return {(i + 1) % 3, (i + 2) % 3};
}

// ---------------------------------------------------------------------------
// ORP text format

namespace detail {

class OrpReader {
public:
    explicit OrpReader(std::string_view text) : text_(text) {}

    /// Next non-comment, non-blank line split into tokens with their columns.
    bool next_line() {
        tokens_.clear();
        while (pos_ < text_.size() || (pos_ == text_.size() && !done_)) {
            if (pos_ >= text_.size()) {
                done_ = true;
                return false;
            }
            std::size_t end = text_.find('\n', pos_);
            if (end == std::string_view::npos) end = text_.size();
            std::string_view line = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string_view::npos) continue;
            if (line[first] == '#') continue;
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
                if (i >= line.size()) break;
                std::size_t j = i;
                while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
                tokens_.push_back({line.substr(i, j - i), i + 1});
                i = j;
            }
            return true;
        }
        return false;
    }

    std::size_t size() const noexcept { return tokens_.size(); }
    std::string_view token(std::size_t i) const { return tokens_.at(i).text; }

    [[noreturn]] void fail(ErrorCode code, std::size_t tok, const std::string& msg) const {
        std::size_t col = tok < tokens_.size() ? tokens_[tok].column : 1;
        throw Error(code, "line " + std::to_string(line_no_) + ", column " + std::to_string(col) + ": " + msg);
    }
    [[noreturn]] void fail_eof(const std::string& msg) const {
        throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no_ + 1) + ", column 1: unexpected end of input, " + msg);
    }

    void expect_keyword(std::string_view kw, std::size_t count) const {
        if (tokens_.empty() || tokens_[0].text != kw)
            fail(ErrorCode::Syntax, 0, "expected '" + std::string(kw) + "'");
        if (tokens_.size() != count) fail(ErrorCode::Syntax, std::min(count, tokens_.size() - 1), "wrong number of fields");
    }

    std::int64_t integer(std::size_t tok, ErrorCode code) const {
        std::string_view s = token(tok);
        std::int64_t value = 0;
        const char* b = s.data();
        if (!s.empty() && s[0] == '+') ++b;
        auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size() || b == s.data() + s.size())
            fail(code, tok, "expected an integer, got '" + std::string(s) + "'");
        return value;
    }

    std::size_t count(std::size_t tok) const {
        std::int64_t v = integer(tok, ErrorCode::Syntax);
        if (v < 0) fail(ErrorCode::Syntax, tok, "negative count");
        return static_cast<std::size_t>(v);
    }

private:
    struct Token {
        std::string_view text;
        std::size_t column;
    };
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
    bool done_ = false;
    std::vector<Token> tokens_;
};

}  // namespace detail

/// Parses an ORP document verbatim. Throws Error with a line/column location
/// on syntax errors, non-integer coordinates or out-of-range indices.
inline Polyhedron parse_polyhedron(std::string_view text) {
    detail::OrpReader in(text);
    Polyhedron p;
    if (!in.next_line()) in.fail_eof("expected 'ORP 1'");
    in.expect_keyword("ORP", 2);
    if (in.token(1) != "1") in.fail(ErrorCode::Syntax, 1, "unsupported ORP version");

    if (!in.next_line()) in.fail_eof("expected 'vertices N'");
    in.expect_keyword("vertices", 2);
    const std::size_t nv = in.count(1);
    p.vertices.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        if (!in.next_line()) in.fail_eof("expected a vertex line");
        if (in.size() != 3) in.fail(ErrorCode::Syntax, std::min<std::size_t>(in.size(), 3) - 1, "a vertex needs exactly 3 coordinates");
        Point3 v{in.integer(0, ErrorCode::NonIntegerCoordinate), in.integer(1, ErrorCode::NonIntegerCoordinate),
                 in.integer(2, ErrorCode::NonIntegerCoordinate)};
        p.vertices.push_back(v);
    }

    if (!in.next_line()) in.fail_eof("expected 'faces F'");
    in.expect_keyword("faces", 2);
    const std::size_t nf = in.count(1);
    p.faces.reserve(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        if (!in.next_line()) in.fail_eof("expected 'face L'");
        in.expect_keyword("face", 2);
        const std::size_t nl = in.count(1);
        if (nl < 1) in.fail(ErrorCode::Syntax, 1, "a face needs at least one loop");
        Face face;
        for (std::size_t l = 0; l < nl; ++l) {
            if (!in.next_line()) in.fail_eof("expected 'loop k ...'");
            if (in.size() < 2 || in.token(0) != "loop") in.fail(ErrorCode::Syntax, 0, "expected 'loop'");
            const std::size_t k = in.count(1);
            if (in.size() != k + 2) in.fail(ErrorCode::Syntax, std::min(in.size() - 1, k + 2), "loop length mismatch");
            std::vector<std::size_t> loop;
            loop.reserve(k);
            for (std::size_t t = 0; t < k; ++t) {
                std::int64_t idx = in.integer(t + 2, ErrorCode::Syntax);
                if (idx < 0 || static_cast<std::size_t>(idx) >= nv)
                    in.fail(ErrorCode::IndexOutOfRange, t + 2,
                            "vertex index " + std::to_string(idx) + " out of range (" + std::to_string(nv) + " vertices)");
                loop.push_back(static_cast<std::size_t>(idx));
            }
            face.loops.push_back(std::move(loop));
        }
        p.faces.push_back(std::move(face));
    }
    if (in.next_line()) in.fail(ErrorCode::Syntax, 0, "trailing content after the last face");
    return p;
}

inline std::string write_orp(const Polyhedron& p) {
    std::ostringstream os;
    os << "ORP 1\n";
    os << "vertices " << p.vertices.size() << '\n';
    for (const Point3& v : p.vertices) os << v.x << ' ' << v.y << ' ' << v.z << '\n';
    os << "faces " << p.faces.size() << '\n';
    for (const Face& f : p.faces) {
        os << "face " << f.loops.size() << '\n';
        for (const auto& loop : f.loops) {
            os << "loop " << loop.size();
            for (std::size_t i : loop) os << ' ' << i;
            os << '\n';
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Lines: every vertex registered on the three axis-parallel lines through it.

struct LineKey {
    Axis axis;
    Coord u;
    Coord v;
    constexpr auto operator<=>(const LineKey&) const = default;
};

inline LineKey line_key(Axis a, const Point3& p) noexcept {
    const int i = index(a);
    return {a, p[(i + 1) % 3], p[(i + 2) % 3]};
}

struct LineKeyHash {
    std::size_t operator()(const LineKey& k) const noexcept {
        return Point3Hash{}(Point3{k.u, k.v, static_cast<Coord>(k.axis)});
    }
};

/// Sorted positions of vertices along every axis-parallel line that carries
/// at least one vertex.
class LineIndex {
public:
    LineIndex() = default;
    explicit LineIndex(const std::vector<Point3>& pts) {
        for (const Point3& p : pts)
            for (Axis a : kAxes) lines_[line_key(a, p)].push_back(p[a]);
        for (auto& [k, v] : lines_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    /// Vertex coordinates strictly between `from` and `to` on their common
    /// axis-parallel line (ascending).
    std::vector<Coord> strictly_between(Axis a, const Point3& from, const Point3& to) const {
        std::vector<Coord> out;
        auto it = lines_.find(line_key(a, from));
        if (it == lines_.end()) return out;
        const Coord lo = std::min(from[a], to[a]);
        const Coord hi = std::max(from[a], to[a]);
        auto b = std::upper_bound(it->second.begin(), it->second.end(), lo);
        for (; b != it->second.end() && *b < hi; ++b) out.push_back(*b);
        return out;
    }

private:
    std::unordered_map<LineKey, std::vector<Coord>, LineKeyHash> lines_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    std::string code;
    std::string location;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(std::string code, std::string location, std::string message) {
        ok = false;
        violations.push_back({std::move(code), std::move(location), std::move(message)});
    }
    bool has(std::string_view code) const {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
    }
    std::string summary() const {
        std::string s;
        for (const auto& v : violations) s += v.code + " at " + v.location + ": " + v.message + "\n";
        return s;
    }
};

/// One directed elementary boundary segment: a loop edge split at every
/// vertex lying on it. `twin` is the oppositely directed segment of the
/// neighbouring face.
struct DirectedSegment {
    Point3 a;
    Point3 b;
    std::size_t face = npos;
    std::size_t loop = npos;
    Axis axis = Axis::X;
    std::size_t twin = npos;
};

struct PointPairHash {
    std::size_t operator()(const std::pair<Point3, Point3>& s) const noexcept {
        return Point3Hash{}(s.first) * 31u ^ Point3Hash{}(s.second);
    }
};

struct AdjacencyTables {
    std::vector<FacePlane> planes;                       // per face
    std::vector<DirectedSegment> segments;               // every directed elementary segment
    std::vector<std::vector<std::size_t>> vertex_faces;  // vertex index -> incident faces
    std::unordered_map<std::pair<Point3, Point3>, std::size_t, PointPairHash> segment_index;
    std::unordered_map<Point3, std::size_t, Point3Hash> vertex_index;
    LineIndex lines;

    std::size_t find_segment(const Point3& a, const Point3& b) const {
        auto it = segment_index.find({a, b});
        return it == segment_index.end() ? npos : it->second;
    }
    std::size_t twin_pairs() const { return segments.size() / 2; }
};

namespace detail {

inline std::string face_loc(std::size_t f, std::size_t l = npos) {
    std::string s = "face " + std::to_string(f);
    if (l != npos) s += " loop " + std::to_string(l);
    return s;
}

inline std::string point_loc(const Point3& p) {
    std::ostringstream os;
    os << "point " << p;
    return os.str();
}

/// Twice the signed area of a loop in the (u, v) coordinates of its plane.
inline __int128 loop_area2(const Polyhedron& p, const std::vector<std::size_t>& loop, Axis n) {
    auto [u, v] = plane_uv(n);
    __int128 acc = 0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Point3& a = p.vertices[loop[i]];
        const Point3& b = p.vertices[loop[(i + 1) % loop.size()]];
        acc += static_cast<__int128>(a[u]) * b[v] - static_cast<__int128>(b[u]) * a[v];
    }
    return acc;
}

/// Everything validate() and build_adjacency() share.
struct SurfaceAnalysis {
    AdjacencyTables adj;
    std::vector<bool> face_ok;
    std::vector<std::size_t> unmatched;
    std::vector<std::size_t> duplicated;
};

inline SurfaceAnalysis analyse_surface(const Polyhedron& p, ValidationReport& report) {
    SurfaceAnalysis out;
    AdjacencyTables& adj = out.adj;
    const std::size_t nv = p.vertices.size();

    for (std::size_t i = 0; i < nv; ++i) {
        auto [it, inserted] = adj.vertex_index.emplace(p.vertices[i], i);
        if (!inserted)
            report.add("duplicate-vertex", "vertex " + std::to_string(i),
                       "coincides with vertex " + std::to_string(it->second));
    }
    adj.lines = LineIndex(p.vertices);
    adj.planes.resize(p.faces.size());
    adj.vertex_faces.assign(nv, {});
    out.face_ok.assign(p.faces.size(), true);
    std::vector<bool> referenced(nv, false);

    for (std::size_t f = 0; f < p.faces.size(); ++f) {
        const Face& face = p.faces[f];
        bool ok = true;
        if (face.loops.empty()) {
            report.add("empty-face", face_loc(f), "face has no loops");
            out.face_ok[f] = false;
            continue;
        }
        for (std::size_t l = 0; l < face.loops.size() && ok; ++l) {
            const auto& loop = face.loops[l];
            if (loop.size() < 4) {
                report.add("short-loop", face_loc(f, l), "an orthogonal loop needs at least 4 vertices");
                ok = false;
            }
            for (std::size_t idx : loop) {
                if (idx >= nv) {
                    report.add("index-out-of-range", face_loc(f, l), "vertex index " + std::to_string(idx) + " out of range");
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) {
            out.face_ok[f] = false;
            continue;
        }
        // Supporting plane: the unique axis on which every loop vertex agrees.
        int plane_axis = -1;
        int constant_axes = 0;
        const Point3& first = p.vertices[face.loops[0][0]];
        for (int a = 0; a < 3; ++a) {
            bool constant = true;
            for (const auto& loop : face.loops)
                for (std::size_t idx : loop)
                    if (p.vertices[idx][a] != first[a]) constant = false;
            if (constant) {
                plane_axis = a;
                ++constant_axes;
            }
        }
        if (constant_axes != 1) {
            report.add(constant_axes == 0 ? "non-planar" : "degenerate-face", face_loc(f),
                       constant_axes == 0 ? "loop vertices are not on one axis-aligned plane" : "face is collinear");
            out.face_ok[f] = false;
            continue;
        }
        const Axis n = axis_from_index(plane_axis);
        for (std::size_t l = 0; l < face.loops.size(); ++l) {
            const auto& loop = face.loops[l];
            for (std::size_t i = 0; i < loop.size(); ++i) {
                const Point3& a = p.vertices[loop[i]];
                const Point3& b = p.vertices[loop[(i + 1) % loop.size()]];
                const Point3& c = p.vertices[loop[(i + 2) % loop.size()]];
                const Point3 d1 = b - a;
                const Point3 d2 = c - b;
                int nz1 = (d1.x != 0) + (d1.y != 0) + (d1.z != 0);
                if (nz1 == 0) {
                    report.add("zero-length-edge", face_loc(f, l), "repeated consecutive vertex " + std::to_string(loop[i]));
                    ok = false;
                } else if (nz1 != 1) {
                    report.add("non-orthogonal-edge", face_loc(f, l),
                               "edge " + std::to_string(loop[i]) + "-" + std::to_string(loop[(i + 1) % loop.size()]) +
                                   " is not axis-parallel");
                    ok = false;
                } else if (dot(d1, d2) < 0 && cross(d1, d2) == Point3{}) {
                    report.add("u-turn", face_loc(f, l), "loop reverses direction at vertex " + std::to_string(loop[(i + 1) % loop.size()]));
                    ok = false;
                }
            }
        }
        if (!ok) {
            out.face_ok[f] = false;
            continue;
        }
        const __int128 outer = loop_area2(p, face.loops[0], n);
        if (outer == 0) {
            report.add("degenerate-loop", face_loc(f, 0), "outer loop has zero area");
            out.face_ok[f] = false;
            continue;
        }
        for (std::size_t l = 1; l < face.loops.size(); ++l) {
            const __int128 a = loop_area2(p, face.loops[l], n);
            if (a == 0 || (a > 0) == (outer > 0)) {
                report.add("hole-orientation", face_loc(f, l), "hole must be oriented opposite to the outer loop");
                ok = false;
            }
        }
        if (!ok) {
            out.face_ok[f] = false;
            continue;
        }
        adj.planes[f] = FacePlane{n, first[n], outer > 0 ? 1 : -1};

        for (std::size_t l = 0; l < face.loops.size(); ++l) {
            const auto& loop = face.loops[l];
            for (std::size_t i = 0; i < loop.size(); ++i) {
                referenced[loop[i]] = true;
                const Point3& a = p.vertices[loop[i]];
                const Point3& b = p.vertices[loop[(i + 1) % loop.size()]];
                Axis ea = Axis::X;
                for (Axis t : kAxes)
                    if (a[t] != b[t]) ea = t;
                std::vector<Coord> cuts = adj.lines.strictly_between(ea, a, b);
                if (a[ea] > b[ea]) std::reverse(cuts.begin(), cuts.end());
                Point3 prev = a;
                auto emit = [&](const Point3& next) {
                    DirectedSegment s{prev, next, f, l, ea, npos};
                    auto [it, inserted] = adj.segment_index.emplace(std::make_pair(prev, next), adj.segments.size());
                    if (!inserted) out.duplicated.push_back(it->second);
                    else adj.segments.push_back(s);
                    prev = next;
                };
                for (Coord c : cuts) {
                    Point3 q = a;
                    q[ea] = c;
                    emit(q);
                }
                emit(b);
            }
            for (std::size_t idx : loop) {
                auto& vf = adj.vertex_faces[idx];
                if (vf.empty() || vf.back() != f) vf.push_back(f);
            }
        }
    }

    for (std::size_t i = 0; i < nv; ++i)
        if (!referenced[i]) report.add("unreferenced-vertex", "vertex " + std::to_string(i), "vertex is not used by any loop");

    for (std::size_t s = 0; s < adj.segments.size(); ++s) {
        DirectedSegment& seg = adj.segments[s];
        seg.twin = adj.find_segment(seg.b, seg.a);
        if (seg.twin == npos) out.unmatched.push_back(s);
    }
    return out;
}

}  // namespace detail

/// Checks every structural invariant of a closed, connected, orientable
/// orthogonal polyhedron. Never throws; the report carries the failures.
inline ValidationReport validate(const Polyhedron& p) {
    ValidationReport report;
    if (p.vertices.empty() || p.faces.empty()) {
        report.add("empty", "document", "polyhedron has no vertices or faces");
        return report;
    }
    detail::SurfaceAnalysis sa = detail::analyse_surface(p, report);
    const AdjacencyTables& adj = sa.adj;
    if (!report.ok) return report;

    for (std::size_t s : sa.duplicated) {
        const auto& seg = adj.segments[s];
        report.add("non-manifold-edge", detail::point_loc(seg.a),
                   "directed edge segment used by more than one face (non-manifold edge or inconsistent orientation)");
    }
    for (std::size_t s : sa.unmatched) {
        const auto& seg = adj.segments[s];
        report.add("open-surface", detail::face_loc(seg.face, seg.loop) + " " + detail::point_loc(seg.a),
                   "open surface: unmatched edge segment");
    }
    if (!report.ok) return report;

    for (const auto& seg : adj.segments) {
        const FacePlane& pa = adj.planes[seg.face];
        const FacePlane& pb = adj.planes[adj.segments[seg.twin].face];
        if (pa.axis == pb.axis && pa.sign != pb.sign) {
            report.add("zero-thickness", detail::point_loc(seg.a), "two oppositely oriented coplanar faces meet along an edge");
            return report;
        }
    }

    DisjointSets faces(p.faces.size());
    for (const auto& seg : adj.segments) faces.unite(seg.face, adj.segments[seg.twin].face);
    std::size_t comps = 0;
    for (std::size_t f = 0; f < p.faces.size(); ++f)
        if (faces.find(f) == f) ++comps;
    if (comps != 1) report.add("not-connected", "document", "not connected: surface has " + std::to_string(comps) + " components");

    // Vertex links: the faces around a vertex must form a single fan.
    std::unordered_map<Point3, std::vector<std::size_t>, Point3Hash> outgoing;
    for (std::size_t s = 0; s < adj.segments.size(); ++s) outgoing[adj.segments[s].a].push_back(s);
    for (const auto& [pt, segs] : outgoing) {
        std::vector<std::size_t> local;
        for (std::size_t s : segs) {
            local.push_back(adj.segments[s].face);
            local.push_back(adj.segments[adj.segments[s].twin].face);
        }
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        DisjointSets link(local.size());
        auto id = [&](std::size_t f) { return static_cast<std::size_t>(std::lower_bound(local.begin(), local.end(), f) - local.begin()); };
        std::size_t groups = local.size();
        for (std::size_t s : segs)
            if (link.unite(id(adj.segments[s].face), id(adj.segments[adj.segments[s].twin].face))) --groups;
        if (groups != 1) report.add("non-manifold-vertex", detail::point_loc(pt), "surface is pinched at this vertex");
    }

    // Signed volume by the divergence theorem; must be positive.
    __int128 vol = 0;
    for (std::size_t f = 0; f < p.faces.size(); ++f) {
        const FacePlane& pl = adj.planes[f];
        if (pl.axis != Axis::X) continue;
        __int128 area2 = 0;
        for (const auto& loop : p.faces[f].loops) area2 += detail::loop_area2(p, loop, pl.axis);
        vol += area2 * pl.offset;
    }
    if (vol <= 0) report.add("inverted", "document", "faces are oriented inward (non-positive enclosed volume)");
    return report;
}

/// Signed enclosed volume computed from the faces alone (divergence theorem).
inline __int128 enclosed_volume(const Polyhedron& p, const AdjacencyTables& adj) {
    __int128 vol2 = 0;
    for (std::size_t f = 0; f < p.faces.size(); ++f) {
        const FacePlane& pl = adj.planes[f];
        if (pl.axis != Axis::X) continue;
        for (const auto& loop : p.faces[f].loops) vol2 += detail::loop_area2(p, loop, pl.axis) * pl.offset;
    }
    return vol2 / 2;
}

/// Builds the face/edge/vertex tables. Throws NonManifold when a directed
/// segment is used twice or left unmatched, InvalidPolyhedron on malformed
/// faces.
inline AdjacencyTables build_adjacency(const Polyhedron& p) {
    ValidationReport report;
    detail::SurfaceAnalysis sa = detail::analyse_surface(p, report);
    if (!report.ok) throw Error(ErrorCode::InvalidPolyhedron, report.summary());
    if (!sa.duplicated.empty()) {
        std::ostringstream os;
        os << "more than two faces along segment starting at " << sa.adj.segments[sa.duplicated.front()].a;
        throw Error(ErrorCode::NonManifold, os.str());
    }
    if (!sa.unmatched.empty()) {
        std::ostringstream os;
        os << "unmatched segment starting at " << sa.adj.segments[sa.unmatched.front()].a;
        throw Error(ErrorCode::NonManifold, os.str());
    }
    return std::move(sa.adj);
}

// ---------------------------------------------------------------------------
// Maximal edges

enum class Convexity : std::uint8_t { Convex, Reflex };

struct Edge {
    Point3 a;  // a[axis] < b[axis]
    Point3 b;
    Axis axis = Axis::X;
    Convexity convexity = Convexity::Convex;
    std::array<FacePlane, 2> planes{};  // sorted

    bool reflex() const noexcept { return convexity == Convexity::Reflex; }
    Coord length() const noexcept { return b[axis] - a[axis]; }
    /// Lexicographic order used for every tie-break.
    auto key() const noexcept { return std::tie(a, b); }
};

class EdgeSet {
public:
    std::vector<Edge> edges;

    std::size_t m() const noexcept { return edges.size(); }
    std::size_t r() const noexcept {
        return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return e.reflex(); }));
    }
    AxisSet reflex_axes() const noexcept {
        AxisSet s;
        for (const Edge& e : edges)
            if (e.reflex()) s.insert(e.axis);
        return s;
    }

    void build_index() {
        by_line_.clear();
        for (std::size_t i = 0; i < edges.size(); ++i) by_line_[line_key(edges[i].axis, edges[i].a)].push_back(i);
        for (auto& [k, v] : by_line_)
            std::sort(v.begin(), v.end(), [&](std::size_t x, std::size_t y) { return edges[x].a[k.axis] < edges[y].a[k.axis]; });
    }

    /// Edge containing the closed axis-parallel segment [from, to], or npos.
    std::size_t find_containing(Axis axis, const Point3& from, const Point3& to) const {
        auto it = by_line_.find(line_key(axis, from));
        if (it == by_line_.end()) return npos;
        const Coord lo = std::min(from[axis], to[axis]);
        const Coord hi = std::max(from[axis], to[axis]);
        const auto& ids = it->second;
        auto pos = std::upper_bound(ids.begin(), ids.end(), lo, [&](Coord c, std::size_t e) { return c < edges[e].a[axis]; });
        if (pos == ids.begin()) return npos;
        const std::size_t e = *std::prev(pos);
        return (edges[e].a[axis] <= lo && hi <= edges[e].b[axis]) ? e : npos;
    }

    /// Vertex points that lie on any reflex edge (endpoints included).
    bool point_on_reflex_edge(const Point3& p) const {
        for (Axis a : kAxes) {
            std::size_t e = find_containing(a, p, p);
            if (e != npos && edges[e].reflex()) return true;
        }
        return false;
    }

private:
    std::unordered_map<LineKey, std::vector<std::size_t>, LineKeyHash> by_line_;
};

/// Convexity of the dihedral between face A (containing directed segment
/// a->b) and a face with outward normal `nb`.
inline Convexity dihedral(const FacePlane& pa, const Point3& a, const Point3& b, const FacePlane& pb) {
    // The interior of face A lies to the left of a->b when viewed from its
    // outward normal.
    const Point3 into_a = cross(pa.normal(), b - a);
    return dot(into_a, pb.normal()) < 0 ? Convexity::Convex : Convexity::Reflex;
}

/// Merges elementary segments into maximal edges and labels each convex or
/// reflex. Flat (180 degree) junctions between coplanar faces are not edges.
inline EdgeSet classify_edges(const Polyhedron& p, const AdjacencyTables& adj) {
    (void)p;
    struct Piece {
        Coord lo, hi;
        std::array<FacePlane, 2> planes;
        Convexity cv;
    };
    std::map<LineKey, std::vector<Piece>> pieces;
    for (std::size_t s = 0; s < adj.segments.size(); ++s) {
        const DirectedSegment& seg = adj.segments[s];
        if (seg.twin < s) continue;
        const FacePlane& pa = adj.planes[seg.face];
        const FacePlane& pb = adj.planes[adj.segments[seg.twin].face];
        if (pa == pb) continue;
        std::array<FacePlane, 2> pl{pa, pb};
        if (pl[1] < pl[0]) std::swap(pl[0], pl[1]);
        pieces[line_key(seg.axis, seg.a)].push_back(
            {std::min(seg.a[seg.axis], seg.b[seg.axis]), std::max(seg.a[seg.axis], seg.b[seg.axis]), pl, dihedral(pa, seg.a, seg.b, pb)});
    }
    EdgeSet out;
    for (auto& [key, list] : pieces) {
        std::sort(list.begin(), list.end(), [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
        auto point_at = [&](Coord c) {
            Point3 q;
            const int i = index(key.axis);
            q[i] = c;
            q[(i + 1) % 3] = key.u;
            q[(i + 2) % 3] = key.v;
            return q;
        };
        std::size_t i = 0;
        while (i < list.size()) {
            std::size_t j = i;
            while (j + 1 < list.size() && list[j + 1].lo == list[j].hi && list[j + 1].planes == list[i].planes) ++j;
            out.edges.push_back(Edge{point_at(list[i].lo), point_at(list[j].hi), key.axis, list[i].cv, list[i].planes});
            i = j + 1;
        }
    }
    std::sort(out.edges.begin(), out.edges.end(), [](const Edge& x, const Edge& y) { return x.key() < y.key(); });
    out.build_index();
    return out;
}

// ---------------------------------------------------------------------------
// Orientation

/// Axis permutation applied to coordinates: new[i] = old[perm[i]]. Only
/// cyclic permutations are used, so orientation is preserved.
struct Rotation {
    std::array<int, 3> perm{0, 1, 2};

    bool identity() const noexcept { return perm == std::array<int, 3>{0, 1, 2}; }
    Point3 apply(const Point3& p) const noexcept { return {p[perm[0]], p[perm[1]], p[perm[2]]}; }
    Point3 invert(const Point3& p) const noexcept {
        Point3 q;
        for (int i = 0; i < 3; ++i) q[perm[i]] = p[i];
        return q;
    }
    Axis apply(Axis old) const noexcept {
        for (int i = 0; i < 3; ++i)
            if (perm[i] == index(old)) return axis_from_index(i);
        return old;
    }
    Axis invert(Axis now) const noexcept { return axis_from_index(perm[index(now)]); }
    /// Names the old axis that became X, Y and Z, e.g. "ZXY".
    std::string tag() const {
        std::string s;
        for (int i = 0; i < 3; ++i) s += axis_name(axis_from_index(perm[i]));
        return s;
    }
    bool operator==(const Rotation&) const = default;
};

inline Polyhedron rotate(const Polyhedron& p, const Rotation& rot) {
    Polyhedron q = p;
    for (Point3& v : q.vertices) v = rot.apply(v);
    return q;
}

/// Picks a rotation that makes every reflex edge horizontal. Throws
/// ThreeReflexDirections when reflex edges span all three axes.
inline Rotation orientation_for(const EdgeSet& e) {
    const AxisSet ax = e.reflex_axes();
    if (ax.size() == 3) throw Error(ErrorCode::ThreeReflexDirections, "reflex edges run along X, Y and Z");
    if (!ax.contains(Axis::Z)) return Rotation{};
    if (!ax.contains(Axis::X)) return Rotation{{2, 0, 1}};  // old Z -> X, old X -> Y, old Y -> Z
    return Rotation{{1, 2, 0}};                            // old X -> Z
}

inline std::pair<Polyhedron, Rotation> normalize_orientation(const Polyhedron& p, const EdgeSet& e) {
    Rotation rot = orientation_for(e);
    return {rot.identity() ? p : rotate(p, rot), rot};
}

// ---------------------------------------------------------------------------
// Genus

/// Genus from the Euler characteristic of the boundary, counted on the
/// elementary stratification: V - E + sum over faces of (1 - holes).
inline std::size_t euler_genus(const Polyhedron& p, const AdjacencyTables& adj) {
    std::unordered_map<Point3, char, Point3Hash> points;
    for (const auto& s : adj.segments) {
        points.emplace(s.a, 0);
        points.emplace(s.b, 0);
    }
    const std::int64_t v = static_cast<std::int64_t>(points.size());
    const std::int64_t e = static_cast<std::int64_t>(adj.segments.size() / 2);
    std::int64_t f = 0;
    for (const Face& face : p.faces) f += 1 - static_cast<std::int64_t>(face.loops.size() - 1);
    const std::int64_t chi = v - e + f;
    if ((2 - chi) < 0 || (2 - chi) % 2 != 0)
        throw Error(ErrorCode::NonIntegralGenus, "Euler characteristic " + std::to_string(chi) + " gives no valid genus");
    return static_cast<std::size_t>((2 - chi) / 2);
}

}  // namespace orthoguard
