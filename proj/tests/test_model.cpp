#include <gtest/gtest.h>

#include "oracles.hpp"
#include "orthoguard/gen.hpp"
#include "orthoguard/model.hpp"

using namespace orthoguard;

namespace {

struct Counts {
    std::size_t m, r, g;
};

Counts counts(const Polyhedron& p) {
    const auto adj = build_adjacency(p);
    const auto e = classify_edges(p, adj);
    return {e.m(), e.r(), euler_genus(p, adj)};
}

ErrorCode parse_error(const std::string& text, std::string* message = nullptr) {
    try {
        parse_polyhedron(text);
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.code();
    }
    ADD_FAILURE() << "no parse error for:\n" << text;
    return ErrorCode::InvalidArgument;
}

Polyhedron reversed(Polyhedron p) {
    for (auto& f : p.faces)
        for (auto& l : f.loops) std::reverse(l.begin(), l.end());
    return p;
}

}  // namespace

TEST(Model, CubeCounts) {
    const auto cube = gen_cuboid().poly;
    EXPECT_TRUE(validate(cube).ok);
    EXPECT_EQ(cube.n(), 8u);
    EXPECT_EQ(cube.faces.size(), 6u);
    const auto adj = build_adjacency(cube);
    EXPECT_EQ(adj.segments.size(), 24u);
    EXPECT_EQ(enclosed_volume(cube, adj), 1);
    const auto c = counts(cube);
    EXPECT_EQ(c.m, 12u);
    EXPECT_EQ(c.r, 0u);
    EXPECT_EQ(c.g, 0u);
}

TEST(Model, FigureTwoCounts) {
    const auto p = gen_figure2().poly;
    ASSERT_TRUE(validate(p).ok) << validate(p).summary();
    EXPECT_EQ(p.n(), 15u);
    const auto c = counts(p);
    EXPECT_EQ(c.m, 23u);
    EXPECT_EQ(c.r, 2u);
    EXPECT_EQ(c.g, 0u);
}

TEST(Model, LPrism) {
    const auto p = gen_extrude({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, 1).poly;
    const auto c = counts(p);
    EXPECT_EQ(c.m, 18u);
    EXPECT_EQ(c.r, 1u);
}

TEST(Model, RingGenus) {
    for (int loops = 1; loops <= 3; ++loops) {
        const auto p = gen_ring(4, loops).poly;
        ASSERT_TRUE(validate(p).ok) << validate(p).summary();
        EXPECT_EQ(counts(p).g, static_cast<std::size_t>(loops));
    }
}

TEST(Model, WriteParseRoundTrip) {
    for (const auto& g : {gen_figure2(), gen_comb(3), gen_ring(4, 2), gen_stack(5, 10)}) {
        const auto q = parse_polyhedron(write_orp(g.poly));
        EXPECT_EQ(q.vertices, g.poly.vertices);
        ASSERT_EQ(q.faces.size(), g.poly.faces.size());
        for (std::size_t f = 0; f < q.faces.size(); ++f) EXPECT_EQ(q.faces[f].loops, g.poly.faces[f].loops);
    }
}

TEST(Model, ParseErrorsCarryLocation) {
    std::string msg;
    EXPECT_EQ(parse_error("ORP 1\nvertices 1\n0 0 x\nfaces 0\n", &msg), ErrorCode::NonIntegerCoordinate);
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_EQ(parse_error("ORP 1\nvertices 1\n0 0 1.5\nfaces 0\n"), ErrorCode::NonIntegerCoordinate);
    EXPECT_EQ(parse_error("ORP 1\nvertices 3\n0 0 0\n1 0 0\n1 1 0\nfaces 1\nface 1\nloop 3 0 1 7\n", &msg),
              ErrorCode::IndexOutOfRange);
    EXPECT_NE(msg.find("line 8"), std::string::npos) << msg;
    EXPECT_EQ(parse_error("ORP 2\n"), ErrorCode::Syntax);
    EXPECT_EQ(parse_error("ORP 1\nvertices 2\n0 0 0\n"), ErrorCode::Syntax);
    EXPECT_EQ(parse_error("ORP 1\nvertices 0\nfaces 0\nextra\n"), ErrorCode::Syntax);
}

TEST(Model, ParseIgnoresCommentsAndBlankLines) {
    const auto text = "# cube\n\n" + write_orp(gen_cuboid().poly);
    EXPECT_TRUE(validate(parse_polyhedron(text)).ok);
}

TEST(Validate, InvertedSolid) {
    const auto r = validate(reversed(gen_cuboid().poly));
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(r.has("inverted")) << r.summary();
}

TEST(Validate, OpenSurface) {
    auto p = gen_cuboid().poly;
    p.faces.pop_back();
    const auto r = validate(p);
    EXPECT_TRUE(r.has("open-surface")) << r.summary();
}

TEST(Validate, NonOrthogonalEdge) {
    auto p = gen_cuboid(2, 2, 2).poly;
    p.vertices[0].x += 1;
    const auto r = validate(p);
    EXPECT_FALSE(r.ok);
}

TEST(Validate, EdgeTouchingCubesAreRejected) {
    // Two unit cubes sharing only an edge: the surface is pinched.
    auto a = gen_cuboid().poly;
    auto b = gen_cuboid().poly;
    const std::size_t off = a.vertices.size();
    std::vector<std::size_t> remap;
    for (auto v : b.vertices) {
        v = v + Point3{1, 1, 0};
        const auto it = std::find(a.vertices.begin(), a.vertices.begin() + off, v);
        if (it != a.vertices.begin() + off) {
            remap.push_back(static_cast<std::size_t>(it - a.vertices.begin()));
        } else {
            remap.push_back(a.vertices.size());
            a.vertices.push_back(v);
        }
    }
    for (auto f : b.faces) {
        for (auto& l : f.loops)
            for (auto& i : l) i = remap[i];
        a.faces.push_back(f);
    }
    const auto r = validate(a);
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(r.has("non-manifold-edge") || r.has("non-manifold-vertex")) << r.summary();
}

TEST(Validate, DisjointCubesNotConnected) {
    auto a = gen_cuboid().poly;
    auto b = gen_cuboid().poly;
    const std::size_t off = a.vertices.size();
    for (auto v : b.vertices) a.vertices.push_back(v + Point3{5, 0, 0});
    for (auto f : b.faces) {
        for (auto& l : f.loops)
            for (auto& i : l) i += off;
        a.faces.push_back(f);
    }
    EXPECT_TRUE(validate(a).has("not-connected"));
}

TEST(Validate, DuplicateVertex) {
    auto p = gen_cuboid().poly;
    p.vertices.push_back(p.vertices.front());
    EXPECT_FALSE(validate(p).ok);
}

TEST(Orientation, VerticalReflexEdgesAreRotatedAway) {
    const auto comb = gen_comb(3).poly;  // reflex edges along Y
    for (const Rotation rot : {Rotation{{1, 2, 0}}, Rotation{{2, 0, 1}}}) {
        const auto turned = rotate(comb, rot);
        ASSERT_TRUE(validate(turned).ok) << rot.tag();
        const auto adj = build_adjacency(turned);
        const auto e = classify_edges(turned, adj);
        const auto [norm, applied] = normalize_orientation(turned, e);
        const auto adj2 = build_adjacency(norm);
        const auto e2 = classify_edges(norm, adj2);
        EXPECT_FALSE(e2.reflex_axes().contains(Axis::Z)) << rot.tag();
        EXPECT_EQ(e2.m(), e.m());
        EXPECT_EQ(e2.r(), e.r());
        EXPECT_EQ(euler_genus(norm, adj2), 0u);
    }
}

TEST(Orientation, ThreeReflexDirectionsRejected) {
    // A cube with one corner notch has reflex edges along all three axes.
    const auto p = boxes_to_polyhedron({{{0, 0, 0}, {2, 2, 1}}, {{0, 0, 1}, {2, 1, 2}}, {{0, 1, 1}, {1, 2, 2}}});
    ASSERT_TRUE(validate(p).ok) << validate(p).summary();
    const auto adj = build_adjacency(p);
    const auto e = classify_edges(p, adj);
    try {
        normalize_orientation(p, e);
        FAIL() << "expected ThreeReflexDirections";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), ErrorCode::ThreeReflexDirections);
    }
}

// Edge counts agree with the voxel oracle on small random box unions.
TEST(Property, EdgeCountsMatchVoxelOracle) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto g = gen_composite(seed, 2 + seed % 6, 0);
        const oracle::Voxels v(g.boxes);
        if (v.size() > 4000) continue;
        const auto want = oracle::count_edges(v);
        const auto got = counts(g.poly);
        EXPECT_EQ(got.m, static_cast<std::size_t>(want.m)) << "seed " << seed;
        EXPECT_EQ(got.r, static_cast<std::size_t>(want.r)) << "seed " << seed;
        ++checked;
    }
    EXPECT_GT(checked, 30);
}

// Euler genus is invariant under the axis rotations used for normalization.
TEST(Property, GenusRotationInvariant) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = gen_composite(seed, 10 + seed, static_cast<int>(seed % 3));
        const auto base = counts(g.poly);
        const auto turned = rotate(g.poly, Rotation{{1, 2, 0}});
        const auto c = counts(turned);
        EXPECT_EQ(c.g, base.g);
        EXPECT_EQ(c.m, base.m);
        EXPECT_EQ(c.r, base.r);
    }
}
