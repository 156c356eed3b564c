#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "orthoguard/gen.hpp"
#include "orthoguard/verify.hpp"

using namespace orthoguard;

namespace {

RationalPoint rp(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t d = 1) { return {{x, y, z}, d}; }

oracle::QPoint to_q(const RationalPoint& p) {
    return {oracle::Q(p.num[0], p.den), oracle::Q(p.num[1], p.den), oracle::Q(p.num[2], p.den)};
}

std::vector<Brick> bricks_of(const std::vector<Box>& boxes) {
    std::vector<Brick> out;
    for (const Box& b : boxes) out.push_back({out.size(), b});
    return out;
}

const Polygon2 kL{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};

/// Reflex edges of the comb sorted by x: tooth i's right corner is 2i.
std::vector<Edge> comb_reflex(const Analysis& a) {
    std::vector<Edge> out;
    for (const auto& e : a.edges.edges)
        if (e.reflex()) out.push_back(e);
    std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) { return x.a.x < y.a.x; });
    return out;
}

RationalPoint tooth_apex(int j) { return rp(16 * j + 4, 4, 15, 8); }

}  // namespace

TEST(SegmentInside, Basics) {
    const auto stacked = bricks_of({{{0, 0, 0}, {2, 2, 1}}, {{0, 0, 1}, {1, 2, 2}}});
    EXPECT_TRUE(segment_inside(rp(2, 2, 1, 2), rp(1, 2, 3, 2), stacked));
    EXPECT_TRUE(segment_inside(rp(1, 1, 1, 2), rp(1, 1, 1, 2), stacked));
    EXPECT_FALSE(segment_inside(rp(5, 5, 5), rp(5, 5, 5), stacked));
    // Along the shared face and along an outer face: closed solid, so inside.
    EXPECT_TRUE(segment_inside(rp(0, 0, 1), rp(2, 2, 1), stacked));
    EXPECT_TRUE(segment_inside(rp(0, 0, 0), rp(0, 0, 2), stacked));
}

TEST(SegmentInside, LPrismNotch) {
    const auto a = analyse(gen_extrude(kL, 1).poly);
    const auto& b = a.decomp.bricks;
    EXPECT_FALSE(segment_inside(rp(19, 5, 9, 10), rp(9, 5, 19, 10), b));
    const BrickIndex idx(b);
    EXPECT_FALSE(idx.segment_inside(rp(19, 5, 9, 10), rp(9, 5, 19, 10)));
    // Through the reflex corner itself stays inside.
    EXPECT_TRUE(segment_inside(rp(2, 1, 0, 1), rp(0, 1, 2, 1), b));
}

TEST(GuardSees, CubeCentre) {
    const auto bricks = bricks_of({{{0, 0, 0}, {2, 2, 2}}});
    for (GuardMode m : {GuardMode::Open, GuardMode::Closed})
        EXPECT_TRUE(guard_sees_point(bricks, {0, 0, 0}, {2, 0, 0}, rp(1, 1, 1), m, 2));
}

TEST(GuardSees, CombToothApexOnlyFromOwnTooth) {
    const auto a = analyse(gen_comb(4).poly);
    const auto r = comb_reflex(a);
    ASSERT_EQ(r.size(), 6u);
    const BrickIndex idx(a.decomp.bricks);
    // Right corner of tooth i is r[2i] (i < 3); it sees tooth i's apex only.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k : {2, 8, 16, 64}) {
                const bool seen = guard_sees_point(idx, r[2 * i].a, r[2 * i].b, tooth_apex(j), GuardMode::Closed, k);
                EXPECT_EQ(seen, i == j) << "edge " << i << " apex " << j << " K " << k;
            }
}

TEST(GuardSees, LPrismReflexEdgeSeesEverything) {
    const auto a = analyse(gen_extrude(kL, 3).poly);
    Edge re;
    for (const auto& e : a.edges.edges)
        if (e.reflex()) re = e;
    const BrickIndex idx(a.decomp.bricks);
    for (const auto& p : sample_points(a.decomp.bricks, 3)) EXPECT_TRUE(guard_sees_point(idx, re.a, re.b, p, GuardMode::Open, 2)) << p;
}

TEST(Samples, Counts) {
    const auto one = bricks_of({{{0, 0, 0}, {1, 1, 1}}});
    EXPECT_EQ(sample_points(one, 1).size(), 1u);
    EXPECT_EQ(sample_points(one, 2).size(), 9u);
    EXPECT_EQ(sample_points(one, 3).size(), 27u);
    const auto fig2 = analyse(gen_figure2().poly);
    EXPECT_EQ(sample_points(fig2.decomp.bricks, 2).size(), 18u);
    EXPECT_THROW(sample_points(one, 0), Error);
}

TEST(Samples, StrictlyInsideTheirBrick) {
    const auto a = analyse(gen_stack(3, 12).poly);
    const BrickIndex idx(a.decomp.bricks);
    for (const auto& p : sample_points(a.decomp.bricks, 3)) {
        bool strict = false;
        for (const auto& b : a.decomp.bricks) {
            bool in = true;
            for (int i = 0; i < 3; ++i) in = in && b.box.lo[i] * p.den < p.num[i] && p.num[i] < b.box.hi[i] * p.den;
            strict = strict || in;
        }
        EXPECT_TRUE(strict) << p;
    }
}

TEST(EdgeSamples, OpenExcludesEndpoints) {
    const auto open = edge_samples({0, 0, 0}, {4, 0, 0}, GuardMode::Open, 3);
    ASSERT_EQ(open.size(), 3u);
    EXPECT_EQ(open[0], rp(1, 0, 0));
    EXPECT_EQ(open[2], rp(3, 0, 0));
    const auto closed = edge_samples({0, 0, 0}, {4, 0, 0}, GuardMode::Closed, 3);
    ASSERT_EQ(closed.size(), 3u);
    EXPECT_EQ(closed[0], rp(0, 0, 0));
    EXPECT_EQ(closed[1], rp(2, 0, 0));
    EXPECT_EQ(closed[2], rp(4, 0, 0));
}

TEST(Coverage, CombWithPipelineGuards) {
    const auto a = analyse(gen_comb(3).poly);
    const auto gs = place_guards(a, GuardMode::Open);
    ASSERT_EQ(gs.guards.size(), 3u);
    EXPECT_TRUE(coverage_check(a, gs, {2, 8}).pass());
}

TEST(Coverage, CombMissingGuardFailsInItsTooth) {
    const auto a = analyse(gen_comb(3).poly);
    const auto gs = place_guards(a, GuardMode::Open);
    for (std::size_t drop = 0; drop < gs.guards.size(); ++drop) {
        auto g = gs.guards;
        g.erase(g.begin() + static_cast<std::ptrdiff_t>(drop));
        const auto rep = coverage_check(a, g, GuardMode::Open, {2, 8});
        EXPECT_FALSE(rep.pass());
        EXPECT_EQ(rep.covered + rep.failures.size(), rep.samples);
        bool in_tooth = false;
        for (const auto& f : rep.failures) in_tooth = in_tooth || f.point.num[2] > f.point.den;  // z > 1
        EXPECT_TRUE(in_tooth) << "dropped " << drop;
    }
}

TEST(Coverage, ConvexPassesVacuously) {
    const auto a = analyse(gen_cuboid().poly);
    const auto gs = place_guards(a, GuardMode::Open);
    const auto rep = coverage_check(a, gs, {2, 8});
    EXPECT_TRUE(rep.pass());
    EXPECT_EQ(rep.samples, 9u);
    EXPECT_EQ(rep.covered, 9u);
}

TEST(Coverage, FailureReportsInputFrame) {
    // Vertical reflex edges get rotated internally; failures must come back
    // in the caller's coordinates.
    const auto turned = rotate(gen_comb(3).poly, Rotation{{2, 0, 1}});
    const auto a = analyse(turned);
    auto gs = place_guards(a, GuardMode::Open);
    gs.guards.pop_back();
    const auto rep = coverage_check(a, gs, {2, 8});
    ASSERT_FALSE(rep.pass());
    Coord hi[3] = {0, 0, 0};
    for (const auto& v : turned.vertices)
        for (int i = 0; i < 3; ++i) hi[i] = std::max(hi[i], v[i]);
    for (const auto& f : rep.failures)
        for (int i = 0; i < 3; ++i) EXPECT_LE(f.point.num[i], hi[i] * f.point.den);
}

// --- properties ---------------------------------------------------------------

// Random rational segments on small solids: exact interval clipping, the
// indexed walk and the voxel walk all agree.
TEST(Property, SegmentInsideMatchesVoxelWalk) {
    std::mt19937_64 rng(2024);
    int instances = 0, outside = 0, inside = 0;
    for (std::uint64_t seed = 0; instances < 12 && seed < 400; ++seed) {
        const auto g = gen_composite(seed, 2 + seed % 4, 0);
        const oracle::Voxels vox(g.boxes);
        if (vox.size() > 64) continue;
        ++instances;
        const auto a = analyse(g.poly);
        const BrickIndex idx(a.decomp.bricks);
        auto coord = [&](int axis) {
            const std::int64_t lo = vox.lo()[axis] * 4 - 2, hi = vox.hi()[axis] * 4 + 2;
            return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
        };
        for (int k = 0; k < 1000 / 12 + 1; ++k) {
            const RationalPoint p({coord(0), coord(1), coord(2)}, 4), q({coord(0), coord(1), coord(2)}, 4);
            const bool want = oracle::segment_inside(vox, to_q(p), to_q(q));
            const auto pn = permute(p, a.rotation, false), qn = permute(q, a.rotation, false);
            EXPECT_EQ(segment_inside(pn, qn, a.decomp.bricks), want) << p << " " << q;
            EXPECT_EQ(idx.segment_inside(pn, qn), want) << p << " " << q;
            (want ? inside : outside) += 1;
        }
    }
    EXPECT_EQ(instances, 12);
    EXPECT_GT(inside, 50);
    EXPECT_GT(outside, 50);
}

// Segments between lattice points of a solid (many of them grazing faces).
TEST(Property, GrazingSegmentsMatchVoxelWalk) {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto g = gen_composite(seed, 2 + seed % 5, 0);
        const oracle::Voxels vox(g.boxes);
        if (vox.size() > 400) continue;
        const auto a = analyse(g.poly);
        const BrickIndex idx(a.decomp.bricks);
        auto coord = [&](int axis) { return std::uniform_int_distribution<std::int64_t>(vox.lo()[axis], vox.hi()[axis])(rng); };
        for (int k = 0; k < 60; ++k) {
            const RationalPoint p({coord(0), coord(1), coord(2)}, 1), q({coord(0), coord(1), coord(2)}, 1);
            EXPECT_EQ(idx.segment_inside(permute(p, a.rotation, false), permute(q, a.rotation, false)),
                      oracle::segment_inside(vox, to_q(p), to_q(q)))
                << p << " " << q;
        }
    }
}

namespace {

std::vector<bool> seen_by_any(const Analysis& a, const GuardSet& gs, GuardMode mode, int k) {
    const BrickIndex idx(a.decomp.bricks);
    std::vector<bool> out;
    for (const auto& p : sample_points(a.decomp.bricks, 2)) {
        bool s = false;
        for (const auto& g : gs.guards) s = s || guard_sees_point(idx, a.rotation.apply(g.a), a.rotation.apply(g.b), p, mode, k);
        out.push_back(s);
    }
    return out;
}

}  // namespace

// Nested sample sets: open K=3 (quarters) inside open K=7 (eighths) inside
// closed K=9 (eighths with endpoints). Deliberately weakened guard sets so
// that some points are unseen.
TEST(Property, CoverageMonotoneInSamples) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto a = analyse(gen_composite(seed, 6 + seed % 10, 0).poly);
        auto gs = place_guards(a, GuardMode::Open);
        if (gs.guards.size() > 1) gs.guards.pop_back();
        const auto k3 = seen_by_any(a, gs, GuardMode::Open, 3);
        const auto k7 = seen_by_any(a, gs, GuardMode::Open, 7);
        const auto c9 = seen_by_any(a, gs, GuardMode::Closed, 9);
        for (std::size_t i = 0; i < k3.size(); ++i) {
            EXPECT_TRUE(!k3[i] || k7[i]);
            EXPECT_TRUE(!k7[i] || c9[i]);
        }
    }
}

// Every witness the sampler accepts is a segment the voxel oracle accepts.
TEST(Property, WitnessesAreTrulyInside) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = gen_composite(seed, 2 + seed % 4, 0);
        const oracle::Voxels vox(g.boxes);
        if (vox.size() > 600) continue;
        const auto a = analyse(g.poly);
        const BrickIndex idx(a.decomp.bricks);
        for (const auto& e : a.edges.edges) {
            if (!e.reflex()) continue;
            for (const auto& q : edge_samples(e.a, e.b, GuardMode::Open, 4))
                for (const auto& p : sample_points(a.decomp.bricks, 2))
                    if (idx.segment_inside(q, p))
                        EXPECT_TRUE(oracle::segment_inside(vox, to_q(permute(q, a.rotation, true)), to_q(permute(p, a.rotation, true))));
        }
    }
}
