#include <gtest/gtest.h>

#include "oracles.hpp"
#include "orthoguard/classify.hpp"
#include "orthoguard/gen.hpp"

using namespace orthoguard;

namespace {

struct ContactType {
    char letter;
    const char* sides;  // x-high, y-high, x-low, y-low
    int dm;             // m - m'
    int dr;             // r - r'
};

// Expected (m - m', r - r') per contact type.
const ContactType kTypes[] = {
    {'a', "LLLL", 0, 4},  {'b', "FLLL", 0, 3},  {'c', "FFLL", -3, 2}, {'d', "FFFL", -6, 1}, {'e', "FLFL", 0, 2},
    {'f', "UUUU", 0, 4},  {'g', "FUUU", 0, 3},  {'h', "FFUU", -3, 2}, {'i', "FFFU", -6, 1}, {'j', "FUFU", 0, 2},
    {'k', "FLLU", 2, 3},  {'l', "LLLU", 4, 4},  {'m', "FLUL", 4, 3},  {'n', "LLUU", 4, 4},  {'o', "LULU", 8, 4},
    {'p', "FLUU", 2, 3},  {'q', "LUUU", 4, 4},  {'r', "FULU", 4, 3},  {'s', "FLFU", 0, 2},  {'t', "FFLU", -1, 2},
};

/// Lower brick z in [0,1], upper z in [1,2]; the common core is [1,3]^2 and
/// each non-flush side sticks out by one unit.
std::pair<Box, Box> instance(const char* sides) {
    Box lo{{1, 1, 0}, {3, 3, 1}}, up{{1, 1, 1}, {3, 3, 2}};
    for (int i = 0; i < 4; ++i) {
        Box& out = sides[i] == 'L' ? lo : up;
        if (sides[i] == 'F') continue;
        const Axis a = i % 2 == 0 ? Axis::X : Axis::Y;
        if (i < 2) out.hi[a] += 1;
        else out.lo[a] -= 1;
    }
    return {lo, up};
}

EdgeSet edges_of(const Polyhedron& p) { return classify_edges(p, build_adjacency(p)); }

ContactClass class_of(const Box& lo, const Box& up) { return classify_contact({}, Brick{0, lo}, Brick{1, up}); }

struct Analysed {
    Polyhedron poly;
    AdjacencyTables adj;
    EdgeSet edges;
    Decomposition decomp;
    BrickGraph graph;
    std::vector<ContactClass> classes;
};

Analysed analyse_boxes(const Polyhedron& p) {
    Analysed a{p, build_adjacency(p), {}, {}, {}, {}};
    a.edges = classify_edges(p, a.adj);
    a.decomp = extract_bricks_and_contacts(p, a.adj, a.edges);
    a.graph = build_brick_graph(a.decomp.bricks, a.decomp.contacts);
    a.classes = classify_contacts(a.decomp);
    return a;
}

}  // namespace

TEST(ContactTypes, SideStatesOfInstances) {
    for (const auto& t : kTypes) {
        const auto [lo, up] = instance(t.sides);
        const auto st = side_states(lo, up);
        std::string got;
        for (auto s : st) got += side_letter(s);
        EXPECT_EQ(got, t.sides) << t.letter;
    }
}

TEST(ContactTypes, DeltaTableMatchesExpectedAndVoxelOracle) {
    for (const auto& t : kTypes) {
        const auto [lo, up] = instance(t.sides);
        const auto whole = edges_of(boxes_to_polyhedron({lo, up}));
        const auto a = edges_of(boxes_to_polyhedron({lo}));
        const auto b = edges_of(boxes_to_polyhedron({up}));
        const int dm = static_cast<int>(whole.m()) - static_cast<int>(a.m() + b.m());
        const int dr = static_cast<int>(whole.r()) - static_cast<int>(a.r() + b.r());
        EXPECT_EQ(dm, t.dm) << "type " << t.letter;
        EXPECT_EQ(dr, t.dr) << "type " << t.letter;

        const auto vox = oracle::count_edges(oracle::Voxels({lo, up}));
        EXPECT_EQ(vox.m - 24, t.dm) << "oracle, type " << t.letter;
        EXPECT_EQ(vox.r, t.dr) << "oracle, type " << t.letter;
    }
}

TEST(ContactTypes, ReflexEdgeCountIsNonFlushSides) {
    for (const auto& t : kTypes) {
        const auto [lo, up] = instance(t.sides);
        const auto a = analyse_boxes(boxes_to_polyhedron({lo, up}));
        ASSERT_EQ(a.decomp.contacts.size(), 1u) << t.letter;
        EXPECT_EQ(static_cast<int>(a.decomp.contacts[0].reflex_edges.size()), t.dr) << t.letter;
        EXPECT_EQ(a.classes[0].reflex_edge_count, t.dr) << t.letter;
    }
}

TEST(ContactTypes, Kinds) {
    for (const auto& t : kTypes) {
        const auto [lo, up] = instance(t.sides);
        const ContactKind k = class_of(lo, up).kind;
        switch (t.letter) {
        case 'd': EXPECT_EQ(k, ContactKind::PrimitiveD); break;
        case 'i': EXPECT_EQ(k, ContactKind::PrimitiveI); break;
        case 'a':
        case 'f': EXPECT_EQ(k, ContactKind::Collar); break;
        default: EXPECT_EQ(k, ContactKind::Other) << t.letter;
        }
    }
}

TEST(Classify, SmallBoxOnBigBoxIsCollar) {
    const auto c = class_of({{0, 0, 0}, {4, 4, 1}}, {{1, 1, 1}, {3, 3, 2}});
    EXPECT_EQ(c.kind, ContactKind::Collar);
    EXPECT_EQ(c.reflex_edge_count, 4);
}

TEST(Classify, FigureTwoContactIsOther) {
    const auto a = analyse_boxes(gen_figure2().poly);
    ASSERT_EQ(a.classes.size(), 1u);
    EXPECT_EQ(a.classes[0].kind, ContactKind::Other);
    EXPECT_EQ(a.classes[0].reflex_edge_count, 2);
    EXPECT_EQ(count_collars(a.classes), 0u);
}

TEST(Classify, WeddingCakeHasTwoCollars) {
    const auto a = analyse_boxes(boxes_to_polyhedron({{{0, 0, 0}, {6, 6, 1}}, {{1, 1, 1}, {5, 5, 2}}, {{2, 2, 2}, {4, 4, 3}}}));
    EXPECT_EQ(count_collars(a.classes), 2u);
}

TEST(Classify, StacksHaveNoCollars) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = analyse_boxes(gen_stack(s, 3 + s).poly);
        EXPECT_EQ(count_collars(a.classes), 0u);
        for (const auto& c : a.classes) EXPECT_TRUE(c.primitive());
    }
}

TEST(Shape, SingleBoxIsTrivialCastle) {
    const auto a = analyse_boxes(gen_cuboid().poly);
    const auto s = shape_info(whole(a.graph, a.decomp, a.edges), a.classes);
    EXPECT_TRUE(s.is_castle);
    EXPECT_TRUE(s.prism);
    EXPECT_FALSE(s.prism_axis.has_value());
}

TEST(Shape, TwoBoxesPrimitiveIsDoubleCastle) {
    const auto a = analyse_boxes(gen_stack(1, 2).poly);
    EXPECT_EQ(a.edges.r(), 1u);
    const auto s = shape_info(whole(a.graph, a.decomp, a.edges), a.classes);
    EXPECT_TRUE(s.is_double_castle);
    EXPECT_NE(s.joint_edge, npos);
}

TEST(Shape, CombIsMonotonePrism) {
    const auto a = analyse_boxes(gen_comb(3).poly);
    EXPECT_EQ(a.edges.r(), 4u);
    const auto s = shape_info(whole(a.graph, a.decomp, a.edges), a.classes);
    EXPECT_TRUE(s.prism);
    EXPECT_EQ(s.prism_axis, Axis::Y);
    EXPECT_EQ(s.monotone, Axis::Y);
}

TEST(Shape, GeneratedFamilies) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int levels = 1 + static_cast<int>(seed % 5);
        {
            const auto a = analyse_boxes(gen_castle(seed, levels).poly);
            const auto s = shape_info(whole(a.graph, a.decomp, a.edges), a.classes);
            EXPECT_TRUE(s.is_castle) << seed;
            EXPECT_TRUE(s.is_stack) << seed;
        }
        {
            const auto a = analyse_boxes(gen_double_castle(seed, levels).poly);
            const auto s = shape_info(whole(a.graph, a.decomp, a.edges), a.classes);
            EXPECT_TRUE(s.is_double_castle) << seed;
            EXPECT_EQ(a.edges.r() % 2, 1u) << seed;
        }
    }
}

TEST(PrismInfo, LeafMixedAndAligned) {
    // Base with two children stacked at opposite ends along X: all reflex
    // edges run along Y.
    {
        const auto a = analyse_boxes(boxes_to_polyhedron({{{0, 0, 0}, {5, 2, 1}}, {{0, 0, 1}, {2, 2, 2}}, {{3, 0, 1}, {5, 2, 2}}}));
        const auto c = whole(a.graph, a.decomp, a.edges);
        const auto base = castle_base(c, a.classes, true);
        ASSERT_TRUE(base.has_value());
        const auto info = prism_info_precompute(c, {*base, true});
        EXPECT_TRUE(info[*base].prism);
        EXPECT_EQ(info[*base].axis, Axis::Y);
        for (std::size_t v = 0; v < a.graph.nodes; ++v)
            if (v != *base) {
                EXPECT_TRUE(info[v].prism);
                EXPECT_FALSE(info[v].axis.has_value());
            }
    }
    // Children offset along different axes: mixed directions.
    {
        const auto a = analyse_boxes(boxes_to_polyhedron(
            {{{0, 0, 0}, {5, 5, 1}}, {{0, 0, 1}, {5, 2, 2}}, {{0, 3, 1}, {5, 5, 2}}, {{0, 0, 2}, {2, 2, 3}}, {{3, 0, 2}, {5, 2, 3}}}));
        const auto c = whole(a.graph, a.decomp, a.edges);
        const auto base = castle_base(c, a.classes, true);
        ASSERT_TRUE(base.has_value());
        const auto info = prism_info_precompute(c, {*base, true});
        EXPECT_FALSE(info[*base].prism);
    }
}
