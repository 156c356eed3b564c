// orthoguard command-line frontend.
//
// Exit codes: 0 success / pass, 1 invalid input or failed verification,
// 2 usage error, 3 internal postcondition violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "orthoguard/orthoguard.hpp"

using nlohmann::ordered_json;
namespace og = orthoguard;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kInternal = 3 };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw og::Error(og::ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw og::Error(og::ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

ordered_json point_json(const og::Point3& p) { return ordered_json::array({p.x, p.y, p.z}); }

ordered_json rational_json(const og::RationalPoint& p) {
    ordered_json j = ordered_json::array();
    for (int i = 0; i < 3; ++i) {
        if (p.den == 1) j.push_back(p.num[i]);
        else j.push_back(std::to_string(p.num[i]) + "/" + std::to_string(p.den));
    }
    return j;
}

og::Point3 point_from(const ordered_json& j) {
    if (!j.is_array() || j.size() != 3) throw og::Error(og::ErrorCode::Syntax, "expected a coordinate triple");
    return {j[0].get<og::Coord>(), j[1].get<og::Coord>(), j[2].get<og::Coord>()};
}

ordered_json certificate_json(const og::Certificate& c) {
    return {{"r", c.r}, {"g", c.g}, {"b", c.b}, {"m", c.m}, {"boundR", c.bound_r}, {"boundM", c.bound_m}, {"count", c.count}};
}

ordered_json guards_json(const og::GuardSet& gs) {
    ordered_json guards = ordered_json::array();
    for (const auto& g : gs.guards)
        guards.push_back({{"a", point_json(g.a)}, {"b", point_json(g.b)}, {"axis", std::string(og::axis_name(g.axis))}});
    return {{"version", kSchemaVersion},
            {"status", gs.status == og::GuardStatus::Convex ? "convex" : "guarded"},
            {"mode", og::guard_mode_name(gs.mode)},
            {"guards", guards},
            {"certificate", certificate_json(gs.certificate)}};
}

std::vector<og::GuardEdge> guards_from(const ordered_json& j) {
    std::vector<og::GuardEdge> out;
    for (const auto& g : j.at("guards")) {
        og::GuardEdge e;
        e.a = point_from(g.at("a"));
        e.b = point_from(g.at("b"));
        if (auto ax = og::parse_axis(g.at("axis").get<std::string>())) e.axis = *ax;
        else throw og::Error(og::ErrorCode::Syntax, "bad guard axis");
        out.push_back(e);
    }
    return out;
}

ordered_json stats_json(const og::Stats& s) {
    ordered_json counts;
    for (auto k : {og::ContactKind::PrimitiveD, og::ContactKind::PrimitiveI, og::ContactKind::Collar, og::ContactKind::Other})
        counts[og::contact_kind_name(k)] = s.contacts[static_cast<std::size_t>(k)];
    ordered_json ineq = {
        {"collar", {{"expr", "m >= 4r-12g-4b+12"}, {"rhs", s.collar_rhs}, {"holds", s.collar_holds()}}},
        {"weak", {{"expr", "m >= 3r-12g+12"}, {"rhs", s.weak_rhs}, {"holds", s.weak_holds()}}},
    };
    if (s.stack) ineq["stack"] = {{"expr", "m == 6r-12g+12"}, {"rhs", s.stack_rhs}, {"holds", s.stack_identity_holds()}};
    return {{"version", kSchemaVersion},
            {"n", s.n},
            {"m", s.m},
            {"r", s.r},
            {"g", {{"euler", s.genus_euler}, {"graph", s.genus_graph}}},
            {"b", s.b},
            {"brickCount", s.bricks},
            {"contactCounts", counts},
            {"inequalities", ineq},
            {"boundR", s.bounds.bound_r},
            {"boundM", s.bounds.bound_m}};
}

ordered_json decomposition_json(const og::Analysis& a) {
    ordered_json bricks = ordered_json::array(), contacts = ordered_json::array();
    for (const auto& b : a.decomp.bricks) bricks.push_back({{"id", b.id}, {"lo", point_json(b.box.lo)}, {"hi", point_json(b.box.hi)}});
    for (const auto& c : a.decomp.contacts) {
        ordered_json edges = ordered_json::array();
        for (std::size_t e : c.reflex_edges)
            edges.push_back({{"a", point_json(a.edges.edges[e].a)}, {"b", point_json(a.edges.edges[e].b)}});
        contacts.push_back({{"id", c.id},
                            {"z", c.z},
                            {"rect", {c.rect.x0, c.rect.y0, c.rect.x1, c.rect.y1}},
                            {"lower", c.lower},
                            {"upper", c.upper},
                            {"kind", og::contact_kind_name(a.classes[c.id].kind)},
                            {"reflexEdges", edges}});
    }
    return {{"version", kSchemaVersion}, {"frame", a.rotation.tag()}, {"bricks", bricks}, {"contacts", contacts}};
}

og::Polygon2 parse_polygon(const std::string& text) {
    og::Polygon2 out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto comma = item.find(',');
        if (comma == std::string::npos) throw og::Error(og::ErrorCode::InvalidArgument, "polygon vertices are 'x,z' pairs separated by ';'");
        out.push_back({std::stoll(item.substr(0, comma)), std::stoll(item.substr(comma + 1))});
    }
    return out;
}

og::Analysis load(const std::string& path) { return og::analyse(og::parse_polyhedron(read_file(path))); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reflex-edge guard placement for 2-reflex orthogonal polyhedra"};
    app.require_subcommand(1);

    std::string in, out, guards_path, report_path, mode_text = "open", family;
    int density = 3, edge_samples = 16;
    og::GenSpec spec;
    std::string polygon_text;
    std::string dump_path;

    auto* validate = app.add_subcommand("validate", "Check that the input is a valid orthogonal polyhedron");
    validate->add_option("--in", in, "Input .orp file")->required();

    auto* stats = app.add_subcommand("stats", "Print counts, genus, collars and bounds as JSON");
    stats->add_option("--in", in, "Input .orp file")->required();

    auto* decompose = app.add_subcommand("decompose", "Decompose into bricks and contact rectangles");
    decompose->add_option("--in", in, "Input .orp file")->required();
    decompose->add_option("--dump-bricks", dump_path, "Write bricks and contacts as JSON ('-' for stdout)");

    auto* guard = app.add_subcommand("guard", "Place reflex-edge guards");
    guard->add_option("--in", in, "Input .orp file")->required();
    guard->add_option("--mode", mode_text, "open or closed guards")->check(CLI::IsMember({"open", "closed"}));
    guard->add_option("--out", out, "Output guards.json ('-' for stdout)");

    auto* verify = app.add_subcommand("verify", "Check sampled coverage of a guard set");
    verify->add_option("--in", in, "Input .orp file")->required();
    verify->add_option("--guards", guards_path, "guards.json produced by 'guard'")->required();
    auto* mode_opt = verify->add_option("--mode", mode_text, "open or closed guards (default: from guards.json)")
                         ->check(CLI::IsMember({"open", "closed"}));
    verify->add_option("--density", density, "Sample lattice density per brick axis")->check(CLI::PositiveNumber);
    verify->add_option("--edge-samples", edge_samples, "Sample points per guard edge")->check(CLI::Range(2, 100000));
    verify->add_option("--report", report_path, "Write a JSON coverage report ('-' for stdout)");

    auto* gen = app.add_subcommand("generate", "Generate a polyhedron family instance as .orp");
    gen->add_option("--family", spec.family, "cuboid extrude comb stack castle doubleCastle ring figure2 composite monotone")
        ->required()
        ->check(CLI::IsMember({"cuboid", "extrude", "comb", "stack", "castle", "doubleCastle", "ring", "figure2", "composite", "monotone"}));
    gen->add_option("--seed", spec.seed, "PRNG seed (random families)");
    gen->add_option("--k", spec.k, "Comb teeth");
    gen->add_option("--n", spec.n, "Bricks (stack, composite) or columns (monotone)");
    gen->add_option("--levels", spec.levels, "Castle levels");
    gen->add_option("--arm", spec.arm, "Ring bar length");
    gen->add_option("--loops", spec.loops, "Ring or composite handles");
    gen->add_option("--sx", spec.sx, "Cuboid x extent");
    gen->add_option("--sy", spec.sy, "Cuboid y extent");
    gen->add_option("--sz", spec.sz, "Cuboid z extent");
    gen->add_option("--depth", spec.depth, "Extrusion depth");
    gen->add_option("--polygon", polygon_text, "Extruded polygon 'x,z;x,z;...'");
    gen->add_option("--out", out, "Output .orp ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (validate->parsed()) {
            const auto report = og::validate(og::parse_polyhedron(read_file(in)));
            if (report.ok) {
                std::cout << "valid\n";
                return kOk;
            }
            std::cout << report.summary() << "\n";
            return kFail;
        }
        if (stats->parsed()) {
            std::cout << stats_json(og::compute_stats(load(in))).dump(2) << "\n";
            return kOk;
        }
        if (decompose->parsed()) {
            const auto a = load(in);
            if (!dump_path.empty()) write_output(dump_path, decomposition_json(a).dump(2) + "\n");
            if (dump_path != "-")
                std::cout << "bricks " << a.decomp.bricks.size() << ", contacts " << a.decomp.contacts.size() << "\n";
            return kOk;
        }
        if (guard->parsed()) {
            const auto gs = og::place_guards(load(in), *og::parse_guard_mode(mode_text));
            write_output(out, guards_json(gs).dump(2) + "\n");
            return kOk;
        }
        if (verify->parsed()) {
            const auto a = load(in);
            const auto j = ordered_json::parse(read_file(guards_path));
            const auto guards = guards_from(j);
            og::GuardMode mode = og::GuardMode::Open;
            if (!mode_opt->empty()) mode = *og::parse_guard_mode(mode_text);
            else if (j.contains("mode")) {
                auto m = og::parse_guard_mode(j["mode"].get<std::string>());
                if (!m) throw og::Error(og::ErrorCode::Syntax, "bad mode in guards file");
                mode = *m;
            }
            const auto rep = og::coverage_check(a, guards, mode, {density, edge_samples});
            if (!report_path.empty()) {
                ordered_json fails = ordered_json::array();
                for (const auto& f : rep.failures)
                    fails.push_back({{"point", rational_json(f.point)}, {"nearestGuardDistance", f.nearest_guard_distance}});
                write_output(report_path, ordered_json{{"version", kSchemaVersion},
                                                       {"mode", og::guard_mode_name(mode)},
                                                       {"pass", rep.pass()},
                                                       {"samples", rep.samples},
                                                       {"covered", rep.covered},
                                                       {"failures", fails}}
                                                  .dump(2) +
                                              "\n");
            }
            if (report_path != "-")
                std::cout << (rep.pass() ? "pass" : "fail") << " " << rep.covered << "/" << rep.samples << " guards " << guards.size() << "\n";
            return rep.pass() ? kOk : kFail;
        }
        if (gen->parsed()) {
            if (!polygon_text.empty()) spec.polygon = parse_polygon(polygon_text);
            write_output(out, og::write_orp(og::generate(spec).poly));
            return kOk;
        }
    } catch (const og::Error& e) {
        std::cerr << e.what() << "\n";
        if (e.is_internal()) return kInternal;
        return e.code() == og::ErrorCode::InvalidArgument ? kUsage : kFail;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "Syntax: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
