#include "circlelam/boundary.hpp"
#include "circlelam/circuit.hpp"
#include "circlelam/lamination.hpp"
#include "circlelam/portrait.hpp"
#include "circlelam/relations.hpp"
#include "circlelam/render.hpp"
#include "circlelam/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace circlelam;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t budget_from_env(std::size_t cli_value) {
    if (const char* env = std::getenv("CIRCLELAM_MAX_ANGLES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return cli_value;
}

int cmd_validate(const std::string& file, int depth_cap) {
    PortraitPair pair = parse_portrait_pair(read_file(file));
    ValidationReport report = validate(pair, depth_cap);
    std::cout << report.to_text();
    return report.pass ? kExitOk : kExitViolation;
}

int cmd_build(const std::string& file, int n, std::size_t budget) {
    PortraitPair pair = parse_portrait_pair(read_file(file));
    Tower tower(pair, budget);
    tower.build(n);
    int failures = 0;
    std::cout << "portrait: " << file << "\n";
    std::cout << "degree: " << tower.degree() << "\n";
    std::cout << "k: " << tower.k() << "\n";
    for (int m = 0; m <= n; ++m) {
        std::cout << "level " << m << ":\n";
        std::cout << "  angles: " << tower.angles_at(m).count() << "\n";
        for (Color c : {Color::White, Color::Black}) {
            std::cout << "  " << color_name(c) << "_classes: " << tower.relation(c, m).class_count()
                      << "\n";
            std::cout << "  " << color_name(c) << "_gaps: " << tower.gaps(c, m).gaps.size() << "\n";
        }
        for (const auto& r : verify_level(tower, m)) {
            std::cout << "  " << r.name << ": " << (r.ok ? "ok" : "FAIL");
            if (!r.ok && !r.detail.empty()) std::cout << " (" << r.detail << ")";
            std::cout << "\n";
            if (!r.ok) ++failures;
        }
    }
    std::cout << "result: " << (failures == 0 ? "ok" : "violations found") << "\n";
    return failures == 0 ? kExitOk : kExitViolation;
}

int cmd_stats(const std::string& file, int n, std::size_t budget) {
    PortraitPair pair = parse_portrait_pair(read_file(file));
    Tower tower(pair, budget);
    tower.build(n);
    std::cout << "portrait: " << file << "\n";
    std::cout << "degree: " << tower.degree() << "\nk: " << tower.k() << "\n";
    for (Color c : {Color::White, Color::Black}) {
        const LevelRelation& rel = tower.relation(c, n);
        std::cout << color_name(c) << " level " << n << ":\n";
        std::cout << "  gaps: " << tower.gaps(c, n).gaps.size() << "\n";
        std::cout << "  classes: " << rel.class_count() << "\n";
        std::map<int, int> histogram;
        std::map<std::string, int> by_type;
        for (int cls = 0; cls < rel.class_count(); ++cls) {
            histogram[rel.class_size(cls)] += 1;
            if (rel.class_size(cls) >= 2) by_type[dyn_type_name(rel.dyn_type[cls])] += 1;
        }
        std::cout << "  class_sizes:";
        for (const auto& [size, count] : histogram) std::cout << " " << size << "x" << count;
        std::cout << "\n  nontrivial_types:";
        for (const auto& [type, count] : by_type) std::cout << " " << type << "=" << count;
        std::cout << "\n";
        // stabilization of the level-1 nontrivial classes
        const LevelRelation& one = tower.relation(c, 1);
        const LevelAngles& a1 = tower.angles_at(1);
        int cap = std::max(n, 2);
        for (int cls = 0; cls < one.class_count(); ++cls) {
            if (one.class_size(cls) < 2) continue;
            Angle rep = a1.angles[one.classes[cls][0]];
            auto m0 = stabilization(tower, c, 1, rep, cap);
            std::cout << "  stabilization[" << rep.str() << "]: ";
            if (m0)
                std::cout << *m0 << "\n";
            else
                std::cout << "not_stabilized_by(" << cap << ")\n";
        }
    }
    return kExitOk;
}

int cmd_classes(const std::string& file, int n, const std::string& angle, std::size_t budget) {
    PortraitPair pair = parse_portrait_pair(read_file(file));
    Tower tower(pair, budget);
    if (angle.empty()) {
        for (Color c : {Color::White, Color::Black}) std::cout << tower.dump_level(c, n);
        return kExitOk;
    }
    Angle a = Angle::parse(angle);
    const LevelAngles& la = tower.angles_at(n);
    int idx = la.index_of(a);
    if (idx < 0) {
        std::cerr << angle << " is not a level-" << n << " angle\n";
        return kExitViolation;
    }
    for (Color c : {Color::White, Color::Black}) {
        const LevelRelation& rel = tower.relation(c, n);
        int cls = rel.class_of[idx];
        std::cout << n << " " << color_name(c) << " " << cls << " "
                  << dyn_type_name(rel.dyn_type[cls]) << ":";
        for (int i : rel.classes[cls]) std::cout << " " << la.angles[i].str();
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_boundary(const std::string& file, const std::string& angle, int n, std::size_t budget) {
    PortraitPair pair = parse_portrait_pair(read_file(file));
    Tower tower(pair, budget);
    Angle a = Angle::parse(angle);
    for (Color c : {Color::White, Color::Black}) {
        BoundaryClass approx = approx_class(tower, c, a, n);
        std::cout << color_name(c) << " approx_class (" << (approx.exact ? "exact" : "approximate")
                  << "):";
        for (const auto& x : approx.angles) std::cout << " " << x.str();
        std::cout << "\n";
        BoundaryClass fat = fatou_class(tower, c, a, n);
        std::cout << color_name(c) << " fatou_class (" << (fat.exact ? "exact" : "approximate")
                  << "):";
        for (const auto& x : fat.angles) std::cout << " " << x.str();
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_render(const std::string& file, int n, const std::string& mode, const std::string& out_path,
               int coarse, std::size_t budget) {
    PortraitPair pair = parse_portrait_pair(read_file(file));
    Tower tower(pair, budget);
    std::string svg;
    if (mode == "disk") {
        svg = render_lamination(tower, n, DiskStyle{});
    } else if (mode == "tiling") {
        if (!pair.geometry) throw std::invalid_argument("portrait file has no geometry block");
        TurtleTrace trace = turtle_trace(tower, *pair.geometry, n);
        svg = render_tiling(tower, trace, n, coarse, DiskStyle{});
        std::cerr << "closure_error: " << trace.closure_error << "\n";
    } else {
        throw CLI::ValidationError("--mode must be disk or tiling");
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << svg;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact circle-lamination engine for critical portrait pairs"};
    app.require_subcommand(1);

    std::string file, angle, mode = "disk", out_path = "out.svg";
    int depth = 1, depth_cap = 8, coarse = 1;
    std::size_t budget = 10'000'000;

    auto* validate_cmd = app.add_subcommand("validate", "check the portrait axioms");
    validate_cmd->add_option("file", file)->required();
    validate_cmd->add_option("--depth-cap", depth_cap, "separation search depth cap");

    auto* build_cmd = app.add_subcommand("build", "build the tower and run the invariant suite");
    build_cmd->add_option("file", file)->required();
    build_cmd->add_option("-n,--level", depth, "depth to build")->required();
    build_cmd->add_option("--max-angles", budget, "angle budget per level");

    auto* stats_cmd = app.add_subcommand("stats", "counts, class sizes, types, stabilization");
    stats_cmd->add_option("file", file)->required();
    stats_cmd->add_option("-n,--level", depth)->required();
    stats_cmd->add_option("--max-angles", budget);

    auto* classes_cmd = app.add_subcommand("classes", "dump level classes");
    classes_cmd->add_option("file", file)->required();
    classes_cmd->add_option("-n,--level", depth)->required();
    classes_cmd->add_option("--angle", angle, "only the classes of this angle");
    classes_cmd->add_option("--max-angles", budget);

    auto* boundary_cmd = app.add_subcommand("boundary", "chain-closure class queries");
    boundary_cmd->add_option("file", file)->required();
    boundary_cmd->add_option("--angle", angle)->required();
    boundary_cmd->add_option("-n,--level", depth)->required();
    boundary_cmd->add_option("--max-angles", budget);

    auto* render_cmd = app.add_subcommand("render", "emit SVG diagrams");
    render_cmd->add_option("file", file)->required();
    render_cmd->add_option("-n,--level", depth)->required();
    render_cmd->add_option("--mode", mode, "disk | tiling");
    render_cmd->add_option("-o,--out", out_path)->required();
    render_cmd->add_option("--coarse", coarse, "coloring level for tilings");
    render_cmd->add_option("--max-angles", budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        budget = budget_from_env(budget);
        if (validate_cmd->parsed()) return cmd_validate(file, depth_cap);
        if (build_cmd->parsed()) return cmd_build(file, depth, budget);
        if (stats_cmd->parsed()) return cmd_stats(file, depth, budget);
        if (classes_cmd->parsed()) return cmd_classes(file, depth, angle, budget);
        if (boundary_cmd->parsed()) return cmd_boundary(file, angle, depth, budget);
        if (render_cmd->parsed()) return cmd_render(file, depth, mode, out_path, coarse, budget);
    } catch (const circlelam::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
