#include "circlelam/lamination.hpp"

#include "circlelam/dsu.hpp"
#include "circlelam/portrait.hpp"

#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

using namespace circlelam;

namespace {

PortraitPair load(const std::string& name) {
    std::ifstream in(std::string(CIRCLELAM_DATA_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_portrait_pair(os.str());
}

std::vector<Angle> class_angles(Tower& tower, Color c, int n, int cls) {
    std::vector<Angle> out;
    const LevelAngles& la = tower.angles_at(n);
    for (int i : tower.relation(c, n).classes[cls]) out.push_back(la.angles[i]);
    return out;
}

std::set<std::vector<Angle>> nontrivial_classes(Tower& tower, Color c, int n) {
    std::set<std::vector<Angle>> out;
    const LevelRelation& rel = tower.relation(c, n);
    for (int cls = 0; cls < rel.class_count(); ++cls)
        if (rel.class_size(cls) >= 2) out.insert(class_angles(tower, c, n, cls));
    return out;
}

std::vector<Angle> angles(std::initializer_list<const char*> list) {
    std::vector<Angle> out;
    for (const char* s : list) out.push_back(Angle::parse(s));
    return out;
}

} // namespace

TEST_CASE("angles_at_level enumerates mu^-n(A0)") {
    PortraitPair g = load("g.portrait");
    LevelAngles l0 = angles_at_level(g.zero, 4, 0);
    CHECK(l0.angles == angles({"0", "1/4", "1/2", "3/4"}));
    LevelAngles l1 = angles_at_level(g.zero, 4, 1);
    CHECK(l1.count() == 16);
    for (const char* s : {"2/16", "10/16", "3/16", "7/16", "11/16", "15/16"})
        CHECK(l1.index_of(Angle::parse(s)) >= 0);

    PortraitPair r4 = load("r4.portrait");
    LevelAngles r1 = angles_at_level(r4.zero, 3, 1);
    CHECK(r1.count() == 9);
    std::set<Angle> expected;
    for (const auto& z : r4.zero.zero_angles)
        for (const auto& p : preimages(z, 3)) expected.insert(p);
    CHECK(std::set<Angle>(r1.angles.begin(), r1.angles.end()) == expected);
}

TEST_CASE("level-1 classes are the portrait classes") {
    Tower g(load("g.portrait"));
    CHECK(nontrivial_classes(g, Color::White, 1) ==
          std::set<std::vector<Angle>>{angles({"2/16", "10/16"}), angles({"3/16", "7/16"}),
                                       angles({"11/16", "15/16"})});
    CHECK(nontrivial_classes(g, Color::Black, 1) ==
          std::set<std::vector<Angle>>{angles({"1/16", "5/16"}), angles({"6/16", "14/16"}),
                                       angles({"9/16", "13/16"})});

    Tower r4(load("r4.portrait"));
    CHECK(nontrivial_classes(r4, Color::White, 1) ==
          std::set<std::vector<Angle>>{angles({"1/9", "4/9", "7/9"})});
}

TEST_CASE("frozen level-1 gap decomposition of g") {
    Tower g(load("g.portrait"));
    // white gaps, as sets of arc ids (arc i starts at i/16)
    const GapSet& wg = g.gaps(Color::White, 1);
    REQUIRE(wg.gaps.size() == 4);
    auto arcs_of = [&](const GapSet& gs, int id) {
        std::set<int> out(gs.gaps[id].arcs.begin(), gs.gaps[id].arcs.end());
        return out;
    };
    std::set<std::set<int>> white_arcs;
    for (int i = 0; i < 4; ++i) white_arcs.insert(arcs_of(wg, i));
    CHECK(white_arcs == std::set<std::set<int>>{
                            {15, 0, 1, 10}, {2, 7, 8, 9}, {3, 4, 5, 6}, {11, 12, 13, 14}});

    const GapSet& bg = g.gaps(Color::Black, 1);
    std::set<std::set<int>> black_arcs;
    for (int i = 0; i < 4; ++i) black_arcs.insert(arcs_of(bg, i));
    CHECK(black_arcs == std::set<std::set<int>>{
                            {1, 2, 3, 4}, {5, 14, 15, 0}, {6, 7, 8, 13}, {9, 10, 11, 12}});
}

TEST_CASE("frozen level-1 gaps of r4") {
    Tower r4(load("r4.portrait"));
    const GapSet& wg = r4.gaps(Color::White, 1);
    REQUIRE(wg.gaps.size() == 3);
    std::set<std::set<int>> white_arcs;
    for (int i = 0; i < 3; ++i)
        white_arcs.insert(std::set<int>(wg.gaps[i].arcs.begin(), wg.gaps[i].arcs.end()));
    CHECK(white_arcs == std::set<std::set<int>>{{1, 2, 3}, {4, 5, 6}, {7, 8, 0}});

    const GapSet& bg = r4.gaps(Color::Black, 1);
    std::set<std::set<int>> black_arcs;
    for (int i = 0; i < 3; ++i)
        black_arcs.insert(std::set<int>(bg.gaps[i].arcs.begin(), bg.gaps[i].arcs.end()));
    CHECK(black_arcs == std::set<std::set<int>>{{3, 4, 5}, {2, 6, 7}, {8, 0, 1}});
}

TEST_CASE("gap arcs carry one type each in cyclic order") {
    for (const char* name : {"g.portrait", "r4.portrait", "r2.portrait"}) {
        CAPTURE(name);
        Tower tower(load(name));
        int k = tower.k();
        for (Color c : {Color::White, Color::Black}) {
            for (int n = 0; n <= 3; ++n) {
                for (const auto& gap : tower.gaps(c, n).gaps) {
                    REQUIRE(static_cast<int>(gap.arcs.size()) == k);
                    std::set<int> seen(gap.types.begin(), gap.types.end());
                    CHECK(static_cast<int>(seen.size()) == k);
                    for (int j = 1; j < k; ++j) CHECK(gap.types[j] == (gap.types[j - 1] + 1) % k);
                }
            }
        }
    }
}

// Independent construction of ~_{2,w} for g: brute-force succeeding pairs
// over the frozen level-1 gaps, then transitive closure.
TEST_CASE("level-2 white relation of g against a brute-force oracle") {
    Tower g(load("g.portrait"));
    const LevelAngles& a2 = g.angles_at(2);
    const LevelAngles& a1 = g.angles_at(1);
    const LevelRelation& w1 = g.relation(Color::White, 1);
    const GapSet& wg1 = g.gaps(Color::White, 1);

    // succeeding-or-self pairs of ~_{1,w} as angle pairs
    std::set<std::pair<Angle, Angle>> succ1;
    for (int i = 0; i < a1.count(); ++i) {
        Angle from = a1.angles[i];
        Angle to = a1.angles[w1.class_succ(i)];
        succ1.emplace(from, to);
    }
    auto in_gap = [&](const Gap& gap, const Angle& x) {
        for (int a : gap.arcs) {
            CyclicArc arc{a1.angles[a], a1.angles[(a + 1) % a1.count()]};
            if (arc.contains(x)) return true;
        }
        return false;
    };

    DisjointSet dsu(a2.angles.size());
    for (int i = 0; i < a2.count(); ++i) {
        for (int j = 0; j < a2.count(); ++j) {
            if (i == j) continue;
            Angle mi = mu(a2.angles[i], 4), mj = mu(a2.angles[j], 4);
            if (!succ1.count({mi, mj})) continue;
            for (const auto& gap : wg1.gaps) {
                if (in_gap(gap, a2.angles[i]) && in_gap(gap, a2.angles[j])) {
                    dsu.unite(i, j);
                    break;
                }
            }
        }
    }
    const LevelRelation& w2 = g.relation(Color::White, 2);
    for (int i = 0; i < a2.count(); ++i)
        for (int j = i + 1; j < a2.count(); ++j)
            CHECK(dsu.same(i, j) == (w2.class_of[i] == w2.class_of[j]));
}

TEST_CASE("count identities across levels") {
    for (const char* name : {"g.portrait", "r4.portrait", "r2.portrait"}) {
        CAPTURE(name);
        Tower tower(load(name));
        int d = tower.degree(), k = tower.k();
        for (Color c : {Color::White, Color::Black}) {
            for (int n = 0; n <= 3; ++n) {
                Int dn = boost::multiprecision::pow(Int(d), n);
                const LevelRelation& rel = tower.relation(c, n);
                CHECK(Int(tower.angles_at(n).count()) == Int(k) * dn);
                CHECK(Int(tower.gaps(c, n).gaps.size()) == dn);
                Int sizes = 0;
                for (const auto& cls : rel.classes) sizes += cls.size();
                CHECK(sizes == Int(k) * dn);
                CHECK(sizes - rel.class_count() == dn - 1);
                CHECK(Int(rel.class_count()) == (Int(k) - 1) * dn + 1);
            }
        }
    }
}

TEST_CASE("g white level 2 has 49 classes") {
    Tower g(load("g.portrait"));
    const LevelRelation& w2 = g.relation(Color::White, 2);
    CHECK(w2.class_count() == 49);
    Int excess = 0;
    for (const auto& cls : w2.classes) excess += Int(cls.size()) - 1;
    CHECK(excess == 15);
}

TEST_CASE("classify: g classes are Julia, synthetic pairs have Fatou types") {
    Tower g(load("g.portrait"));
    for (Color c : {Color::White, Color::Black}) {
        const LevelRelation& rel = g.relation(c, 1);
        for (int cls = 0; cls < rel.class_count(); ++cls)
            if (rel.class_size(cls) >= 2) CHECK(rel.dyn_type[cls] == DynType::Julia);
    }

    Tower syn(load("synthetic_d2.portrait"));
    const LevelRelation& w1 = syn.relation(Color::White, 1);
    const LevelAngles& a1 = syn.angles_at(1);
    int zero_cls = w1.class_of[a1.index_of(Angle())];
    CHECK(w1.dyn_type[zero_cls] == DynType::PeriodicFatou);
    const LevelRelation& b1 = syn.relation(Color::Black, 1);
    int quarter_cls = b1.class_of[a1.index_of(Angle(1, 4))];
    CHECK(b1.dyn_type[quarter_cls] == DynType::Julia);

    // degree-4 pair with a periodic class and one falling into it
    PortraitPair d4 = parse_portrait_pair(
        "{\"degree\": 4, \"white\": [[\"0/1\",\"1/2\"],[\"1/8\",\"5/8\"],[\"1/16\",\"9/16\"]],"
        " \"black\": [[\"3/16\",\"7/16\",\"11/16\",\"15/16\"]]}");
    Tower tower(d4);
    const LevelRelation& rel = tower.relation(Color::White, 1);
    const LevelAngles& la = tower.angles_at(1);
    CHECK(rel.dyn_type[rel.class_of[la.index_of(Angle())]] == DynType::PeriodicFatou);
    CHECK(rel.dyn_type[rel.class_of[la.index_of(Angle(1, 8))]] == DynType::PreperiodicFatou);
}

TEST_CASE("predicted size equals the direct count") {
    for (const char* name : {"g.portrait", "r4.portrait", "r2.portrait", "synthetic_d2.portrait"}) {
        CAPTURE(name);
        Tower tower(load(name));
        for (Color c : {Color::White, Color::Black}) {
            for (int n = 1; n <= 4; ++n) {
                const LevelRelation& rel = tower.relation(c, n);
                for (int cls = 0; cls < rel.class_count(); ++cls)
                    CHECK(predicted_size(tower, c, n, cls) == Int(rel.class_size(cls)));
            }
        }
    }
}

TEST_CASE("g class over {1/8, 5/8} keeps size two; synthetic sizes double") {
    Tower g(load("g.portrait"));
    for (int n = 1; n <= 4; ++n) {
        const LevelAngles& la = g.angles_at(n);
        const LevelRelation& rel = g.relation(Color::White, n);
        int cls = rel.class_of[la.index_of(Angle(1, 8))];
        CHECK(class_angles(g, Color::White, n, cls) == angles({"1/8", "5/8"}));
    }

    Tower syn(load("synthetic_d2.portrait"));
    for (int n = 1; n <= 6; ++n) {
        const LevelAngles& la = syn.angles_at(n);
        const LevelRelation& rel = syn.relation(Color::White, n);
        int cls = rel.class_of[la.index_of(Angle())];
        CHECK(Int(rel.class_size(cls)) == boost::multiprecision::pow(Int(2), n));
        CHECK(predicted_size(syn, Color::White, n, cls) == boost::multiprecision::pow(Int(2), n));
    }
}

TEST_CASE("julia class sizes stay under 2^(d-1)") {
    for (const char* name : {"g.portrait", "r4.portrait", "r2.portrait"}) {
        Tower tower(load(name));
        Int bound = boost::multiprecision::pow(Int(2), tower.degree() - 1);
        for (Color c : {Color::White, Color::Black})
            for (int n = 1; n <= 4; ++n) {
                const LevelRelation& rel = tower.relation(c, n);
                for (int cls = 0; cls < rel.class_count(); ++cls)
                    if (rel.dyn_type[cls] == DynType::Julia) CHECK(Int(rel.class_size(cls)) <= bound);
            }
    }
}

TEST_CASE("stabilization depths") {
    Tower g(load("g.portrait"));
    CHECK(stabilization(g, Color::White, 1, Angle(1, 8), 6) == 1);
    Tower syn(load("synthetic_d2.portrait"));
    CHECK(stabilization(syn, Color::White, 1, Angle(), 6) == std::nullopt);
}

TEST_CASE("connection graphs are trees with the expected counts") {
    Tower g(load("g.portrait"));
    ConnectionGraph cg = connection_graph(g.relation(Color::White, 1), g.gaps(Color::White, 1));
    CHECK(cg.gap_nodes == 4);
    CHECK(cg.class_nodes == 13);
    CHECK(cg.edges.size() == 16);
    CHECK(cg.is_tree());

    ConnectionGraph cg0 = connection_graph(g.relation(Color::Black, 0), g.gaps(Color::Black, 0));
    CHECK(cg0.gap_nodes == 1);
    CHECK(cg0.class_nodes == 4);
    CHECK(cg0.edges.size() == 4);
    CHECK(cg0.is_tree());

    Tower r4(load("r4.portrait"));
    ConnectionGraph cg2 = connection_graph(r4.relation(Color::White, 2), r4.gaps(Color::White, 2));
    CHECK(cg2.gap_nodes == 9);
    CHECK(cg2.class_nodes == 19);
    CHECK(cg2.edges.size() == 27);
    CHECK(cg2.is_tree());
}

TEST_CASE("gap parents nest correctly") {
    for (const char* name : {"g.portrait", "r2.portrait"}) {
        Tower tower(load(name));
        for (Color c : {Color::White, Color::Black}) {
            for (int n = 1; n <= 3; ++n) {
                const GapSet& gs = tower.gaps(c, n);
                const GapSet& up = tower.gaps(c, n - 1);
                const LevelAngles& la = tower.angles_at(n);
                const LevelAngles& pa = tower.angles_at(n - 1);
                for (const auto& gap : gs.gaps)
                    for (int a : gap.arcs)
                        CHECK(up.gap_of_arc[pa.arc_containing(la.angles[a])] == gap.parent);
            }
        }
    }
}

TEST_CASE("gap images under mu are gaps one level down") {
    Tower g(load("g.portrait"));
    for (Color c : {Color::White, Color::Black}) {
        for (int n = 1; n <= 3; ++n) {
            const GapSet& gs = g.gaps(c, n);
            const GapSet& up = g.gaps(c, n - 1);
            int below = g.angles_at(n - 1).count();
            for (const auto& gap : gs.gaps) {
                int image = g.mu_gap(c, n, gap.id);
                std::set<int> image_arcs;
                for (int a : gap.arcs) image_arcs.insert(a % below);
                CHECK(image_arcs ==
                      std::set<int>(up.gaps[image].arcs.begin(), up.gaps[image].arcs.end()));
            }
        }
    }
}

TEST_CASE("budget guard refuses oversized levels") {
    PortraitPair g = load("g.portrait");
    Tower tower(g, 50);
    CHECK_NOTHROW(tower.build(1));
    CHECK_THROWS_AS(tower.build(2), BudgetExceeded);
    // the tower remains usable at the built depth
    CHECK(tower.relation(Color::White, 1).class_count() == 13);
}

TEST_CASE("dump format is stable") {
    Tower r4(load("r4.portrait"));
    std::string dump = r4.dump_level(Color::White, 1);
    CHECK(dump.find("1 white") != std::string::npos);
    CHECK(dump.find("1/9 4/9 7/9") != std::string::npos);
    CHECK(dump == r4.dump_level(Color::White, 1));
}
