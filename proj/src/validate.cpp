#include "circlelam/lamination.hpp"
#include "circlelam/portrait.hpp"
#include "circlelam/relations.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace circlelam {

namespace {

std::string class_str(const std::vector<Angle>& cls) {
    std::string out = "{";
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (i) out += ",";
        out += cls[i].str();
    }
    return out + "}";
}

// (a) single image, (b) degree sum, (c) mutual non-crossing, (d) at most one
// zero-level point per class -- all per color.
void check_color_axioms(const CriticalPortrait& portrait, const ZeroData& zero, const char* color,
                        std::vector<Violation>& out) {
    int d = portrait.degree;
    Int degree_sum = 0;
    for (const auto& cls : portrait.classes) {
        degree_sum += static_cast<int>(cls.size()) - 1;
        std::set<Angle> images;
        for (const auto& a : cls) images.insert(mu(a, d));
        if (images.size() != 1) {
            std::ostringstream os;
            os << color << " class " << class_str(cls) << " maps to " << images.size() << " points";
            out.push_back({'a', os.str()});
        }
        int zero_hits = 0;
        for (const auto& a : cls) zero_hits += zero.angle_index(a) >= 0;
        if (zero_hits > 1) {
            std::ostringstream os;
            os << color << " class " << class_str(cls) << " holds " << zero_hits << " zero-level angles";
            out.push_back({'d', os.str()});
        }
    }
    if (degree_sum != d - 1) {
        std::ostringstream os;
        os << color << " degree sum " << degree_sum << " != " << (d - 1);
        out.push_back({'b', os.str()});
    }
    for (std::size_t i = 0; i < portrait.classes.size(); ++i) {
        for (std::size_t j = i + 1; j < portrait.classes.size(); ++j) {
            if (sets_cross(portrait.classes[i], portrait.classes[j])) {
                std::ostringstream os;
                os << color << " classes " << class_str(portrait.classes[i]) << " and "
                   << class_str(portrait.classes[j]) << " cross";
                out.push_back({'c', os.str()});
            }
        }
    }
}

// True iff some gap of either color at this level meets the classes of two
// distinct zero-level angles.
bool separation_violated(Tower& tower, int m, std::string* witness) {
    const LevelAngles& la = tower.angles_at(m);
    const ZeroData& zero = tower.pair().zero;
    for (Color c : {Color::White, Color::Black}) {
        const LevelRelation& rel = tower.relation(c, m);
        // Class id -> zero angle index, for the k classes holding a 0-angle.
        std::vector<int> root_of_class(rel.class_count(), -1);
        for (const auto& z : zero.zero_angles) {
            int idx = la.index_of(z);
            root_of_class[rel.class_of[idx]] = zero.angle_index(z);
        }
        int n_arcs = la.count();
        for (const auto& gap : tower.gaps(c, m).gaps) {
            int found = -1;
            for (int a : gap.arcs) {
                for (int endpoint : {a, (a + 1) % n_arcs}) {
                    int root = root_of_class[rel.class_of[endpoint]];
                    if (root < 0) continue;
                    if (found < 0) found = root;
                    else if (found != root) {
                        if (witness) {
                            std::ostringstream os;
                            os << color_name(c) << " gap " << gap.id << " at level " << m
                               << " meets classes of " << zero.zero_angles[found].str() << " and "
                               << zero.zero_angles[root].str();
                            *witness = os.str();
                        }
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

} // namespace

ValidationReport validate(const PortraitPair& pair, int depth_cap) {
    ValidationReport report;
    report.depth_cap = depth_cap;

    check_color_axioms(pair.white, pair.zero, "white", report.violations);
    check_color_axioms(pair.black, pair.zero, "black", report.violations);

    if (pair.zero.k < 2) {
        report.violations.push_back({'f', "zero-level set has fewer than two angles"});
        std::sort(report.violations.begin(), report.violations.end());
        return report;
    }

    // With a hard axiom already broken the tower semantics are void, so the
    // separation search is skipped rather than ground out level by level.
    if (!report.violations.empty()) {
        report.separation_depth = 0;
        report.separation_certified = false;
        std::sort(report.violations.begin(), report.violations.end());
        return report;
    }

    try {
        Tower tower(pair);

        // (e) cnc-compatibility at every vertex class of the level-1 join.
        Partition vertices = level_join(tower, 1);
        for (int v = 0; v < vertices.block_count(); ++v) {
            if (vertices.blocks[v].size() < 2) continue;
            CncPartition cnc = vertex_cnc(tower, 1, vertices, v);
            if (!cnc.valid()) {
                std::ostringstream os;
                os << "vertex class " << v << " ("
                   << class_str([&] {
                          std::vector<Angle> angles;
                          for (int i : vertices.blocks[v]) angles.push_back(vertices.ground[i]);
                          return angles;
                      }())
                   << "): " << cnc.witness;
                report.violations.push_back({'e', os.str()});
            }
        }

        if (!report.violations.empty()) {
            report.separation_depth = 0;
            report.separation_certified = false;
            std::sort(report.violations.begin(), report.violations.end());
            return report;
        }

        // (f) separation: first violation-free level, re-checked over a small
        // window (the condition is semidecidable; see the validation notes in
        // the README).
        int n0 = -1;
        std::string witness;
        for (int m = 1; m <= depth_cap; ++m) {
            if (!separation_violated(tower, m, &witness)) { n0 = m; break; }
        }
        if (n0 < 0) {
            report.separation_depth = depth_cap;
            report.separation_certified = false;
            report.violations.push_back({'f', "no separating level found up to the cap: " + witness});
        } else {
            bool stable = true;
            for (int m = n0 + 1; m <= std::min(depth_cap, n0 + 2); ++m) {
                if (separation_violated(tower, m, &witness)) { stable = false; n0 = -1; break; }
            }
            if (stable) {
                report.separation_depth = n0;
                report.separation_certified = true;
            } else {
                report.separation_depth = depth_cap;
                report.separation_certified = false;
                report.violations.push_back({'f', "separation not stable within the window: " + witness});
            }
        }
    } catch (const BudgetExceeded& e) {
        report.violations.push_back({'f', std::string("budget exceeded during separation search: ") + e.what()});
    } catch (const std::exception& e) {
        report.violations.push_back({'f', std::string("tower construction failed: ") + e.what()});
    }

    std::sort(report.violations.begin(), report.violations.end());
    report.pass = report.violations.empty() && report.separation_certified;
    return report;
}

} // namespace circlelam
