#include "circlelam/verify.hpp"

#include "circlelam/circuit.hpp"
#include "circlelam/relations.hpp"

#include <map>
#include <set>

namespace circlelam {

namespace {

void push(std::vector<CheckResult>& out, const std::string& name, bool ok,
          const std::string& detail = "") {
    out.push_back({name, ok, ok ? "" : detail});
}

} // namespace

std::vector<CheckResult> verify_level(Tower& tower, int n, int exact_cutoff) {
    std::vector<CheckResult> out;
    int d = tower.degree();
    int k = tower.k();
    Int dn = boost::multiprecision::pow(Int(d), n);
    const LevelAngles& la = tower.angles_at(n);
    push(out, "angle count k*d^n", Int(la.count()) == Int(k) * dn);
    bool exact = la.count() <= exact_cutoff;

    for (Color c : {Color::White, Color::Black}) {
        const LevelRelation& rel = tower.relation(c, n);
        std::string tag = color_name(c);
        Int size_sum = 0;
        bool single_image = true;
        for (const auto& cls : rel.classes) {
            size_sum += cls.size();
            if (exact) {
                Angle target = mu_pow(la.angles[cls[0]], d, n);
                for (int idx : cls)
                    if (mu_pow(la.angles[idx], d, n) != target) single_image = false;
            } else {
                int target = cls[0] % k;
                for (int idx : cls)
                    if (idx % k != target) single_image = false;
            }
        }
        push(out, tag + " L1 single mu^n image per class", single_image);
        push(out, tag + " L3 sum of sizes", size_sum == Int(k) * dn);
        push(out, tag + " L3 sum (size-1)", size_sum - rel.class_count() == dn - 1);
        push(out, tag + " L3 class count", Int(rel.class_count()) == (Int(k) - 1) * dn + 1);

        const GapSet& gs = tower.gaps(c, n);
        push(out, tag + " G1 gap count d^n", Int(gs.gaps.size()) == dn);
        bool arcs_ok = true;
        std::set<std::pair<int, int>> gap_type_pairs;
        for (const auto& gap : gs.gaps) {
            if (static_cast<int>(gap.arcs.size()) != k) { arcs_ok = false; break; }
            for (int j = 0; j < k; ++j) {
                if (j > 0 && gap.types[j] != (gap.types[j - 1] + 1) % k) { arcs_ok = false; break; }
                if (!gap_type_pairs.emplace(gap.id, gap.types[j]).second) arcs_ok = false;
            }
            if (!arcs_ok) break;
        }
        push(out, tag + " G2 k typed arcs per gap, cyclic", arcs_ok);
        push(out, tag + " arc<->edge bijection",
             arcs_ok && Int(gap_type_pairs.size()) == Int(k) * dn);

        if (n >= 1) {
            const LevelRelation& prev = tower.relation(c, n - 1);
            const LevelAngles& pa = tower.angles_at(n - 1);
            int np = pa.count();
            bool image_is_class = true; // L4: the image of a class is a full class
            for (const auto& cls : rel.classes) {
                std::set<int> image_indices;
                for (int idx : cls) image_indices.insert(idx % np);
                int target = prev.class_of[*image_indices.begin()];
                for (int i : image_indices)
                    if (prev.class_of[i] != target) { image_is_class = false; break; }
                if (!image_is_class) break;
                if (image_indices.size() != prev.classes[target].size()) {
                    image_is_class = false;
                    break;
                }
            }
            push(out, tag + " L4 class image is a class", image_is_class);

            bool l5_ok = true; // each fiber size a multiple of m, summing to d*m
            std::vector<Int> fiber_sum(prev.class_count(), 0);
            for (int cls = 0; cls < rel.class_count() && l5_ok; ++cls) {
                int below = rel.image_class[cls];
                if (rel.class_size(cls) % prev.class_size(below) != 0) l5_ok = false;
                fiber_sum[below] += rel.class_size(cls);
            }
            if (l5_ok)
                for (int w = 0; w < prev.class_count(); ++w)
                    if (fiber_sum[w] != Int(d) * prev.class_size(w)) { l5_ok = false; break; }
            push(out, tag + " L5 multiplicity law", l5_ok);

            bool parents_ok = true; // G5
            const GapSet& upgaps = tower.gaps(c, n - 1);
            for (const auto& gap : gs.gaps) {
                for (int a : gap.arcs) {
                    if (upgaps.gap_of_arc[pa.arc_containing(la.angles[a])] != gap.parent) {
                        parents_ok = false;
                        break;
                    }
                }
                if (!parents_ok) break;
            }
            push(out, tag + " G5 gap parent chain", parents_ok);
        }
        ConnectionGraph graph = connection_graph(rel, gs);
        push(out, tag + " connection graph is a tree", graph.is_tree());
    }

    if (n >= 1) {
        RestrictionReport rr = restriction_equal(tower, n - 1);
        push(out, "L6 restriction equality to level below", rr.equal, rr.witness);
        SemiconjugacyReport sr = check_semiconjugacy(tower, n - 1);
        push(out, "semiconjugacy onto level below", sr.pass, sr.witness);
    }

    MeasureReport mr = entropy_measure_report(tower, n);
    push(out, "gap boundary measure d^-n", mr.all_gaps_exact);
    push(out, "fiber size sums", mr.fibers_exact);

    if (la.count() <= 256) {
        bool noncrossing = true;
        for (Color c : {Color::White, Color::Black}) {
            const LevelRelation& rel = tower.relation(c, n);
            std::vector<std::vector<Angle>> nontrivial;
            for (const auto& cls : rel.classes) {
                if (cls.size() < 2) continue;
                std::vector<Angle> v;
                for (int i : cls) v.push_back(la.angles[i]);
                nontrivial.push_back(std::move(v));
            }
            for (std::size_t i = 0; i < nontrivial.size() && noncrossing; ++i)
                for (std::size_t j = i + 1; j < nontrivial.size() && noncrossing; ++j)
                    if (sets_cross(nontrivial[i], nontrivial[j])) noncrossing = false;
        }
        push(out, "L2 non-crossing (brute force)", noncrossing);
    }

    Partition vertices = level_join(tower, n);
    bool cnc_ok = true;
    std::string cnc_witness;
    for (int v = 0; v < vertices.block_count() && cnc_ok; ++v) {
        if (vertices.blocks[v].size() < 2) continue;
        CncPartition cnc = vertex_cnc(tower, n, vertices, v);
        if (!cnc.valid()) {
            cnc_ok = false;
            cnc_witness = cnc.witness;
        }
    }
    push(out, "cnc validity at vertices", cnc_ok, cnc_witness);
    return out;
}

std::vector<CheckResult> verify_tower(Tower& tower, int n, int exact_cutoff) {
    std::vector<CheckResult> failures;
    for (int m = 0; m <= n; ++m)
        for (auto& r : verify_level(tower, m, exact_cutoff))
            if (!r.ok) {
                r.name = "level " + std::to_string(m) + ": " + r.name;
                failures.push_back(std::move(r));
            }
    return failures;
}

} // namespace circlelam
