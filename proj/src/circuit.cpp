#include "circlelam/circuit.hpp"

#include <sstream>

namespace circlelam {

std::string Circuit::dump() const {
    std::ostringstream os;
    for (const auto& arc : arcs) {
        os << arc.index << " [" << arc.start.str() << "," << arc.end.str() << "]"
           << " type=" << arc.type << " wgap=" << arc.white_gap << " bgap=" << arc.black_gap
           << " vstart=" << arc.v_start << " vend=" << arc.v_end << "\n";
    }
    return os.str();
}

Circuit circuit(Tower& tower, int n) {
    Circuit out;
    out.level = n;
    const LevelAngles& la = tower.angles_at(n);
    const auto& types = tower.arc_types(n);
    const GapSet& wg = tower.gaps(Color::White, n);
    const GapSet& bg = tower.gaps(Color::Black, n);
    out.vertices = level_join(tower, n);

    int count = la.count();
    out.arcs.reserve(count);
    for (int i = 0; i < count; ++i) {
        CircuitArc arc;
        arc.index = i;
        arc.start = la.angles[i];
        arc.end = la.angles[(i + 1) % count];
        arc.type = types[i];
        arc.white_gap = wg.gap_of_arc[i];
        arc.black_gap = bg.gap_of_arc[i];
        arc.v_start = out.vertices.block_of[i];
        arc.v_end = out.vertices.block_of[(i + 1) % count];
        out.arcs.push_back(std::move(arc));
    }
    return out;
}

SemiconjugacyReport check_semiconjugacy(Tower& tower, int n) {
    SemiconjugacyReport out;
    const LevelAngles& fine = tower.angles_at(n + 1);
    const LevelAngles& coarse = tower.angles_at(n);
    const auto& fine_types = tower.arc_types(n + 1);
    const auto& coarse_types = tower.arc_types(n);
    int d = tower.degree();
    int nc = coarse.count();
    int nf = fine.count();

    // (i) every (n+1)-arc maps endpoint-to-endpoint onto an n-arc of the
    // same type.
    for (int i = 0; i < nf; ++i) {
        Angle ms = mu(fine.angles[i], d);
        Angle me = mu(fine.angles[(i + 1) % nf], d);
        int j = coarse.index_of(ms);
        if (j < 0) {
            out.witness = "mu(" + fine.angles[i].str() + ") is not a level-" + std::to_string(n) + " angle";
            return out;
        }
        if (coarse.angles[(j + 1) % nc] != me) {
            out.witness = "arc " + std::to_string(i) + " does not map onto a single arc";
            return out;
        }
        if (fine_types[i] != coarse_types[j]) {
            out.witness = "arc " + std::to_string(i) + " changes type under mu";
            return out;
        }
    }

    // (ii) the induced vertex map is well defined on ~_{n+1} classes.
    Partition fine_join = level_join(tower, n + 1);
    Partition coarse_join = level_join(tower, n);
    for (const auto& block : fine_join.blocks) {
        int target = coarse_join.block_of[block[0] % nc];
        for (int idx : block) {
            if (coarse_join.block_of[idx % nc] != target) {
                out.witness = "vertex map not well defined: class of " + fine.angles[block[0]].str() +
                              " maps across two level-" + std::to_string(n) + " classes";
                return out;
            }
        }
    }
    out.pass = true;
    return out;
}

Rat gap_boundary_measure(const Gap& gap, const ZeroData& zero, int level, int degree) {
    Int dn = boost::multiprecision::pow(Int(degree), level);
    Rat total = 0;
    for (int t : gap.types) total += zero.arc_lengths[t] / Rat(dn);
    return total;
}

MeasureReport entropy_measure_report(Tower& tower, int n) {
    MeasureReport out;
    out.level = n;
    Int dn = boost::multiprecision::pow(Int(tower.degree()), n);
    out.expected_gap_measure = Rat(Int(1), dn);
    out.all_gaps_exact = true;
    for (Color c : {Color::White, Color::Black}) {
        auto& dest = c == Color::White ? out.white_gap_measures : out.black_gap_measures;
        for (const auto& gap : tower.gaps(c, n).gaps) {
            dest.push_back(gap_boundary_measure(gap, tower.pair().zero, n, tower.degree()));
            if (dest.back() != out.expected_gap_measure) out.all_gaps_exact = false;
        }
    }

    out.fibers_exact = true;
    if (n >= 1) {
        for (Color c : {Color::White, Color::Black}) {
            const LevelRelation& rel = tower.relation(c, n);
            const LevelRelation& prev = tower.relation(c, n - 1);
            auto& fibers = c == Color::White ? out.white_fibers : out.black_fibers;
            fibers.resize(prev.class_count());
            for (int w = 0; w < prev.class_count(); ++w) {
                fibers[w].image_class = w;
                fibers[w].expected = Int(tower.degree()) * prev.class_size(w);
            }
            for (int cls = 0; cls < rel.class_count(); ++cls) {
                auto& f = fibers[rel.image_class[cls]];
                f.class_count += 1;
                f.size_sum += rel.class_size(cls);
            }
            for (const auto& f : fibers)
                if (f.size_sum != f.expected) out.fibers_exact = false;
        }
    }
    return out;
}

} // namespace circlelam
