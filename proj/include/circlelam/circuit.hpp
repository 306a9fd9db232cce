#ifndef CIRCLELAM_CIRCUIT_HPP
#define CIRCLELAM_CIRCUIT_HPP

#include "circlelam/lamination.hpp"
#include "circlelam/relations.hpp"

#include <string>
#include <vector>

namespace circlelam {

/// One n-arc of the combinatorial circuit, tagged with everything the
/// Eulerian structure needs.
struct CircuitArc {
    int index = 0; // position in circle order
    Angle start;
    Angle end;
    int type = 0;
    int white_gap = 0;
    int black_gap = 0;
    int v_start = 0; // vertex class id of the start angle (classes of ~_n)
    int v_end = 0;
};

struct Circuit {
    int level = 0;
    std::vector<CircuitArc> arcs;
    Partition vertices; // the level join ~_n

    std::string dump() const;
};

/// The level-n circuit: all arcs in circle order with gap and vertex tags.
Circuit circuit(Tower& tower, int n);

struct SemiconjugacyReport {
    bool pass = false;
    std::string witness;
};

/// Verifies that mu carries the level-(n+1) structure onto the level-n one:
/// (i) each (n+1)-arc maps onto an n-arc of the same type, and (ii) the
/// induced map on vertex classes is well defined.
SemiconjugacyReport check_semiconjugacy(Tower& tower, int n);

/// Exact boundary Lebesgue length of a gap at the given level: the sum of
/// its k arc lengths, each len0(type)/d^n.
Rat gap_boundary_measure(const Gap& gap, const ZeroData& zero, int level, int degree);

struct MeasureFiber {
    int image_class = 0;
    int class_count = 0;  // level-n classes mapping onto it
    Int size_sum = 0;     // total of their sizes; must be degree * image size
    Int expected = 0;
};

struct MeasureReport {
    int level = 0;
    Rat expected_gap_measure;              // d^{-n}
    bool all_gaps_exact = false;           // every gap of both colors matches
    std::vector<Rat> white_gap_measures;   // by gap id
    std::vector<Rat> black_gap_measures;
    std::vector<MeasureFiber> white_fibers; // by image class id at level n-1
    std::vector<MeasureFiber> black_fibers;
    bool fibers_exact = false;
};

MeasureReport entropy_measure_report(Tower& tower, int n);

} // namespace circlelam

#endif
