#ifndef CIRCLELAM_RELATIONS_HPP
#define CIRCLELAM_RELATIONS_HPP

#include "circlelam/angle.hpp"
#include "circlelam/lamination.hpp"

#include <string>
#include <vector>

namespace circlelam {

/// A partition of a finite angle set.  Blocks are stored canonically:
/// members ascending, blocks ordered by least member.  Equality is
/// structural.
struct Partition {
    std::vector<Angle> ground;            // sorted ascending
    std::vector<std::vector<int>> blocks; // indices into ground
    std::vector<int> block_of;            // ground index -> block id

    bool operator==(const Partition&) const = default;
    int block_count() const { return static_cast<int>(blocks.size()); }
    std::string dump() const; // mirrors the level dump format

    static Partition trivial(std::vector<Angle> ground);
    static Partition from_blocks(std::vector<Angle> ground,
                                 const std::vector<std::vector<Angle>>& blocks);
};

/// Smallest equivalence relation containing P and Q (same ground set).
Partition join(const Partition& p, const Partition& q);

/// Largest equivalence relation below P and Q: pairwise block intersections.
Partition meet(const Partition& p, const Partition& q);

struct JoinDiagnostics {
    /// Max number of points in a minimal alternating chain s1 ~w s2 ~b ...
    /// over all equivalent pairs (expensive; only filled when requested).
    int max_chain_points = 0;
};

/// The level-n vertex partition ~_n = ~_{n,w} v ~_{n,b}.
Partition level_join(Tower& tower, int n, JoinDiagnostics* diag = nullptr);

/// The cnc-partition reconstructed at one vertex class of ~_n.
/// Incidences 0..2m-1 run counterclockwise: angle j of the class contributes
/// its white tile wedge at index 2j and its black tile wedge at index 2j+1.
struct CncPartition {
    int vertex_class = -1;
    std::vector<std::vector<int>> white_blocks; // partition of even incidences
    std::vector<std::vector<int>> black_blocks; // partition of odd incidences
    bool non_crossing = false;
    bool complementary = false;
    std::string witness; // first violation, empty when valid

    bool valid() const { return non_crossing && complementary; }
};

/// Validity check on raw cnc data (white blocks on evens, black on odds,
/// indices 0..total-1 cyclic).
CncPartition check_cnc(std::vector<std::vector<int>> white_blocks,
                       std::vector<std::vector<int>> black_blocks, int total);

/// The boundary walk that orders the tile wedges around a vertex class:
/// slot 2r holds the white wedge at walk angle r, slot 2r+1 the black wedge
/// that follows it.  `closed` is false when the wedges split into several
/// cycles (the vertex is then not a manifold point of the quotient).
struct VertexWalk {
    std::vector<int> white_angle; // angle index labeling the white wedge at slot 2r
    std::vector<int> black_angle; // angle index labeling the black wedge at slot 2r+1
    bool closed = false;
};

VertexWalk vertex_walk(const LevelRelation& white, const LevelRelation& black,
                       const std::vector<int>& members);

/// Reconstructs and checks the cnc-partition at a vertex class of ~_n.
CncPartition vertex_cnc(Tower& tower, int n, const Partition& vertices, int vertex_class);

struct RestrictionReport {
    bool equal = false;
    std::string witness;
};

/// True iff ~_{n+1,color} restricted to the level-n angles equals ~_{n,color}.
RestrictionReport restriction_equal(const LevelAngles& coarse, const LevelRelation& coarse_rel,
                                    const LevelAngles& fine, const LevelRelation& fine_rel);

/// Both colors at once, via the tower.
RestrictionReport restriction_equal(Tower& tower, int n);

} // namespace circlelam

#endif
