#ifndef CIRCLELAM_LAMINATION_HPP
#define CIRCLELAM_LAMINATION_HPP

#include "circlelam/angle.hpp"
#include "circlelam/portrait.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace circlelam {

enum class Color { White, Black };

inline const char* color_name(Color c) { return c == Color::White ? "white" : "black"; }
inline Color other(Color c) { return c == Color::White ? Color::Black : Color::White; }

enum class DynType { Julia, PeriodicFatou, PreperiodicFatou };

const char* dyn_type_name(DynType t);

/// Thrown when a requested level would exceed the configured angle budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The k * d^n angles mu^{-n}(A^0), sorted.  Arc i is the closed interval
/// [angles[i], angles[(i+1) % N]].  All angles share the denominator
/// `common_den`; `nums` holds the numerators over it, in the same order.
struct LevelAngles {
    int level = 0;
    std::vector<Angle> angles;
    std::vector<Int> nums;
    Int common_den = 1;

    int count() const { return static_cast<int>(angles.size()); }
    /// Index of a, or -1 if absent.
    int index_of(const Angle& a) const;
    /// Index i of the arc with angles[i] <= a < angles[i+1] (cyclically).
    int arc_containing(const Angle& a) const;
};

/// The partition ~_{n,color} of the level-n angles with class metadata.
struct LevelRelation {
    int level = 0;
    Color color = Color::White;
    std::vector<int> class_of;              // angle index -> class id
    std::vector<int> pos_in_class;          // angle index -> position in its class
    std::vector<std::vector<int>> classes;  // class id -> ascending angle indices
    std::vector<int> image_class;           // class id -> class id at level n-1 (-1 at level 0)
    std::vector<int> local_degree;          // d([alpha]) per class
    std::vector<DynType> dyn_type;          // per class

    int class_count() const { return static_cast<int>(classes.size()); }
    int class_size(int cls) const { return static_cast<int>(classes[cls].size()); }
    /// Next member of the class of angle `idx`, counterclockwise (wraps).
    int class_succ(int idx) const;
    /// Previous member, counterclockwise order (wraps).
    int class_pred(int idx) const;
};

struct Gap {
    int id = 0;
    std::vector<int> arcs;  // arc ids in boundary-cycle order (ccw on the circle)
    std::vector<int> types; // types[i] = type of arcs[i]
    int parent = -1;        // containing gap id one level up (-1 at level 0)

    /// Arc id of the boundary arc of the given type, or -1.
    int arc_of_type(int t) const;
};

struct GapSet {
    int level = 0;
    Color color = Color::White;
    std::vector<Gap> gaps;
    std::vector<int> gap_of_arc; // arc id -> gap id
};

struct ConnectionGraph {
    int gap_nodes = 0;
    int class_nodes = 0;
    std::vector<std::pair<int, int>> edges; // (gap id, class id), sorted
    bool duplicate_incidence = false;
    bool connected = false;

    bool is_tree() const {
        return !duplicate_incidence && connected &&
               edges.size() + 1 == static_cast<std::size_t>(gap_nodes + class_nodes);
    }
};

/// Memoized tower of levels for one portrait pair.  Levels are immutable
/// once built; building is single-threaded and deterministic.
class Tower {
public:
    explicit Tower(PortraitPair pair, std::size_t max_angles = 10'000'000);

    const PortraitPair& pair() const { return pair_; }
    int degree() const { return pair_.degree(); }
    int k() const { return pair_.zero.k; }
    std::size_t max_angles() const { return max_angles_; }

    /// Builds angle sets, both relations and both gap sets up to level n.
    void build(int n);
    int built_depth() const { return static_cast<int>(levels_.size()) - 1; }

    const LevelAngles& angles_at(int n);
    const LevelRelation& relation(Color c, int n);
    const GapSet& gaps(Color c, int n);
    /// arc id -> type 0..k-1 (the 0-arc the arc maps onto under mu^n).
    const std::vector<int>& arc_types(int n);
    /// Gap at level n-1 that mu maps the given level-n gap onto.
    int mu_gap(Color c, int n, int gap_id);

    /// Angle count k * d^n a level would have (budget arithmetic, exact).
    Int level_size(int n) const;

    /// One line per class: "n color classid type: p/q p/q ...".
    std::string dump_level(Color c, int n);

private:
    struct LevelData {
        LevelAngles angles;
        std::vector<int> arc_type;                  // arc id -> type 0..k-1
        LevelRelation rel[2];
        GapSet gaps[2];
    };

    LevelData& level(int n) { return *levels_.at(n); }
    void build_next();
    void build_relation(Color c, int n_next);
    void finish_relation(Color c, int n_next, class DisjointSet& dsu);
    GapSet sweep_gaps(Color c, int n);
    void classify_level1(Color c);

    PortraitPair pair_;
    std::size_t max_angles_;
    // Per color: the level-1 pullback template (portrait classes, sorted).
    std::vector<std::vector<Angle>> template_classes_[2];
    std::vector<std::unique_ptr<LevelData>> levels_;
};

/// Exactly the k * d^n angles mu^{-n}(A^0), sorted (standalone helper).
LevelAngles angles_at_level(const ZeroData& zero, int degree, int n);

/// Builds (via the tower) and returns the level-n relation of one color.
const LevelRelation& build_level(Tower& tower, Color c, int n);

/// The d^n complementary regions of the chord system of `rel`.
const GapSet& gaps_of(Tower& tower, Color c, int n);

/// Product of local degrees along the image chain of the class.
Int predicted_size(Tower& tower, Color c, int n, int class_id);

/// Stabilization depth of the class of `a` (a must be a level-n angle):
/// the smallest m0 >= 1 with [a]_{n+m0} = [a]_m for all m in [n+m0, cap].
/// nullopt if the class is still growing at the cap.
std::optional<int> stabilization(Tower& tower, Color c, int n, const Angle& a, int cap);

/// Bipartite gap/class incidence graph of one level.
ConnectionGraph connection_graph(const LevelRelation& rel, const GapSet& gaps);

} // namespace circlelam

#endif
