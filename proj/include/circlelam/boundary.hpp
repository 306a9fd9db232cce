#ifndef CIRCLELAM_BOUNDARY_HPP
#define CIRCLELAM_BOUNDARY_HPP

#include "circlelam/lamination.hpp"

#include <optional>
#include <vector>

namespace circlelam {

/// A maximal nested chain of gaps G^1 > G^2 > ... holding a base angle on
/// its circle boundary.
struct GapItinerary {
    Angle base;
    Color color = Color::White;
    enum class Side { Unique, Left, Right };
    Side side = Side::Unique;
    std::vector<int> gap_ids; // gap id per level 1..depth()
    /// (preperiod p, period q) of the base angle orbit, present when the
    /// chain is deep enough (depth >= p + 2q) to certify self-similarity.
    std::optional<std::pair<int, int>> periodicity;

    int depth() const { return static_cast<int>(gap_ids.size()); }
};

/// The one or two maximal chains of s down to the given depth.  Two chains
/// occur exactly when s is a level-j angle for some j <= depth and the two
/// sides eventually separate.
std::vector<GapItinerary> gap_itinerary(Tower& tower, Color color, const Angle& s, int depth);

/// The circle trace of a nested gap chain: with a periodicity certificate
/// the exact limit angles (corner fixed points), otherwise the boundary
/// angles at the deepest level as an over-approximation.
struct BigGClass {
    std::vector<Angle> angles; // sorted
    bool exact = false;
};

BigGClass big_g_class(Tower& tower, const GapItinerary& itinerary);

/// A class of the chain-closure relation (finite-depth computation).
struct BoundaryClass {
    std::vector<Angle> angles; // sorted
    bool exact = false;
    int chain_sets = 0;  // number of nested-chain trace sets linked together
    bool cap_hit = false; // chain expansion stopped at the 2^{d-1} bound
};

/// Chain closure of the nested-gap trace sets through shared angles.
BoundaryClass approx_class(Tower& tower, Color color, const Angle& s, int depth);

/// Extension identifying boundary sets of bounded Fatou components: when
/// the class meets a Fatou-type equivalence class, the union of all gap
/// traces along that class at the deepest level (always inexact); otherwise
/// identical to approx_class.
BoundaryClass fatou_class(Tower& tower, Color color, const Angle& s, int depth);

} // namespace circlelam

#endif
