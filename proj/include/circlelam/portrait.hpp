#ifndef CIRCLELAM_PORTRAIT_HPP
#define CIRCLELAM_PORTRAIT_HPP

#include "circlelam/angle.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace circlelam {

/// One color's critical portrait: finite angle classes, each of size >= 2,
/// pairwise disjoint, all mapping to single points under mu_d.
struct CriticalPortrait {
    int degree = 2;
    std::vector<std::vector<Angle>> classes; // each sorted ascending
};

/// Shared zero-level data of a portrait pair: the joint forward orbit set
/// A^0, its size k, and the k closed 0-arcs in ccw order with exact lengths.
struct ZeroData {
    std::vector<Angle> zero_angles; // sorted, size k
    int k = 0;
    std::vector<CyclicArc> arcs;    // arc j runs zero_angles[j] -> zero_angles[j+1 mod k]
    std::vector<Rat> arc_lengths;   // positive, sum exactly 1

    /// Index j of the 0-arc whose start is a, or -1 if a is not a 0-angle.
    int angle_index(const Angle& a) const;
    /// Index of the 0-arc containing a in its half-open form [start, end).
    int arc_containing(const Angle& a) const;
};

/// Flat planar model for the white 0-tile, used only by the renderer.
struct GeometrySpec {
    std::vector<std::array<double, 2>> edge_vectors; // k vectors, summing to 0
    std::vector<int> vertex_orders;                  // k orbifold orders, >= 1
    double lambda = 0.0;                             // 0 means default sqrt(degree)
};

struct PortraitPair {
    CriticalPortrait white;
    CriticalPortrait black;
    ZeroData zero;
    std::optional<GeometrySpec> geometry;

    int degree() const { return white.degree; }
};

struct Violation {
    char axiom = '?';    // 'a'..'f'
    std::string witness; // human-readable, deterministic
    bool operator<(const Violation& o) const {
        return axiom != o.axiom ? axiom < o.axiom : witness < o.witness;
    }
};

struct ValidationReport {
    bool pass = false;
    std::vector<Violation> violations; // sorted by (axiom, witness)
    int separation_depth = -1;         // -1 while unresolved
    bool separation_certified = false;
    int depth_cap = 0;

    std::string to_text() const;
};

/// Parses the portrait config document (JSON, see README for the grammar).
/// Throws std::invalid_argument with line/column on syntax errors and on
/// structural errors (degree mismatch, class of size < 2, ...).
PortraitPair parse_portrait_pair(const std::string& document);

/// Canonical serialization; parse -> serialize -> parse is the identity.
std::string serialize_portrait_pair(const PortraitPair& pair);

/// A^0 as the union of the forward mu-orbits of every angle of both
/// portraits, with the derived arc table.
ZeroData orbit_set(const CriticalPortrait& white, const CriticalPortrait& black);

/// Checks portrait axioms (a)-(e) and searches a separation depth for (f).
/// Never throws on bad portraits; failures are reported.
ValidationReport validate(const PortraitPair& pair, int depth_cap = 8);

} // namespace circlelam

#endif
