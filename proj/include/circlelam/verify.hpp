#ifndef CIRCLELAM_VERIFY_HPP
#define CIRCLELAM_VERIFY_HPP

#include "circlelam/lamination.hpp"

#include <string>
#include <vector>

namespace circlelam {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// The per-level invariant suite: counting identities, single-image classes,
/// image/multiplicity laws, gap structure, restriction equality,
/// semiconjugacy, measure identity, non-crossing and cnc validity.
/// Exact arithmetic is used up to `exact_cutoff` angles per level; beyond
/// that the mu-compatible index structure carries the same checks.
std::vector<CheckResult> verify_level(Tower& tower, int n, int exact_cutoff = 100000);

/// Convenience: all levels 0..n; returns the failures only.
std::vector<CheckResult> verify_tower(Tower& tower, int n, int exact_cutoff = 100000);

} // namespace circlelam

#endif
