#include "circlelam/relations.hpp"

#include "circlelam/dsu.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace circlelam {

namespace {

Partition canonicalize(std::vector<Angle> ground, DisjointSet& dsu) {
    Partition out;
    out.ground = std::move(ground);
    int n = static_cast<int>(out.ground.size());
    out.block_of.assign(n, -1);
    std::vector<int> root_to_block(n, -1);
    for (int i = 0; i < n; ++i) {
        int root = static_cast<int>(dsu.find(i));
        if (root_to_block[root] < 0) {
            root_to_block[root] = out.block_count();
            out.blocks.emplace_back();
        }
        out.block_of[i] = root_to_block[root];
        out.blocks[root_to_block[root]].push_back(i);
    }
    return out;
}

void require_same_ground(const Partition& p, const Partition& q) {
    if (p.ground != q.ground) throw std::invalid_argument("partitions have different ground sets");
}

} // namespace

Partition Partition::trivial(std::vector<Angle> ground) {
    DisjointSet dsu(ground.size());
    return canonicalize(std::move(ground), dsu);
}

Partition Partition::from_blocks(std::vector<Angle> ground,
                                 const std::vector<std::vector<Angle>>& blocks) {
    std::sort(ground.begin(), ground.end());
    DisjointSet dsu(ground.size());
    auto index_of = [&](const Angle& a) {
        auto it = std::lower_bound(ground.begin(), ground.end(), a);
        if (it == ground.end() || *it != a) throw std::invalid_argument("block angle not in ground set");
        return static_cast<std::size_t>(it - ground.begin());
    };
    for (const auto& block : blocks)
        for (std::size_t i = 1; i < block.size(); ++i) dsu.unite(index_of(block[0]), index_of(block[i]));
    return canonicalize(std::move(ground), dsu);
}

std::string Partition::dump() const {
    std::ostringstream os;
    for (int b = 0; b < block_count(); ++b) {
        os << b << ":";
        for (int i : blocks[b]) os << " " << ground[i].str();
        os << "\n";
    }
    return os.str();
}

Partition join(const Partition& p, const Partition& q) {
    require_same_ground(p, q);
    DisjointSet dsu(p.ground.size());
    for (const auto* part : {&p, &q})
        for (const auto& block : part->blocks)
            for (std::size_t i = 1; i < block.size(); ++i) dsu.unite(block[0], block[i]);
    return canonicalize(p.ground, dsu);
}

Partition meet(const Partition& p, const Partition& q) {
    require_same_ground(p, q);
    // Blocks of the meet are the nonempty pairwise intersections; two points
    // stay together iff they share a block in both partitions.
    std::map<std::pair<int, int>, int> cell;
    DisjointSet dsu(p.ground.size());
    for (std::size_t i = 0; i < p.ground.size(); ++i) {
        auto key = std::make_pair(p.block_of[i], q.block_of[i]);
        auto [it, inserted] = cell.emplace(key, static_cast<int>(i));
        if (!inserted) dsu.unite(static_cast<std::size_t>(it->second), i);
    }
    return canonicalize(p.ground, dsu);
}

Partition level_join(Tower& tower, int n, JoinDiagnostics* diag) {
    const LevelAngles& la = tower.angles_at(n);
    const LevelRelation& white = tower.relation(Color::White, n);
    const LevelRelation& black = tower.relation(Color::Black, n);
    DisjointSet dsu(la.angles.size());
    for (const auto* rel : {&white, &black})
        for (const auto& cls : rel->classes)
            for (std::size_t i = 1; i < cls.size(); ++i) dsu.unite(cls[0], cls[i]);
    Partition out = canonicalize(la.angles, dsu);

    if (diag) {
        // Breadth-first search in the class-jump graph; one step joins an
        // angle to all members of one of its color classes.
        diag->max_chain_points = la.count() ? 1 : 0;
        int n_pts = la.count();
        std::vector<int> dist(n_pts);
        for (int s = 0; s < n_pts; ++s) {
            std::fill(dist.begin(), dist.end(), -1);
            dist[s] = 0;
            std::deque<int> queue{s};
            while (!queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                for (const auto* rel : {&white, &black}) {
                    for (int v : rel->classes[rel->class_of[u]]) {
                        if (dist[v] < 0) {
                            dist[v] = dist[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
            }
            for (int v = 0; v < n_pts; ++v)
                if (dist[v] > 0) diag->max_chain_points = std::max(diag->max_chain_points, dist[v] + 1);
        }
    }
    return out;
}

namespace {

/// Interleaving test for two index sets on a cycle of `total` slots.
bool index_blocks_cross(const std::vector<int>& a, const std::vector<int>& b, int total) {
    if (a.size() < 2 || b.size() < 2) return false;
    std::vector<std::pair<int, int>> merged; // (slot, label)
    for (int x : a) merged.emplace_back(x, 0);
    for (int x : b) merged.emplace_back(x, 1);
    std::sort(merged.begin(), merged.end());
    int switches = 0;
    for (std::size_t i = 0; i < merged.size(); ++i)
        switches += merged[i].second != merged[(i + 1) % merged.size()].second;
    (void)total;
    return switches >= 4;
}

} // namespace

CncPartition check_cnc(std::vector<std::vector<int>> white_blocks,
                       std::vector<std::vector<int>> black_blocks, int total) {
    CncPartition out;
    for (auto& b : white_blocks) std::sort(b.begin(), b.end());
    for (auto& b : black_blocks) std::sort(b.begin(), b.end());
    out.white_blocks = std::move(white_blocks);
    out.black_blocks = std::move(black_blocks);

    for (const auto& b : out.white_blocks)
        for (int x : b)
            if (x % 2 != 0) { out.witness = "white block holds odd incidence " + std::to_string(x); return out; }
    for (const auto& b : out.black_blocks)
        for (int x : b)
            if (x % 2 != 1) { out.witness = "black block holds even incidence " + std::to_string(x); return out; }

    std::vector<const std::vector<int>*> all;
    for (const auto& b : out.white_blocks) all.push_back(&b);
    for (const auto& b : out.black_blocks) all.push_back(&b);
    out.non_crossing = true;
    for (std::size_t i = 0; i < all.size() && out.non_crossing; ++i)
        for (std::size_t j = i + 1; j < all.size() && out.non_crossing; ++j)
            if (index_blocks_cross(*all[i], *all[j], total)) {
                out.non_crossing = false;
                std::ostringstream os;
                os << "blocks {" << (*all[i])[0] << ",...} and {" << (*all[j])[0] << ",...} cross";
                out.witness = os.str();
            }
    if (!out.non_crossing) return out;

    // Complementarity: no two black blocks can merge without a crossing.
    out.complementary = true;
    for (std::size_t i = 0; i < out.black_blocks.size() && out.complementary; ++i) {
        for (std::size_t j = i + 1; j < out.black_blocks.size() && out.complementary; ++j) {
            std::vector<int> merged = out.black_blocks[i];
            merged.insert(merged.end(), out.black_blocks[j].begin(), out.black_blocks[j].end());
            std::sort(merged.begin(), merged.end());
            bool crosses = false;
            for (const auto& w : out.white_blocks)
                if (index_blocks_cross(merged, w, total)) { crosses = true; break; }
            if (!crosses)
                for (std::size_t l = 0; l < out.black_blocks.size(); ++l)
                    if (l != i && l != j && index_blocks_cross(merged, out.black_blocks[l], total)) {
                        crosses = true;
                        break;
                    }
            if (!crosses) {
                out.complementary = false;
                std::ostringstream os;
                os << "black blocks " << i << " and " << j << " could merge without crossing";
                out.witness = os.str();
            }
        }
    }
    return out;
}

VertexWalk vertex_walk(const LevelRelation& white, const LevelRelation& black,
                       const std::vector<int>& members) {
    // Boundary walk around the collapsed vertex: the white wedge at x spans
    // from the arc ending at x to the arc starting at wpred(x); the black
    // wedge continues to the arc ending at bsucc(wpred(x)).  The vertex is a
    // manifold point iff this walk closes through all members.
    VertexWalk walk;
    std::size_t m = members.size();
    int x = members[0];
    for (std::size_t step = 0; step < m; ++step) {
        walk.white_angle.push_back(x);
        int b = white.class_pred(x);
        walk.black_angle.push_back(b);
        x = black.class_succ(b);
        if (x == members[0]) {
            walk.closed = step + 1 == m;
            return walk;
        }
    }
    walk.closed = false;
    return walk;
}

CncPartition vertex_cnc(Tower& tower, int n, const Partition& vertices, int vertex_class) {
    const LevelRelation& white = tower.relation(Color::White, n);
    const LevelRelation& black = tower.relation(Color::Black, n);
    const auto& members = vertices.blocks.at(vertex_class); // ascending angle indices

    VertexWalk walk = vertex_walk(white, black, members);
    if (!walk.closed) {
        CncPartition out;
        out.vertex_class = vertex_class;
        out.witness = "vertex wedges do not close into a single cycle";
        return out;
    }
    std::map<int, std::vector<int>> white_groups, black_groups; // class id -> incidences
    for (std::size_t r = 0; r < walk.white_angle.size(); ++r) {
        white_groups[white.class_of[walk.white_angle[r]]].push_back(static_cast<int>(2 * r));
        black_groups[black.class_of[walk.black_angle[r]]].push_back(static_cast<int>(2 * r + 1));
    }
    std::vector<std::vector<int>> wb, bb;
    for (auto& [cls, slots] : white_groups) wb.push_back(std::move(slots));
    for (auto& [cls, slots] : black_groups) bb.push_back(std::move(slots));
    CncPartition out = check_cnc(std::move(wb), std::move(bb), static_cast<int>(2 * members.size()));
    out.vertex_class = vertex_class;
    return out;
}

RestrictionReport restriction_equal(const LevelAngles& coarse, const LevelRelation& coarse_rel,
                                    const LevelAngles& fine, const LevelRelation& fine_rel) {
    RestrictionReport out;
    // Map each coarse class to the fine class of its members; the restricted
    // partitions agree iff this map is well defined and injective.
    std::vector<int> fine_idx(coarse.angles.size());
    for (std::size_t i = 0; i < coarse.angles.size(); ++i) {
        int idx = fine.index_of(coarse.angles[i]);
        if (idx < 0) {
            out.witness = "angle " + coarse.angles[i].str() + " missing at finer level";
            return out;
        }
        fine_idx[i] = idx;
    }
    std::map<int, int> coarse_to_fine, fine_to_coarse;
    for (std::size_t i = 0; i < coarse.angles.size(); ++i) {
        int cc = coarse_rel.class_of[i];
        int fc = fine_rel.class_of[fine_idx[i]];
        auto [it1, ins1] = coarse_to_fine.emplace(cc, fc);
        if (!ins1 && it1->second != fc) {
            out.witness = "class of " + coarse.angles[i].str() + " splits at the finer level";
            return out;
        }
        auto [it2, ins2] = fine_to_coarse.emplace(fc, cc);
        if (!ins2 && it2->second != cc) {
            out.witness = "angles " + coarse.angles[coarse_rel.classes[it2->second][0]].str() + " and " +
                          coarse.angles[i].str() + " merge at the finer level";
            return out;
        }
    }
    out.equal = true;
    return out;
}

RestrictionReport restriction_equal(Tower& tower, int n) {
    for (Color c : {Color::White, Color::Black}) {
        RestrictionReport r = restriction_equal(tower.angles_at(n), tower.relation(c, n),
                                                tower.angles_at(n + 1), tower.relation(c, n + 1));
        if (!r.equal) {
            r.witness = std::string(color_name(c)) + ": " + r.witness;
            return r;
        }
    }
    return {true, ""};
}

} // namespace circlelam
