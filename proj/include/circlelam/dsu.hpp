#ifndef CIRCLELAM_DSU_HPP
#define CIRCLELAM_DSU_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace circlelam {

/// Union-find with path halving and union by size.
/// find() of the final structure returns the smallest index of the set,
/// so class ids derived from roots are stable across runs.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        // Keep the smaller index as root.
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }
    std::size_t set_size(std::size_t a) { return size_[find(a)]; }
    std::size_t count() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace circlelam

#endif
