#pragma once

#include <numeric>
#include <vector>

namespace orthorecon {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // False if already joined.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    // Component label per element, numbered by first appearance.
    std::vector<int> labels() {
        std::vector<int> root_label(parent_.size(), -1), out(parent_.size());
        int next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            const int r = find(static_cast<int>(i));
            if (root_label[r] < 0) root_label[r] = next++;
            out[i] = root_label[r];
        }
        return out;
    }

    int component_count() {
        int n = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i)
            if (find(static_cast<int>(i)) == static_cast<int>(i)) ++n;
        return n;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

} // namespace orthorecon
