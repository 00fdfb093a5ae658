#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "reevrp/types.hpp"

namespace reevrp {

/// Dynamic bitset over customer ids 1..n.
class CustomerSet {
public:
    CustomerSet() = default;
    explicit CustomerSet(int n) : words_((static_cast<std::size_t>(n) + 64) / 64, 0) {}

    void insert(NodeId c) { words_[word(c)] |= bit(c); }
    void erase(NodeId c) { words_[word(c)] &= ~bit(c); }
    bool contains(NodeId c) const {
        return word(c) < words_.size() && (words_[word(c)] & bit(c)) != 0;
    }

    std::size_t size() const {
        std::size_t s = 0;
        for (auto w : words_) s += static_cast<std::size_t>(std::popcount(w));
        return s;
    }

    bool intersects(const CustomerSet& o) const {
        for (std::size_t k = 0; k < words_.size() && k < o.words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    void merge(const CustomerSet& o) {
        if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
        for (std::size_t k = 0; k < o.words_.size(); ++k) words_[k] |= o.words_[k];
    }

    friend bool operator==(const CustomerSet& a, const CustomerSet& b) {
        const std::size_t m = std::max(a.words_.size(), b.words_.size());
        for (std::size_t k = 0; k < m; ++k) {
            const auto x = k < a.words_.size() ? a.words_[k] : 0;
            const auto y = k < b.words_.size() ? b.words_[k] : 0;
            if (x != y) return false;
        }
        return true;
    }

private:
    static std::size_t word(NodeId c) { return static_cast<std::size_t>(c) / 64; }
    static std::uint64_t bit(NodeId c) { return std::uint64_t{1} << (static_cast<unsigned>(c) % 64); }

    std::vector<std::uint64_t> words_;
};

}  // namespace reevrp
