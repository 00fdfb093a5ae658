#pragma once

#include <cstdint>
#include <deque>
#include <unordered_map>

namespace reevrp::its {

/// Recently visited solutions, keyed by canonical fingerprint. An entry
/// inserted at iteration t forbids that solution during (t, t + tenure].
class TabuList {
public:
    explicit TabuList(std::int64_t tenure) : tenure_(tenure) {}

    void insert(std::uint64_t fp, std::int64_t iteration) {
        expire(iteration);
        entries_.emplace_back(fp, iteration);
        latest_[fp] = iteration;
    }

    bool is_tabu(std::uint64_t fp, std::int64_t iteration) const {
        auto it = latest_.find(fp);
        if (it == latest_.end()) return false;
        const std::int64_t age = iteration - it->second;
        return age > 0 && age <= tenure_;
    }

    void expire(std::int64_t iteration) {
        while (!entries_.empty() && iteration - entries_.front().second > tenure_) {
            auto [fp, it] = entries_.front();
            entries_.pop_front();
            auto found = latest_.find(fp);
            if (found != latest_.end() && found->second == it) latest_.erase(found);
        }
    }

    std::size_t size() const { return latest_.size(); }
    std::int64_t tenure() const { return tenure_; }

private:
    std::int64_t tenure_;
    std::deque<std::pair<std::uint64_t, std::int64_t>> entries_;
    std::unordered_map<std::uint64_t, std::int64_t> latest_;
};

}  // namespace reevrp::its
