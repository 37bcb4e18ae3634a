#pragma once

#include <atomic>
#include <cstdint>

#include "bnt/error.hpp"

namespace bnt {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Guard for exhaustive enumerations: charges one unit per candidate set
// (or search node) examined and throws once the limit is crossed.
// Thread-safe so data-parallel loops can share a single counter.
class BudgetCounter {
public:
    explicit BudgetCounter(std::uint64_t limit = kDefaultBudget) : limit_(limit) {}

    BudgetCounter(const BudgetCounter&) = delete;
    BudgetCounter& operator=(const BudgetCounter&) = delete;

    void charge(std::uint64_t units = 1) {
        const std::uint64_t now = used_.fetch_add(units, std::memory_order_relaxed) + units;
        if (now > limit_) {
            throw BntError(ErrorKind::budget_exceeded, "enumeration budget exceeded",
                           {{"sets_examined", static_cast<std::int64_t>(now)},
                            {"budget", static_cast<std::int64_t>(limit_)}});
        }
    }

    std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_{0};
};

} // namespace bnt
