#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latcode {

// Thrown when an exponential search/enumeration exceeds its configured budget.
// Callers that want "fail loudly, not hang" semantics catch this separately
// from input errors (the CLI maps it to exit code 2).
class resource_error : public std::runtime_error {
public:
    resource_error(const std::string& what, std::uint64_t budget, std::uint64_t reached)
        : std::runtime_error(what + " (budget " + std::to_string(budget) +
                             ", reached " + std::to_string(reached) + ")"),
          budget_(budget), reached_(reached) {}

    std::uint64_t budget() const { return budget_; }
    std::uint64_t reached() const { return reached_; }

private:
    std::uint64_t budget_;
    std::uint64_t reached_;
};

// Cheap tick counter guarding enumeration loops.
struct Budget {
    std::uint64_t limit;
    std::uint64_t used = 0;

    explicit Budget(std::uint64_t limit_) : limit(limit_) {}

    void tick(const char* what, std::uint64_t n = 1) {
        used += n;
        if (used > limit) throw resource_error(what, limit, used);
    }
};

inline std::uint64_t binomial_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace latcode
