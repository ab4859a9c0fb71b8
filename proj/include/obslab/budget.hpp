#pragma once

#include <cstdint>

namespace obslab {

// Deterministic work accounting. Every potentially large enumeration or solve
// charges abstract work units before doing the work; exceeding the budget
// raises Error::Kind::BudgetExceeded. Units are deterministic across runs and
// platforms (they count loop iterations, never wall time).
class Budget {
public:
    // Effective budget: OBSLAB_BUDGET environment variable if set to a
    // positive integer, otherwise the built-in default.
    static std::int64_t limit();

    static std::int64_t used();

    // Reset the used-counter to zero (each CLI invocation and each test case
    // starts fresh).
    static void reset();

    // Charge `n` units; throws BudgetExceeded if the running total would pass
    // the limit.
    static void charge(std::int64_t n);

    static constexpr std::int64_t kDefaultLimit = 4'000'000'000;
};

}  // namespace obslab
