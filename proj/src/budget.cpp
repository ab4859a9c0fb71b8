#include "obslab/budget.hpp"

#include <cstdlib>
#include <string>

#include "obslab/errors.hpp"

namespace obslab {

namespace {

std::int64_t read_limit_from_env() {
    const char* raw = std::getenv("OBSLAB_BUDGET");
    if (raw == nullptr) return Budget::kDefaultLimit;
    try {
        std::int64_t value = std::stoll(raw);
        if (value > 0) return value;
    } catch (...) {
        // fall through to default on unparsable values
    }
    return Budget::kDefaultLimit;
}

std::int64_t& used_counter() {
    static std::int64_t used = 0;
    return used;
}

}  // namespace

std::int64_t Budget::limit() {
    static const std::int64_t cached = read_limit_from_env();
    return cached;
}

std::int64_t Budget::used() { return used_counter(); }

void Budget::reset() { used_counter() = 0; }

void Budget::charge(std::int64_t n) {
    if (n < 0) fail(Error::Kind::InvalidArgument, "budget charge must be nonnegative");
    std::int64_t& used = used_counter();
    if (used > limit() - n) {
        fail(Error::Kind::BudgetExceeded,
             "work budget exhausted (used " + std::to_string(used) + " + requested " +
                 std::to_string(n) + " > limit " + std::to_string(limit()) + ")");
    }
    used += n;
}

}  // namespace obslab
