#pragma once
// Cost metering and the error taxonomy shared by library and CLI.
//
// Budgets count "field element operations" charged at matrix-kernel
// granularity (one charge per row*col pass, one per enumerated subspace,
// and so on). Public entry points open a default scope only when none is
// active, so an outer caller (CLI --budget-ops, tests) can set one cap for
// a whole computation.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hallwb {

// CLI exit codes: 0 ok, 2 usage, 3 budget, 4 catalog miss.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CatalogMiss : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Budget {
 public:
  static constexpr std::uint64_t kDefaultOps = 1ull << 22;
  static constexpr std::uint64_t kUnlimited = ~0ull;

  static void charge(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > limit_)
      throw BudgetExceeded("field-operation budget exceeded (" +
                           std::to_string(limit_) + " ops)");
  }
  static std::uint64_t used() { return used_; }
  static std::uint64_t limit() { return limit_; }
  static bool scope_active() { return scope_depth_ > 0; }

 private:
  friend class BudgetScope;
  static thread_local std::uint64_t used_;
  static thread_local std::uint64_t limit_;
  static thread_local int scope_depth_;
};

// RAII budget scope. The outermost scope wins: nested scopes do not shrink
// an already active budget (callers meter whole computations).
class BudgetScope {
 public:
  explicit BudgetScope(std::uint64_t cap) {
    outer_ = Budget::scope_active();
    if (!outer_) {
      saved_used_ = Budget::used_;
      saved_limit_ = Budget::limit_;
      Budget::used_ = 0;
      Budget::limit_ = cap;
    }
    ++Budget::scope_depth_;
  }
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;
  ~BudgetScope() {
    --Budget::scope_depth_;
    if (!outer_) {
      Budget::used_ = saved_used_;
      Budget::limit_ = saved_limit_;
    }
  }

 private:
  bool outer_ = false;
  std::uint64_t saved_used_ = 0;
  std::uint64_t saved_limit_ = Budget::kUnlimited;
};

}  // namespace hallwb
