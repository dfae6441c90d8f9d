#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dcomp {

// Default cap on exhaustively evaluated tuples. Universal quantifiers are
// decided by exhaustion; checks that would exceed the cap fail loudly
// instead of silently sampling.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000ULL;

// An exhaustive check would exceed its enumeration budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// A hypothesis required by a construction or bound does not hold.
// The message names the failed hypothesis.
class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void check_hypothesis(bool cond, const std::string& msg) {
  if (!cond) throw precondition_error(msg);
}

// base^exp with overflow detection (caps at 2^62 so products of two counts
// still fit in a u64 budget comparison).
inline std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::uint64_t{1} << 62) / base)
      throw budget_error("alphabet^n exceeds 2^62");
    r *= base;
  }
  return r;
}

inline void check_budget(std::uint64_t work, std::uint64_t budget, const std::string& what) {
  if (work > budget)
    throw budget_error(what + ": " + std::to_string(work) +
                       " tuples exceed enumeration budget " + std::to_string(budget));
}

}  // namespace dcomp
