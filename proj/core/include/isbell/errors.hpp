#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace isbell {

/// One failed law, with the ids (morphisms, elements, points) that exhibit it.
struct Violation {
  std::string law;
  std::vector<std::string> witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
  void add(std::string law, std::vector<std::string> witness) {
    violations.push_back({std::move(law), std::move(witness)});
  }
  [[nodiscard]] bool has(std::string_view law) const {
    for (const auto& v : violations)
      if (v.law == law) return true;
    return false;
  }
};

/// Input does not even describe a candidate structure: dangling ids,
/// duplicate labels, arrays of the wrong shape.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is well formed but violates an axiom (category, functor, metric).
class LawViolationError : public std::runtime_error {
 public:
  LawViolationError(const std::string& what, ValidationReport report)
      : std::runtime_error(what), report_(std::move(report)) {}

  [[nodiscard]] const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

class UnknownIdError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An exhaustive search ran past its node-expansion cap.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t limit)
      : std::runtime_error("enumeration budget of " + std::to_string(limit) +
                           " node expansions exceeded"),
        limit_(limit) {}

  [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
};

/// Node-expansion counter shared by every search in one logical run.
class Budget {
 public:
  static constexpr std::uint64_t default_limit = 10'000'000;

  explicit Budget(std::uint64_t limit = default_limit) : limit_(limit) {
    if (limit == 0) throw std::invalid_argument("budget must be positive");
  }

  void charge(std::uint64_t nodes = 1) {
    used_ += nodes;
    if (used_ > limit_) throw BudgetExceeded(limit_);
  }

  [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }
  [[nodiscard]] std::uint64_t used() const noexcept { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

}  // namespace isbell
