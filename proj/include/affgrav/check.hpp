#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace affgrav {

struct CheckFailure {
  std::string invariant;
  std::string detail;
};

/// Accumulates named invariant checks; keeps going after a failure so a
/// report can show every broken invariant, first one first.
class CheckLog {
 public:
  template <class DetailFn>
  bool expect(bool condition, std::string_view invariant, DetailFn&& detail) {
    ++checks_;
    if (!condition) failures_.push_back({std::string(invariant), std::forward<DetailFn>(detail)()});
    return condition;
  }

  void merge(const CheckLog& other) {
    checks_ += other.checks_;
    failures_.insert(failures_.end(), other.failures_.begin(), other.failures_.end());
  }

  bool ok() const noexcept { return failures_.empty(); }
  int checks() const noexcept { return checks_; }
  const std::vector<CheckFailure>& failures() const noexcept { return failures_; }

 private:
  int checks_ = 0;
  std::vector<CheckFailure> failures_;
};

}  // namespace affgrav
