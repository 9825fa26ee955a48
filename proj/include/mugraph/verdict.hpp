#pragma once

#include <string>
#include <utility>

namespace mugraph {

// Outcome of a single verification. NotApplicable records an unmet hypothesis
// or guard; it is not a pass, but only Fail makes a run unsuccessful.
struct Verdict {
  enum class Status { Pass, Fail, NotApplicable };

  Status status = Status::Pass;
  std::string detail;

  static Verdict pass(std::string d = {}) { return {Status::Pass, std::move(d)}; }
  static Verdict fail(std::string d) { return {Status::Fail, std::move(d)}; }
  static Verdict not_applicable(std::string d) { return {Status::NotApplicable, std::move(d)}; }

  bool ok() const { return status != Status::Fail; }
  bool passed() const { return status == Status::Pass; }
};

inline const char* to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Pass: return "pass";
    case Verdict::Status::Fail: return "fail";
    default: return "not-applicable";
  }
}

}  // namespace mugraph
