#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fplab {

/// Thrown for malformed inputs and parameters outside their documented range.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One sampled point where a property check failed.
struct Violation {
  std::vector<double> point;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string kind;  // short tag, e.g. "upper-bound", "asymmetry", "non-finite"
};

/// Outcome of a sampled property check.
struct PropertyVerdict {
  enum class Status { Pass, Fail, PremiseNotEstablished };

  Status status = Status::Pass;
  std::vector<Violation> violations;
  std::size_t samples = 0;
  std::string note;

  bool passed() const { return status == Status::Pass; }

  void add(Violation v) {
    violations.push_back(std::move(v));
    status = Status::Fail;
  }
};

inline const char* to_string(PropertyVerdict::Status s) {
  switch (s) {
    case PropertyVerdict::Status::Pass:
      return "pass";
    case PropertyVerdict::Status::Fail:
      return "fail";
    case PropertyVerdict::Status::PremiseNotEstablished:
      return "premise-not-established";
  }
  return "unknown";
}

}  // namespace fplab
