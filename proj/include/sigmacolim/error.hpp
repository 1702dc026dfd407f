#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sigmacolim {

/// Raised when an operation receives data outside its precondition
/// (unknown identifier, mismatched endpoints, invalid input category).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a construction needs a σ-filtered index and the pair is not.
class NotSigmaFiltered : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single failed law. `kind` is a stable tag (e.g. "MissingComposite"),
/// `detail` names the offending cells.
struct Violation {
  std::string kind;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

using Violations = std::vector<Violation>;

inline std::string describe(const Violations& vs) {
  std::string out;
  for (const auto& v : vs) {
    out += v.kind + ": " + v.detail + "\n";
  }
  return out;
}

}  // namespace sigmacolim
