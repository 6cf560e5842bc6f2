#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hypermet {

enum class ErrorKind {
  Input,               // malformed or out-of-contract input data
  Label,               // unknown / reserved / duplicate label
  Parameter,           // parameter outside its admissible interval
  Configuration,       // operation requested in an unsupported configuration
  Connectivity,        // endpoints not connected in the working graph
  Domain,              // point outside the domain of definition
  Resolution,          // discretization too coarse to produce any nodes
  DegenerateFit,       // not enough distinct scales for a regression
  UndefinedCrossRatio, // repeated points or vanishing denominator
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Label: return "label";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Connectivity: return "connectivity";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::DegenerateFit: return "degenerate-fit";
    case ErrorKind::UndefinedCrossRatio: return "undefined-cross-ratio";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace hypermet
