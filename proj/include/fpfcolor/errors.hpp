#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fpfcolor {

// Process exit codes used by the CLI. Library errors carry one of these so
// the tool can map failures without string matching.
enum class ExitCode : int {
  Ok = 0,
  Input = 1,
  Certification = 2,
  Hypothesis = 3,
  Overflow = 4,
  Internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ExitCode::Input, what) {}
};

// Raised when a map cannot be sign-certified at any tried subdivision depth.
struct NotCertifiablyFpf : Error {
  NotCertifiablyFpf(std::string what, std::vector<int> offenders, int depth)
      : Error(ExitCode::Certification, std::move(what)),
        offending_simplices(std::move(offenders)),
        depth_reached(depth) {}
  std::vector<int> offending_simplices;
  int depth_reached = 0;
};

struct HypothesisError : Error {
  explicit HypothesisError(const std::string& what) : Error(ExitCode::Hypothesis, what) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& what) : Error(ExitCode::Overflow, what) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(ExitCode::Internal, what) {}
};

}  // namespace fpfcolor
