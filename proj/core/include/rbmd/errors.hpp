#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbmd {

/// Coarse error classes; the CLI maps them to exit codes 2, 3 and 4.
enum class ErrorKind { Config, Data, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define RBMD_DEFINE_ERROR(Name, Kind)                                         \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {}  \
  };

// geometry
RBMD_DEFINE_ERROR(AmbiguousProjection, Numerical)
RBMD_DEFINE_ERROR(DegenerateInput, Data)
RBMD_DEFINE_ERROR(EmptySet, Data)
// dynamics
RBMD_DEFINE_ERROR(StartOutsideDomain, Config)
RBMD_DEFINE_ERROR(NonFiniteDrift, Numerical)
// density
RBMD_DEFINE_ERROR(NonDifferentiablePoint, Numerical)
// levelset
RBMD_DEFINE_ERROR(EmptyLevelSet, Data)
RBMD_DEFINE_ERROR(EmptyLevelSample, Data)
// drift
RBMD_DEFINE_ERROR(NoLocalSamples, Data)
RBMD_DEFINE_ERROR(DensityBelowFloor, Numerical)
// validation
RBMD_DEFINE_ERROR(QuadratureNotConverged, Numerical)
RBMD_DEFINE_ERROR(NoInteriorNodes, Data)
// cli
RBMD_DEFINE_ERROR(ConfigError, Config)
RBMD_DEFINE_ERROR(NonMonotoneTimestamps, Data)

#undef RBMD_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Data, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Wraps an error raised inside a pipeline stage, keeping its kind.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), stage + ": " + cause.what()), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace rbmd
