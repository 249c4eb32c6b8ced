#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rkgal {

/// Base class for all library errors. `name()` is the stable machine-readable
/// identifier surfaced by the CLI; `what()` carries the detail text.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(detail.empty() ? name : name + ": " + detail),
        name_(std::move(name)) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define RKGAL_DEFINE_ERROR(NAME)                       \
  struct NAME : Error {                                \
    explicit NAME(const std::string& detail = {})      \
        : Error(#NAME, detail) {}                      \
  }

RKGAL_DEFINE_ERROR(SubdivisionLimitExceeded);
RKGAL_DEFINE_ERROR(InvalidBound);
RKGAL_DEFINE_ERROR(WindowMismatch);
RKGAL_DEFINE_ERROR(SingularCorrelation);
RKGAL_DEFINE_ERROR(GridTooCoarse);
RKGAL_DEFINE_ERROR(JitterTooLarge);
RKGAL_DEFINE_ERROR(ZeroSignal);
RKGAL_DEFINE_ERROR(NoCrossings);
RKGAL_DEFINE_ERROR(EmptySampleSet);
RKGAL_DEFINE_ERROR(SingularSystem);
RKGAL_DEFINE_ERROR(RankDeficient);
RKGAL_DEFINE_ERROR(SingularGram);
RKGAL_DEFINE_ERROR(SingularMatrix);
RKGAL_DEFINE_ERROR(DivergenceDetected);
RKGAL_DEFINE_ERROR(ParseError);

#undef RKGAL_DEFINE_ERROR

}  // namespace rkgal
