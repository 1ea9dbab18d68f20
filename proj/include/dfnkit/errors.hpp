#pragma once

#include <stdexcept>
#include <string>

namespace dfnkit {

// Domain error codes. The CLI prints them as "error: <code>: <detail>".
enum class Errc {
  NonSquare,
  NoConvergence,
  ZeroMatrix,
  TooSmall,
  Overflow,
  DimensionMismatch,
  EmptyBatch,
  DegenerateSpectrum,
  UnsupportedFormat,
  CorruptHeader,
  SignalTooShort,
  NotComplex,
  ColaViolation,
  ScaleOutOfRange,
  ShapeMismatch,
  LogRealIrreversible,
  EmptySignal,
  NonPsd,
  AlreadyVisualized,
  TraceTooShort,
  DimMismatch,
  NumericalDivergence,
  InvalidArgument,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  Errc code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace dfnkit
