#include "dfnkit/errors.hpp"

namespace dfnkit {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ZeroMatrix: return "ZeroMatrix";
    case Errc::TooSmall: return "TooSmall";
    case Errc::Overflow: return "Overflow";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyBatch: return "EmptyBatch";
    case Errc::DegenerateSpectrum: return "DegenerateSpectrum";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::CorruptHeader: return "CorruptHeader";
    case Errc::SignalTooShort: return "SignalTooShort";
    case Errc::NotComplex: return "NotComplex";
    case Errc::ColaViolation: return "ColaViolation";
    case Errc::ScaleOutOfRange: return "ScaleOutOfRange";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::LogRealIrreversible: return "LogRealIrreversible";
    case Errc::EmptySignal: return "EmptySignal";
    case Errc::NonPsd: return "NonPsd";
    case Errc::AlreadyVisualized: return "AlreadyVisualized";
    case Errc::TraceTooShort: return "TraceTooShort";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::NumericalDivergence: return "NumericalDivergence";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dfnkit
