#include "infconv/error.hpp"

namespace infconv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::NotInvertible: return "not invertible";
    case ErrorCode::Borderline: return "borderline, refine";
    case ErrorCode::NotExpanding: return "not expanding";
    case ErrorCode::DepthOutOfRange: return "depth out of range";
    case ErrorCode::DepthTooLarge: return "depth too large";
    case ErrorCode::SizeMismatch: return "size mismatch";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::ToleranceBreach: return "tolerance breach";
    case ErrorCode::MissingSpectrum: return "pair has no attached spectrum";
    case ErrorCode::CorrectionNotFound: return "equi-positivity correction not found";
    case ErrorCode::LevelGapTooSmall: return "level gap too small";
    case ErrorCode::NoSupportBound: return "cannot bound lattice translates";
    case ErrorCode::NotInDd: return "pair not in the diagonal digit-box class";
    case ErrorCode::NotAdmissible: return "not admissible";
    case ErrorCode::Schema: return "schema violation";
    case ErrorCode::Overflow: return "integer overflow";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown";
}

}  // namespace infconv
