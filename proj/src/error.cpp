#include "mteval/error.hpp"

namespace mteval {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kEncoding: return "EncodingError";
    case ErrorCode::kLineCountMismatch: return "LineCountMismatch";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kInvalidPercent: return "InvalidPercent";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOrderMismatch: return "OrderMismatch";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kDegenerateTable: return "DegenerateTable";
    case ErrorCode::kInsufficientDistinctValues: return "InsufficientDistinctValues";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
  }
  return "Unknown";
}

}  // namespace mteval
