#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mteval {

enum class ErrorCode {
  kIo,
  kEncoding,
  kLineCountMismatch,
  kMalformedLine,
  kInvalidPercent,
  kInvalidArgument,
  kOrderMismatch,
  kEmptyCorpus,
  kLengthMismatch,
  kZeroVariance,
  kDegenerateTable,
  kInsufficientDistinctValues,
  kSchemaMismatch,
};

std::string_view error_code_name(ErrorCode code);

// Every failure the library reports is an Error carrying one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mteval
