#pragma once

#include <stdexcept>
#include <string>

namespace cmpoly {

// Values mirror cmp_status in cmpoly.h.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kParse = 2,
  kDomain = 3,  // a mathematical precondition failed (q0 <= 0, singular, ...)
  kRank = 4,
  kTolerance = 5,
  kLimit = 6,   // a size guard was exceeded
  kInternal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cmpoly
