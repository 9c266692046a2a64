#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coefx {

// Root of every domain error raised by the library. The CLI maps these to
// exit code 1 (ParseError maps to 2).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COEFX_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    explicit Name(const std::string& what) \
        : Error(#Name ": " + what) {}     \
  };

COEFX_DEFINE_ERROR(DivisionByZero)
COEFX_DEFINE_ERROR(InvalidArgument)
COEFX_DEFINE_ERROR(IntegralDivergent)
COEFX_DEFINE_ERROR(VariableMismatch)
COEFX_DEFINE_ERROR(DivisionByZeroSeries)
COEFX_DEFINE_ERROR(InsufficientPrecision)
COEFX_DEFINE_ERROR(CompositionValuationError)
COEFX_DEFINE_ERROR(UnsafeBracket)
COEFX_DEFINE_ERROR(PoleInAnnulus)
COEFX_DEFINE_ERROR(InvalidAnnulus)

#undef COEFX_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
      : Error(format(position, expected, found)), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(std::size_t position, const std::vector<std::string>& expected,
                            const std::string& found) {
    std::string msg = "ParseError: at position " + std::to_string(position) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + found;
    return msg;
  }

  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace coefx
