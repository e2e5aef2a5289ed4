#pragma once

#include <stdexcept>
#include <string>

namespace salv {

// Exit codes used by the CLI; library code throws, tools/salv_main.cpp maps.
enum ExitCode {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitResource = 3,
  kExitInternal = 4,
  kExitCacheCorrupt = 5,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedFamilyError : UsageError {
  using UsageError::UsageError;
};
struct RankOutOfRangeError : UsageError {
  using UsageError::UsageError;
};
// A theorem check invoked outside the range where the statement is claimed.
struct RangeViolationError : UsageError {
  using UsageError::UsageError;
};
struct MalformedElementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZeroError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadPrimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OrderMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal inconsistencies: a passing run must never see these.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};
struct ParityViolationError : std::logic_error {
  using std::logic_error::logic_error;
};
struct NonCyclotomicFactorError : std::logic_error {
  using std::logic_error::logic_error;
};
struct NegativeMultiplicityError : std::logic_error {
  using std::logic_error::logic_error;
};
struct NonSquarefreeTorsionError : std::logic_error {
  using std::logic_error::logic_error;
};
struct ShiftInvalidError : std::logic_error {
  using std::logic_error::logic_error;
};
struct FreeRankNonzeroError : std::logic_error {
  using std::logic_error::logic_error;
};
struct PrimeDisagreementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CacheCorruptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace salv
