#pragma once
// Error taxonomy for the toolkit. Every failure surfaces as a subtype of
// Error so callers can distinguish input/contract problems from numeric
// breakdowns with a single catch site (the CLI maps them to exit codes).

#include <stdexcept>
#include <string>

namespace horizonkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- input / contract errors -------------------------------------------------

struct DimensionMismatch : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct InsufficientHistory : Error {
  using Error::Error;
};

struct SeriesTooShort : Error {
  using Error::Error;
};

struct EmptySummary : Error {
  using Error::Error;
};

struct ConfigInvalid : Error {
  using Error::Error;
};

struct FileError : Error {
  using Error::Error;
};

struct FormatError : Error {
  using Error::Error;
};

struct NonContiguousTime : Error {
  using Error::Error;
};

// --- numeric errors ----------------------------------------------------------

struct NonFinite : Error {
  using Error::Error;
};

struct SingularSystem : Error {
  using Error::Error;
};

// A window (or an entire analysis) carries no variance, so correlation is
// undefined there. Per-cell occurrences are absorbed as "absent" cells;
// the error escapes only when a whole computation is degenerate.
struct ZeroVariance : Error {
  using Error::Error;
};

// The base cell of a row is too close to zero to scale by; the row is
// reported unscaled with a flag instead.
struct DegenerateBase : Error {
  using Error::Error;
};

}  // namespace horizonkit
