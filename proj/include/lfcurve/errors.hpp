#ifndef LFCURVE_ERRORS_HPP
#define LFCURVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lfcurve {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value outside the domain of a transform (e.g. a non-positive level fed to a log).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// The requested periods are not covered by the inputs after lagging/alignment.
class CoverageError : public Error {
 public:
  using Error::Error;
};

class FrequencyMismatchError : public Error {
 public:
  using Error::Error;
};

/// Least-squares design without an admissible (identified) solution.
class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

class CollinearityError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(what, 0) {}

  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace lfcurve

#endif  // LFCURVE_ERRORS_HPP
