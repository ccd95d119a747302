#ifndef ANNOPROJ_ERROR_H_
#define ANNOPROJ_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace annoproj {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a data invariant (e.g. IOB ordering).
class ValidationError : public Error {
 public:
  ValidationError(const std::string &what, std::size_t sentence,
                  std::size_t position)
      : Error("sentence " + std::to_string(sentence) + ", token " +
              std::to_string(position) + ": " + what),
        sentence_(sentence),
        position_(position) {}

  std::size_t sentence() const { return sentence_; }
  std::size_t position() const { return position_; }

 private:
  std::size_t sentence_;
  std::size_t position_;
};

// A translation provider could not resolve an input.
class TranslationError : public Error {
 public:
  using Error::Error;
};

// Raised when a caller breaks a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Bad or incomplete run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A required input file is unset or does not exist.
class MissingInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace annoproj

#endif  // ANNOPROJ_ERROR_H_
