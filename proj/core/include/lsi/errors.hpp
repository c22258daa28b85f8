#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lsi {

enum class ErrorKind {
  usage,       // contract violation by the caller
  config,      // invalid parameter (k < 2, eps = 0, ...)
  training,    // a model cannot be fit to the given table
  load,        // malformed key/query/model file
  generation,  // workload generator could not satisfy its contract
  sizing,      // request exceeds the configured memory budget
  selection,   // no result rows match a selection
  parse,       // malformed CSV or config text
  internal,    // invariant broken inside the library
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& what) : Error(ErrorKind::training, what) {}
};

class LoadError : public Error {
 public:
  enum class Reason { io, truncated, unsorted, duplicate, bad_magic, bad_version, corrupt };

  LoadError(Reason reason, const std::string& what) : Error(ErrorKind::load, what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& what) : Error(ErrorKind::generation, what) {}
};

class SizingError : public Error {
 public:
  explicit SizingError(const std::string& what) : Error(ErrorKind::sizing, what) {}
};

class SelectionError : public Error {
 public:
  explicit SelectionError(const std::string& what) : Error(ErrorKind::selection, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

}  // namespace lsi
