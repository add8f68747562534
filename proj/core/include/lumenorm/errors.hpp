#pragma once

#include <stdexcept>
#include <string>

namespace lumenorm {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem-level failure: missing file, unreadable stream, failed write.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Readable file (or text input) whose content is not in a supported format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its documented domain (non-positive sigma, bad grid, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace lumenorm
