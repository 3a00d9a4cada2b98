#pragma once

#include <stdexcept>
#include <string>

namespace splitcm {

/// Base of every error raised by the library. `code()` is the process exit
/// code the command-line front end uses for this category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int code() const noexcept { return 1; }
  virtual const char* kind() const noexcept { return "Error"; }
};

class InputError : public Error {
 public:
  using Error::Error;
  int code() const noexcept override { return 2; }
  const char* kind() const noexcept override { return "InputError"; }
};

/// The level N does not split in O_K.
class SplitError : public InputError {
 public:
  using InputError::InputError;
  const char* kind() const noexcept override { return "SplitError"; }
};

/// Requested computation needs a choice the library does not make (h(D) > 1).
class UnsupportedError : public InputError {
 public:
  using InputError::InputError;
  const char* kind() const noexcept override { return "UnsupportedError"; }
};

class ResourceError : public Error {
 public:
  using Error::Error;
  int code() const noexcept override { return 3; }
  const char* kind() const noexcept override { return "ResourceError"; }
};

class IncompleteClassListError : public ResourceError {
 public:
  using ResourceError::ResourceError;
  const char* kind() const noexcept override { return "IncompleteClassListError"; }
};

class ConventionError : public Error {
 public:
  using Error::Error;
  int code() const noexcept override { return 4; }
  const char* kind() const noexcept override { return "ConventionError"; }
};

class InternalError : public Error {
 public:
  using Error::Error;
  int code() const noexcept override { return 4; }
  const char* kind() const noexcept override { return "InternalError"; }
};

}  // namespace splitcm
