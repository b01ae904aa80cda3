#pragma once

#include <stdexcept>
#include <string>

namespace tuc {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violation: argument outside the documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Container / payload decoding failures. Each kind is independently
// diagnosable so callers can map them to distinct exit codes.
class DecodeError : public Error {
 public:
  enum class Kind {
    BadMagic,
    Truncated,
    BadHeader,
    IndexMismatch,
    Corrupt,
  };

  DecodeError(Kind kind, const std::string& what)
      : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// A single trial of one candidate failed (tool crash, timeout, bad exit).
// Selection treats this as a per-candidate failure, not a fatal error.
class TrialError : public Error {
 public:
  using Error::Error;
};

// External candidate registration failed (spawn, roundtrip, speed bound).
class RegistrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace tuc
