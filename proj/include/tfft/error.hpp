#pragma once

#include <stdexcept>
#include <string>

namespace tfft {

/// Base class for every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A length or shape is not usable (non power of two, mismatched planes, uneven split).
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

/// An agent broke the circular-buffer or register ownership protocol.
class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

/// Every live agent is blocked and none can make progress.
class Deadlock : public Error {
 public:
  using Error::Error;
};

/// SRAM arena exhausted, or a destination span was never reserved.
class AllocationError : public Error {
 public:
  using Error::Error;
};

/// A 128-bit access was requested on a span that is not 16-byte aligned or not a multiple of 4 words.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace tfft
