#pragma once

#include <stdexcept>
#include <string>

namespace labelguard {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Violated precondition of an operation (bad window size, dimension
/// mismatch, unsorted input, ...).
struct ArgumentError : Error {
  using Error::Error;
};

/// Invalid experiment configuration (unknown key, bad value, missing path).
struct ConfigError : Error {
  using Error::Error;
};

/// Problems with input data files.
struct DataError : Error {
  using Error::Error;
};

/// File content does not match the binary format definition.
struct MalformedFileError : DataError {
  using DataError::DataError;
};

/// CSV header does not match the documented schema.
struct SchemaError : DataError {
  using DataError::DataError;
};

/// A row of an input file could not be parsed; the message names the row.
struct ParseError : DataError {
  using DataError::DataError;
};

/// A split request asks for more samples of some class than exist.
struct CapacityError : DataError {
  using DataError::DataError;
};

/// Filesystem failures (unreadable input, unwritable output directory).
struct IoError : Error {
  using Error::Error;
};

}  // namespace labelguard
