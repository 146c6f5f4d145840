#pragma once

#include <stdexcept>
#include <string>

namespace longtail {

/// Base exception for every failure raised by the core library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input could not be read or has an unusable structure (missing columns,
/// unreadable stream). Fatal for the file being processed.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An analytic stage cannot run on the data it was given (empty sample,
/// too few documents, k larger than the corpus).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Invalid pipeline configuration (bad flag values, missing input files,
/// unwritable output directory). Nothing has been written when it is thrown.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace longtail
