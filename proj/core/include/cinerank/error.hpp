#pragma once

#include <stdexcept>
#include <string>

namespace cinerank {

/// Raised when input data (files, ratings, reviews) violates its schema or an
/// invariant of the store. Callers outside the library map this to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cinerank
