#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ob {

// Invalid instance / malformed input. `path()` is the offending field, e.g.
// "current.ballot", when known.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A configured resource cap (ballot space, table cells, game size) was hit.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ob
