#pragma once

#include <stdexcept>
#include <string>

namespace fuslim {

// Bad user input: malformed files, violated preconditions, invalid configs.
// The CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap was hit (group order, subgroup lattice size,
// cochain coordinate count). CLI exit code 2.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// An internally guaranteed property failed to verify. This never indicates bad
// input; it means the library itself is wrong somewhere. CLI exit code 3.
struct InternalCheckError : std::logic_error {
  explicit InternalCheckError(const std::string& msg) : std::logic_error(msg) {}
};

inline void internal_check(bool ok, const std::string& msg) {
  if (!ok) throw InternalCheckError(msg);
}

}  // namespace fuslim
