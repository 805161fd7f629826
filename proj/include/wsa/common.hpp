#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsa {

// Library-level error; everything thrown on invalid input or tripped caps
// derives from this so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file / JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  // boost-style mix
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace wsa
