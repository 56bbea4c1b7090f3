#pragma once

#include <stdexcept>
#include <string>

namespace pufkit {

// Malformed or unreadable persisted data (tables, configs, reports).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Authentication-flow misuse: consumed entries, unknown ids, exhausted tables.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pufkit
