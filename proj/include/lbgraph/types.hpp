#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace lbg {

using node_t = std::uint32_t;
using edge_t = std::uint64_t;
using weight_t = std::uint32_t;
using dist_t = std::uint64_t;
using degree_t = std::uint64_t;

/// Distance of an unreached node.
inline constexpr dist_t kInfDist = std::numeric_limits<dist_t>::max();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A layout does not fit the configured memory budget.
class CapacityError : public Error {
 public:
  CapacityError(std::uint64_t required, std::uint64_t available)
      : Error("capacity exceeded: requires " + std::to_string(required) +
              " cells, budget allows " + std::to_string(available)),
        required_(required),
        available_(available) {}
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t available() const noexcept { return available_; }

 private:
  std::uint64_t required_;
  std::uint64_t available_;
};

class WorklistOverflow : public Error {
 public:
  using Error::Error;
};

/// A kernel body failed; carries the first failing virtual thread id.
class LaunchError : public Error {
 public:
  LaunchError(std::size_t thread_id, const std::string& what)
      : Error("kernel failed in thread " + std::to_string(thread_id) + ": " +
              what),
        thread_id_(thread_id) {}
  std::size_t thread_id() const noexcept { return thread_id_; }

 private:
  std::size_t thread_id_;
};

class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace lbg
