#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polycensus {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Certification failed even at the maximum working precision.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

class Reducible : public Error {
 public:
  Reducible() : Error("polynomial is reducible over Q") {}
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class NotTransitive : public Error {
 public:
  NotTransitive() : Error("permutation group is not transitive") {}
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class IncompleteCensus : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// The requested census exceeds the instance cap.
class FeasibilityRefusal : public Error {
 public:
  FeasibilityRefusal(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& expected)
      : Error("parse error at offset " + std::to_string(offset) + ": expected " +
              expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace polycensus
