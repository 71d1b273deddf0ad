#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cylinder {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotCoprime : public Error {
 public:
  using Error::Error;
};

class DepthExceedsExpansion : public Error {
 public:
  using Error::Error;
};

class EnclosureTooWide : public Error {
 public:
  using Error::Error;
};

// A condition could not be decided within the available horizon.
class Undecidable : public Error {
 public:
  Undecidable(std::string condition, std::size_t horizon)
      : Error("undecidable: " + condition + " at horizon " + std::to_string(horizon)),
        condition_(std::move(condition)),
        horizon_(horizon) {}
  const std::string& condition() const noexcept { return condition_; }
  std::size_t horizon() const noexcept { return horizon_; }

 private:
  std::string condition_;
  std::size_t horizon_;
};

class NoSubsequenceFound : public Error {
 public:
  using Error::Error;
};

class TailNotCertified : public Error {
 public:
  explicit TailNotCertified(std::size_t j_max)
      : Error("tail not certified up to j_max = " + std::to_string(j_max)), j_max_(j_max) {}
  std::size_t j_max() const noexcept { return j_max_; }

 private:
  std::size_t j_max_;
};

class NotCompleteResidueSystem : public Error {
 public:
  using Error::Error;
};

class IntegerDiscontinuity : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  HypothesisViolated(std::string which, const std::string& detail)
      : Error("hypothesis " + which + " violated: " + detail), which_(std::move(which)) {}
  const std::string& which() const noexcept { return which_; }

 private:
  std::string which_;
};

class ParityMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateFamily : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cylinder
