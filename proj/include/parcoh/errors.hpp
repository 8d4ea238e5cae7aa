#pragma once

#include <stdexcept>
#include <string>

namespace parcoh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInRegularSet : public Error {
 public:
  using Error::Error;
};

class UnboundGenerator : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

class NotParabolic : public Error {
 public:
  using Error::Error;
};

class NormalizationFailed : public Error {
 public:
  using Error::Error;
};

class ChartTooSmall : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Carries the final residual so callers can report it.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class ObstructedClasses : public Error {
 public:
  ObstructedClasses(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace parcoh
