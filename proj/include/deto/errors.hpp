#pragma once

#include <stdexcept>
#include <string>

namespace deto {

/// A state component left the finite range during integration.
class FiniteEscape : public std::runtime_error {
public:
  FiniteEscape(double t, long j)
      : std::runtime_error("non-finite state component at t=" + std::to_string(t) +
                           ", j=" + std::to_string(j)),
        t(t), j(j) {}
  double t;
  long j;
};

/// More jumps at one time instant than the Zeno guard allows.
class ZenoSuspected : public std::runtime_error {
public:
  ZenoSuspected(double t, long j)
      : std::runtime_error("suspected Zeno behavior at t=" + std::to_string(t) +
                           ", j=" + std::to_string(j)),
        t(t), j(j) {}
  double t;
  long j;
};

/// A node was asked to jump while its trigger condition does not hold.
class InconsistentJump : public std::runtime_error {
public:
  explicit InconsistentJump(const std::string& what) : std::runtime_error(what) {}
};

/// A design inequality failed; the message names the violated inequality.
class ParameterViolation : public std::runtime_error {
public:
  explicit ParameterViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Requested decay rate exceeds what the certificate provides.
class DecayUnachievable : public std::runtime_error {
public:
  explicit DecayUnachievable(const std::string& what) : std::runtime_error(what) {}
};

/// The certificate split leaves no positive decay coefficient.
class InvalidSplit : public std::runtime_error {
public:
  explicit InvalidSplit(const std::string& what) : std::runtime_error(what) {}
};

class BadInput : public std::runtime_error {
public:
  explicit BadInput(const std::string& what) : std::runtime_error(what) {}
};

class BadWindow : public std::runtime_error {
public:
  explicit BadWindow(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace deto
