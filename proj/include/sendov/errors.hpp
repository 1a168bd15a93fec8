#pragma once

#include <stdexcept>
#include <string>

namespace sendov {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invariant-violating input (bad beta, zero multiplicity, ...).
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class QuadratureNoConvergence : public Error {
 public:
  using Error::Error;
};

class DegreeTooLarge : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class OnCircleAmbiguity : public Error {
 public:
  using Error::Error;
};

class MethodDisagreement : public Error {
 public:
  using Error::Error;
};

class EndpointUndefined : public Error {
 public:
  using Error::Error;
};

class RootOutsideDisk : public Error {
 public:
  using Error::Error;
};

class NotRealPolynomial : public Error {
 public:
  using Error::Error;
};

class BetaExceedsOne : public Error {
 public:
  using Error::Error;
};

class NoFeasibleResult : public Error {
 public:
  using Error::Error;
};

// The embedded or supplied table dataset is malformed.
class DatasetError : public Error {
 public:
  using Error::Error;
};

}  // namespace sendov
