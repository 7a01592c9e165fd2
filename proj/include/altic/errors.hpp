#pragma once

#include <stdexcept>
#include <string>

namespace altic {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field construction rejects composite or too-small moduli.
struct NonPrimeField : Error {
  explicit NonPrimeField(unsigned long long n)
      : Error("field order " + std::to_string(n) + " is not prime") {}
};

struct FieldTooSmall : Error {
  explicit FieldTooSmall(unsigned long long n)
      : Error("field order " + std::to_string(n) + " is below the minimum of 3") {}
};

struct ZeroInverse : Error {
  ZeroInverse() : Error("multiplicative inverse of zero") {}
};

struct SingularMatrix : Error {
  using Error::Error;
  SingularMatrix() : Error("matrix is singular") {}
};

// A receiver's equation system did not determine all unknowns.
struct SingularSystem : Error {
  using Error::Error;
  SingularSystem() : Error("decoding system is singular") {}
};

struct InvalidDistribution : Error {
  using Error::Error;
};

// A message source was asked for more symbols than it can supply.
struct SourceExhausted : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct DecodeFailure : Error {
  using Error::Error;
};

}  // namespace altic
