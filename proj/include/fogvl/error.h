// Copyright 2026 The fogvl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOGVL_ERROR_H_
#define FOGVL_ERROR_H_

#include <stdexcept>
#include <string>

namespace fogvl {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-point value does not fit in the signed half-range of the field.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

// Threshold/party-count/evaluation-point violations.
class PolicyError : public Error {
 public:
  using Error::Error;
};

class DuplicatePointError : public PolicyError {
 public:
  using PolicyError::PolicyError;
};

class InsufficientSharesError : public Error {
 public:
  using Error::Error;
};

// Inputs that should line up (eval points, rounds, dimensions) do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A message arrived out of phase or for another round.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace fogvl

#endif  // FOGVL_ERROR_H_
