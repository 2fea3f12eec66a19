// Copyright 2026 The bellkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BELLKIT_ERRORS_H_
#define BELLKIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace bellkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or incomplete input document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A probability table does not sum to one (or has negative mass) beyond
/// the normalization tolerance.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// An outcome label that the scenario does not declare.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Setting index, permutation, or model dimension that does not fit the
/// scenario.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A behavior that signals where a construction requires no-signaling.
class NoSignalingError : public Error {
 public:
  NoSignalingError(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

/// A joint distribution that does not reproduce the measured tables.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// Compatible joints whose Bob-marginals depend on Alice's setting.
class InvarianceError : public Error {
 public:
  InvarianceError(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

/// The simplex engine could not produce a trustworthy answer.
class LpFailure : public Error {
 public:
  LpFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace bellkit

#endif  // BELLKIT_ERRORS_H_
