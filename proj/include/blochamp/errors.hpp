// Copyright 2026 The blochamp Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace blochamp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside their validity range (preset inequalities, bad options).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// A state with trace below the apex cutoff was constructed or reached.
class ApexReached : public Error {
 public:
  using Error::Error;
};

/// Trajectory left the PSD cone beyond tolerance.
class ConeViolation : public Error {
 public:
  using Error::Error;
};

/// Adaptive step controller could not meet the requested tolerance.
class StepFailure : public Error {
 public:
  using Error::Error;
};

/// Amplification target cannot be reached within the allowed time.
class TargetUnreachable : public Error {
 public:
  using Error::Error;
};

/// Channel does not conserve trace (g = 0 with nonzero Omega).
class NotTracePreserving : public Error {
 public:
  using Error::Error;
};

/// Operation requires a pseudo-linear NINO channel.
class NotPseudoLinear : public Error {
 public:
  using Error::Error;
};

/// Operation requires a linear (g = 0) channel.
class NonlinearChannel : public Error {
 public:
  using Error::Error;
};

/// Malformed spec file or unknown preset.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace blochamp
