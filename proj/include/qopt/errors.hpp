// Copyright 2026 The qopt Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qopt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A register, qubit or table does not fit the state it is applied to.
class LayoutError : public Error {
  public:
    using Error::Error;
};

/// The request would exceed the desk-scale qubit budget.
class ResourceLimitError : public Error {
  public:
    using Error::Error;
};

/// A precondition of an operation was violated by the caller.
class ContractError : public Error {
  public:
    using Error::Error;
};

/// A problem instance (or its JSON encoding) is malformed.
class ProblemError : public Error {
  public:
    using Error::Error;
};

/// Amplitude amplification was asked to boost an empty good region.
class EmptyRegionError : public Error {
  public:
    using Error::Error;
};

/// A bounded retry loop ran out of attempts.
class RetryExhaustedError : public Error {
  public:
    using Error::Error;
};

/// A log-log scaling fit could not be computed.
class FitError : public Error {
  public:
    using Error::Error;
};

} // namespace qopt
