// Copyright 2026 The nnvqe Authors
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

namespace nnvqe {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (Hamiltonian files, traces, datasets, checkpoints).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Vector or matrix sizes that do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a hard size limit (dense matrices, offset grids).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A Hamiltonian term or layout that does not fit the expected TermSchema.
class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

/// Arguments outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numerical failure such as a non-finite loss or diverging training.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace nnvqe
