// fvc/include/fvc/base/error.h

// Copyright 2026  The fvc Authors

// See COPYING at the top of the source tree for clarification regarding
// multiple authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef FVC_BASE_ERROR_H_
#define FVC_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace fvc {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the caller's input was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A computation produced non-finite values or a factorization failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A persisted file is malformed, truncated, or of the wrong kind.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace fvc

#endif  // FVC_BASE_ERROR_H_
