// Copyright 2026 The Readmit Authors
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

#ifndef READMIT_ERROR_H
#define READMIT_ERROR_H

#include <stdexcept>
#include <string>

namespace readmit {

/// Raised when a numerical procedure cannot produce a trustworthy result
/// (singular matrix, bad logarithm branch, stale noise strength, ...).
class NumericError : public std::runtime_error {
   public:
    explicit NumericError(const std::string &what) : std::runtime_error(what) {
    }
};

/// Raised when input data is insufficient or malformed for the requested
/// operation (incomplete calibration set, missing columns, bad file).
class DataError : public std::runtime_error {
   public:
    explicit DataError(const std::string &what) : std::runtime_error(what) {
    }
};

/// Raised for malformed configuration or serialized input.
class ConfigError : public std::invalid_argument {
   public:
    explicit ConfigError(const std::string &what) : std::invalid_argument(what) {
    }
};

}  // namespace readmit

#endif  // READMIT_ERROR_H
