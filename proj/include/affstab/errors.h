// Copyright 2026 The affstab Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affstab {

/// Caller passed arguments that violate an operation's contract (bad index, wrong arity, ...).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition did not hold (e.g. a singular matrix where an invertible one is required).
struct PreconditionError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A circuit was handed to a simulator that does not support its gate structure.
struct ClassificationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Work would exceed a configured width or enumeration cap.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// An internal invariant failed. Seeing one of these is a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, const std::string &message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {
    }
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

}  // namespace affstab
