// Copyright 2026 The bellsim Authors
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

#ifndef BELLSIM_ERRORS_HPP_
#define BELLSIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bellsim {

// Raised when an argument violates an operation's precondition or a value
// type's invariant (bad dimensions, unnormalized pmf, index out of range).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A broken internal invariant. Reaching one of these means a bug, not bad
// input; the CLI maps it to exit code 2.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace bellsim

#endif  // BELLSIM_ERRORS_HPP_
