// Copyright 2026 The ldpboost Authors
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

#ifndef LDPB_ERRORS_HPP_
#define LDPB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ldpb {

// An argument fell outside an operation's documented domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value (or a running sum) does not fit the fixed-point encoding used on
// the masked ring.
class FixedPointOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a round asks for more never-participated owners than remain.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised in strict mode when a round's base learner is no better than chance.
class WeakLearnerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldpb

#endif  // LDPB_ERRORS_HPP_
