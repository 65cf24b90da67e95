// Copyright 2026 The noisetransfer Authors
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

#ifndef NOISETRANSFER_EXCEPTIONS_H
#define NOISETRANSFER_EXCEPTIONS_H

#include <stdexcept>
#include <string>

namespace nt {

/// A state, channel or partition parameter is outside its declared range.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Integration or normalization failed to reach the required accuracy.
class NumericError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A binned feedforward was asked to round an expression whose signal
/// coefficients are not integers after rescaling.
class UnbalancedCircuit : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operation on a mode that has already been measured.
class ConsumedMode : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// A noise symbol has no variance binding, or an error symbol has no ladder.
class UnboundSymbol : public std::out_of_range {
   public:
    using std::out_of_range::out_of_range;
};

/// Invalid run configuration (flags, config files, trial settings).
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace nt

#endif
