// Copyright 2026 The tracer-current Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tracer {

/// Invalid argument or constructor input rejected eagerly.
class value_error : public std::invalid_argument {
public:
    explicit value_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A numerical routine failed to reach its tolerance. Never swallowed:
/// quadrature or bracketing failures surface as this exception.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tracer
