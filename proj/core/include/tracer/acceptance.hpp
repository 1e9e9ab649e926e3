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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tracer {

/// Knobs of the verification suite. quick divides replica counts by 10
/// and triples the statistical tolerances (criteria 1, 2, 3, 7, 11);
/// deterministic tolerances are unchanged. tolerance_scale multiplies
/// every pass threshold and exists as a negative control: setting it
/// small must make the suite fail.
struct VerifyOptions {
    bool quick = false;
    std::uint64_t seed = 20260810;
    unsigned threads = 0;  ///< 0 = all cores
    double tolerance_scale = 1.0;
    std::string scratch_dir = ".";  ///< where criterion 10 emits figure files
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string measured;
    std::string target;
    std::string detail;
};

std::vector<int> all_criteria();

CriterionResult run_criterion(int id, const VerifyOptions& options);

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids,
                                          const VerifyOptions& options);

/// One line per criterion plus a summary; returns the failure count.
int print_results(std::ostream& out, const std::vector<CriterionResult>& results);

} // namespace tracer
