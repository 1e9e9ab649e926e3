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
#include <fstream>
#include <string>
#include <vector>

namespace tracer {

/// Numeric cell with 12 significant digits; bit-stable across runs.
std::string format_sig(double value);

/// CSV file with a versioned schema comment in row 1, `#`-prefixed
/// parameter comments, a header row, and fixed column order.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& schema,
              const std::vector<std::string>& columns);

    void comment(const std::string& key, const std::string& value);
    void comment(const std::string& key, double value);

    /// Writes the header if not yet written, then one data row.
    void row(const std::vector<std::string>& cells);

    const std::string& path() const { return path_; }

private:
    std::ofstream out_;
    std::string path_;
    std::vector<std::string> columns_;
    bool header_written_ = false;
};

} // namespace tracer
