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

#include "tracer/csv.hpp"

#include <cstdio>

#include "tracer/error.hpp"

namespace tracer {

std::string format_sig(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& schema,
                     const std::vector<std::string>& columns)
    : out_(path), path_(path), columns_(columns) {
    if (!out_) {
        throw value_error("CsvWriter: cannot open " + path);
    }
    out_ << "# schema=" << schema << "\n";
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
    if (header_written_) {
        throw value_error("CsvWriter: comments must precede data rows");
    }
    out_ << "# " << key << "=" << value << "\n";
}

void CsvWriter::comment(const std::string& key, double value) {
    comment(key, format_sig(value));
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (!header_written_) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            out_ << (i ? "," : "") << columns_[i];
        }
        out_ << "\n";
        header_written_ = true;
    }
    if (cells.size() != columns_.size()) {
        throw value_error("CsvWriter: row width does not match header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out_ << (i ? "," : "") << cells[i];
    }
    out_ << "\n";
}

} // namespace tracer
