// Copyright 2026 The rvqite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rvqite/lab/config.hpp"

namespace rvqite::lab {

using Field = std::variant<double, long long, std::string>;

/// Buffered CSV table: "# key=value" metadata lines, a header row, rows.
/// Doubles print with %.17g so reruns are byte-identical.
class CsvTable {
  public:
    CsvTable(std::string name, std::vector<std::string> columns);

    void add_meta(const std::string &key, const std::string &value);
    /// Adds every flattened key of `tree` as metadata.
    void add_config(const json &tree);
    void add_row(std::vector<Field> row);

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] std::size_t row_count() const noexcept { return rows_.size(); }
    [[nodiscard]] std::string render() const;

    /// Writes `dir/name`, creating `dir`; returns the path.
    std::string write(const std::string &dir) const;

  private:
    std::string name_;
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<Field>> rows_;
};

[[nodiscard]] std::string format_double(double v);

/// Writes `text` to `dir/name`, creating `dir`; returns the path.
std::string write_text(const std::string &dir, const std::string &name,
                       const std::string &text);

} // namespace rvqite::lab
