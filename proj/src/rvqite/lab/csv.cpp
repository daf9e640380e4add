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

#include "rvqite/lab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rvqite/error.hpp"

namespace rvqite::lab {

namespace {

std::string escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

CsvTable::CsvTable(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void CsvTable::add_meta(const std::string &key, const std::string &value) {
    meta_.emplace_back(key, value);
}

void CsvTable::add_config(const json &tree) {
    for (auto &kv : flatten(tree)) {
        meta_.push_back(std::move(kv));
    }
}

void CsvTable::add_row(std::vector<Field> row) {
    require(row.size() == columns_.size(), Errc::dimension_mismatch,
            name_ + ": row width does not match the header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::render() const {
    std::string out;
    for (const auto &[k, v] : meta_) {
        out += "# " + k + "=" + v + "\n";
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out += (i ? "," : "") + columns_[i];
    }
    out += "\n";
    for (const auto &row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out += format_double(v);
                    } else if constexpr (std::is_same_v<T, long long>) {
                        out += std::to_string(v);
                    } else {
                        out += escape(v);
                    }
                },
                row[i]);
        }
        out += "\n";
    }
    return out;
}

std::string CsvTable::write(const std::string &dir) const {
    return write_text(dir, name_, render());
}

std::string write_text(const std::string &dir, const std::string &name,
                       const std::string &text) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    require(!ec, Errc::io, "cannot create " + dir + ": " + ec.message());
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), Errc::io, "cannot write " + path);
    out << text;
    require(static_cast<bool>(out), Errc::io, "short write to " + path);
    return path;
}

} // namespace rvqite::lab
