//
// Copyright 2026 The gdpe Authors
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
//

#include "gdpe/io.h"

#include <charconv>
#include <cstdint>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "absl/strings/str_cat.h"

namespace gdpe {
namespace {

std::vector<std::string_view> Split(std::string_view text, char sep,
                                    size_t max_pieces = SIZE_MAX) {
  std::vector<std::string_view> pieces;
  while (pieces.size() + 1 < max_pieces) {
    const size_t at = text.find(sep);
    if (at == std::string_view::npos) break;
    pieces.push_back(text.substr(0, at));
    text.remove_prefix(at + 1);
  }
  pieces.push_back(text);
  return pieces;
}

// Splits into lines, dropping one trailing '\r' per line and the empty piece
// after a final newline.
std::vector<std::string_view> Lines(std::string_view text) {
  std::vector<std::string_view> lines = Split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  return lines;
}

std::string Str(std::string_view v) { return std::string(v); }

}  // namespace

std::string FormatDouble(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

std::optional<double> ParseDouble(std::string_view text) {
  if (text.empty()) return std::nullopt;
  // from_chars rejects a leading '+', which is ordinary in numeric text.
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

absl::StatusOr<EValueTable> ParseEValueCsv(std::string_view text) {
  const std::vector<std::string_view> lines = Lines(text);
  if (lines.empty()) return absl::InvalidArgumentError("line 1: missing header");
  const bool indexed = lines[0] == "index,evalue";
  if (!indexed && lines[0] != "evalue") {
    return absl::InvalidArgumentError(absl::StrCat(
        "line 1: expected header 'evalue' or 'index,evalue', got '", Str(lines[0]),
        "'"));
  }
  EValueTable table;
  if (indexed) table.indices.emplace();
  for (size_t i = 1; i < lines.size(); ++i) {
    const size_t row = i + 1;
    std::string_view field = lines[i];
    if (indexed) {
      const std::vector<std::string_view> parts = Split(field, ',');
      if (parts.size() != 2) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", row, ": expected 2 fields, got ",
                         parts.size()));
      }
      uint64_t index = 0;
      const auto r = std::from_chars(parts[0].data(),
                                     parts[0].data() + parts[0].size(), index);
      if (parts[0].empty() || r.ec != std::errc() ||
          r.ptr != parts[0].data() + parts[0].size()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", row, ": malformed index '", Str(parts[0]), "'"));
      }
      table.indices->push_back(index);
      field = parts[1];
    }
    const std::optional<double> value = ParseDouble(field);
    if (!value.has_value() || std::isnan(*value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", row, ": malformed e-value '", Str(field), "'"));
    }
    if (*value < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", row, ": e-value must be >= 0, got ", Str(field)));
    }
    table.values.push_back(*value);
  }
  return table;
}

absl::StatusOr<std::vector<GwasRecord>> ParseGwasTsv(std::string_view text) {
  const std::vector<std::string_view> lines = Lines(text);
  if (lines.empty() || lines[0] != "snp_id\tz") {
    return absl::InvalidArgumentError(
        "line 1: expected header 'snp_id<TAB>z'");
  }
  std::vector<GwasRecord> records;
  std::set<std::string, std::less<>> seen;
  for (size_t i = 1; i < lines.size(); ++i) {
    const size_t row = i + 1;
    const std::vector<std::string_view> parts = Split(lines[i], '\t');
    if (parts.size() != 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", row, ": expected 2 tab-separated fields, got ",
          parts.size()));
    }
    if (parts[0].empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", row, ": empty snp_id"));
    }
    const std::optional<double> z = ParseDouble(parts[1]);
    if (!z.has_value() || !std::isfinite(*z)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", row, ": malformed z-score '", Str(parts[1]), "'"));
    }
    if (!seen.emplace(parts[0]).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", row, ": duplicate snp_id '", Str(parts[0]), "'"));
    }
    records.push_back(GwasRecord{std::string(parts[0]), *z});
  }
  return records;
}

std::string SerializeManifest(const RunManifest& manifest) {
  std::string out = "key,value\n";
  absl::StrAppend(&out, "command,", manifest.command, "\n");
  absl::StrAppend(&out, "tool_version,", manifest.tool_version, "\n");
  absl::StrAppend(&out, "seed,", manifest.seed, "\n");
  for (const auto& [key, value] : manifest.config) {
    absl::StrAppend(&out, "config.", key, ",", value, "\n");
  }
  return out;
}

absl::StatusOr<RunManifest> ParseManifest(std::string_view text) {
  const std::vector<std::string_view> lines = Lines(text);
  if (lines.empty() || lines[0] != "key,value") {
    return absl::InvalidArgumentError("line 1: expected header 'key,value'");
  }
  RunManifest manifest;
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string_view> parts = Split(lines[i], ',', 2);
    if (parts.size() != 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", i + 1, ": expected key,value"));
    }
    std::string_view key = parts[0];
    const std::string_view value = parts[1];
    if (key == "command") {
      manifest.command = std::string(value);
    } else if (key == "tool_version") {
      manifest.tool_version = std::string(value);
    } else if (key == "seed") {
      const auto r = std::from_chars(value.data(),
                                     value.data() + value.size(),
                                     manifest.seed);
      if (r.ec != std::errc() || r.ptr != value.data() + value.size()) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", i + 1, ": malformed seed"));
      }
    } else if (key.substr(0, 7) == "config.") {
      key.remove_prefix(7);
      manifest.config.emplace(std::string(key), std::string(value));
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", i + 1, ": unknown key '", Str(key), "'"));
    }
  }
  return manifest;
}

std::string ManifestPathFor(const std::string& output_path) {
  return output_path + ".manifest.csv";
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat("cannot read ", path));
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

}  // namespace gdpe
