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

// Text formats: e-value CSV, GWAS summary TSV, shortest round-trip float
// formatting, and the key,value run manifest written next to every output.

#ifndef GDPE_IO_H_
#define GDPE_IO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace gdpe {

// Shortest decimal string that parses back to exactly x.
std::string FormatDouble(double x);

// Strict decimal float parse of the whole field.
std::optional<double> ParseDouble(std::string_view text);

struct EValueTable {
  std::vector<double> values;
  // Present when the file used the `index,evalue` header.
  std::optional<std::vector<uint64_t>> indices;
};

// Header `evalue` or `index,evalue`. Errors name the 1-based line number,
// counting the header as line 1.
absl::StatusOr<EValueTable> ParseEValueCsv(std::string_view text);

struct GwasRecord {
  std::string snp_id;
  double z = 0.0;
};

// Header `snp_id<TAB>z`; ids must be nonempty and unique, z finite.
absl::StatusOr<std::vector<GwasRecord>> ParseGwasTsv(std::string_view text);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  uint64_t seed = 0;
  std::string tool_version;
};

inline constexpr char kToolVersion[] = "0.1.0";

std::string SerializeManifest(const RunManifest& manifest);
absl::StatusOr<RunManifest> ParseManifest(std::string_view text);

std::string ManifestPathFor(const std::string& output_path);

// NotFound when the file cannot be opened.
absl::StatusOr<std::string> ReadFile(const std::string& path);
// Unavailable when the file cannot be written.
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace gdpe

#endif  // GDPE_IO_H_
