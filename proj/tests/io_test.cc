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

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <string>

#include "absl/status/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace gdpe {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(EValueCsvTest, Examples) {
  const EValueTable a = *ParseEValueCsv("evalue\n1.0\n0\n");
  EXPECT_THAT(a.values, ElementsAre(1.0, 0.0));
  EXPECT_FALSE(a.indices.has_value());

  const EValueTable b = *ParseEValueCsv("index,evalue\n2,3.5\n1,0.5\n");
  EXPECT_THAT(b.values, ElementsAre(3.5, 0.5));
  ASSERT_TRUE(b.indices.has_value());
  EXPECT_THAT(*b.indices, ElementsAre(2, 1));

  const auto neg = ParseEValueCsv("evalue\n-1\n");
  ASSERT_FALSE(neg.ok());
  EXPECT_THAT(neg.status().message(), HasSubstr("line 2"));
}

TEST(EValueCsvTest, Errors) {
  EXPECT_FALSE(ParseEValueCsv("").ok());
  EXPECT_FALSE(ParseEValueCsv("value\n1\n").ok());
  EXPECT_THAT(ParseEValueCsv("evalue\n1\n2\nabc\n").status().message(),
              HasSubstr("line 4"));
  EXPECT_THAT(ParseEValueCsv("index,evalue\n1,2\n3\n").status().message(),
              HasSubstr("line 3"));
  EXPECT_THAT(ParseEValueCsv("index,evalue\nx,2\n").status().message(),
              HasSubstr("line 2"));
  EXPECT_FALSE(ParseEValueCsv("evalue\nnan\n").ok());
}

TEST(GwasTsvTest, ExamplesAndErrors) {
  const auto recs = *ParseGwasTsv("snp_id\tz\nrs1\t1.5\nrs2\t-3\n");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].snp_id, "rs1");
  EXPECT_EQ(recs[1].z, -3.0);
  EXPECT_THAT(ParseGwasTsv("snp_id\tz\nrs1\t1\nrs1\t2\n").status().message(),
              HasSubstr("duplicate"));
  EXPECT_THAT(ParseGwasTsv("snp_id\tz\nrs1\t1\nrs2\tabc\n").status().message(),
              HasSubstr("line 3"));
  EXPECT_FALSE(ParseGwasTsv("snp_id\tz\nrs1\tinf\n").ok());
  EXPECT_FALSE(ParseGwasTsv("snp,z\nrs1,1\n").ok());
  EXPECT_FALSE(ParseGwasTsv("snp_id\tz\n\t1\n").ok());
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(2.0), "2");
  EXPECT_EQ(FormatDouble(-INFINITY), "-inf");
  std::mt19937_64 gen(5);
  for (int i = 0; i < 100000; ++i) {
    uint64_t bits = gen();
    double x;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    const auto back = ParseDouble(FormatDouble(x));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(std::memcmp(&*back, &x, sizeof x), 0) << FormatDouble(x);
  }
  EXPECT_EQ(*ParseDouble("+1.5"), 1.5);
  EXPECT_FALSE(ParseDouble("1.5x").has_value());
  EXPECT_FALSE(ParseDouble("").has_value());
}

TEST(ManifestTest, RoundTrip) {
  RunManifest m;
  m.command = "peel";
  m.seed = 123456789012345ull;
  m.tool_version = kToolVersion;
  m.config = {{"mu", "0.25"}, {"mode", "adaptive"}, {"grid", "1;2;3"}};
  const std::string text = SerializeManifest(m);
  EXPECT_EQ(text.substr(0, 10), "key,value\n");
  const RunManifest back = *ParseManifest(text);
  EXPECT_EQ(back.command, m.command);
  EXPECT_EQ(back.seed, m.seed);
  EXPECT_EQ(back.tool_version, m.tool_version);
  EXPECT_EQ(back.config, m.config);
  EXPECT_EQ(ManifestPathFor("out.csv"), "out.csv.manifest.csv");
  EXPECT_FALSE(ParseManifest("nonsense").ok());
}

TEST(FileTest, ErrorsAreIoCodes) {
  EXPECT_EQ(ReadFile("/nonexistent/dir/file").status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_EQ(WriteFile("/nonexistent/dir/file", "x").code(),
            absl::StatusCode::kUnavailable);
  const std::string path = ::testing::TempDir() + "/io_test_file.txt";
  ASSERT_TRUE(WriteFile(path, "abc\n").ok());
  EXPECT_EQ(*ReadFile(path), "abc\n");
}

}  // namespace
}  // namespace gdpe
