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

// Monte-Carlo drivers for the single-test threshold comparison, the private
// multiple-testing comparison, and the GWAS discovery counts. Every trial
// draws from its own substream, so results do not depend on thread schedule.

#ifndef GDPE_EXPERIMENTS_H_
#define GDPE_EXPERIMENTS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gdpe/ebh.h"
#include "gdpe/mechanism.h"
#include "gdpe/rng.h"

namespace gdpe {

enum class Method {
  kNonprivateEbh,
  kAllNoisy,
  kPeelFixed,
  kPeelAdaptive,
  kMarkovPrivate,
  kCalibratedPrivate,
  kNonprivateSingle,
};
const char* MethodName(Method method);

enum class Metric { kType1, kPower, kFdr, kAp, kDiscoveries };
const char* MetricName(Metric metric);

struct ResultRow {
  Method method = Method::kNonprivateEbh;
  std::string sweep_param;
  double sweep_value = 0.0;
  Metric metric = Metric::kType1;
  double value = 0.0;
  double se = 0.0;
  size_t trials = 0;
  uint64_t seed = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr char kResultCsvHeader[] =
    "method,sweep_param,sweep_value,metric,value,se,trials,seed";
void WriteResultCsv(std::span<const ResultRow> rows, std::ostream& out);

enum class LambdaRule { kSqrtLog, kSqrtTwoLog };

struct SingleTestConfig {
  PrivacyBudget budget{0.25};
  double alpha = 0.05;
  std::vector<double> log10_delta_grid = DefaultLog10DeltaGrid();
  size_t trials = 20000;
  LambdaRule lambda_rule = LambdaRule::kSqrtLog;

  // {-3, -2.75, ..., 1}.
  static std::vector<double> DefaultLog10DeltaGrid();
};

double SingleTestLambda(double alpha, LambdaRule rule);

// Power of E >= 1/alpha when E = exp(lambda Z - lambda^2 / 2), Z ~ N(lambda, 1).
double NonPrivateSinglePower(double alpha, double lambda);

absl::Status ValidateSingleTestConfig(const SingleTestConfig& cfg);

// Grid point g, trial t uses seed.Child(g).Child(t).
absl::StatusOr<std::vector<ResultRow>> RunSingleTestSweep(
    const SingleTestConfig& cfg, const RngSeed& seed);

struct MultiTestConfig {
  size_t m = 2000;
  size_t m1 = 20;
  double eta_alt = 4.0;
  double rho = 0.0;
  double alpha = 0.05;
  Sensitivity sensitivity{5e-3};
  PrivacyBudget budget{GdpMuFromEpsilon(0.5, 1e-3)};
  size_t s_fixed = 100;
  double mu0_fraction = 0.1;
  size_t s_min = 10;
  size_t trials = 200;

  // 4 eps / sqrt(10 log(1 / delta_dp)).
  static double GdpMuFromEpsilon(double epsilon, double delta_dp);
};

inline double GdpMuFromEpsilon(double epsilon, double delta_dp) {
  return MultiTestConfig::GdpMuFromEpsilon(epsilon, delta_dp);
}

absl::Status ValidateMultiTestConfig(const MultiTestConfig& cfg);

// X_i = eta_i + sqrt(rho) W + sqrt(1 - rho) Z_i, drawn from
// seed.Child(trial).Child(0): W first, then Z_1..Z_m.
std::vector<double> GenMultiObservations(const MultiTestConfig& cfg,
                                         size_t trial, const RngSeed& seed);
// log E_i = lambda X_i - lambda^2 / 2 with lambda = sqrt(log(m / alpha)).
std::vector<double> GenMultiLogData(const MultiTestConfig& cfg, size_t trial,
                                    const RngSeed& seed);
std::vector<double> GenMultiData(const MultiTestConfig& cfg, size_t trial,
                                 const RngSeed& seed);

inline constexpr std::array<Method, 4> kMultiMethods = {
    Method::kNonprivateEbh, Method::kAllNoisy, Method::kPeelFixed,
    Method::kPeelAdaptive};

struct MultiTrialOutcome {
  std::array<FdpTp, 4> scores;
  std::array<size_t, 4> discoveries{};
};

// Realized FDP and TP fraction per method for every trial, in trial order.
// Pairing by trial lets callers form paired differences between methods.
absl::StatusOr<std::vector<MultiTrialOutcome>> RunMultiTrials(
    const MultiTestConfig& cfg, const RngSeed& seed);

enum class SweepKind { kNone, kLog10Delta, kM1, kEtaAlt, kEpsilon };
const char* SweepName(SweepKind kind);

// Grid point g uses seed.Child(g). Epsilon values map to mu through
// GdpMuFromEpsilon with delta_dp = 1e-3.
absl::StatusOr<std::vector<ResultRow>> RunMultiSweep(
    const MultiTestConfig& cfg, SweepKind sweep, std::span<const double> grid,
    const RngSeed& seed);

struct GwasConfig {
  std::vector<double> alpha_grid = {0.01, 0.015, 0.02, 0.025, 0.03,
                                    0.035, 0.04, 0.045, 0.05};
  PrivacyBudget budget{0.25};
  Sensitivity sensitivity{5e-3};
  size_t s_fixed = 500;
  size_t s_min = 50;
  double mu0_fraction = 0.1;
};

absl::Status ValidateGwasConfig(const GwasConfig& cfg, size_t m);

// Discovery counts per method per alpha. Alpha index a uses seed.Child(a).
absl::StatusOr<std::vector<ResultRow>> RunGwas(std::span<const double> zscores,
                                               const GwasConfig& cfg,
                                               const RngSeed& seed);

}  // namespace gdpe

#endif  // GDPE_EXPERIMENTS_H_
