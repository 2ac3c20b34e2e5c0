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

#include "gdpe/experiments.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "gdpe/calibration.h"
#include "gdpe/io.h"
#include "gdpe/kernels.h"
#include "gdpe/normal.h"
#include "gdpe/peeling.h"
#include "gdpe/stats.h"
#include "gdpe/status_macros.h"

namespace gdpe {
namespace {

absl::Status RequirePositiveCount(size_t n, const char* name) {
  if (n < 1) return absl::InvalidArgumentError(absl::StrCat(name, " must be >= 1"));
  return absl::OkStatus();
}

struct SingleTrial {
  bool null_markov = false;
  bool null_calibrated = false;
  bool null_nonprivate = false;
  bool alt_markov = false;
  bool alt_calibrated = false;
  bool alt_nonprivate = false;
};

void AppendProportion(std::vector<ResultRow>& rows, Method method,
                      Metric metric, const std::string& param, double value,
                      size_t hits, size_t trials, uint64_t seed) {
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  rows.push_back(ResultRow{method, param, value, metric, p,
                           ProportionSe(p, trials), trials, seed});
}

absl::StatusOr<MultiTrialOutcome> RunOneMultiTrial(const MultiTestConfig& cfg,
                                                   size_t trial,
                                                   const RngSeed& seed) {
  const RngSeed trial_seed = seed.Child(trial);
  const std::vector<double> log_e = GenMultiLogData(cfg, trial, seed);
  GroundTruth truth;
  for (size_t i = 0; i < cfg.m1; ++i) truth.signal_indices.push_back(i);

  std::array<std::vector<double>, 4> released;
  released[0] = log_e;
  GDPE_ASSIGN_OR_RETURN(released[1],
                        AllNoisyLogValues(log_e, cfg.sensitivity, cfg.budget,
                                          trial_seed.Child(1)));
  GDPE_ASSIGN_OR_RETURN(
      PrivateEVector fixed,
      PeelFixedLog(log_e, PeelingConfig{cfg.s_fixed, cfg.sensitivity, cfg.budget},
                   trial_seed.Child(2)));
  released[2] = std::move(fixed.log_values);
  const AdaptiveConfig acfg{cfg.s_min, cfg.mu0_fraction * cfg.budget.mu,
                            cfg.alpha};
  GDPE_ASSIGN_OR_RETURN(AdaptivePeelResult adaptive,
                        PeelAdaptiveLog(log_e, acfg, cfg.sensitivity,
                                        cfg.budget, trial_seed.Child(3)));
  released[3] = std::move(adaptive.released.log_values);

  MultiTrialOutcome out;
  for (size_t k = 0; k < released.size(); ++k) {
    GDPE_ASSIGN_OR_RETURN(const TestingReport report,
                          EbhLog(released[k], cfg.alpha));
    out.scores[k] = FdpAndTp(report, truth);
    out.discoveries[k] = report.k_star;
  }
  return out;
}

}  // namespace

const char* MethodName(Method method) {
  switch (method) {
    case Method::kNonprivateEbh: return "nonprivate_ebh";
    case Method::kAllNoisy: return "all_noisy";
    case Method::kPeelFixed: return "peel_fixed";
    case Method::kPeelAdaptive: return "peel_adaptive";
    case Method::kMarkovPrivate: return "markov_private";
    case Method::kCalibratedPrivate: return "calibrated_private";
    case Method::kNonprivateSingle: return "nonprivate_single";
  }
  return "unknown";
}

const char* MetricName(Metric metric) {
  switch (metric) {
    case Metric::kType1: return "type1";
    case Metric::kPower: return "power";
    case Metric::kFdr: return "fdr";
    case Metric::kAp: return "ap";
    case Metric::kDiscoveries: return "discoveries";
  }
  return "unknown";
}

const char* SweepName(SweepKind kind) {
  switch (kind) {
    case SweepKind::kNone: return "none";
    case SweepKind::kLog10Delta: return "log10_delta";
    case SweepKind::kM1: return "m1";
    case SweepKind::kEtaAlt: return "eta_alt";
    case SweepKind::kEpsilon: return "epsilon";
  }
  return "unknown";
}

void WriteResultCsv(std::span<const ResultRow> rows, std::ostream& out) {
  out << kResultCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << MethodName(r.method) << ',' << r.sweep_param << ','
        << FormatDouble(r.sweep_value) << ',' << MetricName(r.metric) << ','
        << FormatDouble(r.value) << ',' << FormatDouble(r.se) << ','
        << r.trials << ',' << r.seed << '\n';
  }
}

std::vector<double> SingleTestConfig::DefaultLog10DeltaGrid() {
  std::vector<double> grid;
  for (int i = -12; i <= 4; ++i) grid.push_back(0.25 * i);
  return grid;
}

double SingleTestLambda(double alpha, LambdaRule rule) {
  const double l = std::log(1.0 / alpha);
  return rule == LambdaRule::kSqrtLog ? std::sqrt(l) : std::sqrt(2.0 * l);
}

double NonPrivateSinglePower(double alpha, double lambda) {
  return NormalCdf(lambda / 2.0 - std::log(1.0 / alpha) / lambda);
}

absl::Status ValidateSingleTestConfig(const SingleTestConfig& cfg) {
  GDPE_RETURN_IF_ERROR(ValidateBudget(cfg.budget));
  GDPE_RETURN_IF_ERROR(ValidateAlpha(cfg.alpha));
  GDPE_RETURN_IF_ERROR(RequirePositiveCount(cfg.trials, "trials"));
  if (cfg.log10_delta_grid.empty()) {
    return absl::InvalidArgumentError("log10 delta grid is empty");
  }
  for (double v : cfg.log10_delta_grid) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("log10 delta grid entry is not finite: ", v));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ResultRow>> RunSingleTestSweep(
    const SingleTestConfig& cfg, const RngSeed& seed) {
  GDPE_RETURN_IF_ERROR(ValidateSingleTestConfig(cfg));
  const double lambda = SingleTestLambda(cfg.alpha, cfg.lambda_rule);
  const double half_lambda2 = 0.5 * lambda * lambda;
  std::vector<ResultRow> rows;
  for (size_t g = 0; g < cfg.log10_delta_grid.size(); ++g) {
    const double log10_delta = cfg.log10_delta_grid[g];
    const Sensitivity sensitivity{std::pow(10.0, log10_delta)};
    GDPE_ASSIGN_OR_RETURN(const CalibrationResult cal,
                          Calibrate(cfg.alpha, sensitivity, cfg.budget));
    GDPE_ASSIGN_OR_RETURN(const NoiseSpec noise,
                          CanonicalNoise(sensitivity, cfg.budget));
    const double sd = noise.sd();
    const RngSeed point_seed = seed.Child(g);
    const std::vector<SingleTrial> trials =
        kernels::MapTrials<SingleTrial>(cfg.trials, [&](size_t t) {
          Substream stream(point_seed.Child(t));
          const double z_null = stream.Normal();
          const double z_alt = lambda + stream.Normal();
          const double xi_null = noise.tau + sd * stream.Normal();
          const double xi_alt = noise.tau + sd * stream.Normal();
          const double log_null = lambda * z_null - half_lambda2;
          const double log_alt = lambda * z_alt - half_lambda2;
          SingleTrial r;
          r.null_nonprivate = MarkovRejectLog(log_null, cfg.alpha);
          r.null_markov = MarkovRejectLog(log_null - xi_null, cfg.alpha);
          r.null_calibrated = CalibratedRejectLog(log_null - xi_null, cal);
          r.alt_nonprivate = MarkovRejectLog(log_alt, cfg.alpha);
          r.alt_markov = MarkovRejectLog(log_alt - xi_alt, cfg.alpha);
          r.alt_calibrated = CalibratedRejectLog(log_alt - xi_alt, cal);
          return r;
        });
    std::array<size_t, 6> hits{};
    for (const SingleTrial& r : trials) {
      hits[0] += r.null_markov;
      hits[1] += r.alt_markov;
      hits[2] += r.null_calibrated;
      hits[3] += r.alt_calibrated;
      hits[4] += r.null_nonprivate;
      hits[5] += r.alt_nonprivate;
    }
    const std::string param = "log10_delta";
    const std::array<Method, 3> methods = {Method::kMarkovPrivate,
                                           Method::kCalibratedPrivate,
                                           Method::kNonprivateSingle};
    for (size_t k = 0; k < methods.size(); ++k) {
      AppendProportion(rows, methods[k], Metric::kType1, param, log10_delta,
                       hits[2 * k], cfg.trials, seed.root());
      AppendProportion(rows, methods[k], Metric::kPower, param, log10_delta,
                       hits[2 * k + 1], cfg.trials, seed.root());
    }
  }
  return rows;
}

double MultiTestConfig::GdpMuFromEpsilon(double epsilon, double delta_dp) {
  return 4.0 * epsilon / std::sqrt(10.0 * std::log(1.0 / delta_dp));
}

absl::Status ValidateMultiTestConfig(const MultiTestConfig& cfg) {
  GDPE_RETURN_IF_ERROR(RequirePositiveCount(cfg.m, "m"));
  GDPE_RETURN_IF_ERROR(RequirePositiveCount(cfg.trials, "trials"));
  if (cfg.m1 > cfg.m) {
    return absl::InvalidArgumentError(
        absl::StrCat("m1 (", cfg.m1, ") exceeds m (", cfg.m, ")"));
  }
  if (!std::isfinite(cfg.eta_alt)) {
    return absl::InvalidArgumentError("eta_alt must be finite");
  }
  if (!(cfg.rho >= 0.0 && cfg.rho < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho must lie in [0, 1), got ", cfg.rho));
  }
  GDPE_RETURN_IF_ERROR(ValidateAlpha(cfg.alpha));
  GDPE_RETURN_IF_ERROR(ValidateSensitivity(cfg.sensitivity));
  if (cfg.sensitivity.delta == 0.0) {
    return absl::InvalidArgumentError("delta must be > 0");
  }
  GDPE_RETURN_IF_ERROR(ValidateBudget(cfg.budget));
  if (cfg.s_fixed < 1 || cfg.s_fixed > cfg.m) {
    return absl::InvalidArgumentError(
        absl::StrCat("s must lie in [1, m], got ", cfg.s_fixed));
  }
  if (cfg.s_min < 1 || cfg.s_min > cfg.m) {
    return absl::InvalidArgumentError(
        absl::StrCat("s_min must lie in [1, m], got ", cfg.s_min));
  }
  if (!(cfg.mu0_fraction > 0.0 && cfg.mu0_fraction < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mu0 fraction must lie in (0, 1), got ", cfg.mu0_fraction));
  }
  return absl::OkStatus();
}

std::vector<double> GenMultiObservations(const MultiTestConfig& cfg,
                                         size_t trial, const RngSeed& seed) {
  Substream stream(seed.Child(trial).Child(0));
  const double w = stream.Normal();
  const double a = std::sqrt(cfg.rho);
  const double b = std::sqrt(1.0 - cfg.rho);
  std::vector<double> x(cfg.m);
  for (size_t i = 0; i < cfg.m; ++i) {
    const double eta = i < cfg.m1 ? cfg.eta_alt : 0.0;
    x[i] = eta + a * w + b * stream.Normal();
  }
  return x;
}

std::vector<double> GenMultiLogData(const MultiTestConfig& cfg, size_t trial,
                                    const RngSeed& seed) {
  std::vector<double> x = GenMultiObservations(cfg, trial, seed);
  const double lambda =
      std::sqrt(std::log(static_cast<double>(cfg.m) / cfg.alpha));
  for (double& v : x) v = lambda * v - 0.5 * lambda * lambda;
  return x;
}

std::vector<double> GenMultiData(const MultiTestConfig& cfg, size_t trial,
                                 const RngSeed& seed) {
  std::vector<double> e = GenMultiLogData(cfg, trial, seed);
  for (double& v : e) v = std::exp(v);
  return e;
}

absl::StatusOr<std::vector<MultiTrialOutcome>> RunMultiTrials(
    const MultiTestConfig& cfg, const RngSeed& seed) {
  GDPE_RETURN_IF_ERROR(ValidateMultiTestConfig(cfg));
  std::vector<absl::StatusOr<MultiTrialOutcome>> results =
      kernels::MapTrials<absl::StatusOr<MultiTrialOutcome>>(
          cfg.trials,
          [&](size_t t) { return RunOneMultiTrial(cfg, t, seed); });
  std::vector<MultiTrialOutcome> out;
  out.reserve(results.size());
  for (auto& r : results) {
    if (!r.ok()) return r.status();
    out.push_back(*std::move(r));
  }
  return out;
}

absl::StatusOr<std::vector<ResultRow>> RunMultiSweep(
    const MultiTestConfig& cfg, SweepKind sweep, std::span<const double> grid,
    const RngSeed& seed) {
  std::vector<double> points(grid.begin(), grid.end());
  if (sweep == SweepKind::kNone) points = {0.0};
  if (points.empty()) return absl::InvalidArgumentError("sweep grid is empty");
  std::vector<ResultRow> rows;
  for (size_t g = 0; g < points.size(); ++g) {
    const double v = points[g];
    MultiTestConfig point = cfg;
    switch (sweep) {
      case SweepKind::kNone:
        break;
      case SweepKind::kLog10Delta:
        point.sensitivity.delta = std::pow(10.0, v);
        break;
      case SweepKind::kM1:
        if (!(v >= 0.0) || v != std::floor(v)) {
          return absl::InvalidArgumentError(
              absl::StrCat("m1 grid entry must be a count, got ", v));
        }
        point.m1 = static_cast<size_t>(v);
        break;
      case SweepKind::kEtaAlt:
        point.eta_alt = v;
        break;
      case SweepKind::kEpsilon:
        if (!(v > 0.0)) {
          return absl::InvalidArgumentError(
              absl::StrCat("epsilon grid entry must be > 0, got ", v));
        }
        point.budget.mu = GdpMuFromEpsilon(v, 1e-3);
        break;
    }
    GDPE_ASSIGN_OR_RETURN(const std::vector<MultiTrialOutcome> outcomes,
                          RunMultiTrials(point, seed.Child(g)));
    for (size_t k = 0; k < kMultiMethods.size(); ++k) {
      std::vector<double> fdp, tp, disc;
      for (const MultiTrialOutcome& o : outcomes) {
        fdp.push_back(o.scores[k].fdp);
        tp.push_back(o.scores[k].tp_fraction);
        disc.push_back(static_cast<double>(o.discoveries[k]));
      }
      const std::array<std::pair<Metric, MeanSe>, 3> stats = {
          std::pair{Metric::kFdr, SampleMeanSe(fdp)},
          std::pair{Metric::kAp, SampleMeanSe(tp)},
          std::pair{Metric::kDiscoveries, SampleMeanSe(disc)}};
      for (const auto& [metric, ms] : stats) {
        rows.push_back(ResultRow{kMultiMethods[k], SweepName(sweep), v, metric,
                                 ms.mean, ms.se, point.trials, seed.root()});
      }
    }
  }
  return rows;
}

absl::Status ValidateGwasConfig(const GwasConfig& cfg, size_t m) {
  GDPE_RETURN_IF_ERROR(RequirePositiveCount(m, "number of z-scores"));
  if (cfg.alpha_grid.empty()) {
    return absl::InvalidArgumentError("alpha grid is empty");
  }
  for (double a : cfg.alpha_grid) GDPE_RETURN_IF_ERROR(ValidateAlpha(a));
  GDPE_RETURN_IF_ERROR(ValidateBudget(cfg.budget));
  GDPE_RETURN_IF_ERROR(ValidateSensitivity(cfg.sensitivity));
  if (cfg.sensitivity.delta == 0.0) {
    return absl::InvalidArgumentError("delta must be > 0");
  }
  if (cfg.s_fixed < 1 || cfg.s_fixed > m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "s must lie in [1, ", m, "], got ", cfg.s_fixed));
  }
  if (cfg.s_min < 1 || cfg.s_min > m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "s_min must lie in [1, ", m, "], got ", cfg.s_min));
  }
  if (!(cfg.mu0_fraction > 0.0 && cfg.mu0_fraction < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mu0 fraction must lie in (0, 1), got ", cfg.mu0_fraction));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ResultRow>> RunGwas(std::span<const double> zscores,
                                               const GwasConfig& cfg,
                                               const RngSeed& seed) {
  const size_t m = zscores.size();
  GDPE_RETURN_IF_ERROR(ValidateGwasConfig(cfg, m));
  for (size_t i = 0; i < m; ++i) {
    if (!std::isfinite(zscores[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("z-score ", i, " is not finite"));
    }
  }
  std::vector<ResultRow> rows;
  for (size_t a = 0; a < cfg.alpha_grid.size(); ++a) {
    const double alpha = cfg.alpha_grid[a];
    const double lambda = std::sqrt(std::log(static_cast<double>(m) / alpha));
    std::vector<double> log_e(m);
    for (size_t i = 0; i < m; ++i) {
      log_e[i] = lambda * zscores[i] - 0.5 * lambda * lambda;
    }
    const RngSeed point = seed.Child(a);
    GDPE_ASSIGN_OR_RETURN(const std::vector<double> noisy,
                          AllNoisyLogValues(log_e, cfg.sensitivity, cfg.budget,
                                            point.Child(0)));
    GDPE_ASSIGN_OR_RETURN(
        const PrivateEVector fixed,
        PeelFixedLog(log_e,
                     PeelingConfig{cfg.s_fixed, cfg.sensitivity, cfg.budget},
                     point.Child(1)));
    const AdaptiveConfig acfg{cfg.s_min, cfg.mu0_fraction * cfg.budget.mu,
                              alpha};
    GDPE_ASSIGN_OR_RETURN(const AdaptivePeelResult adaptive,
                          PeelAdaptiveLog(log_e, acfg, cfg.sensitivity,
                                          cfg.budget, point.Child(2)));
    const std::array<const std::vector<double>*, 4> released = {
        &log_e, &noisy, &fixed.log_values, &adaptive.released.log_values};
    for (size_t k = 0; k < released.size(); ++k) {
      GDPE_ASSIGN_OR_RETURN(const TestingReport report,
                            EbhLog(*released[k], alpha));
      rows.push_back(ResultRow{kMultiMethods[k], "alpha", alpha,
                               Metric::kDiscoveries,
                               static_cast<double>(report.k_star), 0.0, 1,
                               seed.root()});
    }
  }
  return rows;
}

}  // namespace gdpe
