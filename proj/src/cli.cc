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

#include "gdpe/cli.h"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "gdpe/audit.h"
#include "gdpe/calibration.h"
#include "gdpe/ebh.h"
#include "gdpe/experiments.h"
#include "gdpe/io.h"
#include "gdpe/mechanism.h"
#include "gdpe/peeling.h"
#include "gdpe/status_macros.h"

namespace gdpe {
namespace {

using Config = std::map<std::string, std::string>;

std::string JoinDoubles(const std::vector<double>& xs) {
  return absl::StrJoin(xs, ";", [](std::string* out, double x) {
    out->append(FormatDouble(x));
  });
}

bool IsIoError(const absl::Status& status) {
  return absl::IsNotFound(status) || absl::IsUnavailable(status) ||
         absl::IsDataLoss(status);
}

// Writes `body` to `path` and the manifest next to it.
absl::Status Emit(const std::string& path, const std::string& body,
                  const std::string& command, uint64_t seed,
                  const Config& config) {
  GDPE_RETURN_IF_ERROR(WriteFile(path, body));
  const RunManifest manifest{command, config, seed, kToolVersion};
  return WriteFile(ManifestPathFor(path), SerializeManifest(manifest));
}

struct CalibrateArgs {
  double alpha = 0.0;
  double mu = 0.0;
  double delta = 0.0;
  std::string out;
};

absl::Status RunCalibrate(const CalibrateArgs& a, std::ostream& out) {
  GDPE_ASSIGN_OR_RETURN(const CalibrationResult cal,
                        Calibrate(a.alpha, Sensitivity{a.delta},
                                  PrivacyBudget{a.mu}));
  const PowerProfile profile = ComputePowerProfile(cal);
  std::ostringstream body;
  body << "key,value\n"
       << "alpha," << FormatDouble(cal.alpha) << '\n'
       << "mu," << FormatDouble(a.mu) << '\n'
       << "delta," << FormatDouble(a.delta) << '\n'
       << "sigma," << FormatDouble(cal.sigma) << '\n'
       << "z_star," << FormatDouble(cal.z_star) << '\n'
       << "c_star," << FormatDouble(cal.c_star) << '\n'
       << "log_c_star," << FormatDouble(cal.log_c_star) << '\n'
       << "branch," << ThresholdBranchName(cal.branch) << '\n'
       << "g_max," << FormatDouble(profile.g_max) << '\n'
       << "x_opt," << FormatDouble(profile.x_opt) << '\n'
       << "log_x_opt," << FormatDouble(profile.log_x_opt) << '\n'
       << "shift_neg_prob," << FormatDouble(profile.shift_neg_prob) << '\n';
  if (a.out.empty()) {
    out << body.str();
    return absl::OkStatus();
  }
  return Emit(a.out, body.str(), "calibrate", 0,
              {{"alpha", FormatDouble(a.alpha)},
               {"mu", FormatDouble(a.mu)},
               {"delta", FormatDouble(a.delta)}});
}

// Index column for an e-value table: the file's indices when present,
// otherwise 0-based row positions.
std::vector<uint64_t> IndicesOf(const EValueTable& table) {
  if (table.indices.has_value()) return *table.indices;
  std::vector<uint64_t> idx(table.values.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return idx;
}

absl::StatusOr<EValueTable> LoadEValues(const std::string& path) {
  GDPE_ASSIGN_OR_RETURN(const std::string text, ReadFile(path));
  auto table = ParseEValueCsv(text);
  if (!table.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", table.status().message()));
  }
  return table;
}

struct PrivatizeArgs {
  double mu = 0.0;
  double delta = 0.0;
  uint64_t seed = 0;
  std::string in;
  std::string out;
};

absl::Status RunPrivatize(const PrivatizeArgs& a) {
  GDPE_RETURN_IF_ERROR(ValidateBudget(PrivacyBudget{a.mu}));
  GDPE_RETURN_IF_ERROR(ValidateSensitivity(Sensitivity{a.delta}));
  GDPE_ASSIGN_OR_RETURN(const EValueTable table, LoadEValues(a.in));
  GDPE_ASSIGN_OR_RETURN(
      const std::vector<PrivateEValue> released,
      AllNoisyPrivatize(table.values, Sensitivity{a.delta}, PrivacyBudget{a.mu},
                        RngSeed(a.seed)));
  const std::vector<uint64_t> idx = IndicesOf(table);
  std::ostringstream body;
  body << "index,private_evalue,log_private_evalue\n";
  for (size_t i = 0; i < released.size(); ++i) {
    body << idx[i] << ',' << FormatDouble(released[i].value) << ','
         << FormatDouble(released[i].log_value) << '\n';
  }
  return Emit(a.out, body.str(), "privatize", a.seed,
              {{"mu", FormatDouble(a.mu)},
               {"delta", FormatDouble(a.delta)},
               {"in", a.in}});
}

struct PeelArgs {
  std::string mode = "fixed";
  size_t s = 0;
  size_t s_min = 0;
  double mu = 0.0;
  double mu0 = 0.0;
  double delta = 0.0;
  double alpha = 0.05;
  uint64_t seed = 0;
  std::string in;
  std::string out;
};

std::string ReleasedCsv(const PrivateEVector& v,
                        const std::vector<uint64_t>& idx) {
  std::vector<size_t> rank(v.log_values.size(), 0);
  for (size_t r = 0; r < v.selected.size(); ++r) rank[v.selected[r]] = r + 1;
  std::ostringstream body;
  body << "index,private_evalue,log_private_evalue,selection_rank\n";
  for (size_t i = 0; i < v.log_values.size(); ++i) {
    body << idx[i] << ',' << FormatDouble(std::exp(v.log_values[i])) << ','
         << FormatDouble(v.log_values[i]) << ',' << rank[i] << '\n';
  }
  return body.str();
}

absl::Status RunPeel(const PeelArgs& a, std::ostream& out) {
  const bool adaptive = a.mode == "adaptive";
  if (!adaptive && a.s == 0) {
    return absl::InvalidArgumentError("--mode fixed requires --s >= 1");
  }
  if (adaptive && (a.s_min == 0 || !(a.mu0 > 0.0))) {
    return absl::InvalidArgumentError(
        "--mode adaptive requires --s-min >= 1 and --mu0 > 0");
  }
  GDPE_RETURN_IF_ERROR(ValidateBudget(PrivacyBudget{a.mu}));
  GDPE_RETURN_IF_ERROR(ValidateSensitivity(Sensitivity{a.delta}));
  GDPE_RETURN_IF_ERROR(ValidateAlpha(a.alpha));
  GDPE_ASSIGN_OR_RETURN(const EValueTable table, LoadEValues(a.in));
  GDPE_ASSIGN_OR_RETURN(const std::vector<double> logs,
                        ToLogEValues(table.values));
  const std::vector<uint64_t> idx = IndicesOf(table);
  Config config = {{"mode", a.mode},
                   {"mu", FormatDouble(a.mu)},
                   {"delta", FormatDouble(a.delta)},
                   {"in", a.in}};
  const RngSeed seed(a.seed);
  if (!adaptive) {
    config["s"] = absl::StrCat(a.s);
    GDPE_ASSIGN_OR_RETURN(
        const PrivateEVector v,
        PeelFixedLog(logs,
                     PeelingConfig{a.s, Sensitivity{a.delta},
                                   PrivacyBudget{a.mu}},
                     seed));
    return Emit(a.out, ReleasedCsv(v, idx), "peel", a.seed, config);
  }
  config["s_min"] = absl::StrCat(a.s_min);
  config["mu0"] = FormatDouble(a.mu0);
  config["alpha"] = FormatDouble(a.alpha);
  GDPE_ASSIGN_OR_RETURN(
      const AdaptivePeelResult r,
      PeelAdaptiveLog(logs, AdaptiveConfig{a.s_min, a.mu0, a.alpha},
                      Sensitivity{a.delta}, PrivacyBudget{a.mu}, seed));
  GDPE_RETURN_IF_ERROR(
      Emit(a.out, ReleasedCsv(r.released, idx), "peel", a.seed, config));
  std::ostringstream margins;
  margins << "k,q,q_noisy\n";
  for (size_t j = 0; j < r.margins.grid.size(); ++j) {
    margins << r.margins.grid[j] << ',' << FormatDouble(r.margins.q[j]) << ','
            << FormatDouble(r.margins.q_noisy[j]) << '\n';
  }
  GDPE_RETURN_IF_ERROR(WriteFile(a.out + ".margins.csv", margins.str()));
  out << "s_hat," << r.s_hat << '\n'
      << "mu_peel," << FormatDouble(r.mu_peel) << '\n';
  return absl::OkStatus();
}

struct EbhArgs {
  double alpha = 0.0;
  std::string in;
  std::string out;
};

absl::Status RunEbhCommand(const EbhArgs& a, std::ostream& out) {
  GDPE_RETURN_IF_ERROR(ValidateAlpha(a.alpha));
  GDPE_ASSIGN_OR_RETURN(const EValueTable table, LoadEValues(a.in));
  GDPE_ASSIGN_OR_RETURN(const TestingReport report,
                        Ebh(table.values, a.alpha));
  const std::vector<uint64_t> idx = IndicesOf(table);
  std::vector<uint64_t> rejected_ids;
  std::vector<bool> rejected(table.values.size(), false);
  for (size_t i : report.rejected) {
    rejected_ids.push_back(idx[i]);
    rejected[i] = true;
  }
  out << "k_star," << report.k_star << '\n'
      << "rejected," << absl::StrJoin(rejected_ids, ";") << '\n';
  if (a.out.empty()) return absl::OkStatus();
  std::ostringstream body;
  body << "index,evalue,rejected\n";
  for (size_t i = 0; i < table.values.size(); ++i) {
    body << idx[i] << ',' << FormatDouble(table.values[i]) << ','
         << (rejected[i] ? "true" : "false") << '\n';
  }
  return Emit(a.out, body.str(), "ebh", 0,
              {{"alpha", FormatDouble(a.alpha)}, {"in", a.in}});
}

struct SimulateArgs {
  std::string experiment = "single";
  std::optional<size_t> trials;
  uint64_t seed = 0;
  std::string out;
  std::optional<double> mu_flag;
  double alpha = 0.05;
  std::vector<double> log10_delta_grid;
  std::string lambda_rule = "sqrt_log";
  // Multiple-testing flags.
  size_t m = 2000;
  size_t m1 = 20;
  double eta = 4.0;
  std::optional<double> rho;
  double delta = 5e-3;
  double epsilon = 0.5;
  size_t s = 100;
  size_t s_min = 10;
  double mu0_fraction = 0.1;
  std::string sweep = "none";
  std::vector<double> grid;
};

absl::Status RunSimulate(const SimulateArgs& a) {
  std::vector<ResultRow> rows;
  Config config = {{"experiment", a.experiment}};
  const RngSeed seed(a.seed);
  if (a.experiment == "single") {
    SingleTestConfig cfg;
    cfg.budget.mu = a.mu_flag.value_or(0.25);
    cfg.alpha = a.alpha;
    if (!a.log10_delta_grid.empty()) cfg.log10_delta_grid = a.log10_delta_grid;
    cfg.trials = a.trials.value_or(cfg.trials);
    cfg.lambda_rule = a.lambda_rule == "sqrt_two_log" ? LambdaRule::kSqrtTwoLog
                                                      : LambdaRule::kSqrtLog;
    config["mu"] = FormatDouble(cfg.budget.mu);
    config["alpha"] = FormatDouble(cfg.alpha);
    config["log10_delta_grid"] = JoinDoubles(cfg.log10_delta_grid);
    config["trials"] = absl::StrCat(cfg.trials);
    config["lambda_rule"] = a.lambda_rule;
    GDPE_ASSIGN_OR_RETURN(rows, RunSingleTestSweep(cfg, seed));
  } else {
    MultiTestConfig cfg;
    cfg.m = a.m;
    cfg.m1 = a.m1;
    cfg.eta_alt = a.eta;
    cfg.rho = a.rho.value_or(a.experiment == "multi-corr" ? 0.3 : 0.0);
    cfg.alpha = a.alpha;
    cfg.sensitivity.delta = a.delta;
    cfg.budget.mu = a.mu_flag.value_or(GdpMuFromEpsilon(a.epsilon, 1e-3));
    cfg.s_fixed = a.s;
    cfg.s_min = a.s_min;
    cfg.mu0_fraction = a.mu0_fraction;
    cfg.trials = a.trials.value_or(cfg.trials);
    const std::map<std::string, SweepKind> kinds = {
        {"none", SweepKind::kNone},
        {"log10_delta", SweepKind::kLog10Delta},
        {"m1", SweepKind::kM1},
        {"eta_alt", SweepKind::kEtaAlt},
        {"epsilon", SweepKind::kEpsilon}};
    const SweepKind kind = kinds.at(a.sweep);
    if (kind != SweepKind::kNone && a.grid.empty()) {
      return absl::InvalidArgumentError("--sweep requires --grid");
    }
    GDPE_RETURN_IF_ERROR(ValidateMultiTestConfig(cfg));
    config["m"] = absl::StrCat(cfg.m);
    config["m1"] = absl::StrCat(cfg.m1);
    config["eta_alt"] = FormatDouble(cfg.eta_alt);
    config["rho"] = FormatDouble(cfg.rho);
    config["alpha"] = FormatDouble(cfg.alpha);
    config["delta"] = FormatDouble(cfg.sensitivity.delta);
    config["mu"] = FormatDouble(cfg.budget.mu);
    config["s"] = absl::StrCat(cfg.s_fixed);
    config["s_min"] = absl::StrCat(cfg.s_min);
    config["mu0_fraction"] = FormatDouble(cfg.mu0_fraction);
    config["trials"] = absl::StrCat(cfg.trials);
    config["sweep"] = a.sweep;
    config["grid"] = JoinDoubles(a.grid);
    GDPE_ASSIGN_OR_RETURN(rows, RunMultiSweep(cfg, kind, a.grid, seed));
  }
  std::ostringstream body;
  WriteResultCsv(rows, body);
  return Emit(a.out, body.str(), "simulate", a.seed, config);
}

struct AuditArgs {
  std::string noise = "gaussian";
  std::vector<uint64_t> n_grid = {100, 1000, 10000, 100000};
  double gamma = 0.49;
  double mu = 0.70710678118654752440;
  double delta = 1.0;
  std::optional<double> mu_claimed;
  size_t trials = 10000;
  uint64_t seed = 0;
  std::string out;
};

absl::Status RunAudit(const AuditArgs& a) {
  AuditConfig cfg;
  cfg.noise = a.noise == "gumbel" ? AuditNoise::kGumbel : AuditNoise::kGaussian;
  cfg.n_grid = a.n_grid;
  cfg.gamma = a.gamma;
  cfg.budget.mu = a.mu;
  cfg.sensitivity.delta = a.delta;
  cfg.mu_claimed = a.mu_claimed;
  cfg.trials = a.trials;
  GDPE_RETURN_IF_ERROR(ValidateAuditConfig(cfg));
  GDPE_ASSIGN_OR_RETURN(const std::vector<AuditRow> rows,
                        ViolationReport(cfg, RngSeed(a.seed)));
  std::ostringstream body;
  WriteAuditCsv(rows, body);
  return Emit(a.out, body.str(), "audit-selection", a.seed,
              {{"noise", a.noise},
               {"n_grid", absl::StrJoin(a.n_grid, ";")},
               {"gamma", FormatDouble(a.gamma)},
               {"mu", FormatDouble(a.mu)},
               {"delta", FormatDouble(a.delta)},
               {"mu_claimed", FormatDouble(cfg.ClaimedMu())},
               {"trials", absl::StrCat(a.trials)}});
}

struct GwasArgs {
  std::string in;
  std::vector<double> alpha_grid;
  double mu = 0.25;
  double delta = 5e-3;
  size_t s = 500;
  size_t s_min = 50;
  double mu0_fraction = 0.1;
  uint64_t seed = 0;
  std::string out;
};

absl::Status RunGwasCommand(const GwasArgs& a) {
  GwasConfig cfg;
  if (!a.alpha_grid.empty()) cfg.alpha_grid = a.alpha_grid;
  cfg.budget.mu = a.mu;
  cfg.sensitivity.delta = a.delta;
  cfg.s_fixed = a.s;
  cfg.s_min = a.s_min;
  cfg.mu0_fraction = a.mu0_fraction;
  GDPE_ASSIGN_OR_RETURN(const std::string text, ReadFile(a.in));
  auto records = ParseGwasTsv(text);
  if (!records.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(a.in, ": ", records.status().message()));
  }
  std::vector<double> z;
  z.reserve(records->size());
  for (const GwasRecord& r : *records) z.push_back(r.z);
  GDPE_RETURN_IF_ERROR(ValidateGwasConfig(cfg, z.size()));
  GDPE_ASSIGN_OR_RETURN(const std::vector<ResultRow> rows,
                        RunGwas(z, cfg, RngSeed(a.seed)));
  std::ostringstream body;
  WriteResultCsv(rows, body);
  return Emit(a.out, body.str(), "gwas", a.seed,
              {{"in", a.in},
               {"alpha_grid", JoinDoubles(cfg.alpha_grid)},
               {"mu", FormatDouble(a.mu)},
               {"delta", FormatDouble(a.delta)},
               {"s", absl::StrCat(a.s)},
               {"s_min", absl::StrCat(a.s_min)},
               {"mu0_fraction", FormatDouble(a.mu0_fraction)}});
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Gaussian-DP e-values: calibration, peeling, e-BH, audits",
               "gdpe"};
  app.require_subcommand(1);

  CalibrateArgs calibrate;
  CLI::App* cal = app.add_subcommand("calibrate", "Noise-calibrated threshold");
  cal->add_option("--alpha", calibrate.alpha, "Significance level")->required();
  cal->add_option("--mu", calibrate.mu, "GDP budget")->required();
  cal->add_option("--delta", calibrate.delta, "Log-sensitivity")->required();
  cal->add_option("--out", calibrate.out, "Write key,value CSV here");

  PrivatizeArgs privatize;
  CLI::App* priv = app.add_subcommand(
      "privatize", "Release every e-value at a total budget of mu");
  priv->add_option("--mu", privatize.mu)->required();
  priv->add_option("--delta", privatize.delta)->required();
  priv->add_option("--seed", privatize.seed)->required();
  priv->add_option("--in", privatize.in)->required();
  priv->add_option("--out", privatize.out)->required();

  PeelArgs peel;
  CLI::App* pl = app.add_subcommand("peel", "Private top-s release");
  pl->add_option("--mode", peel.mode)
      ->check(CLI::IsMember({"fixed", "adaptive"}));
  pl->add_option("--s", peel.s);
  pl->add_option("--s-min", peel.s_min);
  pl->add_option("--mu", peel.mu)->required();
  pl->add_option("--mu0", peel.mu0);
  pl->add_option("--delta", peel.delta)->required();
  pl->add_option("--alpha", peel.alpha);
  pl->add_option("--seed", peel.seed)->required();
  pl->add_option("--in", peel.in)->required();
  pl->add_option("--out", peel.out)->required();

  EbhArgs ebh;
  CLI::App* eb = app.add_subcommand("ebh", "e-BH rejections");
  eb->add_option("--alpha", ebh.alpha)->required();
  eb->add_option("--in", ebh.in)->required();
  eb->add_option("--out", ebh.out);

  SimulateArgs sim;
  CLI::App* sm = app.add_subcommand("simulate", "Monte-Carlo experiments");
  sm->add_option("--experiment", sim.experiment)
      ->check(CLI::IsMember({"single", "multi-indep", "multi-corr"}));
  sm->add_option("--trials", sim.trials);
  sm->add_option("--seed", sim.seed)->required();
  sm->add_option("--out", sim.out)->required();
  sm->add_option("--mu", sim.mu_flag, "GDP budget (overrides --epsilon)");
  sm->add_option("--alpha", sim.alpha);
  sm->add_option("--log10-delta-grid", sim.log10_delta_grid)->delimiter(',');
  sm->add_option("--lambda-rule", sim.lambda_rule)
      ->check(CLI::IsMember({"sqrt_log", "sqrt_two_log"}));
  sm->add_option("--m", sim.m);
  sm->add_option("--m1", sim.m1);
  sm->add_option("--eta", sim.eta);
  sm->add_option("--rho", sim.rho);
  sm->add_option("--delta", sim.delta);
  sm->add_option("--epsilon", sim.epsilon);
  sm->add_option("--s", sim.s);
  sm->add_option("--s-min", sim.s_min);
  sm->add_option("--mu0-fraction", sim.mu0_fraction);
  sm->add_option("--sweep", sim.sweep)
      ->check(CLI::IsMember({"none", "log10_delta", "m1", "eta_alt", "epsilon"}));
  sm->add_option("--grid", sim.grid)->delimiter(',');

  AuditArgs audit;
  CLI::App* au = app.add_subcommand("audit-selection",
                                    "Swap-test audit of noisy-max selection");
  au->add_option("--noise", audit.noise)
      ->check(CLI::IsMember({"gaussian", "gumbel"}));
  au->add_option("--n-grid", audit.n_grid)->delimiter(',');
  au->add_option("--gamma", audit.gamma);
  au->add_option("--mu", audit.mu);
  au->add_option("--delta", audit.delta);
  au->add_option("--mu-claimed", audit.mu_claimed);
  au->add_option("--trials", audit.trials);
  au->add_option("--seed", audit.seed)->required();
  au->add_option("--out", audit.out)->required();

  GwasArgs gwas;
  CLI::App* gw = app.add_subcommand("gwas", "Private discoveries from z-scores");
  gw->add_option("--in", gwas.in)->required();
  gw->add_option("--alpha-grid", gwas.alpha_grid)->delimiter(',');
  gw->add_option("--mu", gwas.mu);
  gw->add_option("--delta", gwas.delta);
  gw->add_option("--s", gwas.s);
  gw->add_option("--s-min", gwas.s_min);
  gw->add_option("--mu0-fraction", gwas.mu0_fraction);
  gw->add_option("--seed", gwas.seed)->required();
  gw->add_option("--out", gwas.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  absl::Status status;
  if (cal->parsed()) {
    status = RunCalibrate(calibrate, out);
  } else if (priv->parsed()) {
    status = RunPrivatize(privatize);
  } else if (pl->parsed()) {
    status = RunPeel(peel, out);
  } else if (eb->parsed()) {
    status = RunEbhCommand(ebh, out);
  } else if (sm->parsed()) {
    status = RunSimulate(sim);
  } else if (au->parsed()) {
    status = RunAudit(audit);
  } else if (gw->parsed()) {
    status = RunGwasCommand(gwas);
  }
  if (status.ok()) return kExitOk;
  err << "error: " << status.message() << '\n';
  return IsIoError(status) ? kExitIo : kExitValidation;
}

}  // namespace gdpe
