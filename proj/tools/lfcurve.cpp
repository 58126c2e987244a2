// Command-line front end. Every subcommand builds a small RunConfig and hands it
// to the same pipeline that `run <config>` uses, so reports and records are
// identical whichever way a task is launched.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lfcurve/pipeline.hpp"
#include "lfcurve/run_config.hpp"

namespace {

using lfcurve::DataSource;
using lfcurve::RunConfig;
using lfcurve::SourceRole;
using lfcurve::TaskBlock;

struct CommonOptions {
  std::string input;
  std::string frequency = "annual";
  std::string out = "lfcurve-out";
};

struct FitOptions {
  std::string labour_force;
  std::string role = "dgdp";
  std::string brk;
  std::optional<int> window;
  std::string lags;
  std::optional<int> smooth;
  std::string metric = "l2";
  std::string counterfactual;
};

void add_common(CLI::App* cmd, CommonOptions& c) {
  cmd->add_option("--input", c.input, "Response series CSV (period,value)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--frequency", c.frequency, "annual | quarterly")
      ->check(CLI::IsMember({"annual", "quarterly"}));
  cmd->add_option("--out", c.out, "Output directory");
}

void add_fit(CLI::App* cmd, FitOptions& f) {
  cmd->add_option("--lf", f.labour_force, "Labour-force levels CSV (period,value)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--role", f.role, "Response role: unemployment | dgdp | cpi")
      ->check(CLI::IsMember({"unemployment", "dgdp", "cpi"}));
  cmd->add_option("--break", f.brk, "Candidate break period (1990 or 1990Q1); omit for a single regime");
  cmd->add_option("--window", f.window, "Break search half-width in periods (default 4)");
  cmd->add_option("--lags", f.lags, "Lag range a..b (default 0..5 annual, 0..12 quarterly)");
  cmd->add_option("--smooth", f.smooth, "Trailing moving-average window applied before fitting");
  cmd->add_option("--metric", f.metric, "Reported residual norm: l2 | l1")->check(CLI::IsMember({"l2", "l1"}));
  cmd->add_option("--counterfactual", f.counterfactual, "Gap window a..b for the pre-break model");
}

DataSource source(const std::string& path, SourceRole role, const CommonOptions& c) {
  return DataSource{std::filesystem::absolute(path), role, lfcurve::parse_frequency(c.frequency), 0};
}

TaskBlock fit_task(const FitOptions& f, const CommonOptions& c) {
  TaskBlock t{"fit_univariate", "fit", {}, 0};
  t.params = {{"response", f.role}, {"frequency", c.frequency}};
  if (!f.brk.empty()) t.params.emplace_back("break", f.brk);
  if (f.window) t.params.emplace_back("window", std::to_string(*f.window));
  if (!f.lags.empty()) t.params.emplace_back("lags", f.lags);
  if (f.smooth) t.params.emplace_back("smooth", std::to_string(*f.smooth));
  t.params.emplace_back("metric", f.metric);
  if (!f.counterfactual.empty()) t.params.emplace_back("counterfactual", f.counterfactual);
  return t;
}

RunConfig fit_config(const FitOptions& f, const CommonOptions& c) {
  RunConfig config;
  config.sources = {source(f.labour_force, SourceRole::labour_force, c),
                    source(c.input, lfcurve::parse_source_role(f.role), c)};
  config.tasks = {fit_task(f, c)};
  return config;
}

int execute(const RunConfig& config, const std::string& out) {
  const auto summary = lfcurve::run(config, out, std::cerr);
  std::cout << summary.report;
  std::cerr << "wrote " << summary.tasks_run << " task(s) to " << out << "; " << summary.tasks_failed
            << " failed\n";
  return summary.exit_status();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cumulative-curve calibration of labour-force driven inflation and unemployment models"};
  app.require_subcommand(1);

  // run <config>
  std::string config_path;
  std::string run_out = "lfcurve-out";
  auto* run_cmd = app.add_subcommand("run", "Execute every task of a configuration file");
  run_cmd->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run_out, "Output directory");

  // fit
  CommonOptions fit_common;
  FitOptions fit_opts;
  auto* fit_cmd = app.add_subcommand("fit", "Break and lag search for a piecewise linear model");
  add_common(fit_cmd, fit_common);
  add_fit(fit_cmd, fit_opts);

  // generalized
  CommonOptions gen_common;
  std::string gen_lf;
  std::string gen_u;
  std::string gen_role = "dgdp";
  int gen_driver_lag = 1;
  std::optional<int> gen_u_lag;
  auto* gen_cmd = app.add_subcommand("generalized", "Fit pi_t = c1 l_{t-i} + c2 u_{t-k} + c3 on cumulative curves");
  add_common(gen_cmd, gen_common);
  gen_cmd->add_option("--lf", gen_lf, "Labour-force levels CSV")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--unemployment", gen_u, "Unemployment rate CSV")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--role", gen_role, "Response role: dgdp | cpi")->check(CLI::IsMember({"dgdp", "cpi"}));
  gen_cmd->add_option("--driver-lag", gen_driver_lag, "Lag on labour-force growth")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--unemployment-lag", gen_u_lag, "Lag on unemployment (default: driver lag)")
      ->check(CLI::NonNegativeNumber);

  // unitroot
  CommonOptions ur_common;
  std::string ur_role = "cpi";
  std::string ur_tests = "adf,pp,dfgls";
  std::string ur_transform = "level";
  std::string ur_trend = "constant";
  int ur_lags = 1;
  std::optional<int> ur_bandwidth;
  auto* ur_cmd = app.add_subcommand("unitroot", "ADF, Phillips-Perron and DF-GLS tests on one series");
  add_common(ur_cmd, ur_common);
  ur_cmd->add_option("--role", ur_role, "labour_force (levels, tested as growth) | unemployment | dgdp | cpi")
      ->check(CLI::IsMember({"labour_force", "unemployment", "dgdp", "cpi"}));
  ur_cmd->add_option("--tests", ur_tests, "Comma-separated subset of adf,pp,dfgls");
  ur_cmd->add_option("--transform", ur_transform, "level | difference | cumulative")
      ->check(CLI::IsMember({"level", "difference", "cumulative"}));
  ur_cmd->add_option("--trend", ur_trend, "none | constant | constant_and_trend");
  ur_cmd->add_option("--lags", ur_lags, "Augmentation lags for ADF and DF-GLS")->check(CLI::NonNegativeNumber);
  ur_cmd->add_option("--bandwidth", ur_bandwidth, "Phillips-Perron Bartlett bandwidth")->check(CLI::NonNegativeNumber);

  // cointegration
  CommonOptions co_common;
  FitOptions co_fit;
  std::string co_method = "both";
  std::string co_curve = "dynamic";
  int co_lags = 1;
  int co_maxlag = 1;
  std::string co_trend = "none";
  auto* co_cmd = app.add_subcommand("cointegration", "Fit, then test observed and predicted for cointegration");
  add_common(co_cmd, co_common);
  add_fit(co_cmd, co_fit);
  co_cmd->add_option("--method", co_method, "residual | johansen | both")
      ->check(CLI::IsMember({"residual", "johansen", "both"}));
  co_cmd->add_option("--curve", co_curve, "dynamic | cumulative")->check(CLI::IsMember({"dynamic", "cumulative"}));
  co_cmd->add_option("--test-lags", co_lags, "ADF lags on the residual")->check(CLI::NonNegativeNumber);
  co_cmd->add_option("--maxlag", co_maxlag, "Lagged differences in the Johansen VECM")->check(CLI::NonNegativeNumber);
  co_cmd->add_option("--trend", co_trend, "Johansen deterministic terms: none | constant | constant_and_trend");

  // forecast
  CommonOptions fc_common;
  FitOptions fc_fit;
  int fc_horizon = 1;
  auto* fc_cmd = app.add_subcommand("forecast", "Fit, then compare model and no-change forecast RMSFE");
  add_common(fc_cmd, fc_common);
  add_fit(fc_cmd, fc_fit);
  fc_cmd->add_option("--horizon", fc_horizon, "Forecast horizon in periods")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return execute(lfcurve::load_run_config(config_path), run_out);

    if (*fit_cmd) return execute(fit_config(fit_opts, fit_common), fit_common.out);

    if (*gen_cmd) {
      RunConfig config;
      config.sources = {source(gen_lf, SourceRole::labour_force, gen_common),
                        source(gen_u, SourceRole::unemployment, gen_common),
                        source(gen_common.input, lfcurve::parse_source_role(gen_role), gen_common)};
      TaskBlock t{"fit_generalized", "generalized", {}, 0};
      t.params = {{"response", gen_role},
                  {"frequency", gen_common.frequency},
                  {"driver_lag", std::to_string(gen_driver_lag)},
                  {"unemployment_lag", std::to_string(gen_u_lag.value_or(gen_driver_lag))}};
      config.tasks = {t};
      return execute(config, gen_common.out);
    }

    if (*ur_cmd) {
      RunConfig config;
      config.sources = {source(ur_common.input, lfcurve::parse_source_role(ur_role), ur_common)};
      TaskBlock t{"unitroot", "unitroot", {}, 0};
      t.params = {{"series", ur_role},         {"frequency", ur_common.frequency}, {"tests", ur_tests},
                  {"transform", ur_transform}, {"trend", ur_trend},                {"lags", std::to_string(ur_lags)}};
      if (ur_bandwidth) t.params.emplace_back("bandwidth", std::to_string(*ur_bandwidth));
      config.tasks = {t};
      return execute(config, ur_common.out);
    }

    if (*co_cmd) {
      RunConfig config = fit_config(co_fit, co_common);
      TaskBlock t{"cointegration", "cointegration", {}, 0};
      t.params = {{"fit", "fit"},
                  {"method", co_method},
                  {"curve", co_curve},
                  {"lags", std::to_string(co_lags)},
                  {"maxlag", std::to_string(co_maxlag)},
                  {"trend", co_trend}};
      config.tasks.push_back(t);
      return execute(config, co_common.out);
    }

    if (*fc_cmd) {
      RunConfig config = fit_config(fc_fit, fc_common);
      TaskBlock t{"forecast_eval", "forecast", {}, 0};
      t.params = {{"fit", "fit"}, {"horizon", std::to_string(fc_horizon)}};
      config.tasks.push_back(t);
      return execute(config, fc_common.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
