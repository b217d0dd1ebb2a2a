#pragma once

// Running several derivative methods over one series and collecting the
// results into a comparison report.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "lsderiv/csv.hpp"
#include "lsderiv/error.hpp"
#include "lsderiv/estimate.hpp"
#include "lsderiv/pe.hpp"
#include "lsderiv/rpe.hpp"
#include "lsderiv/savgol.hpp"
#include "lsderiv/series.hpp"
#include "lsderiv/signals.hpp"
#include "lsderiv/ssa.hpp"

namespace lsderiv {

enum class OutputFormat { Csv, Json };

struct CsvInput {
  std::string path;
};

struct RunConfig {
  std::variant<CsvInput, SignalSpec> input = SignalSpec{};
  std::vector<Method> methods{Method::PE, Method::PEAuto, Method::RPE, Method::SSA};
  std::size_t n = 7;
  /// Degree for "pe"; nullopt means "auto", which runs pe-auto in its place.
  std::optional<int> degree = 2;
  DegreeFinderConfig finder{};
  double variance = 0.95;
  std::size_t passes = 2;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;

  void validate() const {
    if (methods.empty()) throw Error(ErrorCode::InvalidArgument, "select at least one method");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "half-width n must be at least 1");
    if (degree && (*degree < 1 || static_cast<std::size_t>(*degree) > 2 * n)) {
      throw Error(ErrorCode::InvalidArgument, "degree must lie in [1, 2n]");
    }
    finder.validate();
    if (!(variance > 0.0 && variance <= 1.0)) throw Error(ErrorCode::InvalidArgument, "variance must lie in (0, 1]");
    if (const auto* spec = std::get_if<SignalSpec>(&input)) spec->validate();
  }

  /// Requested methods in canonical order with "pe" folded into "pe-auto" when degree is auto.
  std::vector<Method> effective_methods() const {
    std::vector<Method> out;
    for (Method m : {Method::PE, Method::PEAuto, Method::RPE, Method::SSA}) {
      const bool wanted = std::find(methods.begin(), methods.end(), m) != methods.end() ||
                          (m == Method::PEAuto && !degree &&
                           std::find(methods.begin(), methods.end(), Method::PE) != methods.end());
      if (m == Method::PE && !degree) continue;
      if (wanted) out.push_back(m);
    }
    return out;
  }
};

struct Metrics {
  std::vector<std::pair<Method, double>> rmse;
  /// pe-auto only: degree -> number of windows.
  std::map<int, std::size_t> degree_histogram;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

struct Report {
  RunConfig config;
  Series series;
  std::optional<std::vector<double>> truth;
  std::vector<DerivativeEstimate> estimates;
  std::optional<Metrics> metrics;
};

inline DerivativeEstimate run_method(Method method, const Series& series, const RunConfig& config) {
  switch (method) {
    case Method::PE: return pe_derivative(series, config.n, config.degree.value_or(2));
    case Method::PEAuto: return pe_derivative_auto(series, config.n, config.finder);
    case Method::RPE: return rpe_derivative(series, config.n, config.finder, config.passes);
    case Method::SSA: return ssa_derivative(series, config.n, config.variance);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

/// Runs every selected method on `series`. The domain is shifted to start at
/// zero for fitting; reported xs are the original ones.
inline Report run_comparison(const Series& series, std::optional<std::vector<double>> truth, const RunConfig& config) {
  config.validate();
  if (truth && truth->size() != series.size()) {
    throw Error(ErrorCode::InvalidArgument, "truth length differs from series length");
  }
  const auto methods = config.effective_methods();

  std::vector<double> shifted(series.xs().begin(), series.xs().end());
  const double origin = shifted.empty() ? 0.0 : shifted.front();
  for (double& x : shifted) x -= origin;
  const Series work(std::move(shifted), std::vector<double>(series.ys().begin(), series.ys().end()));

  std::vector<std::future<DerivativeEstimate>> jobs;
  jobs.reserve(methods.size());
  for (Method m : methods) {
    jobs.push_back(std::async(std::launch::async, [m, &work, &config] { return run_method(m, work, config); }));
  }

  Report report{config, series, std::move(truth), {}, std::nullopt};
  std::string failures;
  std::optional<ErrorCode> first_code;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    try {
      auto est = jobs[k].get();
      est.xs.assign(series.xs().begin(), series.xs().end());
      report.estimates.push_back(std::move(est));
    } catch (const Error& e) {
      if (!first_code) first_code = e.code();
      failures += (failures.empty() ? "" : "; ") + std::string(method_name(methods[k])) + ": " + e.what();
    } catch (const std::exception& e) {
      if (!first_code) first_code = ErrorCode::InvalidArgument;
      failures += (failures.empty() ? "" : "; ") + std::string(method_name(methods[k])) + ": " + e.what();
    }
  }
  if (first_code) throw Error(*first_code, failures);

  if (report.truth) {
    Metrics metrics;
    for (const auto& est : report.estimates) {
      metrics.rmse.emplace_back(est.method, rmse_against_truth(est, *report.truth));
      if (est.chosen_degrees) {
        for (std::size_t i = est.defined.begin; i < est.defined.end; ++i) ++metrics.degree_histogram[(*est.chosen_degrees)[i]];
      }
    }
    report.metrics = std::move(metrics);
  }
  return report;
}

inline Report run_comparison(const RunConfig& config) {
  config.validate();
  if (const auto* csv = std::get_if<CsvInput>(&config.input)) {
    return run_comparison(ingest_csv(csv->path), std::nullopt, config);
  }
  auto signal = generate(std::get<SignalSpec>(config.input));
  return run_comparison(signal.series, std::move(signal.truth), config);
}

/// Header "x,y,<method>..."; undefined margins are empty cells.
inline void write_report_csv(std::ostream& out, const Report& report) {
  out << "x,y";
  for (const auto& est : report.estimates) out << ',' << method_name(est.method);
  out << '\n';
  for (std::size_t i = 0; i < report.series.size(); ++i) {
    out << detail::format_real(report.series.xs()[i]) << ',' << detail::format_real(report.series.ys()[i]);
    for (const auto& est : report.estimates) {
      out << ',';
      if (est.defined.contains(i)) out << detail::format_real(est.dys[i]);
    }
    out << '\n';
  }
}

}  // namespace lsderiv
