// lsderiv: derivative estimates for sampled series from the command line.
//
//   lsderiv run --input data.csv --methods pe,ssa --n 7 --format json -o out.json
//   lsderiv run --signal sinmix --noise 0.1 --seed 3 --methods all
//   lsderiv generate --signal linear --noise 0.5 --seed 1 -o series.csv

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lsderiv/lsderiv.hpp"
#include "lsderiv/report_json.hpp"

namespace {

using namespace lsderiv;

struct SignalOptions {
  std::string kind = "sinmix";
  std::optional<double> xmin;
  std::optional<double> xmax;
  std::optional<std::size_t> count;
  double noise = 0.0;
  std::uint64_t seed = 0;
  double slope = 1.0;
  double intercept = 0.0;
  double value = 0.0;
  std::vector<double> coeffs{0.0, 0.0, 1.0};
  double breakpoint = 5.0;
  double cubic = 0.1;

  void add_to(CLI::App& app) {
    app.add_option("--signal", kind, "Synthetic signal kind")
        ->check(CLI::IsMember({"sinmix", "linear", "constant", "polynomial", "piecewise"}));
    app.add_option("--xmin", xmin, "Domain start");
    app.add_option("--xmax", xmax, "Domain end");
    app.add_option("--count", count, "Number of samples");
    app.add_option("--noise", noise, "Gaussian noise standard deviation");
    app.add_option("--seed", seed, "Noise seed");
    app.add_option("--slope", slope, "linear/piecewise: slope");
    app.add_option("--intercept", intercept, "linear: intercept; piecewise: value at breakpoint");
    app.add_option("--value", value, "constant: value");
    app.add_option("--coeffs", coeffs, "polynomial: ascending coefficients")->delimiter(',');
    app.add_option("--breakpoint", breakpoint, "piecewise: start of the cubic part");
    app.add_option("--cubic", cubic, "piecewise: cubic coefficient");
  }

  SignalSpec spec() const {
    SignalSpec s = kind == "linear" ? linear_spec(noise, seed) : sinmix_spec(noise, seed);
    if (kind == "linear") s.shape = shape::Linear{slope, intercept};
    if (kind == "constant") s.shape = shape::Constant{value};
    if (kind == "polynomial") s.shape = shape::Polynomial{coeffs};
    if (kind == "piecewise") s.shape = shape::Piecewise{breakpoint, slope, intercept, cubic};
    if (kind == "constant" || kind == "polynomial" || kind == "piecewise") {
      s.xmin = 0.0;
      s.xmax = 10.0;
      s.count = 300;
    }
    if (xmin) s.xmin = *xmin;
    if (xmax) s.xmax = *xmax;
    if (count) s.count = *count;
    return s;
  }
};

void write_to(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  if (list == "all") return {Method::PE, Method::PEAuto, Method::RPE, Method::SSA};
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const auto m = parse_method(name);
    if (!m) throw Error(ErrorCode::InvalidArgument, "unknown method '" + name + "' (pe, pe-auto, rpe, ssa, all)");
    out.push_back(*m);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-squares derivative estimation for sampled series"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Estimate derivatives with one or more methods");
  std::string input;
  std::string methods = "all";
  std::size_t n = 7;
  std::string degree = "2";
  RunConfig config;
  std::string format = "csv";
  std::string metrics_path;
  SignalOptions signal;
  run->add_option("-i,--input", input, "Two-column CSV (x,y); synthetic signal if omitted");
  signal.add_to(*run);
  run->add_option("--methods", methods, "Comma-separated subset of pe,pe-auto,rpe,ssa or 'all'");
  run->add_option("--n", n, "Window half-width (window = 2n+1)");
  run->add_option("--degree", degree, "PE polynomial degree, or 'auto'");
  run->add_option("--check", config.finder.check, "Highest degree tried by the degree finder");
  run->add_option("--epsilon", config.finder.epsilon, "Degree finder relative-error threshold");
  run->add_option("--variance", config.variance, "SSA variance-explained target");
  run->add_option("--passes", config.passes, "RPE smoothing passes");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("-o,--output", config.output_path, "Output file (stdout if omitted)");
  run->add_option("--metrics", metrics_path, "CSV mode: write the metrics block as JSON here");

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic series as x,y CSV");
  SignalOptions gen_signal;
  std::string gen_output;
  std::string truth_output;
  gen_signal.add_to(*gen);
  gen->add_option("-o,--output", gen_output, "Output file (stdout if omitted)");
  gen->add_option("--truth", truth_output, "Also write the analytic derivative as x,y CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      config.methods = parse_methods(methods);
      config.n = n;
      if (degree == "auto") {
        config.degree = std::nullopt;
      } else {
        try {
          config.degree = std::stoi(degree);
        } catch (const std::exception&) {
          throw Error(ErrorCode::InvalidArgument, "--degree must be an integer or 'auto'");
        }
      }
      config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
      if (!input.empty()) {
        config.input = CsvInput{input};
      } else {
        config.input = signal.spec();
      }
      const Report report = run_comparison(config);
      if (config.format == OutputFormat::Json) {
        write_to(config.output_path, report_to_json(report).dump(2) + "\n");
      } else {
        std::ostringstream out;
        write_report_csv(out, report);
        write_to(config.output_path, out.str());
        if (!metrics_path.empty()) {
          const Json metrics = report.metrics ? report_to_json(report)["metrics"] : Json(nullptr);
          write_to(metrics_path, metrics.dump(2) + "\n");
        }
      }
    } else if (*gen) {
      const Signal sig = generate(gen_signal.spec());
      std::ostringstream out;
      write_series_csv(out, sig.series);
      write_to(gen_output, out.str());
      if (!truth_output.empty()) {
        std::ostringstream t;
        write_series_csv(t, Series(std::vector<double>(sig.series.xs().begin(), sig.series.xs().end()), sig.truth));
        write_to(truth_output, t.str());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "lsderiv: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
