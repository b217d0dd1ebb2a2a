#pragma once

// JSON form of a comparison report:
//
//   {
//     "meta":      run configuration echo,
//     "series":    {"x": [...], "y": [...], "truth": [...]?},
//     "estimates": {"<method>": [number | null, ...], ...},
//     "metrics":   {"rmse": {"<method>": number}, "degree_histogram": {"<d>": count}}?
//   }
//
// Undefined margins are null. Method order is preserved.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "lsderiv/error.hpp"
#include "lsderiv/report.hpp"

namespace lsderiv {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json shape_to_json(const Shape& s) {
  struct Visitor {
    Json operator()(const shape::Sinmix&) const { return {{"kind", "sinmix"}}; }
    Json operator()(const shape::Linear& l) const {
      return {{"kind", "linear"}, {"slope", l.slope}, {"intercept", l.intercept}};
    }
    Json operator()(const shape::Constant& c) const { return {{"kind", "constant"}, {"value", c.value}}; }
    Json operator()(const shape::Polynomial& p) const {
      return {{"kind", "polynomial"}, {"coefficients", p.coefficients}};
    }
    Json operator()(const shape::Piecewise& p) const {
      return {{"kind", "piecewise"},
              {"breakpoint", p.breakpoint},
              {"slope", p.slope},
              {"value_at_break", p.value_at_break},
              {"cubic", p.cubic}};
    }
  };
  return std::visit(Visitor{}, s);
}

inline Shape shape_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "sinmix") return shape::Sinmix{};
  if (kind == "linear") return shape::Linear{j.at("slope").get<double>(), j.at("intercept").get<double>()};
  if (kind == "constant") return shape::Constant{j.at("value").get<double>()};
  if (kind == "polynomial") return shape::Polynomial{j.at("coefficients").get<std::vector<double>>()};
  if (kind == "piecewise") {
    return shape::Piecewise{j.at("breakpoint").get<double>(), j.at("slope").get<double>(),
                            j.at("value_at_break").get<double>(), j.at("cubic").get<double>()};
  }
  throw Error(ErrorCode::InvalidSpec, "unknown signal kind '" + kind + "'");
}

inline Json optional_array(std::span<const double> values) {
  Json arr = Json::array();
  for (double v : values) {
    if (is_undefined(v)) {
      arr.push_back(nullptr);
    } else {
      arr.push_back(v);
    }
  }
  return arr;
}

}  // namespace detail

inline Json config_to_json(const RunConfig& c) {
  Json meta;
  if (const auto* csv = std::get_if<CsvInput>(&c.input)) {
    meta["input"] = {{"kind", "csv"}, {"path", csv->path}};
  } else {
    const auto& spec = std::get<SignalSpec>(c.input);
    meta["input"] = {{"kind", "signal"},       {"shape", detail::shape_to_json(spec.shape)},
                     {"xmin", spec.xmin},      {"xmax", spec.xmax},
                     {"count", spec.count},    {"noise", spec.noise_std},
                     {"seed", spec.seed}};
  }
  Json methods = Json::array();
  for (Method m : c.methods) methods.push_back(std::string(method_name(m)));
  meta["methods"] = methods;
  meta["n"] = c.n;
  if (c.degree) {
    meta["degree"] = *c.degree;
  } else {
    meta["degree"] = "auto";
  }
  meta["check"] = c.finder.check;
  meta["epsilon"] = c.finder.epsilon;
  meta["zero_tol"] = c.finder.zero_tol ? Json(*c.finder.zero_tol) : Json(nullptr);
  meta["variance"] = c.variance;
  meta["passes"] = c.passes;
  meta["format"] = c.format == OutputFormat::Json ? "json" : "csv";
  meta["output"] = c.output_path;
  return meta;
}

inline RunConfig config_from_json(const Json& meta) {
  RunConfig c;
  const auto& input = meta.at("input");
  if (input.at("kind") == "csv") {
    c.input = CsvInput{input.at("path").get<std::string>()};
  } else {
    c.input = SignalSpec{detail::shape_from_json(input.at("shape")), input.at("xmin").get<double>(),
                         input.at("xmax").get<double>(),   input.at("count").get<std::size_t>(),
                         input.at("noise").get<double>(),  input.at("seed").get<std::uint64_t>()};
  }
  c.methods.clear();
  for (const auto& name : meta.at("methods")) {
    const auto m = parse_method(name.get<std::string>());
    if (!m) throw Error(ErrorCode::InvalidArgument, "unknown method '" + name.get<std::string>() + "'");
    c.methods.push_back(*m);
  }
  c.n = meta.at("n").get<std::size_t>();
  if (meta.at("degree").is_string()) {
    c.degree = std::nullopt;
  } else {
    c.degree = meta.at("degree").get<int>();
  }
  c.finder.check = meta.at("check").get<int>();
  c.finder.epsilon = meta.at("epsilon").get<double>();
  if (!meta.at("zero_tol").is_null()) c.finder.zero_tol = meta.at("zero_tol").get<double>();
  c.variance = meta.at("variance").get<double>();
  c.passes = meta.at("passes").get<std::size_t>();
  c.format = meta.at("format") == "json" ? OutputFormat::Json : OutputFormat::Csv;
  c.output_path = meta.value("output", std::string{});
  return c;
}

inline Json report_to_json(const Report& r) {
  Json j;
  j["meta"] = config_to_json(r.config);
  j["series"] = {{"x", std::vector<double>(r.series.xs().begin(), r.series.xs().end())},
                 {"y", std::vector<double>(r.series.ys().begin(), r.series.ys().end())}};
  if (r.truth) j["series"]["truth"] = *r.truth;
  Json estimates = Json::object();
  for (const auto& est : r.estimates) estimates[std::string(method_name(est.method))] = detail::optional_array(est.dys);
  j["estimates"] = estimates;
  if (r.metrics) {
    Json rmse = Json::object();
    for (const auto& [m, v] : r.metrics->rmse) rmse[std::string(method_name(m))] = v;
    Json hist = Json::object();
    for (const auto& [d, count] : r.metrics->degree_histogram) hist[std::to_string(d)] = count;
    j["metrics"] = {{"rmse", rmse}, {"degree_histogram", hist}};
  }
  return j;
}

/// Inverse of report_to_json. Defined ranges are recovered from the null margins.
inline Report report_from_json(const Json& j) {
  try {
    Report r;
    r.config = config_from_json(j.at("meta"));
    const auto& s = j.at("series");
    r.series = Series(s.at("x").get<std::vector<double>>(), s.at("y").get<std::vector<double>>());
    if (s.contains("truth")) r.truth = s.at("truth").get<std::vector<double>>();
    for (const auto& [name, values] : j.at("estimates").items()) {
      const auto m = parse_method(name);
      if (!m) throw Error(ErrorCode::InvalidArgument, "unknown method '" + name + "'");
      DerivativeEstimate est;
      est.method = *m;
      est.xs.assign(r.series.xs().begin(), r.series.xs().end());
      std::optional<std::size_t> first;
      std::size_t last = 0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].is_null()) {
          est.dys.push_back(kUndefined);
        } else {
          est.dys.push_back(values[i].get<double>());
          if (!first) first = i;
          last = i + 1;
        }
      }
      est.defined = first ? IndexRange{*first, last} : IndexRange{0, 0};
      r.estimates.push_back(std::move(est));
    }
    if (j.contains("metrics")) {
      Metrics metrics;
      for (const auto& [name, v] : j.at("metrics").at("rmse").items()) {
        metrics.rmse.emplace_back(parse_method(name).value(), v.get<double>());
      }
      for (const auto& [d, count] : j.at("metrics").at("degree_histogram").items()) {
        metrics.degree_histogram[std::stoi(d)] = count.get<std::size_t>();
      }
      r.metrics = std::move(metrics);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed report JSON: ") + e.what());
  } catch (const std::bad_optional_access&) {
    throw Error(ErrorCode::InvalidArgument, "malformed report JSON: unknown method in metrics");
  }
}

}  // namespace lsderiv
