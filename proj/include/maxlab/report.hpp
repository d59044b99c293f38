#pragma once
// Canonical scenario reports: JSON + CSV emission with byte-stable formatting.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "fit.hpp"
#include "rational.hpp"

namespace maxlab {

using json = nlohmann::ordered_json;

// 17 significant digits: enough to round-trip any double, and a fixed width
// for byte-identical reports.
inline std::string fmt_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json fit_to_json(const SlopeFit& f) {
  json j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["stderr_slope"] = f.stderr_slope;
  j["window_lo"] = f.window_lo;
  j["window_hi"] = f.window_hi;
  j["n_points"] = f.n_points;
  return j;
}

// Serialize with doubles in %.17g form; object keys keep insertion order.
inline void canonical_dump(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        canonical_dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        canonical_dump(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += fmt_g17(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

inline std::string canonical_dump(const json& j) {
  std::string out;
  canonical_dump(j, out);
  return out;
}

inline constexpr const char* kReportVersion = "maxlab-0.1.0";

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string scenario;
  json config = json::object();   // echo of the effective configuration
  json results = json::object();  // fits and scalar outcomes
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;  // one row per sweep point
  std::vector<Assertion> assertions;

  void check(const std::string& name, bool pass, const std::string& detail) {
    assertions.push_back({name, pass, detail});
  }
  // |value - target| <= tol, with a detail string spelling the comparison out.
  void check_near(const std::string& name, double value, double target, double tol) {
    bool ok = std::abs(value - target) <= tol;
    check(name, ok, fmt_g17(value) + " vs " + fmt_g17(target) + " +- " + fmt_g17(tol));
  }
  bool passed() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }

  std::string to_json() const {
    json j;
    j["version"] = kReportVersion;
    j["scenario"] = scenario;
    j["config"] = config;
    j["results"] = results;
    json as = json::array();
    for (const auto& a : assertions)
      as.push_back(json{{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
    j["assertions"] = as;
    j["pass"] = passed();
    return canonical_dump(j) + "\n";
  }

  std::string to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < csv_header.size(); ++i) {
      if (i) out += ',';
      out += csv_header[i];
    }
    out += '\n';
    for (const auto& row : csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
};

}  // namespace maxlab
