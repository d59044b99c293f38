// labcli: command-line front end for the maximal-function laboratory.
// Exit codes: 0 success, 1 failed scenario assertions, 2 usage/config errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "maxlab/exponents.hpp"
#include "maxlab/measures.hpp"
#include "maxlab/report.hpp"
#include "maxlab/scenarios.hpp"

using namespace maxlab;

namespace {

json point_json(const ExponentPoint& p) {
  return json{{"x", rat_str(p.x)}, {"y", rat_str(p.y)}};
}

MeasureSpec measure_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot open measure file " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return measure_from_json(nlohmann::json::parse(text));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxlab laboratory CLI"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads (default 1)");

  // exponents
  auto* exp_cmd = app.add_subcommand("exponents", "critical exponents and region vertices");
  std::string e_a, e_b = "1", e_delta;
  int e_d = 2;
  exp_cmd->add_option("--d", e_d, "ambient dimension")->required();
  exp_cmd->add_option("--a", e_a, "decay exponent a (rational)")->required();
  exp_cmd->add_option("--b", e_b, "Frostman exponent b (rational)")->required();
  exp_cmd->add_option("--delta", e_delta, "dispersive exponent delta (rational)");

  // region classify
  auto* region_cmd = app.add_subcommand("region", "region membership queries");
  auto* classify_cmd = region_cmd->add_subcommand("classify", "classify (x, y) against Delta");
  std::string c_a, c_b, c_delta, c_x, c_y;
  int c_d = 2;
  bool c_hull = false;
  classify_cmd->add_option("--d", c_d)->required();
  classify_cmd->add_option("--a", c_a)->required();
  classify_cmd->add_option("--b", c_b)->required();
  classify_cmd->add_option("--delta", c_delta);
  classify_cmd->add_option("--x", c_x, "first coordinate 1/p (rational)")->required();
  classify_cmd->add_option("--y", c_y, "second coordinate 1/q (rational)")->required();
  classify_cmd->add_flag("--hull", c_hull, "classify against hull(Delta, R) instead");

  // decay-fit / frostman-fit
  auto* decay_cmd = app.add_subcommand("decay-fit", "fit the Fourier decay exponent");
  std::string d_measure;
  int d_jlo = 4, d_jhi = 10;
  decay_cmd->add_option("--measure", d_measure, "measure JSON (inline or @file)")->required();
  decay_cmd->add_option("--j-lo", d_jlo, "first dyadic shell");
  decay_cmd->add_option("--j-hi", d_jhi, "last dyadic shell");

  auto* frost_cmd = app.add_subcommand("frostman-fit", "fit the Frostman exponent");
  std::string f_measure;
  int f_klo = 2, f_khi = 8;
  frost_cmd->add_option("--measure", f_measure, "measure JSON (inline or @file)")->required();
  frost_cmd->add_option("--k-lo", f_klo, "first dyadic radius 2^{-k}");
  frost_cmd->add_option("--k-hi", f_khi, "last dyadic radius 2^{-k}");

  // scenario list / run
  auto* scen_cmd = app.add_subcommand("scenario", "reproducible experiments");
  auto* list_cmd = scen_cmd->add_subcommand("list", "list registered scenarios");
  auto* run_cmd = scen_cmd->add_subcommand("run", "run one scenario");
  std::string r_id, r_config, r_out;
  run_cmd->add_option("id", r_id, "scenario id")->required();
  run_cmd->add_option("--config", r_config, "JSON config file (merged over defaults)");
  run_cmd->add_option("--out", r_out, "directory for <id>.json and <id>.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    worker_threads() = threads;

    if (*exp_cmd) {
      ExponentParams p{e_d, parse_rat(e_a), parse_rat(e_b),
                       e_delta.empty() ? std::optional<Rat>{} : parse_rat(e_delta)};
      json out;
      out["p_a"] = rat_str(critical_p_a(p.a));
      out["p_ab"] = rat_str(critical_p_ab(p));
      out["p_ab_less_than_p_a"] = p_ab_less_than_p_a(p);
      Vertices v = vertices_OPQ(p);
      out["vertices"] = json{{"O", point_json(v.O)}, {"P", point_json(v.P)},
                             {"Q", point_json(v.Q)}};
      if (p.delta) {
        PointRResult r = point_R(p);
        out["point_R"] = point_json(r.R);
        out["point_R_case"] = r.kind == PointRResult::Case::R1
                                  ? "R1"
                                  : (r.kind == PointRResult::Case::R2 ? "R2" : "degenerate");
      }
      std::cout << canonical_dump(out) << "\n";
      return 0;
    }

    if (*classify_cmd) {
      ExponentParams p{c_d, parse_rat(c_a), parse_rat(c_b),
                       c_delta.empty() ? std::optional<Rat>{} : parse_rat(c_delta)};
      ExponentPoint pt{parse_rat(c_x), parse_rat(c_y)};
      RegionClassification r = c_hull ? classify_in_hull(pt, p) : classify_in_delta(pt, p);
      json out;
      out["region"] = c_hull ? "hull" : "delta";
      out["status"] = r.status == RegionStatus::interior
                          ? "interior"
                          : (r.status == RegionStatus::boundary ? "boundary" : "exterior");
      if (r.status == RegionStatus::boundary) out["boundary"] = r.boundary_label;
      std::cout << canonical_dump(out) << "\n";
      return 0;
    }

    if (*decay_cmd || *frost_cmd) {
      bool decay = static_cast<bool>(*decay_cmd);
      MeasureSpec s = measure_arg(decay ? d_measure : f_measure);
      SlopeFit fit = decay ? fit_decay_exponent(s, d_jlo, d_jhi)
                           : fit_frostman_exponent(s, f_klo, f_khi);
      json out;
      out["measure"] = detail::measure_cfg(s);
      out[decay ? "decay_fit" : "frostman_fit"] = fit_to_json(fit);
      std::cout << canonical_dump(out) << "\n";
      return 0;
    }

    if (*list_cmd) {
      for (const auto& s : scenario_registry())
        std::cout << s.id << "  " << s.title << "\n";
      return 0;
    }

    if (*run_cmd) {
      json cfg = json::object();
      if (!r_config.empty()) {
        std::ifstream in(r_config);
        if (!in) throw std::invalid_argument("cannot open config " + r_config);
        cfg = json::parse(in);
      }
      if (!cfg.contains("workers")) cfg["workers"] = threads;
      auto tic = std::chrono::steady_clock::now();
      Report rep = run_scenario(r_id, cfg);
      std::chrono::duration<double> wall = std::chrono::steady_clock::now() - tic;
      if (!r_out.empty()) {
        std::ofstream jf(r_out + "/" + r_id + ".json", std::ios::binary);
        std::ofstream cf(r_out + "/" + r_id + ".csv", std::ios::binary);
        if (!jf || !cf) throw std::invalid_argument("cannot write into " + r_out);
        jf << rep.to_json();
        cf << rep.to_csv();
      } else {
        std::cout << rep.to_json();
      }
      for (const auto& a : rep.assertions)
        std::cerr << (a.pass ? "PASS " : "FAIL ") << a.name << ": " << a.detail << "\n";
      // wall time is diagnostic only; it never enters the canonical report bytes
      std::cerr << "wall_time_seconds " << wall.count() << "\n";
      return rep.passed() ? 0 : 1;
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
