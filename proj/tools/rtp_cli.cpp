// rtp: build triangles and sequences, run positivity checks, write JSON reports.
//
// Exit codes: 0 all checks pass, 1 some check failed (the report is still
// written), 2 malformed input, 3 domain error.

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rtp/report.hpp"

namespace {

using rtp::Json;

struct Common {
  std::string target;
  std::string seq;
  std::string series;
  std::string era_g, era_f;
  std::vector<std::string> binds;
  std::string realization;
  int order = -1;
  unsigned minor_order = 2;
  bool json = false;
  std::string out;
};

void add_target_options(CLI::App* app, Common& c) {
  app->add_option("family", c.target, "Catalog family name");
  app->add_option("--seq", c.seq, "Comma-separated rational sequence");
  app->add_option("--series", c.series, "Series expression in t; coefficients form the sequence");
  app->add_option("--g", c.era_g, "Exponential Riordan array: g(t)");
  app->add_option("--f", c.era_f, "Exponential Riordan array: f(t)");
  app->add_option("--bind", c.binds, "Parameter binding name=rational or name=sym (repeatable)");
  app->add_option("--realization", c.realization, "recurrence | era | formula | oracle");
  app->add_option("--order", c.order, "Truncation order N");
}

void add_output_options(CLI::App* app, Common& c) {
  app->add_option("--minor-order,-r", c.minor_order, "Largest minor order r");
  app->add_flag("--json", c.json, "Print the JSON report");
  app->add_option("--out", c.out, "Also write the JSON report to this file");
}

Json parse_value(const std::string& v) {
  if (v == "sym" || v == "symbolic") return "sym";
  rtp::parse_rational(v);
  return v;
}

Json bindings_json(const Common& c) {
  Json b = Json::object();
  for (const auto& s : c.binds) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw rtp::parse_error("--bind expects name=value, got '" + s + "'");
    b[s.substr(0, eq)] = parse_value(s.substr(eq + 1));
  }
  return b;
}

Json target_task(const Common& c) {
  Json task = Json::object();
  int chosen = !c.target.empty() + !c.seq.empty() + !c.series.empty() + (!c.era_g.empty() || !c.era_f.empty());
  if (chosen != 1) throw rtp::parse_error("name exactly one target: a family, --seq, --series, or --g/--f");
  if (!c.target.empty()) {
    task["family"] = c.target;
    const Json binds = bindings_json(c);
    for (const auto& [k, v] : binds.items()) task[k] = v;
    if (!c.realization.empty()) task["realization"] = c.realization;
  } else if (!c.seq.empty()) {
    Json s = Json::array();
    std::stringstream ss(c.seq);
    for (std::string item; std::getline(ss, item, ',');) {
      rtp::parse_rational(item);
      s.push_back(item);
    }
    task["sequence"] = s;
  } else if (!c.series.empty()) {
    task["series"] = c.series;
    task["bindings"] = bindings_json(c);
  } else {
    if (c.era_g.empty() || c.era_f.empty()) throw rtp::parse_error("--g and --f go together");
    task["era"] = {{"g", c.era_g}, {"f", c.era_f}};
    task["bindings"] = bindings_json(c);
  }
  if (c.order >= 0 && !task.contains("sequence")) task["N"] = c.order;
  return task;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rtp::parse_error("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw rtp::parse_error(path + ": " + e.what());
  }
}

// Polynomials print as expressions; everything else as compact JSON.
std::string render(const Json& j) {
  if (j.is_object() && j.contains("terms")) return rtp::to_string(rtp::poly_from_json(j));
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + render(j[i]);
    return out + "]";
  }
  return j.dump();
}

void print_text(const Json& report) {
  for (const auto& task : report.at("tasks")) {
    std::cout << "task " << task.at("index").get<std::size_t>() << ": " << task.at("target").dump() << "\n";
    if (task.contains("data"))
      for (const auto& [key, rows] : task.at("data").items()) {
        std::cout << "  " << key << ":\n";
        for (const auto& row : rows) std::cout << "    " << render(row) << "\n";
      }
    for (const auto& check : task.at("checks"))
      for (const auto& cert : check.at("certificates")) {
        std::cout << "  " << cert.at("property").get<std::string>() << " " << cert.at("size").at(0) << "x" << cert.at("size").at(1)
                  << " r=" << cert.at("r") << ": " << cert.at("verdict").get<std::string>();
        if (cert.contains("witness")) {
          const auto& w = cert.at("witness");
          std::cout << " rows=" << w.at("rows").dump() << " cols=" << w.at("cols").dump() << " value=" << render(w.at("value"));
        }
        for (const auto& [k, v] : cert.at("bindings").items()) std::cout << " " << k << "=" << v.get<std::string>();
        std::cout << "\n";
      }
  }
  const auto& s = report.at("summary");
  std::cout << "summary: " << s.at("failed") << " of " << s.at("certificates") << " certificates failed\n";
}

int emit(const rtp::JobRun& run, const Common& c) {
  const std::string text = run.report.dump(2) + "\n";
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw rtp::parse_error("cannot write " + c.out);
    f << text;
  }
  if (c.json)
    std::cout << text;
  else
    print_text(run.report);
  return run.all_pass ? rtp::kExitPass : rtp::kExitCheckFailed;
}

int run_task(Json task, Json checks, Json emit_items, const Common& c) {
  task["checks"] = std::move(checks);
  if (!emit_items.empty()) task["emit"] = std::move(emit_items);
  return emit(rtp::run_job(task), c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total positivity toolkit for Riordan arrays and their row polynomials"};
  app.require_subcommand(1);

  Common c;
  bool coeffwise = false, reciprocal = false, scaled = false, verify_realizations = false;
  unsigned window = 0, klc = 0, size = 0;
  std::string schedule, xs, job_path, revalidate_path;
  unsigned branches = 0;

  auto* triangle = app.add_subcommand("triangle", "Print a triangle and its row polynomials");
  add_target_options(triangle, c);
  add_output_options(triangle, c);
  triangle->add_flag("--verify", verify_realizations, "Cross-validate all realizations of a family");

  auto* tpcheck = app.add_subcommand("tpcheck", "Check minors of a triangle up to order r");
  add_target_options(tpcheck, c);
  add_output_options(tpcheck, c);
  tpcheck->add_flag("--coeffwise", coeffwise, "Coefficientwise positivity of polynomial minors");
  tpcheck->add_option("--size", size, "Leading size x size block");

  auto* hankel = app.add_subcommand("hankel", "Check the Hankel matrix of a sequence or of row polynomials");
  add_target_options(hankel, c);
  add_output_options(hankel, c);
  hankel->add_flag("--coeffwise", coeffwise, "Coefficientwise positivity of polynomial minors");
  hankel->add_flag("--reciprocal", reciprocal, "Use the reversed row polynomials");
  hankel->add_option("--window", window, "Sweep every window x window Hankel block");
  hankel->add_option("--size", size, "Hankel size");
  hankel->add_option("--klogconvex,-k", klc, "Also check k-log-convexity");

  auto* toeplitz = app.add_subcommand("toeplitz", "Check the Toeplitz matrix of a sequence (Polya frequency)");
  add_target_options(toeplitz, c);
  add_output_options(toeplitz, c);
  toeplitz->add_option("--size", size, "Toeplitz size");

  auto* prodmat = app.add_subcommand("prodmat", "Production matrix of an exponential Riordan array and its identity");
  add_target_options(prodmat, c);
  add_output_options(prodmat, c);
  prodmat->add_flag("--scaled", scaled, "Use the k!-scaled array");

  auto* cf = app.add_subcommand("cf", "Expand a branched continued fraction");
  add_output_options(cf, c);
  cf->add_option("--schedule", schedule, "sheffer | sheffer_star | lah | lah_star | hankel-thm-v, or comma-separated coefficients")->required();
  cf->add_option("--m", branches, "Branching m for explicit coefficients");
  cf->add_option("--xs", xs, "Comma-separated x_i");
  cf->add_option("--bind", c.binds, "Parameter binding name=rational or name=sym (repeatable)");
  cf->add_option("--order", c.order, "Truncation order N");

  auto* conv = app.add_subcommand("conv", "Probe whether a triangle preserves Stieltjes moment sequences");
  add_target_options(conv, c);
  add_output_options(conv, c);
  conv->add_option("--size", size, "Hankel size N+1 (the triangle needs 2N+1 rows)");

  auto* verify = app.add_subcommand("verify", "Run a JSON job file");
  verify->add_option("job", job_path, "Job file")->required();
  verify->add_option("--revalidate", revalidate_path, "Re-derive every failing witness of this report");
  verify->add_flag("--json", c.json, "Print the JSON report");
  verify->add_option("--out", c.out, "Also write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rtp::kExitParseError;
  }

  try {
    const Json no_emit = Json::array();
    auto kind = [&](const std::string& base) { return coeffwise ? "coeffwise-" + base : base; };
    auto with_size = [&](Json check) {
      if (size) check["size"] = size;
      return check;
    };
    if (*triangle) {
      Json checks = Json::array();
      if (verify_realizations) checks.push_back({{"kind", "realizations"}});
      return run_task(target_task(c), checks, Json::array({"triangle", "row_polys"}), c);
    }
    if (*tpcheck) return run_task(target_task(c), Json::array({with_size({{"kind", kind("tp")}, {"r", c.minor_order}})}), no_emit, c);
    if (*hankel) {
      Json check = with_size({{"kind", kind("hankel")}, {"r", c.minor_order}, {"reciprocal", reciprocal}});
      if (window) check["window"] = window;
      Json checks = Json::array({check});
      if (klc) checks.push_back({{"kind", "klogconvex"}, {"k", klc}, {"reciprocal", reciprocal}});
      return run_task(target_task(c), checks, no_emit, c);
    }
    if (*toeplitz) return run_task(target_task(c), Json::array({with_size({{"kind", "toeplitz"}, {"r", c.minor_order}})}), no_emit, c);
    if (*prodmat)
      return run_task(target_task(c), Json::array({{{"kind", "production"}, {"scaled", scaled}}}), Json::array({"production_matrix"}), c);
    if (*cf) {
      Json desc = Json::object();
      bool named = schedule.find(',') == std::string::npos && !schedule.empty() && !std::isdigit(static_cast<unsigned char>(schedule[0])) &&
                   schedule[0] != '-';
      if (named) {
        desc["schedule"] = schedule;
      } else {
        Json alpha = Json::array();
        std::stringstream ss(schedule);
        for (std::string item; std::getline(ss, item, ',');) alpha.push_back(parse_value(item));
        desc["schedule"] = alpha;
        desc["m"] = branches;
      }
      if (!xs.empty()) {
        Json xj = Json::array();
        std::stringstream ss(xs);
        for (std::string item; std::getline(ss, item, ',');) xj.push_back(parse_value(item));
        desc["xs"] = xj;
      }
      Json task{{"cf", desc}, {"bindings", bindings_json(c)}};
      if (c.order >= 0) task["N"] = c.order;
      Json checks = Json::array();
      if (named) checks.push_back({{"kind", "cf-agreement"}});
      return run_task(task, checks, Json::array({"sequence"}), c);
    }
    if (*conv) return run_task(target_task(c), Json::array({with_size({{"kind", "sm-probe"}, {"r", c.minor_order}})}), no_emit, c);
    if (*verify) {
      Json job = read_json_file(job_path);
      if (!revalidate_path.empty()) {
        auto res = rtp::revalidate_report(job, read_json_file(revalidate_path));
        for (const auto& p : res.problems) std::cout << p << "\n";
        std::cout << "revalidated " << res.confirmed << " of " << res.checked << " failing witnesses\n";
        return res.ok() ? rtp::kExitPass : rtp::kExitCheckFailed;
      }
      return emit(rtp::run_job(job), c);
    }
  } catch (const rtp::parse_error& e) {
    std::cerr << "rtp: parse error: " << e.what() << "\n";
    return rtp::kExitParseError;
  } catch (const Json::exception& e) {
    std::cerr << "rtp: parse error: " << e.what() << "\n";
    return rtp::kExitParseError;
  } catch (const rtp::domain_error& e) {
    std::cerr << "rtp: domain error: " << e.what() << "\n";
    return rtp::kExitDomainError;
  } catch (const rtp::consistency_error& e) {
    std::cerr << "rtp: inconsistent realizations: " << e.what() << "\n";
    return rtp::kExitDomainError;
  }
  return rtp::kExitParseError;
}
