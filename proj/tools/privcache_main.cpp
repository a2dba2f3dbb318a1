// Copyright 2026 The privcache Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "privcache/audit.hpp"
#include "privcache/bounds.hpp"
#include "privcache/errors.hpp"
#include "privcache/mds_a.hpp"
#include "privcache/mds_b.hpp"
#include "privcache/scheme.hpp"
#include "privcache/vu.hpp"

namespace {

using nlohmann::ordered_json;
using namespace privcache;

constexpr int kExitPass = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitParameter = 2;
constexpr int kExitInfeasible = 3;

struct RunConfig {
  std::string scheme;
  int n = 2;
  int k = 2;
  int r = 1;
  int subfile_bytes = 1;
  int subfile_bits = 8;  // symbol width for the XOR-only schemes
  std::string alpha = "1/2";
  std::string first;   // share components
  std::string second;
  int first_r = 1;
  int second_r = 1;
  std::uint64_t seed = 0;
  std::string demand;
  std::string output;
  int grid = 512;
  std::uint64_t trials = 100;
  std::string audit_mode = "exact";
  std::string colluders;
  bool table = false;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PRIVCACHE_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
  return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

std::vector<int> parse_demand(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

// Lemma-level (M, R) formulas per scheme, for `point`.
std::pair<Rational, Rational> formula_point(const std::string& scheme, int n, int k, int r) {
  if (scheme == "trivial") return {rat(0), rat(n)};
  if (scheme == "vu") {
    const auto points = thm1_points(n, k);
    if (r < 0 || r >= static_cast<int>(points.size())) {
      throw ParameterError("point: r outside [0, NK-K+1]");
    }
    return {points[r].memory, points[r].rate};
  }
  if (scheme == "mds-a") {
    if (n > k) throw ParameterError("mds-a: requires N <= K");
    return {rat(1, k + 1), rat(static_cast<std::int64_t>(k) * n, k + 1)};
  }
  if (scheme == "mds-b") {
    if (n < 3) throw ParameterError("mds-b: requires N >= 3");
    if (n > k) throw ParameterError("mds-b: requires N <= K");
    return {rat(n, static_cast<std::int64_t>(k + 1) * (n - 1)),
            rat(static_cast<std::int64_t>(k) * n - 1, k + 1)};
  }
  throw ParameterError("point: unknown scheme '" + scheme + "'");
}

std::int64_t scheme_unit_bits(const std::string& scheme, const RunConfig& cfg) {
  if (scheme == "trivial") return cfg.subfile_bits;
  if (scheme == "vu") {
    const VuParams p{cfg.n, cfg.k, cfg.first_r, 1, cfg.subfile_bits};
    return static_cast<std::int64_t>(p.subfile_count()) * cfg.subfile_bits;
  }
  if (scheme == "mds-a") {
    const MdsAParams p{cfg.n, cfg.k, 1};
    return static_cast<std::int64_t>(p.code_dim()) * p.field().m;
  }
  if (scheme == "mds-b") {
    const MdsBParams p{cfg.n, cfg.k, 1};
    return static_cast<std::int64_t>(p.code_dim()) * p.field().m;
  }
  throw ParameterError("share: unknown component scheme '" + scheme + "'");
}

std::shared_ptr<PrivateScheme> make_component(const std::string& scheme, const RunConfig& cfg,
                                              int r, int length_multiplier) {
  if (scheme == "trivial") {
    return std::make_shared<TrivialScheme>(cfg.n, cfg.k, length_multiplier, cfg.subfile_bits);
  }
  if (scheme == "vu") {
    return std::make_shared<VuScheme>(
        VuParams{cfg.n, cfg.k, r, length_multiplier, cfg.subfile_bits});
  }
  if (scheme == "mds-a") {
    return std::make_shared<MdsAScheme>(MdsAParams{cfg.n, cfg.k, length_multiplier});
  }
  if (scheme == "mds-b") {
    return std::make_shared<MdsBScheme>(MdsBParams{cfg.n, cfg.k, length_multiplier});
  }
  throw ParameterError("unknown scheme '" + scheme + "'");
}

std::shared_ptr<PrivateScheme> make_scheme(const RunConfig& cfg) {
  if (cfg.scheme == "share") {
    if (cfg.first.empty() || cfg.second.empty()) {
      throw ParameterError("share: --first and --second component schemes required");
    }
    const Rational alpha = parse_rational(cfg.alpha);
    if (alpha == rat(0)) {
      return make_component(cfg.second, cfg, cfg.second_r, cfg.subfile_bytes);
    }
    if (alpha == rat(1)) {
      return make_component(cfg.first, cfg, cfg.first_r, cfg.subfile_bytes);
    }
    RunConfig first_cfg = cfg;
    first_cfg.first_r = cfg.first_r;
    RunConfig second_cfg = cfg;
    second_cfg.first_r = cfg.second_r;
    const auto [a, b] = solve_share_lengths(scheme_unit_bits(cfg.first, first_cfg),
                                            scheme_unit_bits(cfg.second, second_cfg), alpha);
    return std::make_shared<CombinedScheme>(
        make_component(cfg.first, cfg, cfg.first_r, static_cast<int>(a) * cfg.subfile_bytes),
        make_component(cfg.second, cfg, cfg.second_r, static_cast<int>(b) * cfg.subfile_bytes),
        alpha);
  }
  if (cfg.scheme == "vu") {
    return make_component("vu", cfg, cfg.r, cfg.subfile_bytes);
  }
  return make_component(cfg.scheme, cfg, cfg.r, cfg.subfile_bytes);
}

int cmd_point(const RunConfig& cfg) {
  Rational memory, rate;
  if (cfg.scheme == "share") {
    const Rational alpha = parse_rational(cfg.alpha);
    const auto [m1, r1] = formula_point(cfg.first, cfg.n, cfg.k, cfg.first_r);
    const auto [m2, r2] = formula_point(cfg.second, cfg.n, cfg.k, cfg.second_r);
    memory = alpha * m1 + (rat(1) - alpha) * m2;
    rate = alpha * r1 + (rat(1) - alpha) * r2;
  } else {
    std::tie(memory, rate) = formula_point(cfg.scheme, cfg.n, cfg.k, cfg.r);
  }
  std::cout << "M=" << to_string(memory) << " R=" << to_string(rate) << " (M=" << to_decimal(memory)
            << " R=" << to_decimal(rate) << ")\n";
  return kExitPass;
}

void emit_series(std::ostream& out, const std::string& series, const TradeoffCurve& curve,
                 const std::vector<Rational>& grid) {
  // Breakpoints carry their provenance tag; grid samples are interpolated.
  std::vector<std::pair<Rational, std::pair<Rational, std::string>>> rows;
  for (const auto& bp : curve.breakpoints) {
    rows.push_back({bp.memory, {bp.rate, bp.prior_work ? "prior-work formula" : bp.source}});
  }
  for (const Rational& m : grid) {
    const auto value = curve.evaluate(m);
    if (!value) continue;
    bool is_breakpoint = false;
    for (const auto& bp : curve.breakpoints) {
      if (bp.memory == m) is_breakpoint = true;
    }
    if (is_breakpoint) continue;
    rows.push_back({m, {*value, "interpolated"}});
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [m, rv] : rows) {
    out << to_decimal(m) << "," << to_decimal(rv.first) << "," << series << "," << rv.second
        << "\n";
  }
}

int cmd_curve(const RunConfig& cfg) {
  const int n = cfg.n, k = cfg.k;
  std::vector<Rational> grid;
  for (int i = 0; i <= cfg.grid; ++i) grid.push_back(rat(static_cast<std::int64_t>(i) * n, cfg.grid));

  std::ostringstream out;
  out << "M,R,series,valid\n";
  emit_series(out, "thm1", lower_envelope(thm1_points(n, k)), grid);
  if (n <= k) {
    emit_series(out, "thm2", lower_envelope(thm2_points(n, k)), grid);
  }
  emit_series(out, "grk", lower_envelope(grk_points(n, k)), grid);
  emit_series(out, "ach_lce", achievable_envelope(n, k), grid);
  for (const Rational& m : grid) {
    out << to_decimal(m) << "," << to_decimal(max_converse(n, k, m)) << ",conv_max,converse\n";
  }
  for (const Rational& m : grid) {
    const OptimalValue v = optimal_curve(n, k, m);
    out << to_decimal(m) << "," << to_decimal(v.rate) << ",optimal," << v.region << "\n";
  }

  if (cfg.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(cfg.output);
    if (!file) throw ParameterError("curve: cannot open output file " + cfg.output);
    file << out.str();
  }
  return kExitPass;
}

ordered_json rates_json(const MeasuredRates& rates) {
  ordered_json j;
  j["file_bits"] = rates.file_bits;
  j["cache_payload_bits"] = rates.cache_payload_bits;
  j["cache_total_bits"] = rates.cache_total_bits;
  j["packet_payload_bits"] = rates.packet_payload_bits;
  j["packet_total_bits"] = rates.packet_total_bits;
  j["payload_M"] = to_string(rates.payload_memory());
  j["payload_R"] = to_string(rates.payload_rate());
  return j;
}

int cmd_simulate(const RunConfig& cfg) {
  const auto scheme = make_scheme(cfg);
  std::vector<int> demand;
  if (cfg.demand.empty()) {
    for (int i = 0; i < scheme->num_users(); ++i) demand.push_back(i % scheme->num_files());
  } else {
    demand = parse_demand(cfg.demand);
  }
  RngSource lib = RngSource::derive(cfg.seed, 1);
  RngSource rnd = RngSource::derive(cfg.seed, 2);
  const SchemeRound round = scheme->run(demand, lib, rnd);

  ordered_json j;
  j["schema_version"] = 1;
  j["scheme"] = scheme->name();
  for (const auto& [key, value] : scheme->params()) j["params"][key] = value;
  j["seed"] = cfg.seed;
  j["demand"] = demand;
  j["measured"] = rates_json(round.rates);
  j["payload_segments"] = round.packet_payload.size();
  j["decode_ok"] = round.decode_ok;
  j["all_decoded"] = round.all_decoded();
  if (!round.decode_detail.empty()) j["decode_detail"] = round.decode_detail;
  if (cfg.table) {
    ordered_json table = ordered_json::array();
    for (std::size_t i = 0; i < round.packet_payload.size(); ++i) {
      ordered_json row;
      row["segment"] = i;
      row["composition"] = round.packet_labels[i];
      ordered_json symbols = ordered_json::array();
      for (Symbol s : round.packet_payload[i]) symbols.push_back(s);
      row["symbols"] = symbols;
      table.push_back(row);
    }
    j["packet_table"] = table;
  }
  std::cout << j.dump(2) << "\n";
  return round.all_decoded() ? kExitPass : kExitAuditFail;
}

ordered_json report_json(const AuditReport& report) {
  ordered_json j;
  j["schema_version"] = 1;
  j["scheme"] = report.scheme;
  for (const auto& [key, value] : report.params) j["params"][key] = value;
  j["seed"] = report.seed;
  j["mode"] = report.mode;
  ordered_json checks = ordered_json::array();
  for (const auto& check : report.checks) {
    ordered_json c;
    c["name"] = check.name;
    c["pass"] = check.pass;
    c["metric"] = check.metric;
    c["detail"] = check.detail;
    checks.push_back(c);
  }
  j["checks"] = checks;
  j["pass"] = report.pass();
  return j;
}

int cmd_audit(const std::string& kind, const RunConfig& cfg) {
  RunConfig scheme_cfg = cfg;
  if ((cfg.audit_mode == "exact" || kind == "colluding") && cfg.subfile_bits == 8 &&
      cfg.scheme == "vu") {
    scheme_cfg.subfile_bits = 1;  // exact enumeration needs bit-sized subfiles
  }
  const auto scheme = make_scheme(scheme_cfg);

  AuditReport report;
  if (kind == "correctness") {
    report = audit_correctness(*scheme, static_cast<int>(cfg.trials), cfg.seed);
  } else if (kind == "colluding") {
    if (cfg.colluders.empty()) throw ParameterError("audit colluding: --colluders required");
    report = audit_colluding(*scheme, parse_demand(cfg.colluders));
  } else if (kind == "privacy") {
    if (cfg.audit_mode == "exact") {
      report = audit_privacy_exact(*scheme);
    } else if (cfg.audit_mode == "rank") {
      report = audit_privacy_rank(*scheme, static_cast<int>(std::max<std::uint64_t>(1, cfg.trials)),
                                  cfg.seed);
    } else if (cfg.audit_mode == "aux-exact") {
      report = audit_privacy_aux(*scheme, AuxMode::kExact, 0, cfg.seed);
    } else if (cfg.audit_mode == "aux-statistical") {
      report = audit_privacy_aux(*scheme, AuxMode::kStatistical, cfg.trials, cfg.seed);
    } else {
      throw ParameterError("audit privacy: unknown --audit-mode '" + cfg.audit_mode + "'");
    }
  } else {
    throw ParameterError("audit: unknown kind '" + kind + "'");
  }
  report.seed = cfg.seed;
  std::cout << report_json(report).dump(2) << "\n";
  return report.pass() ? kExitPass : kExitAuditFail;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream file(path);
  if (!file) throw ParameterError("config: cannot open " + path);
  ordered_json j = ordered_json::parse(file);
  auto set_int = [&](const char* key, int& target) {
    if (j.contains(key)) target = j[key].get<int>();
  };
  auto set_str = [&](const char* key, std::string& target) {
    if (j.contains(key)) target = j[key].get<std::string>();
  };
  set_str("scheme", cfg.scheme);
  set_int("n", cfg.n);
  set_int("k", cfg.k);
  set_int("r", cfg.r);
  set_int("subfile_bytes", cfg.subfile_bytes);
  set_int("subfile_bits", cfg.subfile_bits);
  set_str("alpha", cfg.alpha);
  set_str("first", cfg.first);
  set_str("second", cfg.second);
  set_int("first_r", cfg.first_r);
  set_int("second_r", cfg.second_r);
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  set_str("demand", cfg.demand);
  set_str("output", cfg.output);
  set_int("grid", cfg.grid);
  if (j.contains("trials")) cfg.trials = j["trials"].get<std::uint64_t>();
  set_str("audit_mode", cfg.audit_mode);
  set_str("colluders", cfg.colluders);
  if (j.contains("table")) cfg.table = j["table"].get<bool>();
}

void add_common_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--scheme", cfg.scheme, "vu | mds-a | mds-b | trivial | share");
  app->add_option("--n", cfg.n, "number of files");
  app->add_option("--k", cfg.k, "number of users");
  app->add_option("--r", cfg.r, "virtual-user parameter r");
  app->add_option("--subfile-bytes", cfg.subfile_bytes, "payload symbols per subfile");
  app->add_option("--subfile-bits", cfg.subfile_bits, "symbol width for XOR-only schemes");
  app->add_option("--alpha", cfg.alpha, "memory-sharing fraction (rational, e.g. 1/2)");
  app->add_option("--first", cfg.first, "first share component");
  app->add_option("--second", cfg.second, "second share component");
  app->add_option("--first-r", cfg.first_r, "r of the first share component");
  app->add_option("--second-r", cfg.second_r, "r of the second share component");
  app->add_option("--seed", cfg.seed, "RNG seed (default: PRIVCACHE_SEED or 0)");
  app->add_option("--demand", cfg.demand, "comma-separated demand vector");
  app->add_option("--output", cfg.output, "write output to a file instead of stdout");
  app->add_option("--grid", cfg.grid, "curve grid sample count");
  app->add_option("--trials", cfg.trials, "trial / draw count for audits");
  app->add_option("--audit-mode", cfg.audit_mode, "exact | rank | aux-exact | aux-statistical");
  app->add_option("--colluders", cfg.colluders, "comma-separated colluder set");
  app->add_flag("--table", cfg.table, "include the packet structure table");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  cfg.seed = default_seed();

  // A flat JSON config file provides defaults; explicit flags override it.
  std::string config_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }

  CLI::App app{"demand-private coded caching schemes, audits and tradeoff curves"};
  app.add_option("--config", config_path, "flat JSON config file (flags override)");
  CLI::App* point = app.add_subcommand("point", "closed-form (M, R) of one scheme");
  CLI::App* curve = app.add_subcommand("curve", "tradeoff curve CSV for (N, K)");
  CLI::App* simulate = app.add_subcommand("simulate", "run one placement/delivery/decode round");
  CLI::App* audit = app.add_subcommand("audit", "run a machine audit");
  CLI::App* audit_corr = audit->add_subcommand("correctness", "decode audit");
  CLI::App* audit_priv = audit->add_subcommand("privacy", "privacy audit");
  CLI::App* audit_coll = audit->add_subcommand("colluding", "colluding-privacy audit");
  for (CLI::App* sub : {point, curve, simulate, audit_corr, audit_priv, audit_coll}) {
    add_common_options(sub, cfg);
  }
  app.require_subcommand(1);

  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitParameter;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitParameter;
  }

  try {
    if (*point) return cmd_point(cfg);
    if (*curve) return cmd_curve(cfg);
    if (*simulate) return cmd_simulate(cfg);
    if (*audit_corr) return cmd_audit("correctness", cfg);
    if (*audit_priv) return cmd_audit("privacy", cfg);
    if (*audit_coll) return cmd_audit("colluding", cfg);
    std::cerr << "no subcommand\n";
    return kExitParameter;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitParameter;
  }
}
