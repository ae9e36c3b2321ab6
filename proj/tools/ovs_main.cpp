// Command line front end: load a game document, inspect its structure, run
// value-sharing mechanisms per order or over all orders, verify fairness and
// incentive properties by exhaustive enumeration, compare mechanisms, and
// decompose general monotone games into 0-1 layers.
//
// Exit codes: 0 success / all properties hold, 1 property failure,
// 2 input error, 3 size-guard refusal.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ovs/analysis.hpp"
#include "ovs/game.hpp"
#include "ovs/mechanisms.hpp"
#include "ovs/report.hpp"
#include "ovs/shapley.hpp"
#include "ovs/structure.hpp"

namespace {

using nlohmann::json;
using namespace ovs;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitSizeGuard = 3;

struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void guard_order_enumeration(const Game& g) {
  if (g.player_count() > 8)
    throw SizeGuardError("order enumeration needs n <= 8, game has " +
                         std::to_string(g.player_count()) + " players");
}

Game load_game(const std::string& path) {
  std::vector<std::string> warnings;
  Game g = parse_game_file(path, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  return g;
}

std::vector<Rat> parse_weight_list(const std::string& csv) {
  std::vector<Rat> weights;
  std::stringstream ss(csv);
  std::string part;
  while (std::getline(ss, part, ',')) weights.push_back(parse_rat(part));
  return weights;
}

// Selector strings: rfc | evs | wvs (with --weights). The remaining names are
// diagnostic policies used by verify/compare/sweep demonstrations.
Mechanism select_mechanism(const std::string& name, const std::string& weights_csv,
                           const Rat& epsilon) {
  const bool has_weights = !weights_csv.empty();
  if (name == "wvs" && !has_weights)
    throw std::runtime_error("mechanism 'wvs' requires --weights");
  if (name != "wvs" && has_weights)
    throw std::runtime_error("--weights is only meaningful with --mechanism wvs");
  if (name == "rfc") return make_rfc();
  if (name == "evs") return make_evs();
  if (name == "wvs") return make_wvs(WeightFunction::make(parse_weight_list(weights_csv)));
  if (name == "equal-split") return make_equal_split();
  if (name == "first-arrival") return make_first_arrival();
  if (name == "last-arrival") return make_last_arrival();
  if (name == "table-policy") return make_null_player_table_policy(epsilon);
  throw std::runtime_error("unknown mechanism '" + name + "'");
}

// compare takes entries like "evs", "rfc", "wvs:1:1/2:1/4".
Mechanism select_compare_entry(const std::string& entry, const Rat& epsilon) {
  auto colon = entry.find(':');
  if (colon == std::string::npos) return select_mechanism(entry, "", epsilon);
  std::string name = entry.substr(0, colon);
  if (name != "wvs") throw std::runtime_error("only wvs takes inline weights, got '" + entry + "'");
  std::string weights = entry.substr(colon + 1);
  for (char& c : weights)
    if (c == ':') c = ',';
  return make_wvs(WeightFunction::make(parse_weight_list(weights)));
}

std::string normalize_format(std::string format) {
  if (format == "json-like") return "json";
  if (format != "text" && format != "json" && format != "csv")
    throw std::runtime_error("unknown format '" + format + "'");
  return format;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(part);
  return out;
}

// --- subcommand payloads ----------------------------------------------------

struct Options {
  std::string game_path;
  std::string mechanism = "evs";
  std::string weights;
  std::string order;
  std::string format = "text";
  std::string table_format = "csv";  // the table contract is CSV by default
  std::string properties = "efficiency,oir,sf,i4ea,mos,critical_support,solvable";
  std::string epsilon = "1/10";
  std::string mechanisms_entries;  // compare
  std::string apply;               // decompose
  std::string counterexample_path = "sweep_counterexamples.json";
  bool long_table = false;
  bool strict_i4ea = false;
  bool include_unsolvable = false;
  int decimals = 0;
  int sweep_n = 3;
  int sample = 200;
  std::uint64_t seed = 1;
};

int cmd_shapley(const Options& opt) {
  Game g = load_game(opt.game_path);
  ShapleyVector sv = shapley_subset(g);
  bool both = g.player_count() <= 8;
  if (both) {
    if (shapley_permutation(g) != sv)
      throw std::runtime_error("internal oracle disagreement");  // unreachable by construction
  } else {
    std::cerr << "note: n > 8, permutation oracle skipped (subset form only)\n";
  }
  const std::string format = normalize_format(opt.format);
  if (format == "json") {
    json out;
    json values = json::object();
    for (int i = 0; i < g.player_count(); ++i) {
      values[g.label(i)] = rat_str(sv[static_cast<std::size_t>(i)]);
      if (opt.decimals > 0)
        values[g.label(i) + "_dec"] = rat_decimal(sv[static_cast<std::size_t>(i)], opt.decimals);
    }
    out["shapley"] = values;
    out["oracles_checked"] = both;
    std::cout << out.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "player,shapley\n";
    for (int i = 0; i < g.player_count(); ++i)
      std::cout << csv_escape(g.label(i)) << "," << rat_str(sv[static_cast<std::size_t>(i)])
                << "\n";
  } else {
    std::cout << shares_line(g, sv, opt.decimals) << "\n";
  }
  return kExitOk;
}

int cmd_structure(const Options& opt) {
  Game g = load_game(opt.game_path);
  ArrivalOrder order = ArrivalOrder::from_labels(g, split_list(opt.order));
  OrderStructure st = order_structure(g, order);
  if (normalize_format(opt.format) == "json") {
    json out;
    out["order"] = order_label(g, order);
    out["value_created"] = st.value_created;
    json critical = json::array();
    for (int j : st.critical) critical.push_back(g.label(j));
    out["critical"] = critical;
    if (st.marginal) {
      out["marginal"] = g.label(*st.marginal);
      MinimalCriticalPrefix mcp = minimal_critical_prefix(g, order);
      std::string prefix;
      for (int j : mcp.prefix_players) prefix += (prefix.empty() ? "" : "-") + g.label(j);
      out["mcp"] = prefix;
      out["m_prime"] = mcp.local_critical_count;
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "order: " << order_label(g, order) << "\n";
  if (!st.marginal) {
    std::cout << "no value created\n";
    return kExitOk;
  }
  std::cout << "marginal: " << g.label(*st.marginal) << "\ncritical:";
  for (int j : st.critical) std::cout << " " << g.label(j);
  MinimalCriticalPrefix mcp = minimal_critical_prefix(g, order);
  std::cout << "\nmcp:";
  for (int j : mcp.prefix_players) std::cout << " " << g.label(j);
  std::cout << "\nm_prime: " << mcp.local_critical_count << "\n";
  return kExitOk;
}

int cmd_solvable(const Options& opt) {
  Game g = load_game(opt.game_path);
  Solvability s = is_solvable(g);
  if (normalize_format(opt.format) == "json") {
    json out;
    out["solvable"] = s.solvable;
    if (s.witness) {
      json w;
      w["player"] = g.label(s.witness->player);
      json coalition = json::array();
      for (int i : s.witness->coalition.members()) coalition.push_back(g.label(i));
      w["coalition"] = coalition;
      out["witness"] = w;
    }
    std::cout << out.dump(2) << "\n";
  } else if (s.solvable) {
    std::cout << "solvable\n";
  } else {
    std::cout << "unsolvable: player " << g.label(s.witness->player)
              << " can become the unique critical player of coalition {";
    bool first = true;
    for (int i : s.witness->coalition.members()) {
      if (!first) std::cout << ",";
      std::cout << g.label(i);
      first = false;
    }
    std::cout << "}\n";
  }
  return s.solvable ? kExitOk : kExitPropertyFailure;
}

int cmd_run(const Options& opt) {
  Game g = load_game(opt.game_path);
  ArrivalOrder order = ArrivalOrder::from_labels(g, split_list(opt.order));
  Mechanism mech = make_layered(select_mechanism(opt.mechanism, opt.weights, parse_rat(opt.epsilon)));
  OnlineTrace trace = online_run(g, order, mech);
  OrderStructure st = g.zero_one() && g.monotone() ? order_structure(g, order) : OrderStructure{};

  if (normalize_format(opt.format) == "json") {
    json steps = json::array();
    for (const OnlineStep& step : trace.steps) {
      json s;
      s["arrives"] = g.label(step.arriving);
      json shares = json::object();
      for (int i = 0; i < g.player_count(); ++i)
        shares[g.label(i)] = rat_str(step.cumulative.shares[static_cast<std::size_t>(i)]);
      s["cumulative"] = shares;
      if (step.cumulative.solvability_warning) s["solvability_warning"] = true;
      steps.push_back(std::move(s));
    }
    json out;
    out["mechanism"] = mech.name;
    out["order"] = order_label(g, order);
    out["steps"] = std::move(steps);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }

  std::cout << "mechanism: " << mech.name << "\norder: " << order_label(g, order) << "\n";
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const OnlineStep& step = trace.steps[k];
    std::cout << "step " << (k + 1) << ": +" << g.label(step.arriving);
    if (st.marginal && *st.marginal == step.arriving) std::cout << " [marginal]";
    else if (st.is_critical(step.arriving)) std::cout << " [critical]";
    std::cout << " | " << shares_line(g, step.cumulative.shares, opt.decimals);
    if (step.cumulative.solvability_warning) std::cout << " | WARNING: game is not solvable";
    std::cout << "\n";
  }
  std::cout << "final: " << shares_line(g, trace.steps.back().cumulative.shares, opt.decimals)
            << "\n";
  return kExitOk;
}

void require_zero_one_game(const Game& g, const std::string& command) {
  if (!g.zero_one() || !g.monotone())
    throw std::runtime_error(command +
                             " needs a 0-1 monotone game (critical players and EW are only "
                             "defined there); use decompose/run for general games");
}

int cmd_table(const Options& opt) {
  Game g = load_game(opt.game_path);
  guard_order_enumeration(g);
  require_zero_one_game(g, "table");
  Mechanism mech = make_layered(select_mechanism(opt.mechanism, opt.weights, parse_rat(opt.epsilon)));
  const std::string format = normalize_format(opt.table_format);
  if (format == "json") {
    std::cout << order_table_json(g, mech, opt.decimals).dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << order_table_csv(g, mech, opt.long_table, opt.decimals);
  } else {
    for_each_order_row(g, mech, [&](const OrderRow& row) {
      std::cout << order_label(g, row.order) << " | "
                << shares_line(g, row.alloc.shares, opt.decimals) << " | critical:";
      for (int j : row.structure.critical) std::cout << " " << g.label(j);
      if (row.structure.marginal) {
        std::cout << " | marginal: " << g.label(*row.structure.marginal) << " | mcp:";
        for (int j : row.mcp_players) std::cout << " " << g.label(j);
        std::cout << " (m'=" << row.mcp_critical_count << ")";
      }
      std::cout << " | sd=" << rat_display(row.sd.total, opt.decimals);
      if (row.ew) std::cout << " ew=" << rat_display(*row.ew, opt.decimals);
      if (row.alloc.solvability_warning) std::cout << " | WARNING: game is not solvable";
      std::cout << "\n";
    });
  }
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  Game g = load_game(opt.game_path);
  guard_order_enumeration(g);
  Mechanism mech = make_layered(select_mechanism(opt.mechanism, opt.weights, parse_rat(opt.epsilon)));
  const bool zero_one = g.zero_one() && g.monotone();
  const bool solvable = zero_one ? is_solvable(g).solvable : true;
  const std::string format = normalize_format(opt.format);

  std::string properties = opt.properties;
  if (!zero_one && properties == Options{}.properties) {
    // critical-player notions need a 0-1 monotone game; general monotone
    // games keep the layer-compatible checks
    properties = "efficiency,oir,sf,i4ea,mos";
  }

  bool any_failed = false;
  json reports = json::array();
  auto emit = [&](const PropertyReport& rep) {
    any_failed = any_failed || rep.failed();
    reports.push_back(property_report_json(rep));
    if (format != "json") std::cout << property_report_text(rep) << "\n";
  };

  for (const std::string& property : split_list(properties)) {
    if (property == "solvable") {
      Solvability s = is_solvable(g);
      PropertyReport rep{"solvable", mech.name,
                         s.solvable ? Verdict::holds : Verdict::fails, "", nullptr};
      if (!s.solvable) {
        rep.counterexample_text = "player " + g.label(s.witness->player) +
                                  " can delay to become the unique critical player";
        json coalition = json::array();
        for (int i : s.witness->coalition.members()) coalition.push_back(g.label(i));
        rep.counterexample = {{"player", g.label(s.witness->player)}, {"coalition", coalition}};
      }
      emit(rep);
      continue;
    }
    if (property == "critical_support" && !solvable) {
      if (format != "json") std::cout << "critical_support: skipped (game is unsolvable)\n";
      continue;
    }
    PropertyReport rep;
    if (property == "efficiency") rep = check_efficiency(g, mech);
    else if (property == "oir") rep = check_oir(g, mech);
    else if (property == "sf") rep = check_sf(g, mech);
    else if (property == "i4ea") rep = check_i4ea(g, mech, opt.strict_i4ea);
    else if (property == "mos") rep = check_mos(g, mech);
    else if (property == "critical_support") rep = check_critical_support(g, mech);
    else if (property == "critical_monotonicity") rep = check_critical_monotonicity(g, mech);
    else throw std::runtime_error("unknown property '" + property + "'");
    emit(rep);
  }
  if (format == "json") std::cout << reports.dump(2) << "\n";
  return any_failed ? kExitPropertyFailure : kExitOk;
}

int cmd_compare(const Options& opt) {
  Game g = load_game(opt.game_path);
  guard_order_enumeration(g);
  require_zero_one_game(g, "compare");
  std::vector<Mechanism> mechs;
  for (const std::string& entry : split_list(opt.mechanisms_entries))
    mechs.push_back(make_layered(select_compare_entry(entry, parse_rat(opt.epsilon))));
  if (mechs.size() < 2) throw std::runtime_error("--mechanisms needs at least two entries");

  MechanismComparison cmp = compare_mechanisms(g, mechs);
  if (normalize_format(opt.format) == "json") {
    json out;
    json reports = json::array();
    for (const MetricReport& rep : cmp.reports)
      reports.push_back(metric_report_json(rep, g, opt.decimals));
    out["mechanisms"] = std::move(reports);
    out["ew_strictly_below"] = cmp.ew_strictly_below;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }

  for (const MetricReport& rep : cmp.reports) {
    std::cout << rep.mechanism << ": expected_sd=" << rat_display(rep.expected_sd_total, opt.decimals);
    if (rep.expected_ew)
      std::cout << " expected_ew=" << rat_display(*rep.expected_ew, opt.decimals);
    std::cout << "\n";
  }
  std::cout << "per-order EW dominance (orders where row < column):\n";
  for (std::size_t a = 0; a < mechs.size(); ++a) {
    std::cout << "  " << cmp.reports[a].mechanism << ":";
    for (std::size_t b = 0; b < mechs.size(); ++b) std::cout << " " << cmp.ew_strictly_below[a][b];
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_decompose(const Options& opt) {
  Game g = load_game(opt.game_path);
  LayerDecomposition dec = decompose_layers(g);
  if (normalize_format(opt.format) == "json") {
    json layers = json::array();
    for (const auto& [coeff, layer] : dec.layers) {
      json l;
      l["coefficient"] = rat_str(coeff);
      l["minimal_winning"] = minimal_winning_id(layer);
      layers.push_back(std::move(l));
    }
    json out;
    out["layers"] = std::move(layers);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << dec.layers.size() << " layer(s)\n";
    for (std::size_t k = 0; k < dec.layers.size(); ++k)
      std::cout << "layer " << (k + 1) << ": coefficient " << rat_str(dec.layers[k].first)
                << ", minimal winning " << minimal_winning_id(dec.layers[k].second) << "\n";
  }
  if (!opt.apply.empty()) {
    if (opt.order.empty()) throw std::runtime_error("--apply requires --order");
    ArrivalOrder order = ArrivalOrder::from_labels(g, split_list(opt.order));
    Mechanism mech = make_layered(select_mechanism(opt.apply, opt.weights, parse_rat(opt.epsilon)));
    Allocation a = general_allocate(g, order, mech);
    std::cout << "allocation (" << mech.name << ", " << order_label(g, order)
              << "): " << shares_line(g, a.shares, opt.decimals) << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const Options& opt) {
  if (opt.sweep_n > 5)
    throw SizeGuardError("sweep supports n <= 4 exhaustive and n = 5 sampled");
  const bool sampled = opt.sweep_n == 5;
  std::vector<EnumeratedGame> games =
      sampled ? sample_zero_one_monotone_games(5, opt.sample, opt.seed, !opt.include_unsolvable)
              : enumerate_zero_one_monotone_games(opt.sweep_n);
  if (!sampled && !opt.include_unsolvable)
    std::erase_if(games, [](const EnumeratedGame& e) { return !e.solvable; });

  Mechanism mech = select_mechanism(opt.mechanism, opt.weights, parse_rat(opt.epsilon));
  std::vector<std::string> properties = split_list(opt.properties);
  std::erase_if(properties, [&](const std::string& p) {
    return p == "solvable" || (p == "critical_support" && opt.include_unsolvable);
  });

  std::cout << "sweep: n=" << opt.sweep_n << " mode=" << (sampled ? "sampled" : "exhaustive")
            << " seed=" << opt.seed << " games=" << games.size() << " mechanism=" << mech.name
            << " strict_i4ea=" << (opt.strict_i4ea ? "yes" : "no") << "\n";
  SweepReport report = run_property_sweep(games, mech, properties, opt.strict_i4ea);
  std::cout << "checked " << report.checks_run << " property checks on " << report.games_checked
            << " games: " << (report.all_hold() ? "all hold" : "FAILURES") << "\n";
  for (const SweepFailure& f : report.failures)
    std::cout << "  " << f.game_id << ": " << property_report_text(f.report) << "\n";
  if (!report.all_hold()) {
    std::ofstream out(opt.counterexample_path);
    out << sweep_report_json(report).dump(2) << "\n";
    std::cout << "counterexample corpus written to " << opt.counterexample_path << "\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online value-sharing mechanisms for 0-1 monotone cooperative games"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_game = true) {
    if (needs_game)
      cmd->add_option("--game", opt.game_path, "game document (JSON)")->required();
    cmd->add_option("--format", opt.format, "text | json-like | csv");
    cmd->add_option("--decimals", opt.decimals, "append rounded decimals (display only)");
  };
  auto add_mechanism = [&](CLI::App* cmd) {
    cmd->add_option("--mechanism", opt.mechanism, "rfc | evs | wvs");
    cmd->add_option("--weights", opt.weights, "comma-separated rationals for wvs, e.g. 1,1,1/2");
    cmd->add_option("--epsilon", opt.epsilon, "epsilon for the table policy");
  };

  CLI::App* shapley = app.add_subcommand("shapley", "exact Shapley values from both oracles");
  add_common(shapley);

  CLI::App* structure = app.add_subcommand("structure", "marginal/critical players and the MCP");
  add_common(structure);
  structure->add_option("--order", opt.order, "comma-separated labels")->required();

  CLI::App* solvable = app.add_subcommand("solvable", "solvability classification with witness");
  add_common(solvable);

  CLI::App* run = app.add_subcommand("run", "online trace of one arrival order");
  add_common(run);
  run->add_option("--order", opt.order, "comma-separated labels")->required();
  add_mechanism(run);

  CLI::App* table = app.add_subcommand("table", "full n!-order table (CSV by default)");
  table->add_option("--game", opt.game_path, "game document (JSON)")->required();
  table->add_option("--format", opt.table_format, "csv | json-like | text");
  table->add_option("--decimals", opt.decimals, "append rounded decimals (display only)");
  add_mechanism(table);
  table->add_flag("--long", opt.long_table, "one row per (order, player)");

  CLI::App* verify = app.add_subcommand("verify", "verify properties by enumeration");
  add_common(verify);
  add_mechanism(verify);
  verify->add_option("--properties", opt.properties, "comma-separated property list");
  verify->add_flag("--strict-i4ea", opt.strict_i4ea, "audit mode: check all delayed positions");

  CLI::App* compare = app.add_subcommand("compare", "expected SD / EW across mechanisms");
  add_common(compare);
  compare->add_option("--mechanisms", opt.mechanisms_entries,
                      "comma-separated, wvs with inline weights as wvs:1:1/2")
      ->required();
  compare->add_option("--epsilon", opt.epsilon, "epsilon for the table policy");

  CLI::App* decompose = app.add_subcommand("decompose", "threshold layers of a monotone game");
  add_common(decompose);
  decompose->add_option("--apply", opt.apply, "mechanism to run on the layers");
  decompose->add_option("--order", opt.order, "order for --apply");
  decompose->add_option("--weights", opt.weights, "weights when --apply wvs");
  decompose->add_option("--epsilon", opt.epsilon, "epsilon for the table policy");

  CLI::App* sweep = app.add_subcommand("sweep", "property sweep over enumerated games");
  sweep->add_option("--n", opt.sweep_n, "player count (<=4 exhaustive, 5 sampled)")->required();
  add_mechanism(sweep);
  sweep->add_option("--properties", opt.properties, "comma-separated property list");
  sweep->add_option("--seed", opt.seed, "sample seed");
  sweep->add_option("--sample", opt.sample, "sample size at n=5");
  sweep->add_flag("--strict-i4ea", opt.strict_i4ea, "audit mode i4ea");
  sweep->add_flag("--include-unsolvable", opt.include_unsolvable, "keep unsolvable games");
  sweep->add_option("--counterexamples", opt.counterexample_path, "failure corpus path");
  sweep->add_option("--format", opt.format, "text | json-like | csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (shapley->parsed()) return cmd_shapley(opt);
    if (structure->parsed()) return cmd_structure(opt);
    if (solvable->parsed()) return cmd_solvable(opt);
    if (run->parsed()) return cmd_run(opt);
    if (table->parsed()) return cmd_table(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (compare->parsed()) return cmd_compare(opt);
    if (decompose->parsed()) return cmd_decompose(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
  } catch (const SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return kExitSizeGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
