#include "ovs/report.hpp"

#include <sstream>

namespace ovs {

using nlohmann::json;

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string rat_display(const Rat& r, int decimals) {
  if (decimals <= 0) return rat_str(r);
  return rat_str(r) + " (" + rat_decimal(r, decimals) + ")";
}

std::string shares_line(const Game& g, const std::vector<Rat>& shares, int decimals) {
  std::string out;
  for (int i = 0; i < g.player_count(); ++i) {
    if (i) out += " ";
    out += g.label(i) + "=" + rat_display(shares[static_cast<std::size_t>(i)], decimals);
  }
  return out;
}

namespace {

std::string joined_labels(const Game& g, const std::vector<int>& players, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < players.size(); ++k) {
    if (k) out += sep;
    out += g.label(players[k]);
  }
  return out;
}

}  // namespace

std::string order_table_csv(const Game& g, const Mechanism& mech, bool long_format, int decimals) {
  std::ostringstream out;
  if (long_format) {
    out << "order,player,share,is_critical,is_marginal";
    if (decimals > 0) out << ",share_dec";
    out << "\n";
    for_each_order_row(g, mech, [&](const OrderRow& row) {
      for (int i = 0; i < g.player_count(); ++i) {
        out << csv_escape(order_label(g, row.order)) << "," << csv_escape(g.label(i)) << ","
            << csv_escape(rat_str(row.alloc.shares[static_cast<std::size_t>(i)])) << ","
            << (row.structure.is_critical(i) ? 1 : 0) << ","
            << (row.structure.marginal && *row.structure.marginal == i ? 1 : 0);
        if (decimals > 0)
          out << "," << rat_decimal(row.alloc.shares[static_cast<std::size_t>(i)], decimals);
        out << "\n";
      }
    });
    return out.str();
  }

  out << "order";
  for (const auto& label : g.labels()) out << "," << csv_escape(label);
  out << ",critical,marginal,mcp,m_prime,sd_total,ew";
  if (decimals > 0) out << ",sd_total_dec,ew_dec";
  out << "\n";
  for_each_order_row(g, mech, [&](const OrderRow& row) {
    out << csv_escape(order_label(g, row.order));
    for (int i = 0; i < g.player_count(); ++i)
      out << "," << csv_escape(rat_str(row.alloc.shares[static_cast<std::size_t>(i)]));
    out << "," << csv_escape(joined_labels(g, row.structure.critical, ","));
    out << "," << (row.structure.marginal ? csv_escape(g.label(*row.structure.marginal)) : "");
    out << "," << csv_escape(joined_labels(g, row.mcp_players, "-"));
    out << "," << (row.structure.marginal ? std::to_string(row.mcp_critical_count) : "");
    out << "," << csv_escape(rat_str(row.sd.total));
    out << "," << (row.ew ? csv_escape(rat_str(*row.ew)) : "");
    if (decimals > 0) {
      out << "," << rat_decimal(row.sd.total, decimals);
      out << "," << (row.ew ? rat_decimal(*row.ew, decimals) : "");
    }
    out << "\n";
  });
  return out.str();
}

json order_table_json(const Game& g, const Mechanism& mech, int decimals) {
  json rows = json::array();
  for_each_order_row(g, mech, [&](const OrderRow& row) {
    json r;
    r["rank"] = row.rank;
    r["order"] = order_label(g, row.order);
    json shares = json::object();
    for (int i = 0; i < g.player_count(); ++i) {
      shares[g.label(i)] = rat_str(row.alloc.shares[static_cast<std::size_t>(i)]);
      if (decimals > 0)
        shares[g.label(i) + "_dec"] =
            rat_decimal(row.alloc.shares[static_cast<std::size_t>(i)], decimals);
    }
    r["shares"] = shares;
    json critical = json::array();
    for (int c : row.structure.critical) critical.push_back(g.label(c));
    r["critical"] = critical;
    r["marginal"] = row.structure.marginal ? json(g.label(*row.structure.marginal)) : json();
    if (row.structure.marginal) {
      r["mcp"] = joined_labels(g, row.mcp_players, "-");
      r["m_prime"] = row.mcp_critical_count;
    }
    r["sd_total"] = rat_str(row.sd.total);
    if (row.ew) r["ew"] = rat_str(*row.ew);
    if (row.alloc.solvability_warning) r["solvability_warning"] = true;
    rows.push_back(std::move(r));
  });
  json out;
  out["mechanism"] = mech.name;
  out["orders"] = std::move(rows);
  return out;
}

std::string property_report_text(const PropertyReport& rep) {
  std::string out = rep.property + ": " + (rep.failed() ? "FAILS" : "holds");
  if (rep.failed() && !rep.counterexample_text.empty())
    out += "\n  counterexample: " + rep.counterexample_text;
  return out;
}

json property_report_json(const PropertyReport& rep) {
  json out;
  out["property"] = rep.property;
  out["mechanism"] = rep.mechanism;
  out["verdict"] = rep.failed() ? "fails" : "holds";
  if (rep.failed()) {
    out["counterexample"] = rep.counterexample;
    out["counterexample_text"] = rep.counterexample_text;
  }
  return out;
}

json metric_report_json(const MetricReport& rep, const Game& g, int decimals,
                        bool include_per_order) {
  json out;
  out["mechanism"] = rep.mechanism;
  out["orders"] = rep.order_count;
  json sv = json::object();
  for (int i = 0; i < g.player_count(); ++i)
    sv[g.label(i)] = rat_str(rep.shapley[static_cast<std::size_t>(i)]);
  out["shapley"] = sv;
  out["expected_sd_total"] = rat_str(rep.expected_sd_total);
  json sdp = json::object();
  for (int i = 0; i < g.player_count(); ++i)
    sdp[g.label(i)] = rat_str(rep.expected_sd_per_player[static_cast<std::size_t>(i)]);
  out["expected_sd_per_player"] = sdp;
  if (rep.expected_ew) out["expected_ew"] = rat_str(*rep.expected_ew);
  out["ew_orders_counted"] = rep.ew_order_count;
  out["ew_convention"] = "orders creating no value are excluded from the EW mean";
  if (decimals > 0) {
    out["expected_sd_total_dec"] = rat_decimal(rep.expected_sd_total, decimals);
    if (rep.expected_ew) out["expected_ew_dec"] = rat_decimal(*rep.expected_ew, decimals);
  }
  if (include_per_order) {
    json rows = json::array();
    for (std::size_t r = 0; r < rep.per_order_sd_total.size(); ++r) {
      json row;
      row["rank"] = r;
      row["sd_total"] = rat_str(rep.per_order_sd_total[r]);
      if (rep.per_order_ew[r]) row["ew"] = rat_str(*rep.per_order_ew[r]);
      rows.push_back(std::move(row));
    }
    out["per_order"] = std::move(rows);
  }
  return out;
}

json sweep_report_json(const SweepReport& rep) {
  json out;
  out["games_checked"] = rep.games_checked;
  out["checks_run"] = rep.checks_run;
  out["all_hold"] = rep.all_hold();
  json failures = json::array();
  for (const SweepFailure& f : rep.failures) {
    json entry;
    entry["game"] = f.game_id;
    entry["bitmap"] = f.bitmap;
    entry["report"] = property_report_json(f.report);
    failures.push_back(std::move(entry));
  }
  out["failures"] = std::move(failures);
  return out;
}

}  // namespace ovs
