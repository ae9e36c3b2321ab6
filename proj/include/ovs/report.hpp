#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ovs/analysis.hpp"

namespace ovs {

// RFC-4180 style quoting; only quotes when needed.
std::string csv_escape(const std::string& field);
std::vector<std::string> parse_csv_line(const std::string& line);

// "A=2/3 B=1/6 C=1/6", with decimal hints appended when decimals > 0.
std::string shares_line(const Game& g, const std::vector<Rat>& shares, int decimals = 0);
std::string rat_display(const Rat& r, int decimals = 0);

// Full n!-order table. Wide layout: one row per order with share columns,
// critical set, marginal player, minimal critical prefix, SD and EW; long
// layout: one row per (order, player) with is_critical / is_marginal flags.
std::string order_table_csv(const Game& g, const Mechanism& mech, bool long_format,
                            int decimals = 0);
nlohmann::json order_table_json(const Game& g, const Mechanism& mech, int decimals = 0);

std::string property_report_text(const PropertyReport& rep);
nlohmann::json property_report_json(const PropertyReport& rep);

nlohmann::json metric_report_json(const MetricReport& rep, const Game& g, int decimals = 0,
                                  bool include_per_order = false);

nlohmann::json sweep_report_json(const SweepReport& rep);

}  // namespace ovs
