#include "ovs/game.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ovs {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

Rat value_from_json(const json& v, const std::string& key) {
  if (v.is_number_integer()) return Rat(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_float())
    fail("non-numeric value for coalition '" + key +
         "': floating point literals are not exact, write \"p/q\" instead");
  fail("non-numeric value for coalition '" + key + "'");
}

std::string coalition_key(const Game& g, std::uint32_t mask) {
  std::string key;
  for (int i = 0; i < g.player_count(); ++i) {
    if (!((mask >> i) & 1u)) continue;
    if (!key.empty()) key += ",";
    key += g.label(i);
  }
  return key;
}

}  // namespace

std::vector<int> PlayerSet::members() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

Game::Game(std::vector<std::string> labels, std::vector<Rat> values)
    : n_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      values_(std::move(values)) {
  if (n_ > 16) fail("too many players (" + std::to_string(n_) + "), limit is 16");
  for (int i = 0; i + 1 < n_; ++i)
    if (labels_[i] >= labels_[i + 1]) fail("labels must be sorted and unique");
  for (const auto& l : labels_)
    if (l.empty()) fail("empty player label");
  if (values_.size() != (1u << n_)) fail("value table must have 2^n entries");
  if (values_[0] != 0) fail("value for the empty coalition must be 0");
  for (const auto& v : values_)
    if (v < 0) fail("negative coalition value");
  Game& self = *this;
  monotone_ = is_monotone(self);
  zero_one_ = is_zero_one(self);
}

int Game::player_index(const std::string& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) fail("unknown player label '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

bool is_monotone(const Game& g) {
  const std::uint32_t full = (1u << g.player_count()) - 1u;
  for (std::uint32_t mask = 0; mask <= full; ++mask)
    for (int i = 0; i < g.player_count(); ++i) {
      if ((mask >> i) & 1u) continue;
      if (g.value_mask(mask | (1u << i)) < g.value_mask(mask)) return false;
    }
  return true;
}

bool is_zero_one(const Game& g) {
  for (const auto& v : g.values())
    if (v != 0 && v != 1) return false;
  return true;
}

ArrivalOrder ArrivalOrder::of(std::vector<int> sequence) {
  const int n = static_cast<int>(sequence.size());
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    int p = sequence[static_cast<std::size_t>(k)];
    if (p < 0 || p >= n) fail("order entry out of range");
    if (pos[static_cast<std::size_t>(p)] != -1) fail("player appears twice in order");
    pos[static_cast<std::size_t>(p)] = k;
  }
  ArrivalOrder o;
  o.seq_ = std::move(sequence);
  o.pos_ = std::move(pos);
  return o;
}

ArrivalOrder ArrivalOrder::from_labels(const Game& g, const std::vector<std::string>& labels) {
  if (static_cast<int>(labels.size()) != g.player_count())
    fail("order must list all " + std::to_string(g.player_count()) + " players");
  std::vector<int> seq;
  seq.reserve(labels.size());
  for (const auto& l : labels) seq.push_back(g.player_index(l));
  return of(std::move(seq));
}

PlayerSet ArrivalOrder::prefix_set(int k) const {
  PlayerSet s;
  for (int j = 0; j < k; ++j) s = s.with(seq_[static_cast<std::size_t>(j)]);
  return s;
}

Game game_from_minimal(const std::vector<std::string>& labels,
                       const std::vector<std::vector<std::string>>& minimal_winning,
                       std::vector<std::string>* warnings) {
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i] == sorted[i + 1]) fail("duplicate player label '" + sorted[i] + "'");

  auto index_of = [&](const std::string& l) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), l);
    if (it == sorted.end() || *it != l) fail("unknown player label '" + l + "' in coalition");
    return static_cast<int>(it - sorted.begin());
  };

  std::vector<std::uint32_t> minimal;
  for (const auto& coalition : minimal_winning) {
    std::uint32_t mask = 0;
    for (const auto& l : coalition) mask |= 1u << index_of(l);
    if (mask == 0) fail("value for the empty coalition must be 0 (empty minimal coalition listed)");
    minimal.push_back(mask);
  }
  if (warnings) {
    for (std::size_t a = 0; a < minimal.size(); ++a)
      for (std::size_t b = 0; b < minimal.size(); ++b) {
        if (a == b) continue;
        if ((minimal[a] & ~minimal[b]) == 0) {
          warnings->push_back("minimal winning list is not an antichain: coalition #" +
                              std::to_string(b + 1) + " contains coalition #" +
                              std::to_string(a + 1));
        }
      }
  }

  const int n = static_cast<int>(sorted.size());
  if (n > 16) fail("too many players (" + std::to_string(n) + "), limit is 16");
  std::vector<Rat> values(1u << n, Rat(0));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
    for (std::uint32_t m : minimal)
      if ((m & ~mask) == 0) {
        values[mask] = 1;
        break;
      }
  return Game(std::move(sorted), std::move(values));
}

Game parse_game(const nlohmann::json& doc, std::vector<std::string>* warnings) {
  if (!doc.is_object()) fail("game document must be a JSON object");
  if (!doc.contains("players") || !doc["players"].is_array()) fail("missing \"players\" array");
  std::vector<std::string> labels;
  for (const auto& p : doc["players"]) {
    if (!p.is_string()) fail("player labels must be strings");
    labels.push_back(p.get<std::string>());
  }
  if (labels.empty()) fail("game needs at least one player");
  if (labels.size() > 16) fail("too many players (" + std::to_string(labels.size()) + "), limit is 16");

  const std::string form = doc.value("form", std::string());
  if (form == "minimal") {
    if (!doc.contains("minimal_winning") || !doc["minimal_winning"].is_array())
      fail("form \"minimal\" requires a \"minimal_winning\" array");
    std::vector<std::vector<std::string>> coalitions;
    for (const auto& c : doc["minimal_winning"]) {
      if (!c.is_array()) fail("each minimal winning coalition must be an array of labels");
      std::vector<std::string> labels_in;
      for (const auto& l : c) labels_in.push_back(l.get<std::string>());
      coalitions.push_back(std::move(labels_in));
    }
    return game_from_minimal(labels, coalitions, warnings);
  }
  if (form == "table") {
    if (!doc.contains("table") || !doc["table"].is_object())
      fail("form \"table\" requires a \"table\" object");
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i] == sorted[i + 1]) fail("duplicate player label '" + sorted[i] + "'");
    const int n = static_cast<int>(sorted.size());
    std::vector<Rat> values(1u << n, Rat(0));
    Game skeleton(sorted, values);  // for key building / index lookup

    std::vector<bool> seen(1u << n, false);
    for (const auto& [key, val] : doc["table"].items()) {
      std::uint32_t mask = 0;
      std::stringstream ss(key);
      std::string part;
      while (std::getline(ss, part, ','))
        if (!part.empty()) mask |= 1u << skeleton.player_index(part);
      if (seen[mask]) fail("coalition '" + key + "' listed twice in table");
      seen[mask] = true;
      values[mask] = value_from_json(val, key);
    }
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
      if (!seen[mask])
        fail("table is missing coalition '" + coalition_key(skeleton, mask) + "'");
    if (values[0] != 0) fail("value for the empty coalition must be 0");
    return Game(std::move(sorted), std::move(values));
  }
  fail("\"form\" must be \"minimal\" or \"table\"");
}

Game parse_game_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) fail("cannot open game file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail("invalid JSON in '" + path + "': " + e.what());
  }
  return parse_game(doc, warnings);
}

LocalGame local_game(const Game& g, const ArrivalOrder& order, int k) {
  if (k < 0 || k > g.player_count()) fail("prefix length out of range");
  PlayerSet prefix = order.prefix_set(k);
  std::vector<int> to_global = prefix.members();
  std::vector<std::string> labels;
  labels.reserve(to_global.size());
  for (int gi : to_global) labels.push_back(g.label(gi));

  std::vector<Rat> values(1u << k, Rat(0));
  for (std::uint32_t lm = 0; lm < (1u << k); ++lm) {
    std::uint32_t gm = 0;
    for (int li = 0; li < k; ++li)
      if ((lm >> li) & 1u) gm |= 1u << to_global[static_cast<std::size_t>(li)];
    values[lm] = g.value_mask(gm);
  }

  std::vector<int> local_seq;
  local_seq.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    int gi = order.at(j);
    auto it = std::lower_bound(to_global.begin(), to_global.end(), gi);
    local_seq.push_back(static_cast<int>(it - to_global.begin()));
  }
  return LocalGame{Game(std::move(labels), std::move(values)),
                   ArrivalOrder::of(std::move(local_seq)), prefix, std::move(to_global)};
}

std::vector<std::pair<int, int>> symmetric_players(const Game& g) {
  const int n = g.player_count();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::uint32_t avoid = (1u << i) | (1u << j);
      bool symmetric = true;
      for (std::uint32_t mask = 0; mask < (1u << n) && symmetric; ++mask) {
        if (mask & avoid) continue;
        if (g.value_mask(mask | (1u << i)) != g.value_mask(mask | (1u << j))) symmetric = false;
      }
      if (symmetric) pairs.emplace_back(i, j);
    }
  return pairs;
}

std::vector<PlayerSet> minimal_winning_coalitions(const Game& g) {
  std::vector<PlayerSet> out;
  const std::uint32_t full = (1u << g.player_count()) - 1u;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (g.value_mask(mask) != 1) continue;
    bool minimal = true;
    for (int i = 0; i < g.player_count() && minimal; ++i)
      if (((mask >> i) & 1u) && g.value_mask(mask & ~(1u << i)) == 1) minimal = false;
    if (minimal) out.emplace_back(mask);
  }
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

void for_each_order(int n, const std::function<void(const ArrivalOrder&)>& fn) {
  std::vector<int> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 0);
  do {
    fn(ArrivalOrder::of(seq));
  } while (std::next_permutation(seq.begin(), seq.end()));
}

std::uint64_t order_rank(const ArrivalOrder& order) {
  const int n = order.size();
  std::uint64_t rank = 0;
  for (int k = 0; k < n; ++k) {
    int smaller = 0;
    for (int j = k + 1; j < n; ++j)
      if (order.at(j) < order.at(k)) ++smaller;
    rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - k);
  }
  return rank;
}

ArrivalOrder order_from_rank(int n, std::uint64_t rank) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> seq;
  for (int k = n; k >= 1; --k) {
    std::uint64_t f = factorial(k - 1);
    std::size_t idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    seq.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return ArrivalOrder::of(std::move(seq));
}

std::string order_label(const Game& g, const ArrivalOrder& order) {
  std::string out;
  for (int k = 0; k < order.size(); ++k) {
    if (k) out += "-";
    out += g.label(order.at(k));
  }
  return out;
}

}  // namespace ovs
