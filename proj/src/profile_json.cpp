#include <cmath>
#include <fstream>

#include "mtm/profile_io.hpp"

namespace mtm {

using nlohmann::json;

namespace {

std::string key_string(const TransitionKey& key) {
  return key.from.to_string() + ">" + key.to.to_string();
}

TransitionKey parse_key(const std::string& text) {
  const auto sep = text.find('>');
  if (sep == std::string::npos) throw ProfileFormatError("bad transition key '" + text + "'");
  return {MotifCode::parse(text.substr(0, sep)), MotifCode::parse(text.substr(sep + 1))};
}

void check_key(const TransitionKey& key) {
  if (key.to.size() != key.from.size() + 1 || !key.from.is_prefix_of(key.to)) {
    throw ProfileFormatError("transition " + key_string(key) +
                             " does not append one event to its source");
  }
}

}  // namespace

json profile_to_json(const TransitionProfile& p) {
  json doc;
  doc["format"] = kProfileFormat;
  doc["version"] = kProfileVersion;
  doc["params"] = {{"l_max", p.params.l_max}, {"delta", p.params.delta}};
  doc["input"] = {{"event_count", p.event_count},
                  {"static_edge_count", p.static_edge_count},
                  {"node_count", p.node_count}};

  json degrees = json::array();
  for (const auto& d : p.k_ce) degrees.push_back({d.in, d.out});
  doc["cold_events"] = {{"count", p.cold_event_count},
                        {"degrees", std::move(degrees)},
                        {"timestamps", p.t_ce},
                        {"edge_weights", p.ce_edge_weights}};
  doc["mu"] = p.mu;

  json probs = json::object();
  for (const auto& [from, row] : p.probs) {
    json r = json::object();
    for (const auto& [to, prob] : row) r[to.to_string()] = prob;
    probs[from.to_string()] = std::move(r);
  }
  doc["probabilities"] = std::move(probs);

  json rates = json::object();
  for (const auto& [key, rate] : p.rates) rates[key_string(key)] = rate;
  doc["rates"] = std::move(rates);

  json counts = json::array();
  for (const auto& [key, count] : p.counts) {
    json entry = {{"from", key.from.to_string()}, {"to", key.to.to_string()}, {"count", count}};
    if (auto it = p.delta_t_sums.find(key); it != p.delta_t_sums.end()) {
      entry["delta_t_sum"] = it->second.sum;
      entry["delta_t_count"] = it->second.count;
    }
    counts.push_back(std::move(entry));
  }
  doc["counts"] = std::move(counts);

  json stops = json::object();
  for (const auto& [code, n] : p.stop_counts) stops[code.to_string()] = n;
  doc["stops"] = std::move(stops);
  return doc;
}

TransitionProfile profile_from_json(const json& doc) {
  TransitionProfile p;
  try {
    if (doc.at("format").get<std::string>() != kProfileFormat) {
      throw ProfileFormatError("not a transition profile document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kProfileVersion) {
      throw ProfileFormatError("unsupported profile version " + std::to_string(version));
    }
    p.params.l_max = doc.at("params").at("l_max").get<std::size_t>();
    p.params.delta = doc.at("params").at("delta").get<Timestamp>();

    const json& input = doc.at("input");
    p.event_count = input.at("event_count").get<std::uint64_t>();
    p.static_edge_count = input.at("static_edge_count").get<std::uint64_t>();
    p.node_count = input.value("node_count", std::uint64_t{0});

    const json& cold = doc.at("cold_events");
    for (const auto& d : cold.at("degrees")) {
      p.k_ce.push_back({d.at(0).get<std::uint64_t>(), d.at(1).get<std::uint64_t>()});
    }
    p.t_ce = cold.at("timestamps").get<std::vector<Timestamp>>();
    p.ce_edge_weights = cold.at("edge_weights").get<std::vector<std::uint64_t>>();
    p.cold_event_count = cold.value("count", static_cast<std::uint64_t>(p.t_ce.size()));
    p.mu = doc.at("mu").get<double>();

    const json& probs = doc.at("probabilities");
    for (auto row = probs.begin(); row != probs.end(); ++row) {
      TransitionRow& out = p.probs[MotifCode::parse(row.key())];
      for (auto cell = row->begin(); cell != row->end(); ++cell) {
        out[MotifCode::parse(cell.key())] = cell->get<double>();
      }
    }
    const json rates = doc.value("rates", json::object());
    for (auto it = rates.begin(); it != rates.end(); ++it) {
      p.rates[parse_key(it.key())] = it->get<double>();
    }
    for (const auto& entry : doc.value("counts", json::array())) {
      TransitionKey key{MotifCode::parse(entry.at("from").get<std::string>()),
                        MotifCode::parse(entry.at("to").get<std::string>())};
      p.counts[key] = entry.at("count").get<std::uint64_t>();
      if (entry.contains("delta_t_sum")) {
        p.delta_t_sums[key] = {entry.at("delta_t_sum").get<double>(),
                               entry.at("delta_t_count").get<std::uint64_t>()};
      }
    }
    const json stops = doc.value("stops", json::object());
    for (auto it = stops.begin(); it != stops.end(); ++it) {
      p.stop_counts[MotifCode::parse(it.key())] = it->get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw ProfileFormatError(std::string("malformed profile: ") + e.what());
  } catch (const CodeError& e) {
    throw ProfileFormatError(std::string("malformed profile: ") + e.what());
  }
  validate_profile(p);
  return p;
}

void validate_profile(const TransitionProfile& p) {
  if (p.params.l_max < 2 || p.params.l_max > MotifCode::kMaxEvents) {
    throw ProfileFormatError("l_max out of range");
  }
  if (p.params.delta <= 0) throw ProfileFormatError("delta must be positive");
  if (!(p.mu >= 1.0)) throw ProfileFormatError("mu must be >= 1");

  std::uint64_t out_stubs = 0;
  std::uint64_t in_stubs = 0;
  for (const auto& d : p.k_ce) {
    out_stubs += d.out;
    in_stubs += d.in;
  }
  if (out_stubs != in_stubs) throw ProfileFormatError("cold-event degree stubs do not balance");
  std::uint64_t weight_total = 0;
  for (auto w : p.ce_edge_weights) weight_total += w;
  if (weight_total != p.t_ce.size()) {
    throw ProfileFormatError("cold-event edge weights do not sum to the timestamp count");
  }
  if (p.cold_event_count != p.t_ce.size()) {
    throw ProfileFormatError("cold_event_count does not match the timestamp list");
  }

  for (const auto& [from, row] : p.probs) {
    double total = 0.0;
    for (const auto& [to, prob] : row) {
      check_key({from, to});
      if (to.size() > p.params.l_max) {
        throw ProfileFormatError("transition to " + to.to_string() + " exceeds l_max");
      }
      if (!(prob >= 0.0 && prob <= 1.0)) {
        throw ProfileFormatError("probability out of [0,1] in row " + from.to_string());
      }
      total += prob;
    }
    if (total > 1.0 + 1e-9) {
      throw ProfileFormatError("row " + from.to_string() + " sums to more than 1");
    }
  }
  for (const auto& [key, rate] : p.rates) {
    check_key(key);
    if (!(rate > 0.0) || !std::isfinite(rate)) {
      throw ProfileFormatError("rate for " + key_string(key) + " must be positive and finite");
    }
  }
  for (const auto& [key, count] : p.counts) check_key(key);
}

void save_profile(const TransitionProfile& profile, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << profile_to_json(profile).dump(1) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

TransitionProfile load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ProfileFormatError("'" + path + "' is not valid JSON: " + e.what());
  }
  return profile_from_json(doc);
}

}  // namespace mtm
