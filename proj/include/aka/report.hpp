#pragma once

// JSON rendering of transcripts and reports. Output is deterministic: keys
// keep insertion order and the indentation is fixed.

#include <string>

#include <json.hpp>

#include "aka/sim.hpp"

namespace aka::sim {

using Json = nlohmann::ordered_json;

inline Json to_json(const Transcript& transcript) {
  Json events = Json::array();
  for (const auto& e : transcript.events()) {
    events.push_back({{"time", e.time.ticks},
                      {"actor", std::string(to_string(e.actor))},
                      {"action", e.action_label()},
                      {"payload_hex", to_hex(e.payload)}});
  }
  return events;
}

inline Json optional_key(const std::optional<SessionKey>& k) {
  return k ? Json(k->hex()) : Json(nullptr);
}

inline Json to_json(const AttackReport& r) {
  Json j;
  j["attack"] = std::string(to_string(r.attack));
  j["variant"] = std::string(to_string(r.variant));
  j["outcome"] = r.succeeded ? "SUCCEEDED" : "DEFEATED";
  j["reason"] = r.reason ? Json(std::string(to_string(*r.reason))) : Json(nullptr);
  j["keys_match"] = r.keys_match;
  j["attacker_key_hex"] = optional_key(r.attacker_key);
  j["victim_key_hex"] = optional_key(r.victim_key);
  j["events"] = to_json(r.transcript);
  return j;
}

inline Json to_json(const ExchangeResult& r, Variant variant, MessageOrder order) {
  Json j;
  j["exchange"] = "HONEST";
  j["variant"] = std::string(to_string(variant));
  j["order"] = std::string(to_string(order));
  j["keys_match"] = r.server_key == r.client_key;
  j["server_key_hex"] = r.server_key.hex();
  j["client_key_hex"] = r.client_key.hex();
  j["events"] = to_json(r.transcript);
  return j;
}

inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace aka::sim
