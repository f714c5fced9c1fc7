// Copyright 2026 The routefuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "routefuzz/events.h"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace routefuzz {
namespace {

using nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Ipv4Address AddressField(const ordered_json& j, const char* key) {
  auto a = ParseIpv4(j.at(key).get<std::string>());
  if (!a) throw std::invalid_argument(std::string("bad address in field ") + key);
  return *a;
}

}  // namespace

std::string_view NetworkEvent::KindName() const {
  return std::visit(Overloaded{
                        [](const event::SessionUp&) { return "SessionUp"; },
                        [](const event::SessionDown&) { return "SessionDown"; },
                        [](const event::Notification&) { return "Notification"; },
                        [](const event::PrefixAnnounced&) { return "PrefixAnnounced"; },
                        [](const event::PrefixWithdrawn&) { return "PrefixWithdrawn"; },
                        [](const event::IcmpUnreachable&) { return "IcmpUnreachable"; },
                        [](const event::ConfigApplied&) { return "ConfigApplied"; },
                        [](const event::ConfigRejected&) { return "ConfigRejected"; },
                    },
                    payload);
}

std::string NetworkEvent::ToJson() const {
  ordered_json j;
  j["tick"] = tick;
  j["node"] = node;
  j["kind"] = std::string(KindName());
  std::visit(Overloaded{
                 [&](const event::SessionUp& e) { j["peer"] = e.peer; },
                 [&](const event::SessionDown& e) {
                   j["peer"] = e.peer;
                   j["reason"] = e.reason;
                 },
                 [&](const event::Notification& e) {
                   j["peer"] = e.peer;
                   j["code"] = e.code;
                   j["subcode"] = e.subcode;
                 },
                 [&](const event::PrefixAnnounced& e) {
                   j["prefix"] = e.prefix.ToString();
                   j["from"] = e.from;
                 },
                 [&](const event::PrefixWithdrawn& e) {
                   j["prefix"] = e.prefix.ToString();
                   j["from"] = e.from;
                 },
                 [&](const event::IcmpUnreachable& e) {
                   j["src"] = e.src.ToString();
                   j["dst"] = e.dst.ToString();
                 },
                 [&](const event::ConfigApplied&) {},
                 [&](const event::ConfigRejected& e) { j["reason"] = e.reason; },
             },
             payload);
  return j.dump();
}

NetworkEvent NetworkEvent::FromJson(std::string_view json) {
  ordered_json j = ordered_json::parse(json);
  NetworkEvent e;
  e.tick = j.at("tick").get<uint64_t>();
  e.node = j.at("node").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "SessionUp") {
    e.payload = event::SessionUp{j.at("peer").get<std::string>()};
  } else if (kind == "SessionDown") {
    e.payload = event::SessionDown{j.at("peer").get<std::string>(),
                                   j.at("reason").get<std::string>()};
  } else if (kind == "Notification") {
    e.payload = event::Notification{j.at("peer").get<std::string>(), j.at("code").get<uint8_t>(),
                                    j.at("subcode").get<uint8_t>()};
  } else if (kind == "PrefixAnnounced") {
    e.payload = event::PrefixAnnounced{parse_prefix(j.at("prefix").get<std::string>()),
                                       j.at("from").get<std::string>()};
  } else if (kind == "PrefixWithdrawn") {
    e.payload = event::PrefixWithdrawn{parse_prefix(j.at("prefix").get<std::string>()),
                                       j.at("from").get<std::string>()};
  } else if (kind == "IcmpUnreachable") {
    e.payload = event::IcmpUnreachable{AddressField(j, "src"), AddressField(j, "dst")};
  } else if (kind == "ConfigApplied") {
    e.payload = event::ConfigApplied{};
  } else if (kind == "ConfigRejected") {
    e.payload = event::ConfigRejected{j.at("reason").get<std::string>()};
  } else {
    throw std::invalid_argument("unknown event kind '" + kind + "'");
  }
  return e;
}

std::string EventsToJsonl(const std::vector<NetworkEvent>& events) {
  std::string out;
  for (const auto& e : events) {
    out += e.ToJson();
    out += '\n';
  }
  return out;
}

std::vector<NetworkEvent> EventsFromJsonl(std::string_view text) {
  std::vector<NetworkEvent> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                         : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (line.empty()) continue;
    out.push_back(NetworkEvent::FromJson(line));
  }
  return out;
}

void SortEvents(std::vector<NetworkEvent>& events) {
  std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
    if (a.tick != b.tick) return a.tick < b.tick;
    return a.node < b.node;
  });
}

}  // namespace routefuzz
