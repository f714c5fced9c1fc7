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

#ifndef ROUTEFUZZ_EVENTS_H_
#define ROUTEFUZZ_EVENTS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "routefuzz/prefix.h"

namespace routefuzz {

// BGP NOTIFICATION error code / Cease subcode values.
inline constexpr uint8_t kNotificationCease = 6;
inline constexpr uint8_t kCeaseMaxPrefixesReached = 1;

namespace event {
struct SessionUp {
  std::string peer;
  friend bool operator==(const SessionUp&, const SessionUp&) = default;
};
struct SessionDown {
  std::string peer;
  std::string reason;
  friend bool operator==(const SessionDown&, const SessionDown&) = default;
};
struct Notification {
  std::string peer;
  uint8_t code = 0;
  uint8_t subcode = 0;
  friend bool operator==(const Notification&, const Notification&) = default;
};
struct PrefixAnnounced {
  Prefix prefix;
  std::string from;
  friend bool operator==(const PrefixAnnounced&, const PrefixAnnounced&) = default;
};
struct PrefixWithdrawn {
  Prefix prefix;
  std::string from;
  friend bool operator==(const PrefixWithdrawn&, const PrefixWithdrawn&) = default;
};
struct IcmpUnreachable {
  Ipv4Address src;
  Ipv4Address dst;
  friend bool operator==(const IcmpUnreachable&, const IcmpUnreachable&) = default;
};
struct ConfigApplied {
  friend bool operator==(const ConfigApplied&, const ConfigApplied&) = default;
};
struct ConfigRejected {
  std::string reason;
  friend bool operator==(const ConfigRejected&, const ConfigRejected&) = default;
};
}  // namespace event

using EventPayload =
    std::variant<event::SessionUp, event::SessionDown, event::Notification,
                 event::PrefixAnnounced, event::PrefixWithdrawn, event::IcmpUnreachable,
                 event::ConfigApplied, event::ConfigRejected>;

// A timestamped simulator emission. Logs are ordered by (tick, node).
struct NetworkEvent {
  uint64_t tick = 0;
  std::string node;
  EventPayload payload;

  template <typename T>
  bool Is() const {
    return std::holds_alternative<T>(payload);
  }
  template <typename T>
  const T& As() const {
    return std::get<T>(payload);
  }

  std::string_view KindName() const;

  // One JSON object, no trailing newline.
  std::string ToJson() const;
  static NetworkEvent FromJson(std::string_view json);

  friend bool operator==(const NetworkEvent&, const NetworkEvent&) = default;
};

// Newline-delimited JSON, one record per event.
std::string EventsToJsonl(const std::vector<NetworkEvent>& events);
std::vector<NetworkEvent> EventsFromJsonl(std::string_view text);

// Stable-sorts a batch by (tick, node).
void SortEvents(std::vector<NetworkEvent>& events);

}  // namespace routefuzz

#endif  // ROUTEFUZZ_EVENTS_H_
