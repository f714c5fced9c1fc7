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

#ifndef ROUTEFUZZ_STATE_MACHINE_H_
#define ROUTEFUZZ_STATE_MACHINE_H_

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace routefuzz {

enum class FuzzState { kS0NormalRun, kS1Intermediate, kS2ErrorDetected };

// E1 field mutation, E2 statement insertion, E3 statement deletion,
// E4 prefix announcement, E5 oracle-triggered error, E6 recovery.
enum class EventClass { kE1 = 1, kE2, kE3, kE4, kE5, kE6 };

struct FuzzEvent {
  EventClass kind;
  // For E1-E3: whether the change reached the router. A change dropped
  // before deployment leaves the state unchanged.
  bool deployed = true;

  friend bool operator==(const FuzzEvent&, const FuzzEvent&) = default;
};

inline constexpr std::array<FuzzState, 3> kAllStates = {
    FuzzState::kS0NormalRun, FuzzState::kS1Intermediate, FuzzState::kS2ErrorDetected};
inline constexpr std::array<EventClass, 6> kAllEventClasses = {
    EventClass::kE1, EventClass::kE2, EventClass::kE3,
    EventClass::kE4, EventClass::kE5, EventClass::kE6};

class IllegalTransition : public std::logic_error {
 public:
  IllegalTransition(FuzzState from, FuzzEvent event);
  FuzzState from() const { return from_; }
  FuzzEvent event() const { return event_; }

 private:
  FuzzState from_;
  FuzzEvent event_;
};

// Throws IllegalTransition.
FuzzState transition(FuzzState state, FuzzEvent event);

std::string_view StateName(FuzzState state);  // "S0", "S1", "S2"
std::string EventName(FuzzEvent event);        // "E2", or "E2~" when not deployed
bool IsConfigChange(EventClass kind);

}  // namespace routefuzz

#endif  // ROUTEFUZZ_STATE_MACHINE_H_
