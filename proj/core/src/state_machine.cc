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

#include "routefuzz/state_machine.h"

namespace routefuzz {

IllegalTransition::IllegalTransition(FuzzState from, FuzzEvent event)
    : std::logic_error("illegal transition: " + EventName(event) + " in " +
                       std::string(StateName(from))),
      from_(from),
      event_(event) {}

bool IsConfigChange(EventClass kind) {
  return kind == EventClass::kE1 || kind == EventClass::kE2 || kind == EventClass::kE3;
}

FuzzState transition(FuzzState state, FuzzEvent event) {
  using S = FuzzState;
  using E = EventClass;
  switch (state) {
    case S::kS0NormalRun:
      if (IsConfigChange(event.kind)) return event.deployed ? S::kS1Intermediate : S::kS0NormalRun;
      if (event.kind == E::kE5) return S::kS2ErrorDetected;
      break;
    case S::kS1Intermediate:
      if (IsConfigChange(event.kind)) return S::kS1Intermediate;
      if (event.kind == E::kE4) return S::kS1Intermediate;
      if (event.kind == E::kE5) return S::kS2ErrorDetected;
      break;
    case S::kS2ErrorDetected:
      if (event.kind == E::kE6) return S::kS0NormalRun;
      break;
  }
  throw IllegalTransition(state, event);
}

std::string_view StateName(FuzzState state) {
  switch (state) {
    case FuzzState::kS0NormalRun:
      return "S0";
    case FuzzState::kS1Intermediate:
      return "S1";
    case FuzzState::kS2ErrorDetected:
      return "S2";
  }
  return "S?";
}

std::string EventName(FuzzEvent event) {
  std::string out = "E" + std::to_string(static_cast<int>(event.kind));
  if (IsConfigChange(event.kind) && !event.deployed) out += '~';
  return out;
}

}  // namespace routefuzz
