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

#include "routefuzz/fib.h"

namespace routefuzz {

struct Fib::Node {
  std::unique_ptr<Node> child[2];
  std::optional<FibEntry> entry;
};

Fib::Fib() : root_(std::make_unique<Node>()) {}
Fib::~Fib() = default;
Fib::Fib(Fib&&) noexcept = default;
Fib& Fib::operator=(Fib&&) noexcept = default;

void Fib::Insert(const FibEntry& entry) {
  Node* node = root_.get();
  uint32_t bits = entry.prefix.address().value();
  for (int depth = 0; depth < entry.prefix.length(); ++depth) {
    int bit = (bits >> (31 - depth)) & 1;
    if (!node->child[bit]) node->child[bit] = std::make_unique<Node>();
    node = node->child[bit].get();
  }
  if (!node->entry) {
    node->entry = entry;
    ++size_;
  } else if (entry.kind < node->entry->kind) {
    node->entry = entry;
  }
}

std::optional<FibEntry> Fib::Lookup(Ipv4Address dst) const {
  const Node* node = root_.get();
  std::optional<FibEntry> best = node->entry;
  uint32_t bits = dst.value();
  for (int depth = 0; depth < 32 && node; ++depth) {
    node = node->child[(bits >> (31 - depth)) & 1].get();
    if (node && node->entry) best = node->entry;
  }
  return best;
}

}  // namespace routefuzz
