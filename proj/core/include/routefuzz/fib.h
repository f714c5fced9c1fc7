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

#ifndef ROUTEFUZZ_FIB_H_
#define ROUTEFUZZ_FIB_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "routefuzz/prefix.h"

namespace routefuzz {

enum class FibKind : uint8_t {
  kConnected,       // owned prefix, delivered locally
  kStaticNull,      // static route to the null sink
  kStaticNextHop,   // static route via an adjacent address
  kBgp,             // best BGP route learned from a peer
};

struct FibEntry {
  Prefix prefix;
  FibKind kind = FibKind::kConnected;
  Ipv4Address next_hop;  // kStaticNextHop and kBgp only
};

// Binary trie for longest-prefix match. When two entries share a prefix the
// lower FibKind wins (connected, then static, then BGP).
class Fib {
 public:
  Fib();
  ~Fib();
  Fib(Fib&&) noexcept;
  Fib& operator=(Fib&&) noexcept;
  Fib(const Fib&) = delete;
  Fib& operator=(const Fib&) = delete;

  void Insert(const FibEntry& entry);
  std::optional<FibEntry> Lookup(Ipv4Address dst) const;
  size_t size() const { return size_; }

 private:
  struct Node;
  std::unique_ptr<Node> root_;
  size_t size_ = 0;
};

}  // namespace routefuzz

#endif  // ROUTEFUZZ_FIB_H_
