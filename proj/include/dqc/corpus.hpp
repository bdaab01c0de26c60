// Copyright 2026 The dqcopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Seeded random circuits for property tests and the acceptance suite.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

struct CorpusOptions {
  std::size_t max_qubits = 8;  ///< split as at most max_qubits/2 per partition
  std::size_t max_gates = 10;
  std::size_t max_global = 5;
};

/// Gate kinds are drawn uniformly from {H, T, X, Z, RZ(random angle), local
/// CNOT, global CNOT}; a draw that is impossible (local CNOT with one qubit
/// per side, or the global cap reached) is redrawn.
inline Circuit random_circuit(std::mt19937_64& rng, const CorpusOptions& opt = {}) {
  const std::size_t half = std::max<std::size_t>(1, opt.max_qubits / 2);
  std::uniform_int_distribution<std::size_t> side_size(1, half);
  std::uniform_int_distribution<std::size_t> gate_count(1, std::max<std::size_t>(1, opt.max_gates));
  std::uniform_int_distribution<int> kind_dist(0, 6);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);

  Circuit c(side_size(rng), side_size(rng));
  const std::size_t gates = gate_count(rng);
  std::size_t globals = 0;

  auto pick_on = [&](Partition p) {
    std::uniform_int_distribution<std::size_t> d(0, c.partition_size(p) - 1);
    return QubitRef{p, d(rng)};
  };
  auto pick_any = [&] { return pick_on(static_cast<Partition>(coin(rng))); };

  while (c.gates.size() < gates) {
    switch (kind_dist(rng)) {
      case 0: c.add_gate("H", pick_any()); break;
      case 1: c.add_gate("T", pick_any()); break;
      case 2: c.add_gate("X", pick_any()); break;
      case 3: c.add_gate("Z", pick_any()); break;
      case 4: c.add_gate("RZ", pick_any(), angle(rng)); break;
      case 5: {
        std::vector<Partition> sides;
        for (auto p : {Partition::P0, Partition::P1}) {
          if (c.partition_size(p) >= 2) sides.push_back(p);
        }
        if (sides.empty()) break;
        const Partition p = sides[std::uniform_int_distribution<std::size_t>(0, sides.size() - 1)(rng)];
        const QubitRef a = pick_on(p);
        QubitRef b = pick_on(p);
        while (b == a) b = pick_on(p);
        c.add_cnot(a, b);
        break;
      }
      default: {
        if (globals >= opt.max_global) break;
        const Partition pc = static_cast<Partition>(coin(rng));
        c.add_cnot(pick_on(pc), pick_on(other(pc)));
        ++globals;
        break;
      }
    }
  }
  return c;
}

inline std::vector<Circuit> random_corpus(std::uint64_t seed, std::size_t count, const CorpusOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  std::vector<Circuit> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_circuit(rng, opt));
  return out;
}

}  // namespace dqc
