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

// Circuit intermediate representation for a circuit split across two
// partitions P0 and P1.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dqc/linalg.hpp"

namespace dqc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a request exceeds an explicit size or work cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

enum class Partition : std::uint8_t { P0 = 0, P1 = 1 };

constexpr Partition other(Partition p) { return p == Partition::P0 ? Partition::P1 : Partition::P0; }
constexpr int index_of(Partition p) { return static_cast<int>(p); }

inline Partition partition_from_index(int p) {
  if (p != 0 && p != 1) throw Error("partition index must be 0 or 1, got " + std::to_string(p));
  return static_cast<Partition>(p);
}

/// A logical qubit: its home partition and its position inside that partition
/// (numbered top to bottom from 0).
struct QubitRef {
  Partition partition = Partition::P0;
  std::size_t index = 0;

  friend auto operator<=>(const QubitRef&, const QubitRef&) = default;
};

inline std::string to_string(QubitRef q) {
  return "p" + std::to_string(index_of(q.partition)) + ":" + std::to_string(q.index);
}

struct SingleQubitGate {
  std::string name;                  ///< upper-case, e.g. "H", "RZ", "U"
  Matrix2 matrix;
  QubitRef target;
  std::optional<double> angle;       ///< set for RX/RY/RZ only

  friend bool operator==(const SingleQubitGate&, const SingleQubitGate&) = default;
};

struct CnotGate {
  QubitRef control;
  QubitRef target;

  friend bool operator==(const CnotGate&, const CnotGate&) = default;
};

/// A gate of the circuit. `id` is its 1-based position in execution order.
struct Gate {
  std::size_t id = 0;
  std::variant<SingleQubitGate, CnotGate> kind;

  const CnotGate* cnot() const { return std::get_if<CnotGate>(&kind); }
  const SingleQubitGate* single() const { return std::get_if<SingleQubitGate>(&kind); }

  bool acts_on(QubitRef q) const {
    if (const auto* c = cnot()) return c->control == q || c->target == q;
    return single()->target == q;
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class GateClass { SingleQubit, LocalCnot, GlobalCnot };

inline GateClass classify(const Gate& g) {
  const auto* c = g.cnot();
  if (c == nullptr) return GateClass::SingleQubit;
  return c->control.partition == c->target.partition ? GateClass::LocalCnot : GateClass::GlobalCnot;
}

inline bool is_global(const Gate& g) { return classify(g) == GateClass::GlobalCnot; }

/// Matrix of a named single-qubit gate. Rotations take an angle in radians,
/// every other name must come without one.
inline Matrix2 named_gate(std::string_view name, std::optional<double> angle = std::nullopt) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  const bool rotation = upper == "RX" || upper == "RY" || upper == "RZ";
  if (rotation && !angle) throw Error("gate " + upper + " requires an angle");
  if (!rotation && angle) throw Error("gate " + upper + " takes no angle");

  using namespace std::complex_literals;
  if (upper == "I") return Matrix2::identity();
  if (upper == "X") return Matrix2{{0.0, 1.0, 1.0, 0.0}};
  if (upper == "Y") return Matrix2{{0.0, -1i, 1i, 0.0}};
  if (upper == "Z") return Matrix2{{1.0, 0.0, 0.0, -1.0}};
  if (upper == "H") {
    const double s = 1.0 / std::numbers::sqrt2;
    return Matrix2{{s, s, s, -s}};
  }
  if (upper == "T") return Matrix2{{1.0, 0.0, 0.0, std::exp(1i * (std::numbers::pi / 4))}};
  if (rotation) {
    const double half = *angle / 2;
    const double c = std::cos(half);
    const double s = std::sin(half);
    if (upper == "RX") return Matrix2{{c, -1i * s, -1i * s, c}};
    if (upper == "RY") return Matrix2{{c, -s, s, c}};
    return Matrix2{{std::exp(-1i * half), 0.0, 0.0, std::exp(1i * half)}};
  }
  throw Error("unknown gate name '" + std::string(name) + "'");
}

/// Gate list over two partitions. Gate ids are assigned 1..m_t in append order.
struct Circuit {
  std::array<std::size_t, 2> partition_sizes{1, 1};
  std::vector<Gate> gates;

  Circuit() = default;
  Circuit(std::size_t n0, std::size_t n1) : partition_sizes{n0, n1} {}

  std::size_t partition_size(Partition p) const { return partition_sizes[index_of(p)]; }
  std::size_t width() const { return partition_sizes[0] + partition_sizes[1]; }
  std::size_t size() const { return gates.size(); }

  /// Position in the combined register: P0 qubits first, then P1 qubits.
  std::size_t global_index(QubitRef q) const {
    return q.partition == Partition::P0 ? q.index : partition_sizes[0] + q.index;
  }

  QubitRef qubit_at(std::size_t global) const {
    if (global < partition_sizes[0]) return {Partition::P0, global};
    return {Partition::P1, global - partition_sizes[0]};
  }

  const Gate& gate(std::size_t id) const {
    if (id == 0 || id > gates.size() || gates[id - 1].id != id) {
      auto it = std::find_if(gates.begin(), gates.end(), [&](const Gate& g) { return g.id == id; });
      if (it == gates.end()) throw Error("no gate with id " + std::to_string(id));
      return *it;
    }
    return gates[id - 1];
  }

  Circuit& add_cnot(QubitRef control, QubitRef target) {
    gates.push_back({gates.size() + 1, CnotGate{control, target}});
    return *this;
  }

  Circuit& add_gate(std::string_view name, QubitRef target, std::optional<double> angle = std::nullopt) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    gates.push_back({gates.size() + 1, SingleQubitGate{upper, named_gate(upper, angle), target, angle}});
    return *this;
  }

  Circuit& add_unitary(const Matrix2& matrix, QubitRef target) {
    gates.push_back({gates.size() + 1, SingleQubitGate{"U", matrix, target, std::nullopt}});
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Global CNOTs of `c` in circuit order. Their count is m_g.
inline std::vector<Gate> global_gates(const Circuit& c) {
  std::vector<Gate> out;
  std::copy_if(c.gates.begin(), c.gates.end(), std::back_inserter(out), is_global);
  return out;
}

struct Violation {
  std::size_t gate_id = 0;  ///< 0 for circuit-level problems
  std::string message;
};

inline std::vector<Violation> validate(const Circuit& c) {
  std::vector<Violation> out;
  for (int p = 0; p < 2; ++p) {
    if (c.partition_sizes[p] == 0) out.push_back({0, "partition p" + std::to_string(p) + " is empty"});
  }
  auto in_range = [&](std::size_t id, QubitRef q) {
    if (q.index >= c.partition_size(q.partition)) {
      out.push_back({id, "qubit " + to_string(q) + " out of range (partition has " +
                             std::to_string(c.partition_size(q.partition)) + " qubits)"});
    }
  };
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (g.id != i + 1) {
      out.push_back({g.id, "gate at position " + std::to_string(i + 1) + " has id " + std::to_string(g.id)});
    }
    if (const auto* cx = g.cnot()) {
      in_range(g.id, cx->control);
      in_range(g.id, cx->target);
      if (cx->control == cx->target) out.push_back({g.id, "CNOT control equals target " + to_string(cx->control)});
    } else {
      const auto* s = g.single();
      in_range(g.id, s->target);
      if (const double d = unitarity_defect(s->matrix); !(d <= kTolerance)) {
        out.push_back({g.id, "matrix of " + s->name + " is not unitary (defect " + std::to_string(d) + ")"});
      }
    }
  }
  return out;
}

}  // namespace dqc
