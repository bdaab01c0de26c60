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

// Pairwise (non-)commutation of gates, plus a full-operator oracle that
// decides the same question by Kronecker-product embedding.

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "dqc/circuit.hpp"
#include "dqc/linalg.hpp"

namespace dqc {

/// How a single-qubit gate on a CNOT target is judged.
///  - Strict: only U = [[u0,u1],[u1,u0]] passes (XU = UX). Reordering under
///    this rule preserves the circuit unitary up to global phase.
///  - Relaxed: U = [[u0,u1],[-u1,-u0]] (XU = -UX) also passes. The two-qubit
///    operators then differ by a control-conditioned sign, so schedules may
///    not be unitary-equivalent.
enum class CommuteMode { Strict, Relaxed };

inline std::string_view to_string(CommuteMode m) { return m == CommuteMode::Strict ? "strict" : "relaxed"; }

inline CommuteMode commute_mode_from(std::string_view s) {
  if (s == "strict") return CommuteMode::Strict;
  if (s == "relaxed") return CommuteMode::Relaxed;
  throw Error("unknown commute mode '" + std::string(s) + "' (expected strict|relaxed)");
}

inline bool is_diagonal(const Matrix2& u, double tol = kTolerance) {
  return std::abs(u(0, 1)) <= tol && std::abs(u(1, 0)) <= tol;
}

inline bool commutes_with_x(const Matrix2& u, CommuteMode mode, double tol = kTolerance) {
  const bool symmetric = std::abs(u(0, 0) - u(1, 1)) <= tol && std::abs(u(0, 1) - u(1, 0)) <= tol;
  if (symmetric || mode == CommuteMode::Strict) return symmetric;
  return std::abs(u(0, 0) + u(1, 1)) <= tol && std::abs(u(0, 1) + u(1, 0)) <= tol;
}

namespace detail {

inline bool cnot_single_non_commute(const CnotGate& cx, const SingleQubitGate& s, CommuteMode mode) {
  if (s.target == cx.control) return !is_diagonal(s.matrix);
  if (s.target == cx.target) return !commutes_with_x(s.matrix, mode);
  return false;
}

}  // namespace detail

/// True iff `g` and `h` cannot be swapped when adjacent. Gates on disjoint
/// qubits always commute.
inline bool non_commute(const Gate& g, const Gate& h, CommuteMode mode = CommuteMode::Strict) {
  const auto* gc = g.cnot();
  const auto* hc = h.cnot();
  if (gc && hc) return gc->control == hc->target || hc->control == gc->target;
  if (gc) return detail::cnot_single_non_commute(*gc, *h.single(), mode);
  if (hc) return detail::cnot_single_non_commute(*hc, *g.single(), mode);

  const auto& a = *g.single();
  const auto& b = *h.single();
  if (a.target != b.target) return false;
  return !equal_up_to_global_phase((a.matrix * b.matrix).entries(), (b.matrix * a.matrix).entries());
}

inline constexpr std::size_t kMaxOracleWidth = 12;

/// Embeds `g` into a `width`-qubit operator. Global qubit 0 is the leftmost
/// Kronecker factor. `index` maps a QubitRef to its global position.
template <class IndexFn>
SparseOperator embed_gate(const Gate& g, std::size_t width, IndexFn index) {
  const SparseOperator id2(Matrix2::identity());
  auto tensor = [&](auto factor_at) {
    SparseOperator out = factor_at(0);
    for (std::size_t q = 1; q < width; ++q) out = kron(out, factor_at(q));
    return out;
  };
  if (const auto* s = g.single()) {
    const std::size_t t = index(s->target);
    const SparseOperator u(s->matrix);
    return tensor([&](std::size_t q) { return q == t ? u : id2; });
  }
  const auto* cx = g.cnot();
  const std::size_t c = index(cx->control);
  const std::size_t t = index(cx->target);
  const SparseOperator p0(Matrix2{{1.0, 0.0, 0.0, 0.0}});
  const SparseOperator p1(Matrix2{{0.0, 0.0, 0.0, 1.0}});
  const SparseOperator x(named_gate("X"));
  return tensor([&](std::size_t q) { return q == c ? p0 : id2; }) +
         tensor([&](std::size_t q) { return q == c ? p1 : (q == t ? x : id2); });
}

/// Decides commutation from the embedded operators: true iff
/// U_g U_h = e^{i theta} U_h U_g. Qubits are laid out P0 first, then P1, with
/// `n0` qubits in P0.
inline bool matrix_commute_oracle(const Gate& g, const Gate& h, std::size_t width, std::size_t n0) {
  if (width == 0 || width > kMaxOracleWidth) {
    throw Error("matrix_commute_oracle: width " + std::to_string(width) + " outside 1.." +
                std::to_string(kMaxOracleWidth));
  }
  auto index = [&](QubitRef q) {
    const std::size_t i = q.partition == Partition::P0 ? q.index : n0 + q.index;
    if (i >= width) throw Error("matrix_commute_oracle: qubit " + to_string(q) + " outside width");
    return i;
  };
  const SparseOperator ug = embed_gate(g, width, index);
  const SparseOperator uh = embed_gate(h, width, index);
  return equal_up_to_global_phase(ug * uh, uh * ug);
}

inline bool matrix_commute_oracle(const Gate& g, const Gate& h, const Circuit& c) {
  return matrix_commute_oracle(g, h, c.width(), c.partition_sizes[0]);
}

}  // namespace dqc
