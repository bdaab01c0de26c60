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

// Independent checks of the scheduler: an exact shortest-path search over
// every legal teleport/execute interleaving, and full-unitary comparison of a
// reordered circuit against the original.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/commute.hpp"
#include "dqc/linalg.hpp"
#include "dqc/schedule.hpp"

namespace dqc {

/// The oracle ran out of its explored-state budget.
class BudgetExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

inline constexpr std::size_t kMaxUnitaryQubits = 10;
inline constexpr std::size_t kMaxOracleGates = 12;
inline constexpr std::size_t kMaxOracleGlobal = 6;

// ---------------------------------------------------------------------------
// Unitary equivalence
// ---------------------------------------------------------------------------

/// Product of the gates of `c` in `order`, later gates multiplied on the left.
/// Global qubit k (P0 qubits first, then P1) is bit (W-1-k) of the basis
/// index, i.e. qubit 0 is the leftmost tensor factor.
inline DenseMatrix circuit_unitary(const Circuit& c, const std::vector<std::size_t>& order) {
  const std::size_t w = c.width();
  if (w > kMaxUnitaryQubits) {
    throw CapExceeded("circuit_unitary: " + std::to_string(w) + " qubits exceeds the cap of " +
                      std::to_string(kMaxUnitaryQubits));
  }
  const std::size_t dim = std::size_t{1} << w;
  DenseMatrix u = DenseMatrix::identity(dim);
  auto mask_of = [&](QubitRef q) { return std::size_t{1} << (w - 1 - c.global_index(q)); };

  for (std::size_t id : order) {
    const Gate& g = c.gate(id);
    if (const auto* s = g.single()) {
      const std::size_t m = mask_of(s->target);
      const Matrix2& a = s->matrix;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & m) continue;
        const std::size_t j = i | m;
        for (std::size_t col = 0; col < dim; ++col) {
          const Complex lo = u(i, col);
          const Complex hi = u(j, col);
          u(i, col) = a(0, 0) * lo + a(0, 1) * hi;
          u(j, col) = a(1, 0) * lo + a(1, 1) * hi;
        }
      }
    } else {
      const auto* cx = g.cnot();
      const std::size_t cm = mask_of(cx->control);
      const std::size_t tm = mask_of(cx->target);
      for (std::size_t i = 0; i < dim; ++i) {
        if (!(i & cm) || (i & tm)) continue;
        for (std::size_t col = 0; col < dim; ++col) std::swap(u(i, col), u(i | tm, col));
      }
    }
  }
  return u;
}

inline std::vector<std::size_t> input_order(const Circuit& c) {
  std::vector<std::size_t> out;
  for (const Gate& g : c.gates) out.push_back(g.id);
  return out;
}

/// True iff running the gates in r.executed_order gives the same unitary as
/// the input order, up to global phase. Teleports act as identity on the
/// logical state, so only the reordering matters.
inline bool verify_schedule(const Circuit& c, const ScheduleResult& r, double tol = kTolerance) {
  const DenseMatrix ref = circuit_unitary(c, input_order(c));
  const DenseMatrix got = circuit_unitary(c, r.executed_order);
  return equal_up_to_global_phase(ref.entries(), got.entries(), tol);
}

/// Pairs (earlier, later) of gate ids where `later` runs before `earlier` in
/// `order` although the two do not commute under Strict rules.
inline std::vector<std::pair<std::size_t, std::size_t>> strict_reorder_conflicts(
    const Circuit& c, const std::vector<std::size_t>& order) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      // order[a] runs first; a conflict needs it to come later in the input
      if (order[a] > order[b] && non_commute(c.gate(order[a]), c.gate(order[b]), CommuteMode::Strict)) {
        out.emplace_back(order[b], order[a]);
      }
    }
  }
  return out;
}

/// True iff the pair only commutes through the XU = -UX target rule.
inline bool is_theta_pi_pair(const Gate& g, const Gate& h) {
  return non_commute(g, h, CommuteMode::Strict) && !non_commute(g, h, CommuteMode::Relaxed);
}

// ---------------------------------------------------------------------------
// Exhaustive minimum-teleportation search
// ---------------------------------------------------------------------------

struct OracleResult {
  std::size_t min_n_t = 0;
  ScheduleResult witness;
  ConfigArr config;  ///< execution sites used by the witness
  std::size_t explored_states = 0;
};

struct OracleOptions {
  CommuteMode mode = CommuteMode::Strict;
  std::size_t state_limit = 5'000'000;
  /// Pin the execution sites; when empty every global gate may run on either
  /// side, which is the minimum over all configurations.
  std::optional<ConfigArr> config;
};

namespace detail {

class OracleSearch {
 public:
  OracleSearch(const Circuit& c, const OracleOptions& opt) : c_(c), opt_(opt) {
    m_ = c.gates.size();
    w_ = c.width();
    if (m_ > kMaxOracleGates) {
      throw CapExceeded("oracle: " + std::to_string(m_) + " gates exceeds the cap of " +
                        std::to_string(kMaxOracleGates));
    }
    const std::size_t m_g = global_gates(c).size();
    if (m_g > kMaxOracleGlobal) {
      throw CapExceeded("oracle: " + std::to_string(m_g) + " global gates exceeds the cap of " +
                        std::to_string(kMaxOracleGlobal));
    }
    std::optional<SiteMap> sites;
    if (opt.config) sites.emplace(c, *opt.config);

    info_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const Gate& g = c.gates[i];
      GateInfo& gi = info_[i];
      gi.global = is_global(g);
      if (const auto* cx = g.cnot()) {
        gi.qubits = {c.global_index(cx->control), c.global_index(cx->target)};
        if (gi.global) {
          if (sites) {
            gi.movable = {c.global_index(remote_qubit(g, sites->site(g)))};
          } else {
            gi.movable = gi.qubits;
          }
        }
      } else {
        gi.qubits = {c.global_index(g.single()->target)};
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (non_commute(g, c.gates[j], opt.mode)) gi.blocked_by |= std::uint32_t{1} << j;
      }
    }
  }

  OracleResult run() {
    const std::size_t slots = w_ + 1;
    const std::size_t states = (std::size_t{1} << m_) * slots;
    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(states, kInf);
    std::vector<bool> settled(states, false);
    std::vector<Step> parent(states);
    const std::uint32_t full = m_ == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << m_) - 1);

    auto key = [&](std::uint32_t mask, std::size_t mig) { return static_cast<std::size_t>(mask) * slots + mig; };

    std::deque<std::size_t> queue;
    dist[key(0, 0)] = 0;
    queue.push_back(key(0, 0));
    std::size_t explored = 0;
    std::optional<std::size_t> goal;

    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      if (settled[k]) continue;
      settled[k] = true;
      if (++explored > opt_.state_limit) {
        throw BudgetExceeded("oracle: explored-state budget of " + std::to_string(opt_.state_limit) + " exceeded");
      }
      const auto mask = static_cast<std::uint32_t>(k / slots);
      const std::size_t mig = k % slots;
      if (mask == full && mig == 0) {
        goal = k;
        break;
      }

      auto relax = [&](std::size_t next, std::size_t cost, Step step) {
        if (settled[next] || dist[k] + cost >= dist[next]) return;
        dist[next] = dist[k] + cost;
        parent[next] = step;
        if (cost == 0) {
          queue.push_front(next);
        } else {
          queue.push_back(next);
        }
      };

      for (std::size_t i = 0; i < m_; ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        if (mask & bit) continue;
        const std::uint32_t pending_before = ~mask & (bit - 1);
        if (info_[i].blocked_by & pending_before) continue;
        if (!executable(i, mig)) continue;
        relax(key(mask | bit, mig), 0, {k, Action::Execute, i});
      }
      if (mig == 0) {
        for (std::size_t q = 0; q < w_; ++q) {
          if (worth_migrating(q, mask)) relax(key(mask, q + 1), 1, {k, Action::Migrate, q});
        }
      } else {
        relax(key(mask, 0), 1, {k, Action::Return, mig - 1});
      }
    }
    if (!goal) throw Error("oracle: no complete schedule exists");
    return build(*goal, dist[*goal], explored, parent);
  }

 private:
  enum class Action { Execute, Migrate, Return };
  struct Step {
    std::size_t prev = 0;
    Action action = Action::Execute;
    std::size_t arg = 0;  ///< gate position or global qubit index
  };
  struct GateInfo {
    bool global = false;
    std::vector<std::size_t> qubits;
    std::vector<std::size_t> movable;  ///< qubits whose migration lets the gate run
    std::uint32_t blocked_by = 0;      ///< earlier gates it does not commute with
  };

  bool executable(std::size_t i, std::size_t mig) const {
    const GateInfo& gi = info_[i];
    if (gi.global) {
      if (mig == 0) return false;
      return std::find(gi.movable.begin(), gi.movable.end(), mig - 1) != gi.movable.end();
    }
    return mig == 0 || std::find(gi.qubits.begin(), gi.qubits.end(), mig - 1) == gi.qubits.end();
  }

  bool worth_migrating(std::size_t q, std::uint32_t mask) const {
    for (std::size_t i = 0; i < m_; ++i) {
      if ((mask >> i) & 1U || !info_[i].global) continue;
      const auto& mv = info_[i].movable;
      if (std::find(mv.begin(), mv.end(), q) != mv.end()) return true;
    }
    return false;
  }

  OracleResult build(std::size_t goal, std::size_t cost, std::size_t explored, const std::vector<Step>& parent) const {
    std::vector<Step> steps;
    for (std::size_t k = goal; k != 0;) {
      steps.push_back(parent[k]);
      k = parent[k].prev;
    }
    std::reverse(steps.begin(), steps.end());

    OracleResult out;
    out.min_n_t = cost;
    out.explored_states = explored;
    std::vector<Partition> site_of(m_, Partition::P0);
    std::optional<std::size_t> open_migration;  // index into events
    std::optional<QubitRef> away;
    ScheduleResult& r = out.witness;

    for (const Step& s : steps) {
      switch (s.action) {
        case Action::Execute: {
          const Gate& g = c_.gates[s.arg];
          if (info_[s.arg].global) {
            const QubitRef moved = away.value();
            site_of[s.arg] = other(moved.partition);
            auto& ev = r.events[*open_migration];
            if (ev.gate_id == 0) {
              ev.gate_id = g.id;
              ev.role = g.cnot()->control == moved ? Role::Control : Role::Target;
            }
          }
          r.executed_order.push_back(g.id);
          break;
        }
        case Action::Migrate: {
          const QubitRef moved = c_.qubit_at(s.arg);
          away = moved;
          open_migration = r.events.size();
          r.events.push_back({0, Role::Control, moved.partition, other(moved.partition), TeleportKind::Migrate,
                              r.executed_order.size()});
          break;
        }
        case Action::Return: {
          const TeleportEvent& m = r.events[*open_migration];
          if (m.gate_id == 0) throw Error("oracle: witness migration serves no global gate");
          r.events.push_back({m.gate_id, m.role, m.to, m.from, TeleportKind::Return, r.executed_order.size()});
          away.reset();
          break;
        }
      }
    }
    r.n_t = r.events.size();

    if (opt_.config) {
      out.config = *opt_.config;
    } else {
      for (std::size_t i = 0; i < m_; ++i) {
        if (info_[i].global) out.config.sites.push_back(site_of[i]);
      }
    }
    return out;
  }

  const Circuit& c_;
  const OracleOptions& opt_;
  std::size_t m_ = 0;
  std::size_t w_ = 0;
  std::vector<GateInfo> info_;
};

}  // namespace detail

/// Exact minimum n_t over every schedule that keeps at most one qubit away,
/// runs each global gate at a site holding both its qubits, never lets a
/// local gate touch the migrated qubit, lets a gate overtake a pending
/// earlier one only if they commute, and brings every qubit home at the end.
/// Explores (executed-gate set, migrated qubit) states with a 0-1 BFS:
/// executing costs 0, each teleport costs 1.
inline OracleResult brute_force_min(const Circuit& c, const OracleOptions& options = {}) {
  return detail::OracleSearch(c, options).run();
}

}  // namespace dqc
