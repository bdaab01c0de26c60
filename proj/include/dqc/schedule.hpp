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

// Greedy teleportation scheduler for one execution-site configuration.
//
// Starting from the first gate, leading local gates run in place. The first
// global gate fixes a migration: its remote qubit (the one homed away from
// the gate's configured site) is teleported over. Every later gate that is
// executable while that qubit sits abroad, and that commutes with every
// earlier gate still pending, runs immediately. The qubit then goes home and
// the process repeats on what is left.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/commute.hpp"

namespace dqc {

/// Execution site for each global gate, in global-gate order (Config-Arr).
struct ConfigArr {
  std::vector<Partition> sites;

  std::size_t size() const { return sites.size(); }
  Partition operator[](std::size_t i) const { return sites[i]; }

  static ConfigArr from_bits(const std::vector<int>& bits) {
    ConfigArr c;
    for (int b : bits) c.sites.push_back(partition_from_index(b));
    return c;
  }

  std::vector<int> bits() const {
    std::vector<int> out;
    for (auto p : sites) out.push_back(index_of(p));
    return out;
  }

  friend bool operator==(const ConfigArr&, const ConfigArr&) = default;
};

/// "{0,1,0,0,1}"
inline std::string to_string(const ConfigArr& cfg) {
  std::string s = "{";
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(index_of(cfg[i]));
  }
  return s + "}";
}

/// Maps gate ids of global gates to their configured site.
class SiteMap {
 public:
  SiteMap(const Circuit& c, const ConfigArr& cfg) {
    std::size_t k = 0;
    for (const Gate& g : c.gates) {
      if (!is_global(g)) continue;
      if (k >= cfg.size()) break;
      sites_.emplace(g.id, cfg[k++]);
    }
    const std::size_t m_g = static_cast<std::size_t>(std::count_if(c.gates.begin(), c.gates.end(), is_global));
    if (cfg.size() != m_g) {
      throw Error("configuration has " + std::to_string(cfg.size()) + " entries, circuit has " +
                  std::to_string(m_g) + " global gates");
    }
  }

  Partition site(const Gate& g) const {
    auto it = sites_.find(g.id);
    if (it == sites_.end()) throw Error("gate " + std::to_string(g.id) + " is not a global gate");
    return it->second;
  }

 private:
  std::unordered_map<std::size_t, Partition> sites_;
};

/// g.l: the partition where global gate `g` runs under `cfg`.
inline Partition execution_site(const Circuit& c, const Gate& g, const ConfigArr& cfg) {
  if (!is_global(g)) throw Error("gate " + std::to_string(g.id) + " is not a global gate");
  return SiteMap(c, cfg).site(g);
}

/// The qubit of global gate `g` that is homed away from `site`.
inline QubitRef remote_qubit(const Gate& g, Partition site) {
  const auto& cx = *g.cnot();
  return cx.control.partition != site ? cx.control : cx.target;
}

enum class Role { Control, Target };
enum class TeleportKind { Migrate, Return };

inline Role role_for(const Gate& g, Partition site) {
  return g.cnot()->control.partition != site ? Role::Control : Role::Target;
}

/// The at-most-one migrated qubit. When set, it sits in the partition
/// opposite its home.
struct MigrationState {
  std::optional<QubitRef> qubit;

  bool empty() const { return !qubit.has_value(); }
  Partition at() const { return other(qubit->partition); }
};

struct TeleportEvent {
  std::size_t gate_id = 0;
  Role role = Role::Control;
  Partition from = Partition::P0;
  Partition to = Partition::P1;
  TeleportKind kind = TeleportKind::Migrate;
  std::size_t executed_before = 0;  ///< gates already executed when the teleport happens

  friend bool operator==(const TeleportEvent&, const TeleportEvent&) = default;
};

/// "g2(C)"
inline std::string to_string(const TeleportEvent& e) {
  return "g" + std::to_string(e.gate_id) + (e.role == Role::Control ? "(C)" : "(T)");
}

struct ScheduleResult {
  std::size_t n_t = 0;
  std::vector<TeleportEvent> events;
  std::vector<std::size_t> executed_order;

  std::vector<TeleportEvent> migrations() const {
    std::vector<TeleportEvent> out;
    std::copy_if(events.begin(), events.end(), std::back_inserter(out),
                 [](const TeleportEvent& e) { return e.kind == TeleportKind::Migrate; });
    return out;
  }

  friend bool operator==(const ScheduleResult&, const ScheduleResult&) = default;
};

/// "g2(C), g3(C), g5(C)" over migrate events only.
inline std::string sequence_string(const ScheduleResult& r) {
  std::string s;
  for (const auto& e : r.migrations()) {
    if (!s.empty()) s += ", ";
    s += to_string(e);
  }
  return s;
}

struct ScheduleOptions {
  /// Count the teleport that brings the last migrated qubit home.
  bool final_return = true;
};

/// True iff `candidate` cannot run while the qubit migrated for `anchor` is
/// still away: it is a local gate on that qubit, a global gate configured for
/// the other site, or a global gate at the same site that needs a different
/// qubit teleported.
inline bool non_execute(const MigrationState& mig, const Gate& anchor, const Gate& candidate,
                        const SiteMap& sites) {
  if (mig.empty()) throw Error("non_execute: no migrated qubit");
  const QubitRef q = *mig.qubit;
  if (!is_global(candidate)) return candidate.acts_on(q);
  const Partition site = sites.site(candidate);
  if (site != sites.site(anchor)) return true;
  return remote_qubit(candidate, site) != q;
}

inline bool non_execute(const Circuit& c, const MigrationState& mig, const Gate& anchor,
                        const Gate& candidate, const ConfigArr& cfg) {
  return non_execute(mig, anchor, candidate, SiteMap(c, cfg));
}

inline ScheduleResult min_teleportation(const Circuit& c, const ConfigArr& cfg,
                                        CommuteMode mode = CommuteMode::Strict,
                                        ScheduleOptions options = {}) {
  const SiteMap sites(c, cfg);
  ScheduleResult r;
  r.executed_order.reserve(c.gates.size());

  std::vector<const Gate*> pending;
  pending.reserve(c.gates.size());
  for (const Gate& g : c.gates) pending.push_back(&g);

  std::size_t head = 0;
  while (head < pending.size()) {
    while (head < pending.size() && !is_global(*pending[head])) {
      r.executed_order.push_back(pending[head++]->id);
    }
    if (head == pending.size()) break;

    const Gate& anchor = *pending[head++];
    const Partition site = sites.site(anchor);
    const QubitRef moved = remote_qubit(anchor, site);
    const Role role = role_for(anchor, site);
    const MigrationState mig{moved};

    r.events.push_back({anchor.id, role, moved.partition, site, TeleportKind::Migrate, r.executed_order.size()});
    r.executed_order.push_back(anchor.id);

    std::vector<const Gate*> left;
    for (std::size_t i = head; i < pending.size(); ++i) {
      const Gate& g = *pending[i];
      bool run = !non_execute(mig, anchor, g, sites);
      if (run) {
        for (auto k = left.rbegin(); k != left.rend(); ++k) {
          if (non_commute(g, **k, mode)) {
            run = false;
            break;
          }
        }
      }
      if (run) {
        r.executed_order.push_back(g.id);
      } else {
        left.push_back(&g);
      }
    }
    pending = std::move(left);
    head = 0;

    if (options.final_return || !pending.empty()) {
      r.events.push_back({anchor.id, role, site, moved.partition, TeleportKind::Return, r.executed_order.size()});
    }
  }
  r.n_t = r.events.size();
  return r;
}

/// Replays a schedule and reports every rule it breaks: executed_order must
/// be a permutation of the gate ids, migrations and returns must alternate
/// with at most one qubit away, local gates may not touch the migrated qubit,
/// each global gate must run at its site with its remote qubit present, and a
/// gate may overtake a pending earlier gate only if the two commute.
inline std::vector<std::string> check_replay(const Circuit& c, const ConfigArr& cfg, const ScheduleResult& r,
                                             CommuteMode mode = CommuteMode::Strict,
                                             ScheduleOptions options = {}) {
  std::vector<std::string> out;
  const SiteMap sites(c, cfg);

  if (r.n_t != r.events.size()) out.push_back("n_t does not match the number of events");

  std::vector<std::size_t> sorted = r.executed_order;
  std::sort(sorted.begin(), sorted.end());
  bool permutation = sorted.size() == c.gates.size();
  for (std::size_t i = 0; permutation && i < sorted.size(); ++i) permutation = sorted[i] == c.gates[i].id;
  if (!permutation) {
    out.push_back("executed_order is not a permutation of the gate ids");
    return out;
  }

  std::vector<bool> done(c.gates.size() + 1, false);
  MigrationState mig;
  std::size_t next_event = 0;

  auto apply_events = [&](std::size_t step) {
    while (next_event < r.events.size() && r.events[next_event].executed_before == step) {
      const TeleportEvent& e = r.events[next_event++];
      const Gate& g = c.gate(e.gate_id);
      if (!is_global(g)) {
        out.push_back("teleport attributed to non-global gate g" + std::to_string(e.gate_id));
        continue;
      }
      const auto& cx = *g.cnot();
      const QubitRef q = e.role == Role::Control ? cx.control : cx.target;
      if (e.from == e.to) out.push_back("teleport with from == to at g" + std::to_string(e.gate_id));
      if (e.kind == TeleportKind::Migrate) {
        if (!mig.empty()) out.push_back("second migration while " + to_string(*mig.qubit) + " is away");
        if (e.from != q.partition) out.push_back("migration of " + to_string(q) + " does not start at home");
        mig.qubit = q;
      } else {
        if (mig.empty() || *mig.qubit != q) {
          out.push_back("return of " + to_string(q) + " which is not migrated");
        } else if (e.to != q.partition) {
          out.push_back("return of " + to_string(q) + " does not go home");
        }
        mig.qubit.reset();
      }
    }
  };

  for (std::size_t step = 0; step < r.executed_order.size(); ++step) {
    apply_events(step);
    const Gate& g = c.gate(r.executed_order[step]);
    const std::string name = "g" + std::to_string(g.id);
    if (is_global(g)) {
      const Partition site = sites.site(g);
      if (mig.empty() || *mig.qubit != remote_qubit(g, site)) {
        out.push_back(name + " runs without its remote qubit at P" + std::to_string(index_of(site)));
      }
    } else if (!mig.empty() && g.acts_on(*mig.qubit)) {
      out.push_back(name + " is local but touches the migrated qubit");
    }
    for (const Gate& earlier : c.gates) {
      if (earlier.id >= g.id) break;
      if (!done[earlier.id] && non_commute(g, earlier, mode)) {
        out.push_back(name + " overtakes non-commuting g" + std::to_string(earlier.id));
      }
    }
    done[g.id] = true;
  }
  apply_events(r.executed_order.size());
  if (next_event != r.events.size()) out.push_back("events out of order or past the end of the schedule");
  if (options.final_return && !mig.empty()) out.push_back("qubit " + to_string(*mig.qubit) + " never returns");
  return out;
}

}  // namespace dqc
