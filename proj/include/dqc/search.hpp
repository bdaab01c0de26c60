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

// Exhaustive search over all 2^m_g execution-site configurations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/commute.hpp"
#include "dqc/schedule.hpp"

namespace dqc {

inline constexpr std::size_t kDefaultMaxGlobal = 20;

/// Bit 0 of the configuration is the most significant binary digit of `index`,
/// so index 24 with five global gates is {1,1,0,0,0}.
inline ConfigArr config_from_index(std::uint64_t index, std::size_t m_g) {
  if (m_g >= 64 || index >= (std::uint64_t{1} << m_g)) {
    throw Error("configuration index " + std::to_string(index) + " out of range for " + std::to_string(m_g) +
                " global gates");
  }
  ConfigArr cfg;
  cfg.sites.reserve(m_g);
  for (std::size_t k = 0; k < m_g; ++k) {
    cfg.sites.push_back(partition_from_index(static_cast<int>((index >> (m_g - 1 - k)) & 1U)));
  }
  return cfg;
}

struct ConfigResult {
  std::uint64_t index = 0;
  ConfigArr config;
  ScheduleResult result;

  friend bool operator==(const ConfigResult&, const ConfigResult&) = default;
};

struct OptimizationReport {
  CommuteMode mode = CommuteMode::Strict;
  std::size_t m_g = 0;
  std::vector<ConfigResult> per_config;  ///< indexed by configuration number
  std::uint64_t best_index = 0;
  std::size_t worst_n_t = 0;

  const ConfigResult& best() const { return per_config.at(best_index); }
  std::size_t best_n_t() const { return best().result.n_t; }

  /// (worst - best) / worst, or 0 when worst is 0.
  double improvement() const {
    return worst_n_t == 0 ? 0.0
                          : static_cast<double>(worst_n_t - best_n_t()) / static_cast<double>(worst_n_t);
  }

  friend bool operator==(const OptimizationReport&, const OptimizationReport&) = default;
};

struct OptimizeOptions {
  CommuteMode mode = CommuteMode::Strict;
  std::size_t max_global = kDefaultMaxGlobal;
  ScheduleOptions schedule;
  unsigned workers = 1;  ///< 0 picks std::thread::hardware_concurrency()
};

/// Runs the scheduler on every configuration and keeps the cheapest, breaking
/// ties by the lowest configuration index. Workers take interleaved indices
/// and write into preallocated slots, so the report does not depend on the
/// worker count.
inline OptimizationReport optimize(const Circuit& c, const OptimizeOptions& options = {}) {
  const std::size_t m_g = global_gates(c).size();
  if (m_g > options.max_global || m_g >= 63) {
    throw CapExceeded("circuit has " + std::to_string(m_g) + " global gates; exhaustive search is capped at " +
                      std::to_string(options.max_global) + " (2^m_g configurations). Raise --max-global to proceed.");
  }
  const std::uint64_t count = std::uint64_t{1} << m_g;

  OptimizationReport rep;
  rep.mode = options.mode;
  rep.m_g = m_g;
  rep.per_config.resize(count);

  std::vector<std::exception_ptr> failures(count);
  auto run_range = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t i = first; i < count; i += stride) {
      try {
        ConfigArr cfg = config_from_index(i, m_g);
        ScheduleResult r = min_teleportation(c, cfg, options.mode, options.schedule);
        rep.per_config[i] = {i, std::move(cfg), std::move(r)};
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  unsigned workers = options.workers == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.workers;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
  }

  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  for (const auto& entry : rep.per_config) {
    if (entry.result.n_t < rep.per_config[rep.best_index].result.n_t) rep.best_index = entry.index;
    rep.worst_n_t = std::max(rep.worst_n_t, entry.result.n_t);
  }
  return rep;
}

}  // namespace dqc
