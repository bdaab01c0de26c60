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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dqc/corpus.hpp"
#include "dqc/oracle.hpp"
#include "dqc/search.hpp"
#include "test_support.hpp"

using namespace dqc;
using dqc::testing::p0;
using dqc::testing::p1;
using dqc::testing::example_circuit;

namespace {

DenseMatrix load_unitary_fixture(const std::string& rel) {
  std::ifstream in(dqc::testing::source_path(rel));
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tok;
    rows.emplace_back();
    while (ss >> tok) {
      const auto comma = tok.find(',');
      rows.back().emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
  }
  DenseMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i].at(j);
  }
  return m;
}

/// Circuit whose Z on a CNOT target gets reordered in Relaxed mode only.
Circuit theta_pi_circuit() {
  Circuit c(2, 2);
  c.add_cnot(p0(0), p1(0)).add_cnot(p0(1), p1(1)).add_gate("Z", p1(1));
  return c;
}

}  // namespace

TEST(BruteForceMin, ExampleCircuit) {
  for (auto mode : {CommuteMode::Strict, CommuteMode::Relaxed}) {
    OracleOptions o;
    o.mode = mode;
    const auto r = brute_force_min(example_circuit(), o);
    EXPECT_EQ(r.min_n_t, 4U);
    EXPECT_EQ(r.witness.n_t, 4U);
    EXPECT_TRUE(check_replay(example_circuit(), r.config, r.witness, mode).empty());
  }
}

TEST(BruteForceMin, PinnedConfigurations) {
  OracleOptions o;
  o.config = config_from_index(24, 5);
  EXPECT_EQ(brute_force_min(example_circuit(), o).min_n_t, 4U);
  o.config = config_from_index(9, 5);
  const auto r9 = brute_force_min(example_circuit(), o);
  EXPECT_LE(r9.min_n_t, 8U);
  EXPECT_EQ(r9.config, *o.config);
  EXPECT_TRUE(check_replay(example_circuit(), r9.config, r9.witness).empty());
}

TEST(BruteForceMin, TrivialCircuits) {
  Circuit local(2, 2);
  local.add_cnot(p0(0), p0(1)).add_gate("H", p1(1));
  EXPECT_EQ(brute_force_min(local).min_n_t, 0U);
  const auto lr = brute_force_min(local);
  EXPECT_TRUE(lr.witness.events.empty());
  EXPECT_TRUE(check_replay(local, lr.config, lr.witness).empty());

  Circuit one(1, 1);
  one.add_cnot(p0(0), p1(0));
  const auto r = brute_force_min(one);
  EXPECT_EQ(r.min_n_t, 2U);
  ASSERT_EQ(r.witness.events.size(), 2U);
  EXPECT_EQ(r.witness.events[0].kind, TeleportKind::Migrate);
  EXPECT_EQ(r.witness.events[1].kind, TeleportKind::Return);

  Circuit empty(1, 1);
  EXPECT_EQ(brute_force_min(empty).min_n_t, 0U);
}

TEST(BruteForceMin, Deterministic) {
  const auto a = brute_force_min(example_circuit());
  const auto b = brute_force_min(example_circuit());
  EXPECT_EQ(a.min_n_t, b.min_n_t);
  EXPECT_EQ(a.explored_states, b.explored_states);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(BruteForceMin, Caps) {
  OracleOptions o;
  o.state_limit = 3;
  EXPECT_THROW(brute_force_min(example_circuit(), o), BudgetExceeded);

  Circuit big(2, 2);
  for (int i = 0; i < 13; ++i) big.add_gate("H", p0(0));
  EXPECT_THROW(brute_force_min(big), CapExceeded);

  Circuit many(1, 1);
  for (int i = 0; i < 7; ++i) many.add_cnot(p0(0), p1(0));
  EXPECT_THROW(brute_force_min(many), CapExceeded);
}

TEST(BruteForceMin, FreeSearchIsMinimumOverConfigurations) {
  for (const Circuit& c : random_corpus(8080, 60)) {
    const std::size_t m_g = global_gates(c).size();
    std::size_t best = SIZE_MAX;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << m_g); ++i) {
      OracleOptions o;
      o.config = config_from_index(i, m_g);
      const auto pinned = brute_force_min(c, o);
      best = std::min(best, pinned.min_n_t);
      EXPECT_GE(min_teleportation(c, *o.config).n_t, pinned.min_n_t);
    }
    const auto free = brute_force_min(c);
    EXPECT_EQ(free.min_n_t, best);
    EXPECT_TRUE(check_replay(c, free.config, free.witness).empty());
  }
}

TEST(BruteForceMin, GreedyAnchorIsNotAlwaysOptimal) {
  // The scheduler always migrates for the first pending global gate. Here g3
  // could share g1's migration of p1:0, but g2 blocks it; serving g2 first
  // lets one round trip cover both g1 and g3.
  Circuit c(2, 2);
  c.add_cnot(p0(1), p1(0)).add_cnot(p1(1), p0(0)).add_cnot(p0(0), p1(0));
  const ConfigArr cfg = ConfigArr::from_bits({0, 0, 0});
  EXPECT_EQ(min_teleportation(c, cfg).n_t, 6U);
  OracleOptions o;
  o.config = cfg;
  const auto r = brute_force_min(c, o);
  EXPECT_EQ(r.min_n_t, 4U);
  ASSERT_EQ(r.witness.migrations().size(), 2U);
  EXPECT_EQ(to_string(r.witness.migrations()[0]), "g2(C)");
  EXPECT_TRUE(check_replay(c, cfg, r.witness).empty());
  EXPECT_TRUE(verify_schedule(c, r.witness));
}

TEST(CircuitUnitary, SelfInverseSequences) {
  Circuit xx(1, 1);
  xx.add_gate("X", p0(0)).add_gate("X", p0(0));
  EXPECT_LE(max_norm_diff(circuit_unitary(xx, input_order(xx)).entries(), DenseMatrix::identity(4).entries()),
            kTolerance);

  Circuit cc(2, 1);
  cc.add_cnot(p0(1), p1(0)).add_cnot(p0(1), p1(0));
  EXPECT_LE(max_norm_diff(circuit_unitary(cc, input_order(cc)).entries(), DenseMatrix::identity(8).entries()),
            kTolerance);
}

TEST(CircuitUnitary, ExampleCircuitMatchesFixture) {
  const DenseMatrix want = load_unitary_fixture("tests/fixtures/example_unitary.txt");
  ASSERT_EQ(want.dim(), 16U);
  const Circuit c = example_circuit();
  EXPECT_LE(max_norm_diff(circuit_unitary(c, input_order(c)).entries(), want.entries()), kTolerance);
}

TEST(CircuitUnitary, AgreesWithKroneckerEmbedding) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Circuit c(2, 2);
    for (std::size_t k = 1; k <= 4; ++k) {
      Gate g = dqc::testing::sample_gate(rng, k);
      c.gates.push_back(g);
    }
    auto index = [&](QubitRef q) { return c.global_index(q); };
    SparseOperator prod = embed_gate(c.gates[0], 4, index);
    for (std::size_t k = 1; k < c.gates.size(); ++k) prod = embed_gate(c.gates[k], 4, index) * prod;
    const DenseMatrix u = circuit_unitary(c, input_order(c));
    for (std::size_t i = 0; i < 16; ++i) {
      for (std::size_t j = 0; j < 16; ++j) EXPECT_LE(std::abs(u(i, j) - prod.at(i, j)), kTolerance);
    }
  }
}

TEST(CircuitUnitary, QubitCap) {
  Circuit c(6, 5);
  c.add_gate("H", p0(0));
  EXPECT_THROW(circuit_unitary(c, input_order(c)), CapExceeded);
}

TEST(VerifySchedule, IdentityAndBadSwap) {
  Circuit c(2, 1);
  // CNOT(a->b) then CNOT(b->c): third output b^c vs a^b^c when swapped
  c.add_cnot(p0(0), p0(1)).add_cnot(p0(1), p1(0));
  ScheduleResult r;
  r.executed_order = {1, 2};
  EXPECT_TRUE(verify_schedule(c, r));
  r.executed_order = {2, 1};
  EXPECT_FALSE(verify_schedule(c, r));
}

TEST(VerifySchedule, EveryStrictExampleSchedule) {
  const Circuit c = example_circuit();
  for (const auto& row : optimize(c).per_config) EXPECT_TRUE(verify_schedule(c, row.result)) << row.index;
}

TEST(VerifySchedule, ThetaPiReorderBreaksEquivalence) {
  const Circuit c = theta_pi_circuit();
  const ConfigArr cfg = ConfigArr::from_bits({1, 0});

  const auto strict = min_teleportation(c, cfg, CommuteMode::Strict);
  EXPECT_EQ(strict.executed_order, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_TRUE(verify_schedule(c, strict));

  const auto relaxed = min_teleportation(c, cfg, CommuteMode::Relaxed);
  EXPECT_EQ(relaxed.executed_order, (std::vector<std::size_t>{1, 3, 2}));
  EXPECT_FALSE(verify_schedule(c, relaxed));
  const auto conflicts = strict_reorder_conflicts(c, relaxed.executed_order);
  ASSERT_EQ(conflicts.size(), 1U);
  EXPECT_EQ(conflicts[0], (std::pair<std::size_t, std::size_t>{2, 3}));
  EXPECT_TRUE(is_theta_pi_pair(c.gate(2), c.gate(3)));
  EXPECT_FALSE(is_theta_pi_pair(c.gate(1), c.gate(2)));
}

TEST(VerifySchedule, StrictCorpus) {
  for (const Circuit& c : random_corpus(1234, 120)) {
    const auto rep = optimize(c);
    for (const auto& row : rep.per_config) EXPECT_TRUE(verify_schedule(c, row.result));
  }
}
