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

// Command-line front end. Exit codes: 0 success, 1 parse/validation or usage
// error, 2 a size cap was exceeded, 3 schedule verification failed.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqc/circuit.hpp"
#include "dqc/commute.hpp"
#include "dqc/io.hpp"
#include "dqc/oracle.hpp"
#include "dqc/schedule.hpp"
#include "dqc/search.hpp"

namespace dqc {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitCap = 2, kExitVerifyFailed = 3 };

namespace detail {

inline CircuitDocument load_circuit(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Teleportation-cost optimizer for two-partition distributed circuits", "dqcopt"};
  app.require_subcommand(1);

  std::string file;
  std::string mode = "strict";
  std::string output = "table";
  bool all_configs = false;
  bool verify = false;
  bool no_final_return = false;
  std::size_t max_global = kDefaultMaxGlobal;
  unsigned jobs = 1;
  std::size_t limit = OracleOptions{}.state_limit;
  std::optional<std::uint64_t> pinned;

  auto* opt_cmd = app.add_subcommand("optimize", "Search every execution-site configuration");
  opt_cmd->add_option("file", file, ".dqc circuit")->required();
  opt_cmd->add_option("--mode", mode, "Commutation rule for CNOT targets")
      ->check(CLI::IsMember({"strict", "relaxed"}));
  opt_cmd->add_flag("--all-configs", all_configs, "Print one row per configuration instead of the best only");
  opt_cmd->add_option("--output", output, "Report format")->check(CLI::IsMember({"table", "machine"}));
  opt_cmd->add_option("--max-global", max_global, "Refuse circuits with more global gates than this");
  opt_cmd->add_flag("--verify", verify, "Check the best schedule against the circuit unitary");
  opt_cmd->add_flag("--no-final-return", no_final_return, "Do not count the last return teleport (experimental)");
  opt_cmd->add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  auto* check_cmd = app.add_subcommand("check", "Parse and validate a circuit");
  check_cmd->add_option("file", file, ".dqc circuit")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact minimum by exhaustive search (small circuits)");
  oracle_cmd->add_option("file", file, ".dqc circuit")->required();
  oracle_cmd->add_option("--mode", mode, "Commutation rule for CNOT targets")
      ->check(CLI::IsMember({"strict", "relaxed"}));
  oracle_cmd->add_option("--limit", limit, "Explored-state budget");
  oracle_cmd->add_option("--config", pinned, "Pin the configuration index instead of minimizing over all");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dqcopt: " << e.what() << "\n";
    return kExitInvalid;
  }

  CircuitDocument doc;
  try {
    doc = detail::load_circuit(file);
  } catch (const ParseError& e) {
    err << file << ":" << e.line() << ":" << e.column() << ": error: " << e.message() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << "dqcopt: " << e.what() << "\n";
    return kExitInvalid;
  }
  const Circuit& c = doc.circuit;

  if (const auto violations = validate(c); !violations.empty()) {
    for (const auto& v : violations) {
      err << file;
      if (v.gate_id != 0) err << ":" << doc.location_of(v.gate_id).line;
      err << ": error: " << v.message << "\n";
    }
    return kExitInvalid;
  }

  try {
    if (check_cmd->parsed()) {
      out << "ok: " << c.width() << " qubits (" << c.partition_sizes[0] << "+" << c.partition_sizes[1] << "), "
          << c.size() << " gates, " << global_gates(c).size() << " global\n";
      return kExitOk;
    }

    if (oracle_cmd->parsed()) {
      OracleOptions o;
      o.mode = commute_mode_from(mode);
      o.state_limit = limit;
      if (pinned) o.config = config_from_index(*pinned, global_gates(c).size());
      const OracleResult r = brute_force_min(c, o);
      std::string seq = sequence_string(r.witness);
      out << "min n_t: " << r.min_n_t << "\n";
      out << "config: " << to_string(r.config) << "\n";
      out << "witness: " << (seq.empty() ? "—" : seq) << "\n";
      out << "explored states: " << r.explored_states << "\n";
      return kExitOk;
    }

    OptimizeOptions o;
    o.mode = commute_mode_from(mode);
    o.max_global = max_global;
    o.schedule.final_return = !no_final_return;
    o.workers = jobs;
    const OptimizationReport rep = optimize(c, o);
    const ReportFormat format = report_format_from(output);

    bool passed = true;
    if (verify) passed = verify_schedule(c, rep.best().result);

    if (format == ReportFormat::Machine && verify) {
      auto doc_json = nlohmann::ordered_json::parse(render_report(rep, format));
      doc_json["verification"] = passed ? "pass" : "fail";
      out << doc_json.dump(2) << "\n";
    } else {
      out << render_report(rep, format, {all_configs});
      if (verify) {
        out << "verification: " << (passed ? "pass" : "FAIL")
            << " (best schedule vs input order, up to global phase)\n";
      }
    }
    if (!passed) {
      err << "dqcopt: best schedule is not equivalent to the input circuit\n";
      return kExitVerifyFailed;
    }
    return kExitOk;
  } catch (const CapExceeded& e) {
    err << "dqcopt: " << e.what() << "\n";
    return kExitCap;
  } catch (const Error& e) {
    err << "dqcopt: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace dqc
