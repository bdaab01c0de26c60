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

// The .dqc circuit text format and report rendering.
//
//   qubits <n0> <n1>
//   cnot p<P>:<j> p<P>:<j>          control first
//   <name> p<P>:<j>                 I X Y Z H T
//   <rot>(<radians>) p<P>:<j>       RX RY RZ
//   u p<P>:<j> [a, b; c, d]         raw 2x2 unitary, complex literals
//
// '#' starts a comment. Keywords are case-insensitive. Gate ids follow line
// order starting at 1. See docs/dqc-format.md for the full grammar.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "dqc/circuit.hpp"
#include "dqc/search.hpp"

namespace dqc {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

struct CircuitDocument {
  std::string source;
  Circuit circuit;
  std::vector<SourceLocation> locations;  ///< gate id k lives at locations[k-1]

  const SourceLocation& location_of(std::size_t gate_id) const { return locations.at(gate_id - 1); }
};

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

/// Parses one real number with an optional sign at `pos`, advancing it.
inline std::optional<double> read_real(std::string_view s, std::size_t& pos) {
  std::size_t p = pos;
  bool negative = false;
  if (p < s.size() && (s[p] == '+' || s[p] == '-')) negative = s[p++] == '-';
  double value = 0.0;
  auto [end, ec] = std::from_chars(s.data() + p, s.data() + s.size(), value);
  if (ec != std::errc{} || end == s.data() + p) return std::nullopt;
  pos = static_cast<std::size_t>(end - s.data());
  return negative ? -value : value;
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, `a+i` (no whitespace).
inline std::optional<Complex> parse_complex(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;

  auto imaginary_tail = [&](std::size_t& p) -> std::optional<double> {
    // sign is mandatory here unless at the very start
    bool negative = false;
    std::size_t q = p;
    if (q < s.size() && (s[q] == '+' || s[q] == '-')) negative = s[q++] == '-';
    if (q < s.size() && (s[q] == 'i' || s[q] == 'I')) {
      p = q + 1;
      return negative ? -1.0 : 1.0;
    }
    return std::nullopt;
  };

  if (auto unit = imaginary_tail(pos); unit && pos == s.size()) return Complex{0.0, *unit};
  pos = 0;
  auto first = read_real(s, pos);
  if (!first) return std::nullopt;
  if (pos == s.size()) return Complex{*first, 0.0};
  if ((s[pos] == 'i' || s[pos] == 'I') && pos + 1 == s.size()) return Complex{0.0, *first};
  if (s[pos] != '+' && s[pos] != '-') return std::nullopt;

  if (auto unit = imaginary_tail(pos); unit) {
    if (pos != s.size()) return std::nullopt;
    return Complex{*first, *unit};
  }
  auto second = read_real(s, pos);
  if (!second || pos + 1 != s.size() || (s[pos] != 'i' && s[pos] != 'I')) return std::nullopt;
  return Complex{*first, *second};
}

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  std::size_t column() const { return pos_ + 1; }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg, std::optional<std::size_t> column = std::nullopt) const {
    throw ParseError(line_, column.value_or(this->column()), msg);
  }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char ch) {
    skip_ws();
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  std::size_t unsigned_int(const char* what) {
    skip_ws();
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc{} || end == text_.data() + pos_) fail(std::string("expected ") + what);
    pos_ = static_cast<std::size_t>(end - text_.data());
    return value;
  }

  double real(const char* what) {
    skip_ws();
    std::size_t p = pos_;
    auto v = read_real(text_, p);
    if (!v) fail(std::string("expected ") + what);
    pos_ = p;
    return *v;
  }

  /// `p<P>:<j>`
  QubitRef qubit(const Circuit& c) {
    skip_ws();
    const std::size_t col = column();
    if (peek() != 'p' && peek() != 'P') fail("expected qubit reference p<partition>:<index>");
    ++pos_;
    const std::size_t p = unsigned_int("partition number");
    if (p > 1) fail("partition must be p0 or p1", col);
    if (peek() != ':') fail("expected ':' in qubit reference");
    ++pos_;
    const std::size_t j = unsigned_int("qubit index");
    const QubitRef q{static_cast<Partition>(p), j};
    if (j >= c.partition_size(q.partition)) {
      fail("qubit " + to_string(q) + " out of range (p" + std::to_string(p) + " has " +
               std::to_string(c.partition_size(q.partition)) + " qubits)",
           col);
    }
    return q;
  }

  /// `[a, b; c, d]`, whitespace anywhere inside the brackets.
  Matrix2 matrix() {
    skip_ws();
    const std::size_t col = column();
    expect('[');
    const std::size_t close = text_.find(']', pos_);
    if (close == std::string_view::npos) fail("unterminated matrix, expected ']'");
    std::string body;
    for (char ch : text_.substr(pos_, close - pos_)) {
      if (!std::isspace(static_cast<unsigned char>(ch))) body += ch;
    }
    pos_ = close + 1;

    Matrix2 m;
    std::size_t row = 0;
    std::size_t start = 0;
    for (std::string_view rows = body;;) {
      const std::size_t semi = rows.find(';', start);
      std::string_view r = rows.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
      const std::size_t comma = r.find(',');
      if (row >= 2 || comma == std::string_view::npos || r.find(',', comma + 1) != std::string_view::npos) {
        fail("matrix must be [a, b; c, d]", col);
      }
      for (std::size_t k = 0; k < 2; ++k) {
        const std::string_view lit = k == 0 ? r.substr(0, comma) : r.substr(comma + 1);
        auto z = parse_complex(lit);
        if (!z) fail("bad complex literal '" + std::string(lit) + "'", col);
        m(row, k) = *z;
      }
      ++row;
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    if (row != 2) fail("matrix must be [a, b; c, d]", col);
    return m;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace detail

inline CircuitDocument parse_circuit(std::string_view text) {
  CircuitDocument doc;
  doc.source = std::string(text);
  bool have_header = false;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t nl = text.find('\n', begin);
    std::string_view line = text.substr(begin, nl == std::string_view::npos ? std::string_view::npos : nl - begin);
    begin = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    detail::LineCursor cur(line, line_no);
    if (cur.at_end()) continue;
    const std::size_t key_col = cur.column();
    const std::string key = detail::lower(cur.word());
    if (key.empty()) cur.fail("expected a keyword");

    if (!have_header) {
      if (key != "qubits") cur.fail("first statement must be 'qubits <n0> <n1>'", key_col);
      const std::size_t n0 = cur.unsigned_int("size of p0");
      const std::size_t n1 = cur.unsigned_int("size of p1");
      if (n0 == 0 || n1 == 0) cur.fail("partition sizes must be positive", key_col);
      doc.circuit = Circuit(n0, n1);
      have_header = true;
    } else if (key == "qubits") {
      cur.fail("duplicate 'qubits' statement", key_col);
    } else if (key == "cnot") {
      const QubitRef control = cur.qubit(doc.circuit);
      const std::size_t tcol = (cur.skip_ws(), cur.column());
      const QubitRef target = cur.qubit(doc.circuit);
      if (control == target) cur.fail("CNOT control equals target " + to_string(control), tcol);
      doc.circuit.add_cnot(control, target);
    } else if (key == "u") {
      const QubitRef target = cur.qubit(doc.circuit);
      const std::size_t mcol = (cur.skip_ws(), cur.column());
      const Matrix2 m = cur.matrix();
      if (!is_unitary(m)) {
        cur.fail("matrix is not unitary (max-norm of U^dagger U - I is " + std::to_string(unitarity_defect(m)) + ")",
                 mcol);
      }
      doc.circuit.add_unitary(m, target);
    } else {
      std::optional<double> angle;
      cur.skip_ws();
      if (cur.peek() == '(') {
        cur.expect('(');
        angle = cur.real("angle in radians");
        cur.expect(')');
      }
      try {
        (void)named_gate(key, angle);
      } catch (const Error& e) {
        cur.fail(e.what(), key_col);
      }
      const QubitRef target = cur.qubit(doc.circuit);
      doc.circuit.add_gate(key, target, angle);
    }
    if (!cur.at_end()) cur.fail("unexpected trailing text");
    if (key != "qubits") doc.locations.push_back({line_no, key_col});
  }
  if (!have_header) throw ParseError(1, 1, "missing 'qubits <n0> <n1>' statement");
  return doc;
}

/// Writes `c` in the .dqc format; parse_circuit of the result equals `c`.
inline std::string serialize_circuit(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.partition_sizes[0]) + " " + std::to_string(c.partition_sizes[1]) + "\n";
  for (const Gate& g : c.gates) {
    if (const auto* cx = g.cnot()) {
      out += "cnot " + to_string(cx->control) + " " + to_string(cx->target) + "\n";
      continue;
    }
    const auto& s = *g.single();
    if (s.name == "U") {
      out += "u " + to_string(s.target) + " [" + detail::format_complex(s.matrix(0, 0)) + ", " +
             detail::format_complex(s.matrix(0, 1)) + "; " + detail::format_complex(s.matrix(1, 0)) + ", " +
             detail::format_complex(s.matrix(1, 1)) + "]\n";
    } else {
      out += detail::lower(s.name);
      if (s.angle) out += "(" + detail::format_real(*s.angle) + ")";
      out += " " + to_string(s.target) + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

enum class ReportFormat { Table, Machine };

inline ReportFormat report_format_from(std::string_view s) {
  if (s == "table") return ReportFormat::Table;
  if (s == "machine") return ReportFormat::Machine;
  throw Error("unknown output format '" + std::string(s) + "' (expected table|machine)");
}

struct RenderOptions {
  bool all_configs = true;  ///< table only; machine output always lists every configuration
};

/// "60%" when exact, otherwise two decimals.
inline std::string improvement_percent(const OptimizationReport& rep) {
  if (rep.worst_n_t == 0) return "0%";
  const std::size_t num = (rep.worst_n_t - rep.best_n_t()) * 100;
  if (num % rep.worst_n_t == 0) return std::to_string(num / rep.worst_n_t) + "%";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * rep.improvement());
  return buf;
}

inline std::string table_row(const ConfigResult& row) {
  std::string seq = sequence_string(row.result);
  if (seq.empty()) seq = "—";
  return std::to_string(row.index) + " | " + seq + " | " + std::to_string(row.result.n_t);
}

namespace detail {

inline nlohmann::ordered_json to_json(const ConfigResult& row) {
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const auto& e : row.result.events) {
    events.push_back({{"gate", e.gate_id},
                      {"role", e.role == Role::Control ? "C" : "T"},
                      {"from", index_of(e.from)},
                      {"to", index_of(e.to)},
                      {"kind", e.kind == TeleportKind::Migrate ? "migrate" : "return"},
                      {"executed_before", e.executed_before}});
  }
  return {{"config_index", row.index},
          {"config", row.config.bits()},
          {"n_t", row.result.n_t},
          {"sequence", sequence_string(row.result)},
          {"events", std::move(events)},
          {"executed_order", row.result.executed_order}};
}

}  // namespace detail

inline std::string render_report(const OptimizationReport& rep, ReportFormat format, RenderOptions opt = {}) {
  if (format == ReportFormat::Machine) {
    nlohmann::ordered_json doc;
    doc["format"] = "dqcopt-report";
    doc["version"] = 1;
    doc["mode"] = std::string(to_string(rep.mode));
    doc["m_g"] = rep.m_g;
    doc["best"] = {{"config_index", rep.best_index}, {"n_t", rep.best_n_t()}};
    doc["worst_n_t"] = rep.worst_n_t;
    doc["improvement"] = rep.improvement();
    doc["configurations"] = nlohmann::ordered_json::array();
    for (const auto& row : rep.per_config) doc["configurations"].push_back(detail::to_json(row));
    return doc.dump(2) + "\n";
  }

  std::string out = "config | teleportations | n_t\n";
  if (opt.all_configs) {
    for (const auto& row : rep.per_config) out += table_row(row) + "\n";
  } else {
    out += table_row(rep.best()) + "\n";
  }
  out += "\n";
  out += "mode: " + std::string(to_string(rep.mode)) + "\n";
  out += "best config: " + std::to_string(rep.best_index) + " " + to_string(rep.best().config) + "\n";
  out += "best n_t: " + std::to_string(rep.best_n_t()) + "\n";
  out += "worst n_t: " + std::to_string(rep.worst_n_t) + "\n";
  out += "improvement: " + improvement_percent(rep) + "\n";
  return out;
}

/// Inverse of render_report(..., Machine).
inline OptimizationReport parse_machine_report(std::string_view text) {
  OptimizationReport rep;
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("format") != "dqcopt-report") throw Error("not a dqcopt report");
    rep.mode = commute_mode_from(doc.at("mode").get<std::string>());
    rep.m_g = doc.at("m_g").get<std::size_t>();
    rep.best_index = doc.at("best").at("config_index").get<std::uint64_t>();
    rep.worst_n_t = doc.at("worst_n_t").get<std::size_t>();
    for (const auto& row : doc.at("configurations")) {
      ConfigResult cr;
      cr.index = row.at("config_index").get<std::uint64_t>();
      cr.config = ConfigArr::from_bits(row.at("config").get<std::vector<int>>());
      cr.result.n_t = row.at("n_t").get<std::size_t>();
      cr.result.executed_order = row.at("executed_order").get<std::vector<std::size_t>>();
      for (const auto& e : row.at("events")) {
        TeleportEvent ev;
        ev.gate_id = e.at("gate").get<std::size_t>();
        ev.role = e.at("role") == "C" ? Role::Control : Role::Target;
        ev.from = partition_from_index(e.at("from").get<int>());
        ev.to = partition_from_index(e.at("to").get<int>());
        ev.kind = e.at("kind") == "migrate" ? TeleportKind::Migrate : TeleportKind::Return;
        ev.executed_before = e.at("executed_before").get<std::size_t>();
        cr.result.events.push_back(ev);
      }
      rep.per_config.push_back(std::move(cr));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  if (rep.per_config.size() != (std::size_t{1} << rep.m_g) || rep.best_index >= rep.per_config.size()) {
    throw Error("malformed report: configuration count does not match m_g");
  }
  return rep;
}

}  // namespace dqc
