// Copyright 2026 The cosmopair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cosmopair {

enum class GateKind { X, H, S, Sdg, RZ, RX, CNOT };

inline std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::RZ: return "RZ";
    case GateKind::RX: return "RX";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

inline std::optional<GateKind> parse_gate_name(std::string_view s) {
  for (GateKind k : {GateKind::X, GateKind::H, GateKind::S, GateKind::Sdg, GateKind::RZ,
                     GateKind::RX, GateKind::CNOT}) {
    if (gate_name(k) == s) return k;
  }
  return std::nullopt;
}

inline bool is_rotation(GateKind k) { return k == GateKind::RZ || k == GateKind::RX; }
inline bool is_two_qubit(GateKind k) { return k == GateKind::CNOT; }

struct Gate {
  GateKind kind = GateKind::X;
  int q0 = 0;
  int q1 = -1;  // target for CNOT, unused otherwise
  double angle = 0.0;

  static Gate x(int q) { return {GateKind::X, q}; }
  static Gate h(int q) { return {GateKind::H, q}; }
  static Gate s(int q) { return {GateKind::S, q}; }
  static Gate sdg(int q) { return {GateKind::Sdg, q}; }
  static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
  static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, theta}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target}; }

  bool operator==(const Gate&) const = default;
};

inline std::string format_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

/// `GATE q[,q2][,angle]`, angles with 17 significant digits.
inline std::string to_text(const Gate& g) {
  std::string s(gate_name(g.kind));
  s += ' ';
  s += std::to_string(g.q0);
  if (is_two_qubit(g.kind)) s += ',' + std::to_string(g.q1);
  if (is_rotation(g.kind)) s += ',' + format_angle(g.angle);
  return s;
}

class Circuit {
 public:
  static constexpr int kMaxQubits = 20;

  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
      throw std::invalid_argument("Circuit: n_qubits must be in [1, 20]");
    }
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t gate_count() const { return gates_.size(); }

  Circuit& add(const Gate& g) {
    const auto valid = [this](int q) { return q >= 0 && q < n_qubits_; };
    if (!valid(g.q0) || (is_two_qubit(g.kind) && !valid(g.q1))) {
      throw std::out_of_range("Circuit: qubit index out of range in " + cosmopair::to_text(g));
    }
    if (is_two_qubit(g.kind) && g.q0 == g.q1) {
      throw std::invalid_argument("Circuit: control equals target in " + cosmopair::to_text(g));
    }
    gates_.push_back(g);
    return *this;
  }

  Circuit& append(const Circuit& other) {
    if (other.n_qubits_ != n_qubits_) {
      throw std::invalid_argument("Circuit: qubit count mismatch on append");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
  }

  std::size_t count(GateKind k) const {
    return static_cast<std::size_t>(
        std::count_if(gates_.begin(), gates_.end(), [k](const Gate& g) { return g.kind == k; }));
  }

  /// Layer count with every gate placed as early as its qubits allow.
  std::size_t depth() const {
    std::vector<std::size_t> level(static_cast<std::size_t>(n_qubits_), 0);
    std::size_t d = 0;
    for (const auto& g : gates_) {
      std::size_t l = level[g.q0];
      if (is_two_qubit(g.kind)) l = std::max(l, level[g.q1]);
      ++l;
      level[g.q0] = l;
      if (is_two_qubit(g.kind)) level[g.q1] = l;
      d = std::max(d, l);
    }
    return d;
  }

  void write_text(std::ostream& os) const {
    os << "QUBITS " << n_qubits_ << '\n';
    for (const auto& g : gates_) os << cosmopair::to_text(g) << '\n';
  }

  std::string to_text() const {
    std::ostringstream os;
    write_text(os);
    return os.str();
  }

  /// Inverse of write_text. Blank lines and lines starting with '#' are
  /// skipped, so metadata headers survive a round trip.
  static Circuit read_text(std::istream& is) {
    std::optional<Circuit> c;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      const auto fail = [&](const std::string& why) {
        return std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " + why);
      };
      const auto sp = line.find(' ');
      if (sp == std::string::npos) throw fail("missing operands");
      const std::string_view head(line.data(), sp);
      std::vector<std::string_view> fields;
      std::string_view rest(line.data() + sp + 1, line.size() - sp - 1);
      while (true) {
        const auto comma = rest.find(',');
        fields.push_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      const auto to_int = [&](std::string_view f) {
        int v = 0;
        auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc{} || p != f.data() + f.size()) throw fail("bad integer");
        return v;
      };
      const auto to_double = [&](std::string_view f) {
        double v = 0;
        auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc{} || p != f.data() + f.size()) throw fail("bad angle");
        return v;
      };
      if (head == "QUBITS") {
        if (c) throw fail("duplicate QUBITS line");
        c.emplace(to_int(fields.at(0)));
        continue;
      }
      if (!c) throw fail("gate before QUBITS line");
      const auto kind = parse_gate_name(head);
      if (!kind) throw fail("unknown gate '" + std::string(head) + "'");
      const std::size_t want = 1 + is_two_qubit(*kind) + is_rotation(*kind);
      if (fields.size() != want) throw fail("wrong operand count");
      Gate g{*kind, to_int(fields[0])};
      if (is_two_qubit(*kind)) g.q1 = to_int(fields[1]);
      if (is_rotation(*kind)) g.angle = to_double(fields.back());
      c->add(g);
    }
    if (!c) throw std::invalid_argument("circuit text: missing QUBITS line");
    return *std::move(c);
  }

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

}  // namespace cosmopair
