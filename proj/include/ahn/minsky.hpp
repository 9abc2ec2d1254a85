#pragma once

// Two-counter Minsky machines and their compilation into ad hoc network
// protocols running on a fixed logical topology.
//
// The topology is a control vertex plus one list of cells per counter. A
// cell is Z (zero) or NZ (non-zero); the value of a counter is its number of
// NZ cells, which always form a prefix of the list. The control starts a
// request wave on a list and waits for the answer:
//
//   increment   walks over NZ cells; the first Z cell turns NZ and acks back.
//   dec / test  walks over NZ cells; the first Z cell naks back. The last NZ
//               cell (the one receiving the nak) turns Z and acks back. A nak
//               reaching the control means the counter is zero.
//
// Every cell broadcast reaches both list neighbors; states guarantee only
// the intended one reacts. A wave running past the end of a list gets no
// answer and the run deadlocks, so the list lengths bound the counter values
// that can be simulated.
//
// In the butterfly variant every cell is also adjacent to the control, so the
// control talks only to the list heads (firstZ_i / firstNZ_i states) with
// dedicated messages, and ignores cell-to-cell traffic.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ahn/error.hpp"
#include "ahn/graph.hpp"
#include "ahn/protocol.hpp"
#include "ahn/protocol_parser.hpp"

namespace ahn {

struct Increment {
  int counter = 1;  // 1 or 2
  std::string next;

  friend bool operator==(const Increment&, const Increment&) = default;
};

// if c_i = 0 goto if_zero else c_i := c_i - 1; goto if_positive
struct DecrementOrTest {
  int counter = 1;
  std::string if_zero;
  std::string if_positive;

  friend bool operator==(const DecrementOrTest&, const DecrementOrTest&) = default;
};

using Instruction = std::variant<Increment, DecrementOrTest>;

class MinskyMachine {
 public:
  static constexpr std::string_view kInitialLabel = "L0";
  static constexpr std::string_view kHaltLabel = "LF";

  explicit MinskyMachine(std::vector<std::pair<std::string, Instruction>> program) : program_(std::move(program)) {
    std::set<std::string> defined;
    for (const auto& [label, instruction] : program_) {
      if (label == kHaltLabel) throw Error("the halting label LF cannot carry an instruction");
      if (!defined.insert(label).second) throw Error("label " + label + " is defined twice");
      const int counter = std::visit([](const auto& i) { return i.counter; }, instruction);
      if (counter != 1 && counter != 2) throw Error("label " + label + ": counters are c1 and c2");
    }
    auto known = [&](const std::string& l) { return l == kHaltLabel || defined.contains(l); };
    if (!known(std::string(kInitialLabel))) throw Error("the machine has no instruction at L0");
    for (const auto& [label, instruction] : program_)
      for (const auto& target : successors_of(instruction))
        if (!known(target)) throw Error("label " + label + " jumps to undefined label " + target);
  }

  // Instructions in declaration order.
  const std::vector<std::pair<std::string, Instruction>>& program() const noexcept { return program_; }

  const Instruction* find(std::string_view label) const {
    for (const auto& [l, i] : program_)
      if (l == label) return &i;
    return nullptr;
  }

  // Every label: declared ones in order, then LF.
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& [l, i] : program_) out.push_back(l);
    out.emplace_back(kHaltLabel);
    return out;
  }

  static std::vector<std::string> successors_of(const Instruction& i) {
    if (const auto* inc = std::get_if<Increment>(&i)) return {inc->next};
    const auto& dec = std::get<DecrementOrTest>(i);
    return {dec.if_zero, dec.if_positive};
  }

  friend bool operator==(const MinskyMachine&, const MinskyMachine&) = default;

 private:
  std::vector<std::pair<std::string, Instruction>> program_;
};

// machine [name] { L0: inc c1 -> L1; L1: dectest c1 ? LF : L2; ... }
inline MinskyMachine parse_machine(std::string_view text) {
  const auto tokens = detail::tokenize(text);
  std::size_t pos = 0;
  auto fail = [](const std::string& message, const detail::Token& at) -> void {
    throw ParseError(message, at.line, at.column);
  };
  auto next = [&]() -> const detail::Token& {
    const auto& t = tokens[pos];
    if (t.kind != detail::Token::Kind::end) ++pos;
    return t;
  };
  auto expect = [&](std::string_view punct) {
    const auto& t = next();
    if (t.kind != detail::Token::Kind::punct || t.text != punct) fail("expected '" + std::string(punct) + "'", t);
  };
  auto word = [&](std::string_view what) {
    const auto& t = next();
    if (t.kind != detail::Token::Kind::identifier) fail("expected " + std::string(what), t);
    return t.text;
  };
  auto counter = [&]() {
    const auto& t = next();
    if (t.kind != detail::Token::Kind::identifier || (t.text != "c1" && t.text != "c2"))
      fail("expected counter c1 or c2", t);
    return t.text == "c1" ? 1 : 2;
  };

  if (word("'machine'") != "machine") fail("expected 'machine'", tokens[0]);
  if (tokens[pos].kind == detail::Token::Kind::identifier) ++pos;  // optional name
  expect("{");
  std::vector<std::pair<std::string, Instruction>> program;
  while (!(tokens[pos].kind == detail::Token::Kind::punct && tokens[pos].text == "}")) {
    if (tokens[pos].kind == detail::Token::Kind::end) fail("unexpected end of input", tokens[pos]);
    const auto& at = tokens[pos];
    std::string label = word("label");
    expect(":");
    const std::string op = word("'inc' or 'dectest'");
    if (op == "inc") {
      Increment inc;
      inc.counter = counter();
      expect("->");
      inc.next = word("label");
      program.emplace_back(std::move(label), inc);
    } else if (op == "dectest") {
      DecrementOrTest dec;
      dec.counter = counter();
      expect("?");
      dec.if_zero = word("label");
      expect(":");
      dec.if_positive = word("label");
      program.emplace_back(std::move(label), dec);
    } else {
      fail("expected 'inc' or 'dectest'", at);
    }
    expect(";");
  }
  expect("}");
  if (tokens[pos].kind != detail::Token::Kind::end) fail("unexpected text after the machine", tokens[pos]);
  try {
    return MinskyMachine(std::move(program));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), tokens.back().line, 1);
  }
}

inline std::string format_machine(const MinskyMachine& m) {
  std::ostringstream out;
  out << "machine {\n";
  for (const auto& [label, instruction] : m.program()) {
    out << "  " << label << ": ";
    if (const auto* inc = std::get_if<Increment>(&instruction)) {
      out << "inc c" << inc->counter << " -> " << inc->next;
    } else {
      const auto& dec = std::get<DecrementOrTest>(instruction);
      out << "dectest c" << dec.counter << " ? " << dec.if_zero << " : " << dec.if_positive;
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

struct SimulationResult {
  bool halted = false;
  std::size_t steps = 0;  // instructions executed
  std::string label;      // where the run stopped
  std::array<std::uint64_t, 2> counters{0, 0};
  std::array<std::uint64_t, 2> max_counters{0, 0};
};

// Runs from L0 with both counters zero for at most step_budget instructions.
inline SimulationResult simulate_machine(const MinskyMachine& m, std::size_t step_budget) {
  SimulationResult r;
  r.label = std::string(MinskyMachine::kInitialLabel);
  while (r.label != MinskyMachine::kHaltLabel && r.steps < step_budget) {
    const Instruction* i = m.find(r.label);
    if (!i) break;
    if (const auto* inc = std::get_if<Increment>(i)) {
      auto& c = r.counters[inc->counter - 1];
      ++c;
      r.max_counters[inc->counter - 1] = std::max(r.max_counters[inc->counter - 1], c);
      r.label = inc->next;
    } else {
      const auto& dec = std::get<DecrementOrTest>(*i);
      auto& c = r.counters[dec.counter - 1];
      if (c == 0) {
        r.label = dec.if_zero;
      } else {
        --c;
        r.label = dec.if_positive;
      }
    }
    ++r.steps;
  }
  r.halted = r.label == MinskyMachine::kHaltLabel;
  return r;
}

enum class ReductionVariant { list, butterfly };

inline std::string_view to_string(ReductionVariant v) { return v == ReductionVariant::list ? "list" : "butterfly"; }

struct CompiledReduction {
  Process protocol;
  ReductionVariant variant = ReductionVariant::list;
  State halt_state;

  static constexpr std::string_view kControlId = "ctl";

  // The logical topology with n1 and n2 cells, every cell encoding zero and
  // the control at L0.
  LabeledGraph topology(std::size_t n1, std::size_t n2) const {
    if (n1 == 0 || n2 == 0) throw Error("each counter needs at least one cell");
    std::vector<VertexId> ids{std::string(kControlId)};
    std::vector<Label> labels{control_state(MinskyMachine::kInitialLabel)};
    std::vector<Edge> edges;
    const std::array<std::size_t, 2> lengths{n1, n2};
    for (int i = 1; i <= 2; ++i) {
      const std::string c = std::to_string(i);
      for (std::size_t k = 1; k <= lengths[i - 1]; ++k) {
        const Vertex v = ids.size();
        ids.push_back("c" + c + "_" + std::to_string(k));
        const bool head = k == 1;
        labels.push_back(head && variant == ReductionVariant::butterfly ? "firstZ" + c : "Z" + c);
        if (variant == ReductionVariant::butterfly || head) edges.emplace_back(0, v);
        if (!head) edges.emplace_back(v - 1, v);
      }
    }
    std::vector<Vertex> order(ids.size());
    for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return natural_less(ids[a], ids[b]); });
    std::vector<Vertex> position(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    std::vector<VertexId> sorted_ids;
    std::vector<Label> sorted_labels;
    for (Vertex v : order) {
      sorted_ids.push_back(ids[v]);
      sorted_labels.push_back(labels[v]);
    }
    for (auto& [a, b] : edges) {
      a = position[a];
      b = position[b];
    }
    return LabeledGraph::from_parts(std::move(sorted_ids), std::move(sorted_labels), edges);
  }

  static State control_state(std::string_view label) { return "pc_" + std::string(label); }
  static State wait_state(std::string_view label) { return "wait_" + std::string(label); }
};

namespace detail {

class ReductionBuilder {
 public:
  ReductionBuilder(const MinskyMachine& m, ReductionVariant variant) : machine_(m), variant_(variant) {}

  CompiledReduction build() {
    const bool butterfly = variant_ == ReductionVariant::butterfly;
    for (const auto& label : machine_.labels()) state(CompiledReduction::control_state(label));
    for (const auto& [label, instruction] : machine_.program()) compile_control(label, instruction);
    for (int i = 1; i <= 2; ++i) compile_cells(std::to_string(i));
    if (butterfly)
      for (int i = 1; i <= 2; ++i) compile_head(std::to_string(i));

    std::vector<State> initial{CompiledReduction::control_state(MinskyMachine::kInitialLabel), "Z1", "Z2"};
    if (butterfly) {
      initial.push_back("firstZ1");
      initial.push_back("firstZ2");
    }
    Process p(std::string("minsky_") + std::string(to_string(variant_)), states_, messages_, rules_, initial);
    return {std::move(p), variant_, CompiledReduction::control_state(MinskyMachine::kHaltLabel)};
  }

 private:
  const std::string& state(std::string s) {
    if (std::find(states_.begin(), states_.end(), s) == states_.end()) states_.push_back(s);
    return *std::find(states_.begin(), states_.end(), s);
  }
  void message(const std::string& m) {
    if (std::find(messages_.begin(), messages_.end(), m) == messages_.end()) messages_.push_back(m);
  }
  void rule(const std::string& from, ActionKind kind, const std::string& msg, const std::string& to) {
    state(from);
    state(to);
    if (kind != ActionKind::tau) message(msg);
    rules_.push_back({from, kind, msg, to});
  }
  void send(const std::string& from, const std::string& msg, const std::string& to) {
    rule(from, ActionKind::broadcast, msg, to);
  }
  void recv(const std::string& from, const std::string& msg, const std::string& to) {
    rule(from, ActionKind::receive, msg, to);
  }

  // Messages the control uses to talk to list i, and those it listens to.
  std::string request_inc(const std::string& i) const { return (butterfly() ? "cinc" : "inc") + i; }
  std::string request_dec(const std::string& i) const { return (butterfly() ? "cdec" : "dec") + i; }
  std::string reply_ack(const std::string& i) const { return (butterfly() ? "hack" : "ack") + i; }
  std::string reply_nak(const std::string& i) const { return (butterfly() ? "hnak" : "nak") + i; }
  bool butterfly() const { return variant_ == ReductionVariant::butterfly; }

  void compile_control(const std::string& label, const Instruction& instruction) {
    const std::string pc = CompiledReduction::control_state(label);
    const std::string wait = CompiledReduction::wait_state(label);
    if (const auto* inc = std::get_if<Increment>(&instruction)) {
      const std::string i = std::to_string(inc->counter);
      send(pc, request_inc(i), wait);
      recv(wait, reply_ack(i), CompiledReduction::control_state(inc->next));
    } else {
      const auto& dec = std::get<DecrementOrTest>(instruction);
      const std::string i = std::to_string(dec.counter);
      send(pc, request_dec(i), wait);
      recv(wait, reply_nak(i), CompiledReduction::control_state(dec.if_zero));
      recv(wait, reply_ack(i), CompiledReduction::control_state(dec.if_positive));
    }
  }

  // Ordinary list cells of counter i.
  void compile_cells(const std::string& i) {
    const std::string z = "Z" + i, nz = "NZ" + i;
    const std::string inc = "inc" + i, dec = "dec" + i, ack = "ack" + i, nak = "nak" + i;
    const std::string wait = "NZwait" + i;
    recv(nz, inc, "NZinc" + i);
    send("NZinc" + i, inc, wait);
    recv(z, inc, "NZack" + i);
    send("NZack" + i, ack, nz);
    recv(nz, dec, "NZdec" + i);
    send("NZdec" + i, dec, wait);
    recv(z, dec, "Znak" + i);
    send("Znak" + i, nak, z);
    recv(wait, ack, "NZret" + i);
    send("NZret" + i, ack, nz);
    recv(wait, nak, "Zack" + i);
    send("Zack" + i, ack, z);
  }

  // Butterfly list heads: requests come from the control, replies go to it.
  void compile_head(const std::string& i) {
    const std::string z = "firstZ" + i, nz = "firstNZ" + i, wait = "firstNZwait" + i;
    recv(z, request_inc(i), "firstNZack" + i);
    send("firstNZack" + i, reply_ack(i), nz);
    recv(nz, request_inc(i), "firstNZinc" + i);
    send("firstNZinc" + i, "inc" + i, wait);
    recv(z, request_dec(i), "firstZnak" + i);
    send("firstZnak" + i, reply_nak(i), z);
    recv(nz, request_dec(i), "firstNZdec" + i);
    send("firstNZdec" + i, "dec" + i, wait);
    recv(wait, "ack" + i, "firstNZret" + i);
    send("firstNZret" + i, reply_ack(i), nz);
    recv(wait, "nak" + i, "firstZack" + i);
    send("firstZack" + i, reply_ack(i), z);
  }

  const MinskyMachine& machine_;
  ReductionVariant variant_;
  std::vector<State> states_;
  std::vector<Message> messages_;
  std::vector<Rule> rules_;
};

}  // namespace detail

// Control vertex joined to the first cell of each list.
inline CompiledReduction compile_list(const MinskyMachine& m) {
  return detail::ReductionBuilder(m, ReductionVariant::list).build();
}

// Control vertex joined to every cell; diameter 2.
inline CompiledReduction compile_butterfly(const MinskyMachine& m) {
  return detail::ReductionBuilder(m, ReductionVariant::butterfly).build();
}

inline CompiledReduction compile_machine(const MinskyMachine& m, ReductionVariant v) {
  return v == ReductionVariant::list ? compile_list(m) : compile_butterfly(m);
}

}  // namespace ahn
