#pragma once

// Protocol automata: every node of the network runs the same process
// <Q, Sigma, R, Q0> with internal (tau), broadcast (!a) and receive (?a) rules.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ahn/clique_graph.hpp"
#include "ahn/error.hpp"

namespace ahn {

using State = std::string;
using Message = std::string;

enum class ActionKind { tau, broadcast, receive };

struct Rule {
  State from;
  ActionKind kind = ActionKind::tau;
  Message message;  // empty for tau
  State to;

  friend bool operator==(const Rule&, const Rule&) = default;
};

inline std::string to_string(const Rule& r) {
  switch (r.kind) {
    case ActionKind::tau: return r.from + " -tau-> " + r.to;
    case ActionKind::broadcast: return r.from + " -!" + r.message + "-> " + r.to;
    case ActionKind::receive: return r.from + " -?" + r.message + "-> " + r.to;
  }
  return {};
}

class Process {
 public:
  Process(std::string name, std::vector<State> states, std::vector<Message> messages, std::vector<Rule> rules,
          std::vector<State> initial)
      : name_(std::move(name)) {
    for (auto& q : states) {
      if (q == kCliqueLabel) throw ProtocolError("state name '" + q + "' is reserved");
      if (q.empty()) throw ProtocolError("empty state name");
      if (state_index_.contains(q)) continue;
      state_index_.emplace(q, states_.size());
      states_.push_back(std::move(q));
    }
    for (auto& m : messages) {
      if (m.empty()) throw ProtocolError("empty message name");
      if (message_index_.contains(m)) continue;
      message_index_.emplace(m, messages_.size());
      messages_.push_back(std::move(m));
    }
    for (auto& r : rules) {
      if (!has_state(r.from)) throw ProtocolError("rule " + to_string(r) + ": undeclared state " + r.from);
      if (!has_state(r.to)) throw ProtocolError("rule " + to_string(r) + ": undeclared state " + r.to);
      if (r.kind == ActionKind::tau) {
        r.message.clear();
      } else if (!has_message(r.message)) {
        throw ProtocolError("rule " + to_string(r) + ": undeclared message " + r.message);
      }
      if (std::find(rules_.begin(), rules_.end(), r) == rules_.end()) rules_.push_back(std::move(r));
    }
    for (auto& q : initial) {
      if (!has_state(q)) throw ProtocolError("initial state " + q + " is not declared");
      if (std::find(initial_.begin(), initial_.end(), q) == initial_.end()) initial_.push_back(std::move(q));
    }
    if (initial_.empty()) throw ProtocolError("the set of initial states is empty");
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<State>& states() const noexcept { return states_; }
  const std::vector<Message>& messages() const noexcept { return messages_; }
  // Deduplicated, in declaration order; witness traces refer to these indices.
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::vector<State>& initial() const noexcept { return initial_; }

  bool has_state(std::string_view q) const { return state_index_.contains(std::string(q)); }
  bool has_message(std::string_view m) const { return message_index_.contains(std::string(m)); }
  bool is_initial(std::string_view q) const {
    return std::find(initial_.begin(), initial_.end(), q) != initial_.end();
  }
  std::size_t state_index(std::string_view q) const {
    auto it = state_index_.find(std::string(q));
    if (it == state_index_.end()) throw ProtocolError("unknown state " + std::string(q));
    return it->second;
  }
  std::size_t message_index(std::string_view m) const {
    auto it = message_index_.find(std::string(m));
    if (it == message_index_.end()) throw ProtocolError("unknown message " + std::string(m));
    return it->second;
  }

  friend bool operator==(const Process& a, const Process& b) {
    return a.name_ == b.name_ && a.states_ == b.states_ && a.messages_ == b.messages_ &&
           a.rules_ == b.rules_ && a.initial_ == b.initial_;
  }

 private:
  std::string name_;
  std::vector<State> states_;
  std::vector<Message> messages_;
  std::vector<Rule> rules_;
  std::vector<State> initial_;
  std::unordered_map<State, std::size_t> state_index_;
  std::unordered_map<Message, std::size_t> message_index_;
};

// R_a(q): states reachable from q by receiving a, in declaration order.
// Empty means reception of a is not enabled in q.
inline std::vector<State> receive_targets(const Process& p, std::string_view q, std::string_view a) {
  if (!p.has_state(q)) throw ProtocolError("unknown state " + std::string(q));
  if (!p.has_message(a)) throw ProtocolError("unknown message " + std::string(a));
  std::vector<std::size_t> indices;
  for (const auto& r : p.rules())
    if (r.kind == ActionKind::receive && r.from == q && r.message == a) indices.push_back(p.state_index(r.to));
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  std::vector<State> out;
  for (auto i : indices) out.push_back(p.states()[i]);
  return out;
}

}  // namespace ahn
