#pragma once

// Selective-broadcast transition relation over configurations.
//
// A configuration is a LabeledGraph whose labels are protocol states. A step
// either fires a tau rule at one vertex, or fires a broadcast rule at a sender
// v: v moves to the rule's target, every neighbor u with R_a(L(u)) nonempty
// must move to one state of R_a(L(u)), and every other vertex (including the
// sender's non-enabled neighbors) keeps its label. The sender never receives
// its own message. Vertices and edges never change.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ahn/error.hpp"
#include "ahn/graph.hpp"
#include "ahn/protocol.hpp"

namespace ahn {

struct ActionDescriptor {
  enum class Kind { internal, broadcast };

  Kind kind = Kind::internal;
  Vertex vertex = 0;
  std::size_t rule = 0;  // index into Process::rules()
  // Broadcast only: one entry per enabled neighbor, ascending by vertex.
  std::vector<std::pair<Vertex, State>> receivers;

  friend bool operator==(const ActionDescriptor&, const ActionDescriptor&) = default;
};

struct Transition {
  LabeledGraph target;
  ActionDescriptor action;
};

// Process with states and messages replaced by dense codes; the engines run
// on label-code vectors over a fixed structure.
class CompiledProcess {
 public:
  using Code = std::uint16_t;
  using Labels = std::vector<Code>;

  struct CodedAction {
    bool broadcast = false;
    Vertex vertex = 0;
    std::size_t rule = 0;
    std::vector<std::pair<Vertex, Code>> receivers;
  };

  explicit CompiledProcess(const Process& p)
      : process_(&p),
        local_(p.states().size()),
        receive_(p.messages().size(), std::vector<std::vector<Code>>(p.states().size())) {
    const auto& rules = p.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const auto& r = rules[i];
      const auto from = static_cast<Code>(p.state_index(r.from));
      const auto to = static_cast<Code>(p.state_index(r.to));
      if (r.kind == ActionKind::receive) {
        auto& targets = receive_[p.message_index(r.message)][from];
        targets.push_back(to);
      } else {
        const std::size_t message = r.kind == ActionKind::broadcast ? p.message_index(r.message) : 0;
        local_[from].push_back({i, r.kind == ActionKind::broadcast, message, to});
      }
    }
    for (auto& per_message : receive_)
      for (auto& targets : per_message) std::sort(targets.begin(), targets.end());
  }

  const Process& process() const noexcept { return *process_; }

  Labels encode(const LabeledGraph& g) const {
    Labels out(g.size());
    for (Vertex v = 0; v < g.size(); ++v) {
      if (!process_->has_state(g.label(v)))
        throw ProtocolError("label " + g.label(v) + " of vertex " + g.id(v) + " is not a protocol state");
      out[v] = static_cast<Code>(process_->state_index(g.label(v)));
    }
    return out;
  }

  std::vector<Label> decode(const Labels& labels) const {
    std::vector<Label> out;
    out.reserve(labels.size());
    for (Code c : labels) out.push_back(process_->states()[c]);
    return out;
  }

  ActionDescriptor describe(const CodedAction& a) const {
    ActionDescriptor d;
    d.kind = a.broadcast ? ActionDescriptor::Kind::broadcast : ActionDescriptor::Kind::internal;
    d.vertex = a.vertex;
    d.rule = a.rule;
    for (auto [u, q] : a.receivers) d.receivers.emplace_back(u, process_->states()[q]);
    return d;
  }

  // Calls emit(next_labels, action) for every successor, ordered by sender
  // vertex, then rule index, then receiver choices (first receiver slowest).
  template <class Emit>
  void for_each_successor(const LabeledGraph& structure, const Labels& labels, Emit&& emit) const {
    Labels next;
    CodedAction action;
    for (Vertex v = 0; v < labels.size(); ++v) {
      for (const auto& rule : local_[labels[v]]) {
        action.vertex = v;
        action.rule = rule.index;
        action.broadcast = rule.broadcast;
        action.receivers.clear();
        next = labels;
        next[v] = rule.to;
        if (!rule.broadcast) {
          emit(static_cast<const Labels&>(next), static_cast<const CodedAction&>(action));
          continue;
        }
        const auto& table = receive_[rule.message];
        std::vector<const std::vector<Code>*> options;
        for (Vertex u : structure.neighbors(v)) {
          const auto& targets = table[labels[u]];
          if (targets.empty()) continue;
          action.receivers.emplace_back(u, targets.front());
          options.push_back(&targets);
        }
        std::vector<std::size_t> choice(options.size(), 0);
        while (true) {
          for (std::size_t k = 0; k < options.size(); ++k) {
            const Code q = (*options[k])[choice[k]];
            action.receivers[k].second = q;
            next[action.receivers[k].first] = q;
          }
          emit(static_cast<const Labels&>(next), static_cast<const CodedAction&>(action));
          bool exhausted = true;
          for (std::size_t k = options.size(); k-- > 0;) {
            if (++choice[k] < options[k]->size()) {
              exhausted = false;
              break;
            }
            choice[k] = 0;
          }
          if (exhausted) break;
        }
      }
    }
  }

  // Replays one resolved transition; throws ActionError if it does not apply.
  Labels apply(const LabeledGraph& structure, const Labels& labels, const ActionDescriptor& d) const {
    const auto& rules = process_->rules();
    if (d.vertex >= labels.size()) throw ActionError("action names a vertex outside the configuration");
    if (d.rule >= rules.size()) throw ActionError("action names rule " + std::to_string(d.rule) + ", which does not exist");
    const Rule& rule = rules[d.rule];
    const bool broadcast = d.kind == ActionDescriptor::Kind::broadcast;
    if (rule.kind == ActionKind::receive || (rule.kind == ActionKind::broadcast) != broadcast)
      throw ActionError("rule " + to_string(rule) + " does not match the action kind");
    if (process_->states()[labels[d.vertex]] != rule.from)
      throw ActionError("rule " + to_string(rule) + " is not enabled at vertex " + structure.id(d.vertex));
    Labels next = labels;
    next[d.vertex] = static_cast<Code>(process_->state_index(rule.to));
    if (!broadcast) {
      if (!d.receivers.empty()) throw ActionError("internal action with receivers");
      return next;
    }
    const auto& table = receive_[process_->message_index(rule.message)];
    std::size_t k = 0;
    for (Vertex u : structure.neighbors(d.vertex)) {
      const auto& targets = table[labels[u]];
      if (targets.empty()) continue;
      if (k >= d.receivers.size() || d.receivers[k].first != u)
        throw ActionError("enabled neighbor " + structure.id(u) + " has no reception choice");
      const State& chosen = d.receivers[k].second;
      if (!process_->has_state(chosen)) throw ActionError("unknown state " + chosen);
      const auto code = static_cast<Code>(process_->state_index(chosen));
      if (!std::binary_search(targets.begin(), targets.end(), code))
        throw ActionError("vertex " + structure.id(u) + " cannot move to " + chosen + " on receiving " + rule.message);
      next[u] = code;
      ++k;
    }
    if (k != d.receivers.size()) throw ActionError("reception choice for a vertex that is not an enabled neighbor");
    return next;
  }

 private:
  struct LocalRule {
    std::size_t index;
    bool broadcast;
    std::size_t message;
    Code to;
  };

  const Process* process_;
  std::vector<std::vector<LocalRule>> local_;                // by source state
  std::vector<std::vector<std::vector<Code>>> receive_;      // [message][state] -> targets
};

inline std::vector<Transition> successors(const Process& p, const LabeledGraph& config) {
  const CompiledProcess compiled(p);
  const auto labels = compiled.encode(config);
  std::vector<Transition> out;
  compiled.for_each_successor(config, labels, [&](const CompiledProcess::Labels& next, const CompiledProcess::CodedAction& a) {
    out.push_back({config.relabeled(compiled.decode(next)), compiled.describe(a)});
  });
  return out;
}

inline LabeledGraph apply_action(const Process& p, const LabeledGraph& config, const ActionDescriptor& d) {
  const CompiledProcess compiled(p);
  return config.relabeled(compiled.decode(compiled.apply(config, compiled.encode(config), d)));
}

}  // namespace ahn
