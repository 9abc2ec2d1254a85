#pragma once

// Text syntax for protocols:
//
//   protocol example {
//     states A B C D;
//     init A B;
//     msgs m;
//     A -tau-> C;
//     C -!m-> D;
//     B -?m-> C;
//   }
//
// Whitespace between tokens is free; '#' starts a line comment.

#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ahn/error.hpp"
#include "ahn/protocol.hpp"

namespace ahn {

namespace detail {

struct Token {
  enum class Kind { identifier, punct, end } kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' || c == '\'';
}

// Identifiers and single-character punctuation, plus the two-character
// arrow head "->".
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (is_identifier_char(c)) {
      std::size_t start = i;
      const std::size_t l = line;
      const std::size_t col = column;
      while (i < text.size() && is_identifier_char(text[i])) advance(1);
      tokens.push_back({Token::Kind::identifier, std::string(text.substr(start, i - start)), l, col});
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      tokens.push_back({Token::Kind::punct, "->", line, column});
      advance(2);
    } else if (std::string_view("{};:-!?").find(c) != std::string_view::npos) {
      tokens.push_back({Token::Kind::punct, std::string(1, c), line, column});
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
  }
  tokens.push_back({Token::Kind::end, "", line, column});
  return tokens;
}

class ProtocolParser {
 public:
  explicit ProtocolParser(std::string_view text) : tokens_(tokenize(text)) {}

  Process parse() {
    expect_word("protocol");
    const std::string name = identifier("protocol name");
    expect("{");
    std::vector<State> states;
    std::vector<State> initial;
    std::vector<Message> messages;
    std::vector<std::pair<Rule, Token>> rules;
    bool saw_init = false;
    while (!peek_is("}")) {
      const Token head = next();
      if (head.kind != Token::Kind::identifier) fail("expected a declaration or a rule", head);
      if (head.text == "states" || head.text == "init" || head.text == "msgs") {
        std::vector<std::string> names;
        while (!peek_is(";")) names.push_back(identifier("name"));
        expect(";");
        auto& target = head.text == "states" ? states : head.text == "init" ? initial : messages;
        target.insert(target.end(), names.begin(), names.end());
        if (head.text == "init") saw_init = true;
        continue;
      }
      Rule rule;
      rule.from = head.text;
      expect("-");
      const Token action = next();
      if (action.kind == Token::Kind::identifier && action.text == "tau") {
        rule.kind = ActionKind::tau;
      } else if (action.text == "!" || action.text == "?") {
        rule.kind = action.text == "!" ? ActionKind::broadcast : ActionKind::receive;
        rule.message = identifier("message name");
      } else {
        fail("expected 'tau', '!msg' or '?msg'", action);
      }
      expect("->");
      rule.to = identifier("target state");
      expect(";");
      rules.emplace_back(std::move(rule), head);
    }
    expect("}");
    if (tokens_[pos_].kind != Token::Kind::end) fail("unexpected text after the protocol", tokens_[pos_]);

    const std::set<std::string> declared(states.begin(), states.end());
    const std::set<std::string> declared_msgs(messages.begin(), messages.end());
    for (const auto& [rule, at] : rules) {
      if (!declared.contains(rule.from)) fail("undeclared state " + rule.from, at);
      if (!declared.contains(rule.to)) fail("undeclared state " + rule.to, at);
      if (rule.kind != ActionKind::tau && !declared_msgs.contains(rule.message))
        fail("undeclared message " + rule.message, at);
    }
    if (!saw_init || initial.empty()) throw ParseError("empty init set", tokens_.back().line, 1);
    for (const auto& q : initial)
      if (!declared.contains(q)) throw ParseError("undeclared initial state " + q, tokens_.back().line, 1);
    std::vector<Rule> plain;
    for (auto& [rule, at] : rules) plain.push_back(std::move(rule));
    return Process(name, std::move(states), std::move(messages), std::move(plain), std::move(initial));
  }

 private:
  [[noreturn]] static void fail(const std::string& message, const Token& at) {
    throw ParseError(message, at.line, at.column);
  }

  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Token::Kind::end) ++pos_;
    return t;
  }

  bool peek_is(std::string_view punct) const {
    const Token& t = tokens_[pos_];
    if (t.kind == Token::Kind::end) fail("unexpected end of input", t);
    return t.kind == Token::Kind::punct && t.text == punct;
  }

  void expect(std::string_view punct) {
    const Token& t = next();
    if (t.kind != Token::Kind::punct || t.text != punct) fail("expected '" + std::string(punct) + "'", t);
  }

  void expect_word(std::string_view word) {
    const Token& t = next();
    if (t.kind != Token::Kind::identifier || t.text != word) fail("expected '" + std::string(word) + "'", t);
  }

  std::string identifier(std::string_view what) {
    const Token& t = next();
    if (t.kind != Token::Kind::identifier) fail("expected " + std::string(what), t);
    return t.text;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Process parse_protocol(std::string_view text) { return detail::ProtocolParser(text).parse(); }

inline std::string format_protocol(const Process& p) {
  std::ostringstream out;
  out << "protocol " << p.name() << " {\n";
  out << "  states";
  for (const auto& q : p.states()) out << ' ' << q;
  out << ";\n  init";
  for (const auto& q : p.initial()) out << ' ' << q;
  out << ";\n";
  if (!p.messages().empty()) {
    out << "  msgs";
    for (const auto& m : p.messages()) out << ' ' << m;
    out << ";\n";
  }
  for (const auto& r : p.rules()) out << "  " << to_string(r) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace ahn
