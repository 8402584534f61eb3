// Minimal structured-text reader: nested `kind [name] { ... }` blocks with
// `key: value` attribute lines and '#' comments. All configuration inputs
// (raw geometry, divisor specifications, run configs) share this grammar.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "toricva/ratfun.hpp"  // ParseError

namespace toricva {

struct DocAttr {
  std::string key, value;
  int line = 0, col = 0;
};

struct DocNode {
  std::string kind, name;
  int line = 0, col = 0;
  std::vector<DocAttr> attrs;
  std::vector<DocNode> children;

  const DocAttr* attr(std::string_view key) const {
    for (const auto& a : attrs)
      if (a.key == key) return &a;
    return nullptr;
  }
  const std::string& need(std::string_view key) const {
    const DocAttr* a = attr(key);
    if (!a)
      throw ParseError(line, col,
                       kind + " block is missing '" + std::string(key) + "'");
    return a->value;
  }
  const DocNode* child(std::string_view kind_, std::string_view name_ = "") const {
    for (const auto& c : children)
      if (c.kind == kind_ && (name_.empty() || c.name == name_)) return &c;
    return nullptr;
  }
  std::vector<const DocNode*> children_of(std::string_view kind_) const {
    std::vector<const DocNode*> out;
    for (const auto& c : children)
      if (c.kind == kind_) out.push_back(&c);
    return out;
  }
};

namespace detail {

class DocParser {
 public:
  explicit DocParser(std::string_view text) : s_(text) {}

  DocNode parse() {
    DocNode root;
    root.kind = "";
    items(root, /*top=*/true);
    return root;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() {
    const char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_ws() {
    while (pos_ < s_.size()) {
      if (std::isspace((unsigned char)peek())) {
        get();
      } else if (peek() == '#') {
        while (pos_ < s_.size() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }
  static bool ident_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '.' || c == '-';
  }
  std::string ident() {
    std::string out;
    while (pos_ < s_.size() && ident_char(peek())) out += get();
    return out;
  }

  void items(DocNode& parent, bool top) {
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) {
        if (!top) throw ParseError(line_, col_, "unexpected end of input, expected '}'");
        return;
      }
      if (peek() == '}') {
        if (top) throw ParseError(line_, col_, "unmatched '}'");
        get();
        return;
      }
      const int il = line_, ic = col_;
      if (!ident_char(peek()))
        throw ParseError(il, ic, std::string("unexpected character '") + peek() + "'");
      const std::string first = ident();
      skip_ws();
      if (peek() == ':') {
        get();
        // attribute: value runs to end of line (or to an unconsumed '}' so
        // one-line blocks work); '#' starts a comment
        std::string value;
        while (pos_ < s_.size() && peek() != '\n' && peek() != '#' && peek() != '}')
          value += get();
        if (peek() == '#')
          while (pos_ < s_.size() && peek() != '\n') get();
        while (!value.empty() && std::isspace((unsigned char)value.back())) value.pop_back();
        std::size_t b = 0;
        while (b < value.size() && std::isspace((unsigned char)value[b])) ++b;
        parent.attrs.push_back({first, value.substr(b), il, ic});
        continue;
      }
      DocNode node;
      node.kind = first;
      node.line = il;
      node.col = ic;
      if (ident_char(peek())) node.name = ident();
      skip_ws();
      if (peek() != '{')
        throw ParseError(line_, col_, "expected '{' or ':' after '" + first + "'");
      get();
      items(node, false);
      parent.children.push_back(std::move(node));
    }
  }
};

}  // namespace detail

inline DocNode doc_parse(std::string_view text) {
  return detail::DocParser(text).parse();
}

// split on top-level commas (commas inside parentheses do not split)
inline std::vector<std::string> split_csv(std::string_view v) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    std::size_t b = 0, e = cur.size();
    while (b < e && std::isspace((unsigned char)cur[b])) ++b;
    while (e > b && std::isspace((unsigned char)cur[e - 1])) --e;
    if (e > b) out.push_back(cur.substr(b, e - b));
    cur.clear();
  };
  for (const char c : v) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

}  // namespace toricva
