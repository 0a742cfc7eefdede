// Copyright 2026 The tccp Authors
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

#include "tccp/netlist.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace tccp {

NodePair make_pair_key(const std::string& a, const std::string& b) {
  return a < b ? NodePair{a, b} : NodePair{b, a};
}

std::size_t CircuitNetwork::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return i;
  }
  throw std::out_of_range("unknown node '" + std::string(name) + "'");
}

bool CircuitNetwork::contains(std::string_view name) const {
  for (const auto& n : nodes) {
    if (n.name == name) return true;
  }
  return false;
}

std::vector<std::size_t> CircuitNetwork::junction_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeKind::Junction) out.push_back(i);
  }
  return out;
}

std::vector<std::string> CircuitNetwork::junction_names() const {
  std::vector<std::string> out;
  for (const auto& n : nodes) {
    if (n.kind == NodeKind::Junction) out.push_back(n.name);
  }
  return out;
}

static std::string positioned(std::size_t line, std::size_t column,
                              const std::string& message) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ", column " + std::to_string(column) +
         ": " + message;
}

NetlistError::NetlistError(NetlistErrorKind kind, std::size_t line,
                           std::size_t column, const std::string& message)
    : std::runtime_error(positioned(line, column, message)),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '#') {
      ++i;
    }
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  if (!alpha(s[0])) return false;
  for (char c : s) {
    if (!alpha(c) && !(c >= '0' && c <= '9') && c != '-' && c != '.') {
      return false;
    }
  }
  return true;
}

bool is_keyword(std::string_view s) {
  return s == "node" || s == "gcap" || s == "cap" || s == "junction" ||
         s == "passive";
}

// Parses "<decimal><unit>" at the given token position.
double parse_quantity(std::string_view text, std::string_view unit,
                      std::size_t line, std::size_t column) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  // from_chars rejects a leading '+', which the format does not allow anyway.
  auto [ptr, ec] = std::from_chars(first, last, value,
                                   std::chars_format::general);
  if (ec != std::errc() || ptr == first) {
    throw NetlistError(NetlistErrorKind::Syntax, line, column,
                       "expected a number, got '" + std::string(text) + "'");
  }
  std::string_view suffix(ptr, static_cast<std::size_t>(last - ptr));
  std::size_t suffix_col = column + static_cast<std::size_t>(ptr - first);
  if (suffix.empty()) {
    throw NetlistError(NetlistErrorKind::MissingUnit, line, suffix_col,
                       "missing unit suffix '" + std::string(unit) + "'");
  }
  if (suffix != unit) {
    throw NetlistError(NetlistErrorKind::Syntax, line, suffix_col,
                       "expected unit '" + std::string(unit) + "', got '" +
                           std::string(suffix) + "'");
  }
  if (!std::isfinite(value)) {
    throw NetlistError(NetlistErrorKind::Syntax, line, column,
                       "value is not finite");
  }
  if (value < 0.0) {
    throw NetlistError(NetlistErrorKind::NegativeValue, line, column,
                       "negative value " + std::string(text));
  }
  return value;
}

struct Reference {
  std::string name;
  std::size_t line;
  std::size_t column;
};

}  // namespace

CircuitNetwork parse_netlist(std::string_view text) {
  CircuitNetwork net;
  std::vector<Reference> refs;
  std::map<std::string, std::pair<std::size_t, std::size_t>> gcap_pos;
  std::map<NodePair, std::pair<std::size_t, std::size_t>> cap_pos;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const auto& head = tok[0];

    auto need_name = [&](const Token& t) {
      if (!valid_identifier(t.text) || is_keyword(t.text)) {
        throw NetlistError(NetlistErrorKind::Syntax, line_no, t.column,
                           "invalid node name '" + std::string(t.text) + "'");
      }
      return std::string(t.text);
    };
    auto end_of_line = [&](std::size_t expected) {
      if (tok.size() < expected) {
        std::size_t col = line.size() + 1;
        throw NetlistError(NetlistErrorKind::Syntax, line_no, col,
                           "unexpected end of line");
      }
      if (tok.size() > expected) {
        throw NetlistError(NetlistErrorKind::Syntax, line_no,
                           tok[expected].column,
                           "unexpected token '" +
                               std::string(tok[expected].text) + "'");
      }
    };

    if (head.text == "node") {
      if (tok.size() < 3) end_of_line(3);
      NodeSpec spec;
      spec.name = need_name(tok[1]);
      if (net.contains(spec.name)) {
        throw NetlistError(NetlistErrorKind::DuplicateNode, line_no,
                           tok[1].column,
                           "duplicate node '" + spec.name + "'");
      }
      if (tok[2].text == "passive") {
        end_of_line(3);
        spec.kind = NodeKind::Passive;
      } else if (tok[2].text == "junction") {
        spec.kind = NodeKind::Junction;
        bool have_ejb = false;
        bool have_ejs = false;
        for (std::size_t i = 3; i < tok.size(); ++i) {
          auto eq = tok[i].text.find('=');
          if (eq == std::string_view::npos) {
            throw NetlistError(NetlistErrorKind::Syntax, line_no,
                               tok[i].column,
                               "expected key=value, got '" +
                                   std::string(tok[i].text) + "'");
          }
          auto key = tok[i].text.substr(0, eq);
          auto val = tok[i].text.substr(eq + 1);
          std::size_t vcol = tok[i].column + eq + 1;
          bool* seen = nullptr;
          bool cj_seen = spec.has_cj;
          if (key == "ejb") {
            seen = &have_ejb;
          } else if (key == "ejs") {
            seen = &have_ejs;
          } else if (key == "cj") {
            seen = &cj_seen;
          } else {
            throw NetlistError(NetlistErrorKind::Syntax, line_no,
                               tok[i].column,
                               "unknown junction parameter '" +
                                   std::string(key) + "'");
          }
          if (*seen) {
            throw NetlistError(NetlistErrorKind::Syntax, line_no,
                               tok[i].column,
                               "repeated parameter '" + std::string(key) +
                                   "'");
          }
          if (key == "ejb") {
            spec.ejb = parse_quantity(val, "GHz", line_no, vcol);
            have_ejb = true;
          } else if (key == "ejs") {
            spec.ejs = parse_quantity(val, "GHz", line_no, vcol);
            have_ejs = true;
          } else {
            spec.cj = parse_quantity(val, "fF", line_no, vcol);
            spec.has_cj = true;
          }
        }
        if (!have_ejb || !have_ejs) {
          throw NetlistError(NetlistErrorKind::MissingJunctionParam, line_no,
                             tok[2].column,
                             "junction node '" + spec.name + "' missing " +
                                 (have_ejb ? "ejs" : "ejb"));
        }
        if (spec.ejs > spec.ejb) {
          throw NetlistError(NetlistErrorKind::InvalidJunction, line_no,
                             tok[1].column,
                             "junction node '" + spec.name +
                                 "' requires ejb >= ejs");
        }
      } else {
        throw NetlistError(NetlistErrorKind::Syntax, line_no, tok[2].column,
                           "expected 'junction' or 'passive', got '" +
                               std::string(tok[2].text) + "'");
      }
      net.nodes.push_back(std::move(spec));
    } else if (head.text == "gcap") {
      end_of_line(3);
      std::string name = need_name(tok[1]);
      double c = parse_quantity(tok[2].text, "fF", line_no, tok[2].column);
      if (net.ground_caps.count(name)) {
        throw NetlistError(NetlistErrorKind::DuplicateEntry, line_no,
                           head.column,
                           "duplicate gcap for node '" + name + "'");
      }
      net.ground_caps[name] = c;
      gcap_pos[name] = {line_no, tok[1].column};
      refs.push_back({name, line_no, tok[1].column});
    } else if (head.text == "cap") {
      end_of_line(4);
      std::string a = need_name(tok[1]);
      std::string b = need_name(tok[2]);
      if (a == b) {
        throw NetlistError(NetlistErrorKind::SelfPair, line_no, tok[2].column,
                           "capacitor connects node '" + a + "' to itself");
      }
      double c = parse_quantity(tok[3].text, "fF", line_no, tok[3].column);
      auto key = make_pair_key(a, b);
      if (net.mutual_caps.count(key)) {
        throw NetlistError(NetlistErrorKind::DuplicateEntry, line_no,
                           head.column,
                           "duplicate cap between '" + a + "' and '" + b +
                               "'");
      }
      net.mutual_caps[key] = c;
      cap_pos[key] = {line_no, head.column};
      refs.push_back({a, line_no, tok[1].column});
      refs.push_back({b, line_no, tok[2].column});
    } else {
      throw NetlistError(NetlistErrorKind::Syntax, line_no, head.column,
                         "unknown statement '" + std::string(head.text) + "'");
    }
  }

  for (const auto& r : refs) {
    if (!net.contains(r.name)) {
      throw NetlistError(NetlistErrorKind::UndeclaredNode, r.line, r.column,
                         "undeclared node '" + r.name + "'");
    }
  }
  validate_network(net);
  return net;
}

void validate_network(const CircuitNetwork& net) {
  std::set<std::string> names;
  for (const auto& n : net.nodes) {
    if (!names.insert(n.name).second) {
      throw NetlistError(NetlistErrorKind::DuplicateNode, 0, 0,
                         "duplicate node '" + n.name + "'");
    }
    if (n.kind == NodeKind::Junction &&
        !(n.ejb >= n.ejs && n.ejs >= 0.0 && n.cj >= 0.0)) {
      throw NetlistError(NetlistErrorKind::InvalidJunction, 0, 0,
                         "junction node '" + n.name +
                             "' requires ejb >= ejs >= 0 and cj >= 0");
    }
  }
  for (const auto& [name, c] : net.ground_caps) {
    if (!names.count(name)) {
      throw NetlistError(NetlistErrorKind::UndeclaredNode, 0, 0,
                         "undeclared node '" + name + "'");
    }
    if (!(c >= 0.0)) {
      throw NetlistError(NetlistErrorKind::NegativeValue, 0, 0,
                         "negative ground capacitance on '" + name + "'");
    }
  }
  for (const auto& [key, c] : net.mutual_caps) {
    if (key.first == key.second) {
      throw NetlistError(NetlistErrorKind::SelfPair, 0, 0,
                         "capacitor connects node '" + key.first +
                             "' to itself");
    }
    for (const auto* n : {&key.first, &key.second}) {
      if (!names.count(*n)) {
        throw NetlistError(NetlistErrorKind::UndeclaredNode, 0, 0,
                           "undeclared node '" + *n + "'");
      }
    }
    if (!(c >= 0.0)) {
      throw NetlistError(NetlistErrorKind::NegativeValue, 0, 0,
                         "negative capacitance between '" + key.first +
                             "' and '" + key.second + "'");
    }
  }
  auto junctions = net.junction_indices();
  if (junctions.empty()) {
    throw NetlistError(NetlistErrorKind::NoJunction, 0, 0,
                       "network has no junction node");
  }

  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [key, c] : net.mutual_caps) {
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  std::set<std::string> seen;
  std::queue<std::string> todo;
  for (auto j : junctions) {
    seen.insert(net.nodes[j].name);
    todo.push(net.nodes[j].name);
  }
  while (!todo.empty()) {
    auto cur = todo.front();
    todo.pop();
    for (const auto& nb : adj[cur]) {
      if (seen.insert(nb).second) todo.push(nb);
    }
  }
  for (const auto& n : net.nodes) {
    if (!seen.count(n.name)) {
      throw NetlistError(NetlistErrorKind::Unreachable, 0, 0,
                         "node '" + n.name +
                             "' is not connected to any junction node");
    }
  }
}

CircuitNetwork load_netlist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open netlist '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_netlist(ss.str());
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string serialize_netlist(const CircuitNetwork& net) {
  std::string out;
  for (const auto& n : net.nodes) {
    out += "node " + n.name;
    if (n.kind == NodeKind::Junction) {
      out += " junction ejb=" + shortest(n.ejb) + "GHz ejs=" + shortest(n.ejs) +
             "GHz";
      if (n.has_cj) out += " cj=" + shortest(n.cj) + "fF";
    } else {
      out += " passive";
    }
    out += '\n';
  }
  for (const auto& n : net.nodes) {
    auto it = net.ground_caps.find(n.name);
    if (it != net.ground_caps.end()) {
      out += "gcap " + n.name + " " + shortest(it->second) + "fF\n";
    }
  }
  for (const auto& [key, c] : net.mutual_caps) {
    out += "cap " + key.first + " " + key.second + " " + shortest(c) + "fF\n";
  }
  return out;
}

}  // namespace tccp
