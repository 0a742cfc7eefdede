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

#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tccp {

enum class NodeKind { Junction, Passive };

struct NodeSpec {
  std::string name;
  NodeKind kind = NodeKind::Passive;
  double ejb = 0.0;  // GHz
  double ejs = 0.0;  // GHz
  double cj = 0.0;   // fF
  bool has_cj = false;

  bool operator==(const NodeSpec&) const = default;
};

// Unordered pair, stored with first < second (lexicographic).
using NodePair = std::pair<std::string, std::string>;

NodePair make_pair_key(const std::string& a, const std::string& b);

struct CircuitNetwork {
  std::vector<NodeSpec> nodes;
  std::map<std::string, double> ground_caps;  // fF
  std::map<NodePair, double> mutual_caps;     // fF

  bool operator==(const CircuitNetwork&) const = default;

  std::size_t index_of(std::string_view name) const;  // throws if absent
  bool contains(std::string_view name) const;
  std::vector<std::size_t> junction_indices() const;
  std::vector<std::string> junction_names() const;
};

// Junction name -> external flux in units of the flux quantum.
using FluxAssignment = std::map<std::string, double>;

enum class NetlistErrorKind {
  Syntax,
  DuplicateNode,
  DuplicateEntry,
  UndeclaredNode,
  NegativeValue,
  MissingUnit,
  MissingJunctionParam,
  SelfPair,
  InvalidJunction,
  NoJunction,
  Unreachable,
};

class NetlistError : public std::runtime_error {
 public:
  NetlistError(NetlistErrorKind kind, std::size_t line, std::size_t column,
               const std::string& message);

  NetlistErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  NetlistErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

CircuitNetwork parse_netlist(std::string_view text);
CircuitNetwork load_netlist(const std::string& path);
std::string serialize_netlist(const CircuitNetwork& network);

// Structural checks shared by the parser and programmatic builders.
// Throws NetlistError with line/column 0.
void validate_network(const CircuitNetwork& network);

}  // namespace tccp
