#pragma once

#include <array>
#include <charconv>
#include <stdexcept>
#include <string>

#include "tccp/netlist.hpp"

namespace tccp::test {

inline std::string fixture_path(char design) {
  std::string name = "design_";
  name += static_cast<char>(design - 'A' + 'a');
  return std::string(TCCP_FIXTURES) + "/" + name + ".net";
}

inline CircuitNetwork design_network(char design) {
  return load_netlist(fixture_path(design));
}

// Closed-form argument order: cQG, cPG, cCG, cQP, cPC, cP12 (zero for the
// one-pad layouts).
inline std::array<double, 6> design_caps(char design) {
  switch (design) {
    case 'A': return {72.5, 61.7, 25.1, 11.5, 17.8, 21.0};
    case 'B': return {72.4, 42.2, 32.5, 11.0, 12.3, 13.6};
    case 'C': return {71.7, 108.8, 36.0, 6.9, 23.7, 0.0};
    case 'D': return {71.8, 74.7, 28.2, 8.8, 32.8, 0.0};
    default: throw std::invalid_argument("unknown design");
  }
}

// Shortest round-trip text, so networks carry the exact doubles.
inline std::string num(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Symmetric layouts with identical qubit SQUIDs.
inline CircuitNetwork two_pad_network(const std::array<double, 6>& c,
                                      double ejq = 9.0, double ejc = 8.9) {
  std::string t;
  t += "node Q1 junction ejb=" + num(ejq) + "GHz ejs=" + num(ejq) + "GHz\n";
  t += "node P1 passive\n";
  t += "node C junction ejb=" + num(ejc) + "GHz ejs=" + num(ejc) + "GHz\n";
  t += "node P2 passive\n";
  t += "node Q2 junction ejb=" + num(ejq) + "GHz ejs=" + num(ejq) + "GHz\n";
  t += "gcap Q1 " + num(c[0]) + "fF\ngcap Q2 " + num(c[0]) + "fF\n";
  t += "gcap P1 " + num(c[1]) + "fF\ngcap P2 " + num(c[1]) + "fF\n";
  t += "gcap C " + num(c[2]) + "fF\n";
  t += "cap Q1 P1 " + num(c[3]) + "fF\ncap Q2 P2 " + num(c[3]) + "fF\n";
  t += "cap P1 C " + num(c[4]) + "fF\ncap P2 C " + num(c[4]) + "fF\n";
  t += "cap P1 P2 " + num(c[5]) + "fF\n";
  return parse_netlist(t);
}

inline CircuitNetwork one_pad_network(const std::array<double, 6>& c,
                                      double ejq = 9.0, double ejc = 8.9) {
  std::string t;
  t += "node Q1 junction ejb=" + num(ejq) + "GHz ejs=" + num(ejq) + "GHz\n";
  t += "node P passive\n";
  t += "node C junction ejb=" + num(ejc) + "GHz ejs=" + num(ejc) + "GHz\n";
  t += "node Q2 junction ejb=" + num(ejq) + "GHz ejs=" + num(ejq) + "GHz\n";
  t += "gcap Q1 " + num(c[0]) + "fF\ngcap Q2 " + num(c[0]) + "fF\n";
  t += "gcap P " + num(c[1]) + "fF\ngcap C " + num(c[2]) + "fF\n";
  t += "cap Q1 P " + num(c[3]) + "fF\ncap Q2 P " + num(c[3]) + "fF\n";
  t += "cap P C " + num(c[4]) + "fF\n";
  return parse_netlist(t);
}

}  // namespace tccp::test
