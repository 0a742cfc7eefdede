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

#include "tccp/quantizer.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "tccp/errors.hpp"

namespace tccp {

std::size_t EnergyTable::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw std::out_of_range("no junction node '" + name + "'");
}

CapMatrix assemble_cap_matrix(const CircuitNetwork& net) {
  const auto n = static_cast<Eigen::Index>(net.nodes.size());
  CapMatrix out;
  out.c = Eigen::MatrixXd::Zero(n, n);
  for (const auto& node : net.nodes) out.names.push_back(node.name);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& node = net.nodes[static_cast<std::size_t>(i)];
    auto g = net.ground_caps.find(node.name);
    if (g != net.ground_caps.end()) out.c(i, i) += g->second;
    if (node.kind == NodeKind::Junction) out.c(i, i) += node.cj;
  }
  for (const auto& [key, c] : net.mutual_caps) {
    auto i = static_cast<Eigen::Index>(net.index_of(key.first));
    auto j = static_cast<Eigen::Index>(net.index_of(key.second));
    out.c(i, i) += c;
    out.c(j, j) += c;
    out.c(i, j) -= c;
    out.c(j, i) -= c;
  }
  return out;
}

Eigen::MatrixXd schur_junction_inverse(const Eigen::MatrixXd& c,
                                       const std::vector<std::size_t>& keep) {
  const auto n = c.rows();
  std::vector<Eigen::Index> k, p;
  std::vector<bool> is_keep(static_cast<std::size_t>(n), false);
  for (auto i : keep) is_keep[i] = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    (is_keep[static_cast<std::size_t>(i)] ? k : p).push_back(i);
  }
  Eigen::MatrixXd ckk = c(k, k);
  if (p.empty()) return ckk.inverse();
  Eigen::MatrixXd ckp = c(k, p);
  Eigen::MatrixXd cpp = c(p, p);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(cpp);
  Eigen::MatrixXd s = ckk - ckp * ldlt.solve(ckp.transpose());
  return s.inverse();
}

InverseBlock reduce_to_junction_block(const CapMatrix& cap,
                                      const CircuitNetwork& net) {
  const auto n = cap.c.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(cap.c(i, i) > 0.0)) {
      throw NumericError("capacitance matrix is singular: node '" +
                         cap.names[static_cast<std::size_t>(i)] +
                         "' has zero total capacitance");
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cap.c);
  if (llt.info() != Eigen::Success) {
    // Locate the first leading minor that fails.
    for (Eigen::Index m = 1; m <= n; ++m) {
      Eigen::LLT<Eigen::MatrixXd> part(cap.c.topLeftCorner(m, m));
      if (part.info() != Eigen::Success) {
        throw NumericError("capacitance matrix is not positive definite at "
                           "node '" +
                           cap.names[static_cast<std::size_t>(m - 1)] + "'");
      }
    }
    throw NumericError("capacitance matrix is not positive definite");
  }
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  inv = 0.5 * (inv + inv.transpose());

  auto junctions = net.junction_indices();
  std::vector<Eigen::Index> idx(junctions.begin(), junctions.end());
  InverseBlock out;
  for (auto j : junctions) out.names.push_back(net.nodes[j].name);
  out.a = inv(idx, idx);

  Eigen::MatrixXd schur = schur_junction_inverse(cap.c, junctions);
  double scale = out.a.cwiseAbs().maxCoeff();
  double diff = (schur - out.a).cwiseAbs().maxCoeff();
  if (diff > 1e-9 * scale) {
    throw NumericError("junction-block inverse is ill-conditioned: direct and "
                       "Schur-complement paths disagree");
  }
  return out;
}

namespace {

void check_denominator(double d, double scale) {
  if (std::abs(d) <= 1e-12 * scale) {
    throw NumericError("degenerate network: closed-form denominator vanishes");
  }
}

InverseBlock three_mode_block(double a11, double a33, double a13, double a1q) {
  InverseBlock out;
  out.names = {"Q1", "C", "Q2"};
  out.a.resize(3, 3);
  out.a << a11, a13, a1q,  //
      a13, a33, a13,       //
      a1q, a13, a11;
  return out;
}

}  // namespace

InverseBlock symmetric_two_pad_inverse(double cQG, double cPG, double cCG,
                                       double cQP, double cPC, double cP12) {
  const double c12 = cQP, c23 = cPC, c24 = cP12;
  const double c1s = cQG + cQP;
  const double c2s = cPG + cQP + cPC + cP12;
  const double c3s = cCG + 2.0 * cPC;
  const double scale3 = std::pow(std::max({c1s, c2s, c3s}), 3);

  const double d = 2.0 * c1s * c23 * c23 + c12 * c12 * c3s +
                   c1s * c3s * (c24 - c2s);
  const double f = c12 * c12 - c1s * (c24 + c2s);
  check_denominator(d, scale3);
  check_denominator(f, scale3 / std::max({c1s, c2s, c3s}));

  const double a11 = (-c1s * (c24 + c2s) * (2.0 * c23 * c23 + c3s * (c24 - c2s)) +
                      c12 * c12 * (c23 * c23 - c2s * c3s)) /
                     (f * d);
  const double a33 = (c12 * c12 + c1s * (c24 - c2s)) / d;
  const double a13 = -c12 * c23 / d;
  const double a15 = c12 * c12 * (c23 * c23 + c24 * c3s) / (f * d);
  return three_mode_block(a11, a33, a13, a15);
}

InverseBlock symmetric_one_pad_inverse(double cQG, double cPG, double cCG,
                                       double cQP, double cPC) {
  const double c12 = cQP, c23 = cPC;
  const double c1s = cQG + cQP;
  const double c2s = cPG + 2.0 * cQP + cPC;
  const double c3s = cCG + cPC;
  const double scale3 = std::pow(std::max({c1s, c2s, c3s}), 3);

  const double inner = c23 * c23 - c2s * c3s;
  const double d = 2.0 * c12 * c12 * c3s + c1s * inner;
  check_denominator(d, scale3);
  check_denominator(c1s, 1.0);

  const double a11 = (c12 * c12 * c3s + c1s * inner) / (c1s * d);
  const double a33 = (2.0 * c12 * c12 - c1s * c2s) / d;
  const double a13 = -c12 * c23 / d;
  const double a14 = -c12 * c12 * c3s / (c1s * d);
  return three_mode_block(a11, a33, a13, a14);
}

EnergyTable energies_from_inverse(const InverseBlock& block) {
  EnergyTable out;
  out.names = block.names;
  out.e = kChargingConstant * block.a;
  return out;
}

JunctionState squid_effective_ej(double ejb, double ejs, double flux) {
  if (!(ejb >= ejs && ejs >= 0.0)) {
    throw std::invalid_argument("SQUID requires ejb >= ejs >= 0");
  }
  if (ejb == 0.0) throw NumericError("SQUID has zero Josephson energy");
  const double pi = std::numbers::pi;
  // Same as sqrt(ejs^2 + ejb^2 + 2 ejs ejb cos 2 pi f), factored so the
  // zero-flux value is exactly ejb + ejs.
  const double sum = ejb + ejs;
  const double d = (ejb - ejs) / sum;
  const double c = std::cos(pi * flux), s = std::sin(pi * flux);
  JunctionState out;
  out.ej = sum * std::sqrt(c * c + d * d * s * s);
  // cos(pi / 2) is not exactly zero in floating point.
  if (out.ej < 1e-12 * sum) out.ej = 0.0;
  out.phi0 = std::atan((ejs - ejb) / (ejs + ejb) * std::tan(pi * flux));
  return out;
}

double squid_flux_for_ej(double ejb, double ejs, double ej) {
  const double lo = ejb - ejs;
  const double hi = ejb + ejs;
  if (ej < lo - 1e-12 * hi || ej > hi + 1e-12 * hi || ejs == 0.0) {
    if (ejs == 0.0 && std::abs(ej - ejb) <= 1e-12 * ejb) return 0.0;
    throw NumericError("requested E_J outside the SQUID tuning range");
  }
  double c = (ej * ej - ejs * ejs - ejb * ejb) / (2.0 * ejs * ejb);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c) / (2.0 * std::numbers::pi);
}

ModeParams mode_params(double ej, double ec) {
  if (!(ej > 0.0 && ec > 0.0)) {
    throw NumericError("mode parameters need E_J > 0 and E_C > 0");
  }
  ModeParams m;
  m.xi = std::sqrt(2.0 * ec / ej);
  m.omega = std::sqrt(8.0 * ej * ec) - ec * (1.0 - m.xi / 4.0);
  m.alpha = -ec;
  m.n_zpf = std::pow(ej / (8.0 * ec), 0.25) / std::numbers::sqrt2;
  m.phi_zpf = std::pow(8.0 * ec / ej, 0.25) / std::numbers::sqrt2;
  m.low_ej_ec = ej / ec < 20.0;
  return m;
}

double infer_ej_from_frequency(double omega_target, double ec) {
  if (!(omega_target > 0.0 && ec > 0.0)) {
    throw NumericError("frequency inversion needs omega > 0 and E_C > 0");
  }
  auto f = [&](double ej) { return mode_params(ej, ec).omega - omega_target; };
  double lo = ec, hi = 1e4 * ec;
  if (f(lo) > 0.0 || f(hi) < 0.0) {
    throw NumericError("no E_J in [E_C, 1e4 E_C] reaches the target frequency");
  }
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-14 * b; };
  auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace tccp
