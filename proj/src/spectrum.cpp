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

#include "tccp/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "tccp/errors.hpp"

namespace tccp {

HamiltonianParams hamiltonian_params(const ModeSet& m) {
  HamiltonianParams p;
  for (std::size_t k = 0; k < 3; ++k) {
    p.omega[k] = m.mode[k].omega;
    p.ec[k] = m.ec[k];
    p.xi[k] = m.mode[k].xi;
  }
  p.g12 = m.g12 * 1e-3;
  p.g1c = m.g1c * 1e-3;
  p.g2c = m.g2c * 1e-3;
  return p;
}

double ladder_energy(double omega, double ec, double xi, int n) {
  const double nn = n;
  return (omega + 0.5 * ec * (1.0 - 5.0 * xi / 18.0) -
          0.5 * ec * (1.0 - xi / 6.0) * nn) *
         nn;
}

namespace {

// <m| (a^dag - a) |n>
double x_element(int m, int n) {
  if (m == n + 1) return std::sqrt(static_cast<double>(n + 1));
  if (m == n - 1) return -std::sqrt(static_cast<double>(n));
  return 0.0;
}

}  // namespace

TruncatedHamiltonian build_hamiltonian(const HamiltonianParams& p,
                                       int levels) {
  if (levels < 3) throw std::invalid_argument("levels must be >= 3");
  const int L = levels;
  const int dim = L * L * L;
  TruncatedHamiltonian out;
  out.levels = L;
  out.h = Eigen::MatrixXd::Zero(dim, dim);

  for (int n1 = 0; n1 < L; ++n1) {
    for (int nc = 0; nc < L; ++nc) {
      for (int n2 = 0; n2 < L; ++n2) {
        int i = basis_index(n1, nc, n2, L);
        out.h(i, i) = ladder_energy(p.omega[0], p.ec[0], p.xi[0], n1) +
                      ladder_energy(p.omega[1], p.ec[1], p.xi[1], nc) +
                      ladder_energy(p.omega[2], p.ec[2], p.xi[2], n2);
      }
    }
  }

  // Charge coupling 2 E_jk n_j n_k with n = i n_zpf (a^dag - a) gives
  // -g (a_j^dag - a_j)(a_k^dag - a_k), which is +g (a_j^dag a_k + h.c.)
  // in the exchange sector.
  struct Pair {
    int j, k;
    double g;
  };
  const Pair pairs[] = {{0, 1, p.g1c}, {2, 1, p.g2c}, {0, 2, p.g12}};
  for (int n1 = 0; n1 < L; ++n1) {
    for (int nc = 0; nc < L; ++nc) {
      for (int n2 = 0; n2 < L; ++n2) {
        const int col = basis_index(n1, nc, n2, L);
        const std::array<int, 3> n = {n1, nc, n2};
        for (const auto& pr : pairs) {
          if (pr.g == 0.0) continue;
          for (int dj : {-1, 1}) {
            for (int dk : {-1, 1}) {
              std::array<int, 3> m = n;
              m[pr.j] += dj;
              m[pr.k] += dk;
              if (m[pr.j] < 0 || m[pr.j] >= L || m[pr.k] < 0 ||
                  m[pr.k] >= L) {
                continue;
              }
              const int row = basis_index(m[0], m[1], m[2], L);
              out.h(row, col) += -pr.g * x_element(m[pr.j], n[pr.j]) *
                                 x_element(m[pr.k], n[pr.k]);
            }
          }
        }
      }
    }
  }
  return out;
}

TruncatedHamiltonian build_hamiltonian(const ModeSet& m, int levels) {
  return build_hamiltonian(hamiltonian_params(m), levels);
}

Spectrum eigensolve(const TruncatedHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.h);
  if (es.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed");
  }
  Spectrum s;
  s.levels = h.levels;
  s.energies = es.eigenvalues();
  s.vectors = es.eigenvectors();

  const double norm = h.h.cwiseAbs().rowwise().sum().maxCoeff();
  Eigen::MatrixXd r = h.h * s.vectors - s.vectors * s.energies.asDiagonal();
  s.max_residual = r.colwise().norm().maxCoeff();
  if (s.max_residual > 1e-9 * std::max(norm, 1.0)) {
    throw NumericError("eigenpair residual above tolerance");
  }

  const auto dim = s.vectors.cols();
  s.labels.resize(static_cast<std::size_t>(dim));
  s.overlaps.resize(static_cast<std::size_t>(dim));
  std::vector<bool> used(static_cast<std::size_t>(dim), false);
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index arg = 0;
    double w = s.vectors.col(k).cwiseAbs2().maxCoeff(&arg);
    s.labels[static_cast<std::size_t>(k)] = static_cast<int>(arg);
    s.overlaps[static_cast<std::size_t>(k)] = w;
    if (w <= 0.5 || used[static_cast<std::size_t>(arg)]) s.ambiguous = true;
    used[static_cast<std::size_t>(arg)] = true;
  }
  return s;
}

int Spectrum::dressed_index(int bare) const {
  Eigen::Index arg = 0;
  double w = vectors.row(bare).cwiseAbs2().maxCoeff(&arg);
  if (w <= 0.5) {
    throw LabelAmbiguityError("bare state " + std::to_string(bare) +
                              " has no dressed partner with overlap > 0.5");
  }
  return static_cast<int>(arg);
}

double Spectrum::energy_of(int n1, int nc, int n2) const {
  return energies(dressed_index(basis_index(n1, nc, n2, levels)));
}

double zz_exact(const Spectrum& s) {
  return 1e3 * (s.energy_of(1, 0, 1) - s.energy_of(1, 0, 0) -
                s.energy_of(0, 0, 1) + s.energy_of(0, 0, 0));
}

CheckedValue zz_exact_checked(const ModeSet& m, int levels) {
  CheckedValue out;
  out.value = zz_exact(eigensolve(build_hamiltonian(m, levels)));
  out.reference = zz_exact(eigensolve(build_hamiltonian(m, levels + 1)));
  out.converged = std::abs(out.value - out.reference) <=
                  std::max(0.01 * std::abs(out.reference), 1e-6);
  return out;
}

namespace {

struct SinglePair {
  int low = 0, high = 0;
  double e_low = 0.0, e_high = 0.0;
  double imbalance = 0.0;  // |<100|low>|^2 - |<001|low>|^2
  bool symmetric_high = false;
};

// The two eigenvectors carrying most of the |a>, |b> weight.
std::pair<int, int> dominant_pair(const Spectrum& s, int a, int b) {
  Eigen::VectorXd w = s.vectors.row(a).cwiseAbs2() + s.vectors.row(b).cwiseAbs2();
  int first = 0, second = -1;
  w.maxCoeff(&first);
  double best = -1.0;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (k != first && w(k) > best) {
      best = w(k);
      second = static_cast<int>(k);
    }
  }
  if (w(first) <= 0.5 || w(second) <= 0.5) {
    throw LabelAmbiguityError(
        "single-excitation states are strongly hybridized with a third mode");
  }
  return s.energies(first) < s.energies(second)
             ? std::pair<int, int>{first, second}
             : std::pair<int, int>{second, first};
}

SinglePair single_pair(const ModeSet& m, int levels) {
  Spectrum s = eigensolve(build_hamiltonian(m, levels));
  const int i100 = basis_index(1, 0, 0, levels);
  const int i001 = basis_index(0, 0, 1, levels);
  auto [lo, hi] = dominant_pair(s, i100, i001);
  SinglePair p;
  p.low = lo;
  p.high = hi;
  p.e_low = s.energies(lo);
  p.e_high = s.energies(hi);
  p.imbalance = s.vectors(i100, lo) * s.vectors(i100, lo) -
                s.vectors(i001, lo) * s.vectors(i001, lo);
  p.symmetric_high = s.vectors(i100, hi) * s.vectors(i001, hi) > 0.0;
  return p;
}

}  // namespace

DressedCoupling dressed_geff(const ModeSet& base, int levels) {
  ModeSet m = base;
  auto eval = [&](double ej2) {
    m.ej[2] = ej2;
    m.refresh();
    return single_pair(m, levels);
  };
  // Start from bare resonance and widen until the mixing flips.
  const double ej_res = infer_ej_from_frequency(base.mode[0].omega, base.ec[2]);
  const double slope = base.mode[2].xi;  // d omega / d E_J to leading order
  double step = 0.02 / slope;
  double lo = ej_res - step, hi = ej_res + step;
  double f_lo = eval(lo).imbalance, f_hi = eval(hi).imbalance;
  for (int i = 0; i < 12 && f_lo * f_hi > 0.0; ++i) {
    step *= 2.0;
    lo = std::max(ej_res - step, 0.5 * ej_res);
    hi = ej_res + step;
    f_lo = eval(lo).imbalance;
    f_hi = eval(hi).imbalance;
  }
  if (f_lo * f_hi > 0.0) {
    throw NumericError("could not bring the qubits into resonance");
  }
  std::uintmax_t iters = 100;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13 * b; };
  auto r = boost::math::tools::toms748_solve(
      [&](double x) { return eval(x).imbalance; }, lo, hi, f_lo, f_hi, tol,
      iters);
  const double ej2 = 0.5 * (r.first + r.second);
  auto p = eval(ej2);
  DressedCoupling out;
  out.ej2 = ej2;
  out.splitting = 1e3 * (p.e_high - p.e_low);
  out.g_eff = 0.5 * out.splitting * (p.symmetric_high ? 1.0 : -1.0);
  return out;
}

DressedCoupling dressed_geff(const QuantizedCircuit& circuit,
                             const FluxAssignment& flux, int levels) {
  return dressed_geff(circuit.modes(flux), levels);
}

double fit_hyperbola_g(const std::vector<double>& x,
                       const std::vector<double>& gap) {
  if (x.size() != gap.size() || x.size() < 3) {
    throw std::invalid_argument("hyperbola fit needs >= 3 samples");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::Index imin = 0;
  Eigen::Map<const Eigen::VectorXd> gv(gap.data(), n);
  const double gmin = gv.minCoeff(&imin);
  if (imin == 0 || imin == n - 1) {
    throw NumericError("anticrossing minimum is not interior to the grid");
  }
  std::vector<Eigen::Index> use;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (gap[static_cast<std::size_t>(i)] <= 3.0 * gmin) use.push_back(i);
  }
  if (use.size() < 3) use = {imin - 1, imin, imin + 1};
  // gap^2 is quadratic in x for a two-mode crossing.
  Eigen::MatrixXd a(static_cast<Eigen::Index>(use.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(use.size()));
  const double x0 = x[static_cast<std::size_t>(imin)];
  for (std::size_t r = 0; r < use.size(); ++r) {
    double dx = x[static_cast<std::size_t>(use[r])] - x0;
    double g = gap[static_cast<std::size_t>(use[r])];
    a.row(static_cast<Eigen::Index>(r)) << dx * dx, dx, 1.0;
    b(static_cast<Eigen::Index>(r)) = g * g;
  }
  Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  double floor = c(2);
  if (c(0) > 0.0) floor = c(2) - c(1) * c(1) / (4.0 * c(0));
  if (!(floor > 0.0)) floor = gmin * gmin;
  return 0.5 * std::sqrt(floor);
}

AnticrossResult anticross_gqc(const QuantizedCircuit& circuit,
                              const FluxAssignment& base,
                              const std::string& qubit,
                              const std::vector<double>& grid, int levels) {
  const auto& names = circuit.mode_names();
  int which = -1;
  if (qubit == names[0]) which = 0;
  if (qubit == names[2]) which = 2;
  if (which < 0) {
    throw std::invalid_argument("'" + qubit + "' is not a qubit mode");
  }
  const int iq = which == 0 ? basis_index(1, 0, 0, levels)
                            : basis_index(0, 0, 1, levels);
  const int ic = basis_index(0, 1, 0, levels);
  AnticrossResult out;
  FluxAssignment flux = base;
  for (double f : grid) {
    flux[names[1]] = f;
    ModeSet m = circuit.modes(flux);
    Spectrum s = eigensolve(build_hamiltonian(m, levels));
    auto [lo, hi] = dominant_pair(s, iq, ic);
    out.omegac.push_back(m.mode[1].omega);
    out.gaps.push_back(1e3 * (s.energies(hi) - s.energies(lo)));
  }
  auto it = std::min_element(out.gaps.begin(), out.gaps.end());
  out.gap_min = *it;
  out.flux_at_min = grid[static_cast<std::size_t>(it - out.gaps.begin())];
  out.g_qc = fit_hyperbola_g(out.omegac, out.gaps);
  return out;
}

namespace {

TransmonLevels charge_basis_levels(double ej, double ec, int cutoff) {
  const int dim = 2 * cutoff + 1;
  Eigen::VectorXd diag(dim);
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(dim - 1, -0.5 * ej);
  for (int i = 0; i < dim; ++i) {
    double n = i - cutoff;
    diag(i) = 4.0 * ec * n * n;
  }
  // computeFromTridiagonal skips the scaling the dense path applies, and the
  // QR sweep can stall on unscaled input.
  const double scale = std::max(diag.maxCoeff(), 0.5 * ej);
  diag /= scale;
  sub /= scale;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError("charge-basis eigensolver did not converge");
  }
  const Eigen::VectorXd e = es.eigenvalues() * scale;
  TransmonLevels out;
  out.omega01 = e(1) - e(0);
  out.alpha = (e(2) - e(1)) - out.omega01;
  return out;
}

}  // namespace

TransmonLevels exact_transmon_levels(double ej, double ec, int cutoff) {
  if (cutoff < 20) throw std::invalid_argument("charge cutoff must be >= 20");
  if (!(ej > 0.0 && ec > 0.0)) {
    throw std::invalid_argument("transmon levels need E_J > 0 and E_C > 0");
  }
  auto a = charge_basis_levels(ej, ec, cutoff);
  auto b = charge_basis_levels(ej, ec, 2 * cutoff);
  // Relative to omega01: the doubled basis carries diagonal entries of order
  // 16 E_C cutoff^2, so eigenvalue roundoff alone approaches 1e-9 GHz.
  const double tol = 1e-8 * std::max(1.0, a.omega01);
  if (std::abs(a.omega01 - b.omega01) > tol ||
      std::abs(a.alpha - b.alpha) > tol) {
    throw NumericError("charge cutoff too small for these parameters");
  }
  return a;
}

}  // namespace tccp
