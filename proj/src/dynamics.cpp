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

#include "tccp/dynamics.hpp"

#include <fftw3.h>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <mutex>
#include <numbers>

#include "tccp/errors.hpp"

namespace tccp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cd = std::complex<double>;

}  // namespace

double Trajectory::at(double s) const {
  if (kind == Kind::Constant) return from;
  s = std::clamp(s, 0.0, 1.0);
  return from + (to - from) * 0.5 * (1.0 - std::cos(std::numbers::pi * s));
}

double PulseSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

FluxAssignment PulseSchedule::flux_at(double t,
                                      const FluxAssignment& base) const {
  FluxAssignment out = base;
  if (segments.empty()) return out;
  double t0 = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    bool last = i + 1 == segments.size();
    if (t <= t0 + seg.duration || last) {
      double s = seg.duration > 0.0 ? (t - t0) / seg.duration : 0.0;
      for (const auto& [name, traj] : seg.flux) out[name] = traj.at(s);
      return out;
    }
    t0 += seg.duration;
  }
  return out;
}

double PulseSchedule::max_frequency() const {
  double f = 0.0;
  for (const auto& seg : segments) {
    for (const auto& [name, traj] : seg.flux) {
      if (traj.kind == Trajectory::Kind::CosineRamp && traj.from != traj.to) {
        f = std::max(f, 0.5 / seg.duration);
      }
    }
  }
  return f;
}

void PulseSchedule::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!(segments[i].duration > 0.0)) {
      throw std::invalid_argument("segment durations must be positive");
    }
    if (i == 0) continue;
    const auto& prev = segments[i - 1].flux;
    const auto& cur = segments[i].flux;
    if (prev.size() != cur.size()) {
      throw std::invalid_argument("segments drive different junction sets");
    }
    for (const auto& [name, traj] : cur) {
      auto it = prev.find(name);
      if (it == prev.end()) {
        throw std::invalid_argument("segments drive different junction sets");
      }
      if (std::abs(it->second.end() - traj.start()) > 1e-12) {
        throw std::invalid_argument("flux trajectory for '" + name +
                                    "' is discontinuous");
      }
    }
  }
  double f = max_frequency();
  if (f > 0.0 && dt > 1.0 / (50.0 * f) * (1.0 + 1e-12)) {
    throw std::invalid_argument("time step too coarse for the pulse");
  }
}

void expmv(const SparseH& h, double dt, Eigen::MatrixXcd& psi) {
  const Eigen::Index n = h.rows();
  double dmin = INFINITY, dmax = -INFINITY;
  Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < h.outerSize(); ++k) {
    for (SparseH::InnerIterator it(h, k); it; ++it) {
      if (it.row() == it.col()) diag(it.row()) = it.value();
    }
  }
  dmin = diag.minCoeff();
  dmax = diag.maxCoeff();
  const double shift = 0.5 * (dmin + dmax);
  for (int k = 0; k < h.outerSize(); ++k) {
    for (SparseH::InnerIterator it(h, k); it; ++it) {
      double v = it.value() - (it.row() == it.col() ? shift : 0.0);
      row_sum(it.row()) += std::abs(v);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (row_sum(i) == 0.0) row_sum(i) = std::abs(diag(i) - shift);
  }
  const double theta = kTwoPi * std::abs(dt) * row_sum.maxCoeff();
  const int sub = std::max(1, static_cast<int>(std::ceil(theta)));
  const double tau = dt / sub;
  const double a = kTwoPi * tau;
  const Eigen::Index m = psi.cols();

  // Work on [Re | Im] so the sparse product stays real.
  Eigen::MatrixXd z(n, 2 * m), term(n, 2 * m), acc(n, 2 * m), az(n, 2 * m);
  z.leftCols(m) = psi.real();
  z.rightCols(m) = psi.imag();
  const cd phase = std::exp(cd(0.0, -kTwoPi * shift * tau));
  for (int s = 0; s < sub; ++s) {
    acc = z;
    term = z;
    for (int k = 1; k <= 80; ++k) {
      az.noalias() = h * term;
      az -= shift * term;
      // (-i a A)(X + iY) = a A Y - i a A X
      term.leftCols(m) = (a / k) * az.rightCols(m);
      term.rightCols(m) = (-a / k) * az.leftCols(m);
      acc += term;
      if (term.cwiseAbs().maxCoeff() <= 1e-17 * acc.cwiseAbs().maxCoeff()) {
        break;
      }
    }
    // Global phase from the shift.
    Eigen::MatrixXd re = acc.leftCols(m), im = acc.rightCols(m);
    z.leftCols(m) = phase.real() * re - phase.imag() * im;
    z.rightCols(m) = phase.real() * im + phase.imag() * re;
  }
  psi.real() = z.leftCols(m);
  psi.imag() = z.rightCols(m);
}

namespace {

void apply_exact(const SparseH& h, double t, Eigen::MatrixXcd& psi) {
  Eigen::MatrixXd dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  const auto& v = es.eigenvectors();
  Eigen::MatrixXcd c = v.transpose() * psi;
  for (Eigen::Index k = 0; k < c.rows(); ++k) {
    c.row(k) *= std::exp(cd(0.0, -kTwoPi * es.eigenvalues()(k) * t));
  }
  psi = v * c;
}

bool all_constant(const Segment& seg) {
  for (const auto& [name, traj] : seg.flux) {
    if (traj.kind != Trajectory::Kind::Constant) return false;
  }
  return true;
}

}  // namespace

EvolveResult evolve(const HamiltonianFn& h, const Eigen::MatrixXcd& psi0,
                    const PulseSchedule& schedule) {
  schedule.validate();
  for (Eigen::Index c = 0; c < psi0.cols(); ++c) {
    if (std::abs(psi0.col(c).norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("initial state is not normalized");
    }
  }
  EvolveResult out;
  out.state = psi0;
  out.times.push_back(0.0);
  out.trajectory.push_back(psi0);
  double t0 = 0.0;
  for (const auto& seg : schedule.segments) {
    if (all_constant(seg)) {
      apply_exact(h(t0 + 0.5 * seg.duration), seg.duration, out.state);
    } else {
      const int steps = std::max(
          1, static_cast<int>(std::ceil(seg.duration / schedule.dt - 1e-9)));
      const double step = seg.duration / steps;
      for (int k = 0; k < steps; ++k) {
        expmv(h(t0 + (k + 0.5) * step), step, out.state);
      }
    }
    t0 += seg.duration;
    out.times.push_back(t0);
    out.trajectory.push_back(out.state);
  }
  for (Eigen::Index c = 0; c < out.state.cols(); ++c) {
    if (std::abs(out.state.col(c).norm() - psi0.col(c).norm()) > 1e-9) {
      throw NumericError("propagation lost unitarity");
    }
  }
  return out;
}

ThreeModeOperators::ThreeModeOperators(int levels) : levels_(levels) {
  if (levels < 3) throw std::invalid_argument("levels must be >= 3");
  const int L = levels, dim = L * L * L;
  for (auto& o : occupation_) o.resize(dim);
  for (int n1 = 0; n1 < L; ++n1) {
    for (int nc = 0; nc < L; ++nc) {
      for (int n2 = 0; n2 < L; ++n2) {
        int i = basis_index(n1, nc, n2, L);
        occupation_[0](i) = n1;
        occupation_[1](i) = nc;
        occupation_[2](i) = n2;
      }
    }
  }
  // Unit-coupling pieces taken from the dense builder so both paths agree.
  auto piece = [&](double g1c, double g2c, double g12) {
    HamiltonianParams p;
    p.g1c = g1c;
    p.g2c = g2c;
    p.g12 = g12;
    return SparseH(build_hamiltonian(p, L).h.sparseView());
  };
  x1c_ = piece(1.0, 0.0, 0.0);
  x2c_ = piece(0.0, 1.0, 0.0);
  x12_ = piece(0.0, 0.0, 1.0);
}

SparseH ThreeModeOperators::hamiltonian(const HamiltonianParams& p) const {
  const Eigen::Index dim = occupation_[0].size();
  std::vector<Eigen::Triplet<double>> diag;
  diag.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    double e = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      e += ladder_energy(p.omega[k], p.ec[k], p.xi[k], occupation_[k](i));
    }
    diag.emplace_back(i, i, e);
  }
  SparseH h(dim, dim);
  h.setFromTriplets(diag.begin(), diag.end());
  h += p.g1c * x1c_ + p.g2c * x2c_ + p.g12 * x12_;
  return h;
}

SparseH ThreeModeOperators::hamiltonian(const ModeSet& m) const {
  return hamiltonian(hamiltonian_params(m));
}

int computational_index(int q1, int q2, int levels) {
  return basis_index(q1, 0, q2, levels);
}

ChevronMap swap_chevron(const QuantizedCircuit& circuit,
                        const FluxAssignment& base, const std::string& excite,
                        const std::vector<double>& coupler_flux,
                        const std::vector<double>& delay, int levels) {
  const auto& names = circuit.mode_names();
  int q = -1;
  if (excite == names[0]) q = 0;
  if (excite == names[2]) q = 2;
  if (q < 0) throw std::invalid_argument("'" + excite + "' is not a qubit");
  const int L = levels, dim = L * L * L;
  const int start = q == 0 ? basis_index(1, 0, 0, L) : basis_index(0, 0, 1, L);
  std::vector<int> excited;
  for (int n1 = 0; n1 < L; ++n1) {
    for (int nc = 0; nc < L; ++nc) {
      for (int n2 = 0; n2 < L; ++n2) {
        if ((q == 0 ? n1 : n2) >= 1) excited.push_back(basis_index(n1, nc, n2, L));
      }
    }
  }

  ChevronMap map;
  map.flux = coupler_flux;
  map.delay = delay;
  map.p.resize(static_cast<Eigen::Index>(coupler_flux.size()),
               static_cast<Eigen::Index>(delay.size()));
  FluxAssignment flux = base;
  const auto nd = static_cast<Eigen::Index>(delay.size());
  for (std::size_t i = 0; i < coupler_flux.size(); ++i) {
    flux[names[1]] = coupler_flux[i];
    ModeSet m = circuit.modes(flux);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        build_hamiltonian(m, L).h);
    const auto& v = es.eigenvectors();
    const auto& e = es.eigenvalues();
    Eigen::VectorXd c = v.row(start).transpose();
    Eigen::MatrixXd re(dim, nd), im(dim, nd);
    for (Eigen::Index k = 0; k < dim; ++k) {
      for (Eigen::Index j = 0; j < nd; ++j) {
        double ph = -kTwoPi * e(k) * delay[static_cast<std::size_t>(j)];
        re(k, j) = c(k) * std::cos(ph);
        im(k, j) = c(k) * std::sin(ph);
      }
    }
    Eigen::MatrixXd pr = v * re, pi = v * im;
    for (Eigen::Index j = 0; j < nd; ++j) {
      double p = 0.0;
      for (int b : excited) p += pr(b, j) * pr(b, j) + pi(b, j) * pi(b, j);
      if (p < -1e-12 || p > 1.0 + 1e-9) {
        throw NumericError("population outside [0, 1]");
      }
      map.p(static_cast<Eigen::Index>(i), j) = p;
    }
  }
  return map;
}

std::optional<double> dominant_frequency(const std::vector<double>& signal,
                                         double spacing) {
  const std::size_t n = signal.size();
  if (n < 8) throw std::invalid_argument("signal too short for an FFT");
  std::size_t m = 1;
  while (m < 16 * n) m <<= 1;

  double mean = 0.0;
  for (double s : signal) mean += s;
  mean /= static_cast<double>(n);

  std::vector<double> in(m, 0.0);
  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) /
                                      static_cast<double>(n - 1)));
    in[i] = w * (signal[i] - mean);
    wsum += w;
  }
  std::vector<fftw_complex> out(m / 2 + 1);
  {
    // Planner calls are not thread-safe in FFTW.
    static std::mutex planner;
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(planner);
      plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in.data(), out.data(),
                                  FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner);
    fftw_destroy_plan(plan);
  }
  std::vector<double> mag(m / 2 + 1);
  for (std::size_t k = 0; k < mag.size(); ++k) {
    mag[k] = std::hypot(out[k][0], out[k][1]);
  }
  // Skip the window's main lobe around DC (two original bins).
  const std::size_t kmin = 2 * m / n + 1;
  std::size_t best = 0;
  double peak = -1.0;
  for (std::size_t k = kmin; k + 1 < mag.size(); ++k) {
    if (mag[k] > peak) {
      peak = mag[k];
      best = k;
    }
  }
  if (best == 0 || 2.0 * peak / wsum < 1e-6) return std::nullopt;
  const double a = mag[best - 1], b = mag[best], c = mag[best + 1];
  const double den = a - 2.0 * b + c;
  const double delta = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
  return (static_cast<double>(best) + delta) /
         (static_cast<double>(m) * spacing);
}

namespace {

double uniform_spacing(const std::vector<double>& t) {
  if (t.size() < 2) throw std::invalid_argument("grid needs >= 2 points");
  const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs(t[i] - t[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw std::invalid_argument("grid is not uniform");
    }
  }
  if (!(h > 0.0)) throw std::invalid_argument("grid must increase");
  return h;
}

}  // namespace

std::vector<std::optional<double>> chevron_fft(const ChevronMap& map) {
  if (map.delay.size() < 64) {
    throw std::invalid_argument("chevron FFT needs >= 64 delay points");
  }
  const double h = uniform_spacing(map.delay);
  std::vector<std::optional<double>> out;
  for (Eigen::Index i = 0; i < map.p.rows(); ++i) {
    std::vector<double> col(map.delay.size());
    for (std::size_t j = 0; j < col.size(); ++j) {
      col[j] = map.p(i, static_cast<Eigen::Index>(j));
    }
    auto f = dominant_frequency(col, h);
    if (f) {
      out.push_back(0.5 * *f * 1e3);
    } else {
      out.push_back(std::nullopt);
    }
  }
  return out;
}

namespace {

struct RamseyLevels {
  double f0 = 0.0, f1 = 0.0;  // GHz, target transition for control 0 / 1
  double zz = 0.0;            // MHz
};

RamseyLevels ramsey_levels(const QuantizedCircuit& circuit,
                           const FluxAssignment& flux,
                           const std::string& control, int levels) {
  const auto& names = circuit.mode_names();
  bool first = control == names[0];
  if (!first && control != names[2]) {
    throw std::invalid_argument("'" + control + "' is not a qubit");
  }
  Spectrum s = eigensolve(build_hamiltonian(circuit.modes(flux), levels));
  auto e = [&](int c, int t) {
    return first ? s.energy_of(c, 0, t) : s.energy_of(t, 0, c);
  };
  RamseyLevels r;
  r.f0 = e(0, 1) - e(0, 0);
  r.f1 = e(1, 1) - e(1, 0);
  r.zz = 1e3 * (r.f1 - r.f0);
  return r;
}

double fringe_from_levels(double f_target, double f_frame,
                          const std::vector<double>& times) {
  const double h = uniform_spacing(times);
  std::vector<double> sig(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    // Ideal pi/2 - wait - pi/2 with the frame phase applied virtually.
    cd amp = 0.5 * (1.0 + std::exp(cd(0.0, -kTwoPi * (f_target - f_frame) *
                                              times[i])));
    sig[i] = std::norm(amp);
  }
  auto f = dominant_frequency(sig, h);
  if (!f) throw NumericError("no Ramsey fringe above the noise floor");
  return *f * 1e3;
}

}  // namespace

double ramsey_fringe(const QuantizedCircuit& circuit,
                     const FluxAssignment& flux, const std::string& control,
                     int control_state, const std::vector<double>& times,
                     double detuning, int levels) {
  if (control_state != 0 && control_state != 1) {
    throw std::invalid_argument("control state must be 0 or 1");
  }
  auto lv = ramsey_levels(circuit, flux, control, levels);
  const double frame = lv.f0 - detuning * 1e-3;
  return fringe_from_levels(control_state == 0 ? lv.f0 : lv.f1, frame, times);
}

RamseyResult ramsey_zz(const QuantizedCircuit& circuit,
                       const FluxAssignment& flux, const std::string& control,
                       const std::vector<double>& times, double detuning,
                       int levels) {
  auto lv = ramsey_levels(circuit, flux, control, levels);
  const double h = uniform_spacing(times);
  const double span = times.back() - times.front();  // ns
  if (lv.zz != 0.0 && span * std::abs(lv.zz) * 1e-3 < 3.0) {
    throw NumericError("Ramsey span shorter than three ZZ periods");
  }
  if (detuning <= 0.0) detuning = 10.0 / span * 1e3 + 2.0 * std::abs(lv.zz);
  if ((detuning + std::abs(lv.zz)) * 1e-3 >= 0.5 / h) {
    throw NumericError("Ramsey fringes exceed the sampling Nyquist limit");
  }
  RamseyResult r;
  r.detuning = detuning;
  const double frame = lv.f0 - detuning * 1e-3;
  r.fringe0 = fringe_from_levels(lv.f0, frame, times);
  r.fringe1 = fringe_from_levels(lv.f1, frame, times);
  r.zz = r.fringe1 - r.fringe0;
  return r;
}

namespace {

// Dressed computational basis at the idle point, signs fixed so each
// vector overlaps its bare state positively.
Eigen::MatrixXd dressed_computational(const ModeSet& m, int levels) {
  Spectrum s = eigensolve(build_hamiltonian(m, levels));
  Eigen::MatrixXd b(s.vectors.rows(), 4);
  for (int q1 = 0; q1 < 2; ++q1) {
    for (int q2 = 0; q2 < 2; ++q2) {
      int bare = computational_index(q1, q2, levels);
      Eigen::VectorXd v = s.vectors.col(s.dressed_index(bare));
      if (v(bare) < 0.0) v = -v;
      b.col(2 * q1 + q2) = v;
    }
  }
  return b;
}

struct CZPrep {
  Eigen::VectorXd lambda;  // gate-point eigenvalues
  Eigen::MatrixXcd q;      // V^T S1
};

// With a real Hamiltonian and a time-symmetric ramp pair, the return ramp
// propagator is the transpose of the outbound one, so
// M(hold) = S1^T U_hold S1 with S1 = U_ramp B.
CZPrep prepare_cz(const QuantizedCircuit& circuit, const FluxAssignment& idle,
                  double gate_flux, double ramp_ns, const CZOptions& opts) {
  const auto& coupler = circuit.coupler_name();
  const double idle_c = idle.count(coupler) ? idle.at(coupler) : 0.0;
  ThreeModeOperators ops(opts.levels);

  PulseSchedule ramp;
  ramp.dt = opts.dt;
  ramp.segments.push_back(
      {ramp_ns, {{coupler, gate_flux == idle_c
                               ? Trajectory::constant(idle_c)
                               : Trajectory::cosine_ramp(idle_c, gate_flux)}}});
  auto h = [&](double t) {
    return ops.hamiltonian(circuit.modes(ramp.flux_at(t, idle)));
  };
  Eigen::MatrixXd b = dressed_computational(circuit.modes(idle), opts.levels);
  auto res = evolve(h, b.cast<cd>(), ramp);

  FluxAssignment gate = idle;
  gate[coupler] = gate_flux;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      build_hamiltonian(circuit.modes(gate), opts.levels).h);
  CZPrep prep;
  prep.lambda = es.eigenvalues();
  prep.q = es.eigenvectors().transpose() * res.state;
  return prep;
}

double wrap_2pi(double x) {
  x = std::fmod(x, kTwoPi);
  return x < 0.0 ? x + kTwoPi : x;
}

CZResult finish_cz(const CZPrep& prep, double hold) {
  const auto dim = prep.q.rows();
  Eigen::MatrixXcd qh(dim, 4);
  for (Eigen::Index k = 0; k < dim; ++k) {
    qh.row(k) = prep.q.row(k) *
                std::exp(cd(0.0, -kTwoPi * prep.lambda(k) * hold));
  }
  CZResult r;
  r.hold = hold;
  r.raw = prep.q.transpose() * qh;
  r.leakage = 1.0 - r.raw.cwiseAbs2().sum() / 4.0;
  std::array<double, 4> ph{};
  for (int i = 0; i < 4; ++i) ph[i] = std::arg(r.raw(i, i));
  r.cond_phase = wrap_2pi(ph[3] - ph[2] - ph[1] + ph[0]);
  Eigen::Vector4cd corr;
  corr << std::exp(cd(0.0, -ph[0])), std::exp(cd(0.0, -ph[1])),
      std::exp(cd(0.0, -ph[2])), std::exp(cd(0.0, -(ph[1] + ph[2] - ph[0])));
  r.corrected = corr.asDiagonal() * r.raw;
  r.fidelity = process_fidelity(chi_from_operator(r.corrected),
                                qpt_chi(ideal_cz()));
  return r;
}

void check_leakage(const CZResult& r) {
  if (r.leakage > 0.05) {
    throw NumericError("CZ leakage above 5%; the ramps are not adiabatic");
  }
}

}  // namespace

CZResult adiabatic_cz(const QuantizedCircuit& circuit,
                      const FluxAssignment& idle, double gate_flux,
                      double ramp_ns, double hold_ns, const CZOptions& opts) {
  if (hold_ns < 0.0) throw std::invalid_argument("hold must be >= 0");
  auto r = finish_cz(prepare_cz(circuit, idle, gate_flux, ramp_ns, opts),
                     hold_ns);
  check_leakage(r);
  return r;
}

CZResult tune_cz_hold(const QuantizedCircuit& circuit,
                      const FluxAssignment& idle, double gate_flux,
                      double ramp_ns, double hold_max, const CZOptions& opts) {
  auto prep = prepare_cz(circuit, idle, gate_flux, ramp_ns, opts);
  auto err = [&](double hold) {
    double e = finish_cz(prep, hold).cond_phase - std::numbers::pi;
    return e;  // in [-pi, pi)
  };
  const double step = 0.5;
  double a = 0.0, fa = err(0.0);
  for (double b = step; b <= hold_max + 1e-12; b += step) {
    double fb = err(b);
    if (fa == 0.0) {
      auto r = finish_cz(prep, a);
      check_leakage(r);
      return r;
    }
    // Ignore the jump where the phase wraps through 0.
    if (fa * fb <= 0.0 && std::abs(fa - fb) < std::numbers::pi) {
      std::uintmax_t iters = 100;
      auto tol = [](double x, double y) { return std::abs(x - y) <= 1e-10; };
      auto root = boost::math::tools::toms748_solve(err, a, b, fa, fb, tol,
                                                    iters);
      auto r = finish_cz(prep, 0.5 * (root.first + root.second));
      check_leakage(r);
      return r;
    }
    a = b;
    fa = fb;
  }
  throw NumericError("no hold time up to the limit reaches a pi phase");
}

}  // namespace tccp
