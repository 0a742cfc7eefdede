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

#include "tccp/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "tccp/coupling.hpp"
#include "tccp/device.hpp"
#include "tccp/dynamics.hpp"
#include "tccp/errors.hpp"
#include "tccp/netlist.hpp"
#include "tccp/spectrum.hpp"
#include "tccp/zz.hpp"

namespace tccp {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_csv(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    double v = std::get<double>(c);
    return std::isfinite(v) ? format_number(v) : "";
  }
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "";
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    double v = std::get<double>(c);
    if (!std::isfinite(v)) return nullptr;
    // Round through the 12-digit text form so both formats agree.
    return std::stod(format_number(v));
  }
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c);
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return nullptr;
}

void write_table(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      os << (i ? "," : "") << t.columns[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << cell_csv(row[i]);
      }
      os << '\n';
    }
    return;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[t.columns[i]] = cell_json(row[i]);
    }
    arr.push_back(obj);
  }
  os << arr.dump(2) << '\n';
}

// Key/value report: csv as two columns, json as one object.
void write_report(const std::vector<std::pair<std::string, Cell>>& kv,
                  const std::string& format, std::ostream& os) {
  if (format == "csv") {
    os << "key,value\n";
    for (const auto& [k, v] : kv) os << k << ',' << cell_csv(v) << '\n';
    return;
  }
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : kv) obj[k] = cell_json(v);
  os << obj.dump(2) << '\n';
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError("invalid number '" + s + "' in " + what);
  }
  return v;
}

std::vector<std::pair<std::string, double>> parse_pairs(
    const std::string& text, const std::string& what) {
  std::vector<std::pair<std::string, double>> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("expected NAME=value in " + what + ", got '" + item +
                       "'");
    }
    out.emplace_back(item.substr(0, eq),
                     parse_double(item.substr(eq + 1), what));
  }
  return out;
}

struct Common {
  std::string netlist;
  std::string flux;
  std::string omega;
  std::string coupler;
  int levels = kDefaultLevels;
  std::string format = "csv";
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("netlist", c.netlist, "Netlist file")->required();
  sub->add_option("--flux", c.flux, "Junction fluxes, e.g. C=0.23,Q1=0.0");
  sub->add_option("--omega", c.omega,
                  "Junction frequencies in GHz, converted to flux");
  sub->add_option("--coupler", c.coupler, "Coupler junction name");
  sub->add_option("--levels", c.levels, "Levels per mode")
      ->check(CLI::Range(3, 12));
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("-o,--output", c.output, "Output file (default stdout)");
}

struct Grid {
  double from = 0.0;
  double to = 0.4;
  int steps = 81;
};

void add_grid(CLI::App* sub, Grid& g, const std::string& prefix,
              const std::string& what) {
  sub->add_option("--" + prefix + "from", g.from, what + " start");
  sub->add_option("--" + prefix + "to", g.to, what + " end");
  sub->add_option("--" + prefix + "steps", g.steps, what + " points")
      ->check(CLI::PositiveNumber);
}

std::vector<double> make_grid(const Grid& g) {
  if (g.steps < 1 || g.from > g.to) {
    throw UsageError("grid needs steps >= 1 and from <= to");
  }
  if (g.steps > 1 && g.from == g.to) {
    throw UsageError("grid with several steps needs from < to");
  }
  return linspace(g.from, g.to, g.steps);
}

struct Loaded {
  QuantizedCircuit circuit;
  FluxAssignment flux;
};

Loaded load(const Common& c) {
  if (!std::filesystem::is_regular_file(c.netlist)) {
    throw UsageError("cannot read netlist '" + c.netlist + "'");
  }
  auto net = load_netlist(c.netlist);
  std::optional<std::string> coupler;
  if (!c.coupler.empty()) coupler = c.coupler;
  QuantizedCircuit circuit(std::move(net), coupler);
  FluxAssignment flux;
  for (const auto& [k, v] : parse_pairs(c.flux, "--flux")) flux[k] = v;
  for (const auto& [k, v] : parse_pairs(c.omega, "--omega")) {
    if (!circuit.network().contains(k)) {
      throw UsageError("--omega names unknown node '" + k + "'");
    }
    flux[k] = circuit.flux_for_frequency(k, v);
  }
  circuit.check_flux(flux);
  return {std::move(circuit), std::move(flux)};
}

std::vector<std::pair<std::string, Cell>> analyze(const Loaded& l, int levels) {
  std::vector<std::pair<std::string, Cell>> kv;
  const auto& net = l.circuit.network();
  const auto& en = l.circuit.energies();
  const auto& blk = l.circuit.inverse_block();
  const auto names = net.junction_names();
  std::vector<ModeParams> modes;
  std::vector<double> ejs;
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto& n = names[j];
    auto it = l.flux.find(n);
    double f = it == l.flux.end() ? 0.0 : it->second;
    auto js = l.circuit.junction_state(n, f);
    double ec = en.ec(j);
    auto m = mode_params(js.ej, ec);
    modes.push_back(m);
    ejs.push_back(js.ej);
    kv.emplace_back(n + ".flux", f);
    kv.emplace_back(n + ".inv_a_ff", 1.0 / blk.a(static_cast<Eigen::Index>(j),
                                                 static_cast<Eigen::Index>(j)));
    kv.emplace_back(n + ".ec_ghz", ec);
    kv.emplace_back(n + ".ej_ghz", js.ej);
    kv.emplace_back(n + ".phi0_rad", js.phi0);
    kv.emplace_back(n + ".omega_ghz", m.omega);
    kv.emplace_back(n + ".alpha_mhz", 1e3 * m.alpha);
    kv.emplace_back(n + ".xi", m.xi);
    kv.emplace_back(n + ".n_zpf", m.n_zpf);
    kv.emplace_back(n + ".phi_zpf", m.phi_zpf);
    kv.emplace_back(n + ".low_ej_ec", m.low_ej_ec);
  }
  for (std::size_t j = 0; j < names.size(); ++j) {
    for (std::size_t k = j + 1; k < names.size(); ++k) {
      double e = en.ejk(j, k);
      double g = pairwise_g(e, modes[j], modes[k], ejs[j], ejs[k], en.ec(j),
                            en.ec(k));
      kv.emplace_back(names[j] + "-" + names[k] + ".e_mhz", 1e3 * e);
      kv.emplace_back(names[j] + "-" + names[k] + ".g_mhz", g);
    }
  }
  if (l.circuit.has_three_modes()) {
    ModeSet m = l.circuit.modes(l.flux);
    auto r = effective_coupling(coupling_inputs(m));
    kv.emplace_back("g_eff_mhz", r.g_eff);
    kv.emplace_back("omega1_eff_ghz", r.omega1_eff);
    kv.emplace_back("omega2_eff_ghz", r.omega2_eff);
    kv.emplace_back("zz_pert_mhz", zz_perturbative(m).zz_total);
    try {
      auto z = zz_exact_checked(m, levels);
      kv.emplace_back("zz_exact_mhz", z.value);
      kv.emplace_back("zz_converged", z.converged);
    } catch (const LabelAmbiguityError&) {
      kv.emplace_back("zz_exact_mhz", Cell{});
      kv.emplace_back("zz_converged", false);
    }
  }
  return kv;
}

void emit(const Common& c, const std::function<void(std::ostream&)>& body,
          std::ostream& out) {
  if (c.output.empty()) {
    body(out);
    return;
  }
  std::ostringstream buf;
  body(buf);
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + c.output + "'");
  f << buf.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Circuit quantization and tunable-coupler analysis", "tccp"};
  app.require_subcommand(1);

  Common c;
  Grid grid, delays{0.0, 2550.0, 256};
  std::string junction, excite;
  std::optional<double> lo, hi;
  std::optional<double> g12, gqc, omega_q;
  double omegac_hi = 20.0;
  double gate_flux = NAN, gate_omegac = NAN, ramp = 60.0, hold = 0.0;
  double hold_max = 1000.0, dt = 0.01;
  bool tune = false, fft = false;
  int cz_levels = 4;

  auto* a = app.add_subcommand("analyze", "Per-mode and pairwise parameters");
  add_common(a, c);

  auto* s = app.add_subcommand("sweep", "Flux sweep of couplings and ZZ");
  add_common(s, c);
  add_grid(s, grid, "", "Flux");
  s->add_option("--junction", junction, "Swept junction (default coupler)");

  auto* o = app.add_subcommand("offpoint", "Coupler off point");
  add_common(o, c);
  o->add_option("--lo", lo, "Bracket start flux");
  o->add_option("--hi", hi, "Bracket end flux");
  o->add_option("--g12", g12, "Frozen direct coupling, MHz");
  o->add_option("--gqc", gqc, "Frozen qubit-coupler coupling, MHz");
  o->add_option("--omega-q", omega_q, "Qubit frequency for frozen model, GHz");
  o->add_option("--omegac-hi", omegac_hi, "Upper coupler frequency, GHz");

  auto* z = app.add_subcommand("zz", "Perturbative vs exact ZZ");
  add_common(z, c);
  add_grid(z, grid, "", "Coupler flux");

  auto* ch = app.add_subcommand("chevron", "SWAP chevron");
  add_common(ch, c);
  add_grid(ch, grid, "", "Coupler flux");
  add_grid(ch, delays, "delay-", "Delay (ns)");
  ch->add_option("--excite", excite, "Initially excited qubit");
  ch->add_flag("--fft", fft, "Emit per-flux g_eff from the FFT instead");

  auto* cz = app.add_subcommand("cz", "Adiabatic CZ with process fidelity");
  add_common(cz, c);
  cz->add_option("--gate-flux", gate_flux, "Coupler flux at the gate point");
  cz->add_option("--gate-omegac", gate_omegac, "Coupler frequency at gate, GHz");
  cz->add_option("--ramp", ramp, "Ramp duration, ns")->check(CLI::PositiveNumber);
  cz->add_option("--hold", hold, "Hold duration, ns");
  cz->add_flag("--tune", tune, "Tune the hold for a pi conditional phase");
  cz->add_option("--hold-max", hold_max, "Upper hold for tuning, ns");
  cz->add_option("--dt", dt, "Time step, ns")->check(CLI::PositiveNumber);
  cz->add_option("--cz-levels", cz_levels, "Levels per mode for dynamics")
      ->check(CLI::Range(3, 8));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (a->parsed()) {
      auto l = load(c);
      auto kv = analyze(l, c.levels);
      emit(c, [&](std::ostream& os) { write_report(kv, c.format, os); }, out);
    } else if (s->parsed()) {
      auto l = load(c);
      auto g = make_grid(grid);
      std::string j = junction.empty() ? l.circuit.coupler_name() : junction;
      SweepOptions opts;
      opts.with_zz = true;
      opts.levels = c.levels;
      auto rows = sweep_flux(l.circuit, l.flux, j, g, opts);
      Table t{{"flux", "ejc_ghz", "omegac_ghz", "g1c_mhz", "g2c_mhz",
               "geff_mhz", "zz_pert_mhz", "zz_exact_mhz", "valid"},
              {}};
      auto opt = [](const std::optional<double>& v) {
        return v ? Cell{*v} : Cell{};
      };
      for (const auto& r : rows) {
        t.rows.push_back({r.flux, r.ejc, r.omegac, r.g1c, r.g2c, r.g_eff,
                          opt(r.zz_pert), opt(r.zz_exact), r.valid});
      }
      emit(c, [&](std::ostream& os) { write_table(t, c.format, os); }, out);
    } else if (o->parsed()) {
      auto l = load(c);
      Table t{{"flux_off", "omegac_off_ghz", "geff_mhz"}, {}};
      if (g12 || gqc || omega_q) {
        if (!(g12 && gqc && omega_q)) {
          throw UsageError("--g12, --gqc and --omega-q go together");
        }
        double w = scalar_off_frequency(*g12, *gqc, *omega_q, omegac_hi);
        double f = l.circuit.flux_for_frequency(l.circuit.coupler_name(), w);
        t.rows.push_back({f, w, 0.0});
      } else {
        auto br = default_off_bracket(l.circuit, l.flux);
        auto p = coupler_off_point(l.circuit, l.flux, lo.value_or(br.first),
                                   hi.value_or(br.second));
        t.rows.push_back({p.flux, p.omegac, p.g_eff});
      }
      emit(c, [&](std::ostream& os) { write_table(t, c.format, os); }, out);
    } else if (z->parsed()) {
      auto l = load(c);
      auto rows = zz_compare(l.circuit, l.flux, make_grid(grid), c.levels);
      Table t{{"flux", "zz_pert_mhz", "zz_exact_mhz", "rel_err",
               "near_singular", "converged"},
              {}};
      for (const auto& r : rows) {
        t.rows.push_back({r.flux, r.zz_pert, r.zz_exact, r.rel_err,
                          r.near_singular, r.converged});
      }
      emit(c, [&](std::ostream& os) { write_table(t, c.format, os); }, out);
    } else if (ch->parsed()) {
      auto l = load(c);
      std::string q = excite.empty() ? l.circuit.mode_names()[0] : excite;
      auto fg = make_grid(grid);
      auto dg = make_grid(delays);
      auto map = swap_chevron(l.circuit, l.flux, q, fg, dg, c.levels);
      Table t;
      if (fft) {
        t.columns = {"flux", "geff_fft_mhz"};
        auto est = chevron_fft(map);
        for (std::size_t i = 0; i < fg.size(); ++i) {
          t.rows.push_back({fg[i], est[i] ? Cell{*est[i]} : Cell{}});
        }
      } else {
        t.columns = {"flux", "delay_ns", "p_excited"};
        for (std::size_t i = 0; i < fg.size(); ++i) {
          for (std::size_t j = 0; j < dg.size(); ++j) {
            t.rows.push_back({fg[i], dg[j],
                              map.p(static_cast<Eigen::Index>(i),
                                    static_cast<Eigen::Index>(j))});
          }
        }
      }
      emit(c, [&](std::ostream& os) { write_table(t, c.format, os); }, out);
    } else if (cz->parsed()) {
      auto l = load(c);
      const auto& coupler = l.circuit.coupler_name();
      double gf = gate_flux;
      if (std::isnan(gf) == std::isnan(gate_omegac)) {
        throw UsageError("give exactly one of --gate-flux, --gate-omegac");
      }
      if (std::isnan(gf)) gf = l.circuit.flux_for_frequency(coupler, gate_omegac);
      CZOptions opts;
      opts.levels = cz_levels;
      opts.dt = dt;
      auto r = tune ? tune_cz_hold(l.circuit, l.flux, gf, ramp, hold_max, opts)
                    : adiabatic_cz(l.circuit, l.flux, gf, ramp, hold, opts);
      Table t{{"cond_phase_rad", "leakage", "fidelity"},
              {{r.cond_phase, r.leakage, r.fidelity}}};
      emit(c, [&](std::ostream& os) { write_table(t, c.format, os); }, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NetlistError& e) {
    err << c.netlist << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace tccp
