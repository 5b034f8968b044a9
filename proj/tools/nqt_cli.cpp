// Command-line driver: reproduces the noisy-teleportation tables and curves
// as CSV or JSON and runs the verification suite.
//
// Exit codes: 0 success, 1 numerical/tolerance failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "nqt/errors.hpp"
#include "nqt/parallel.hpp"
#include "nqt/teleport.hpp"
#include "nqt/verify.hpp"

namespace {

using nqt::ChannelKind;
using nqt::NoiseKind;

constexpr int kOk = 0;
constexpr int kNumericFailure = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string channel;
  std::string noise;
  std::optional<double> kt;
  std::vector<double> kt_range;  // start, stop, count
  std::vector<int> grid;         // theta points, phi points
  std::string figure;
  std::vector<double> bracket;
  std::string format = "csv";
  std::string out;
  std::optional<int> rk4_steps;
  std::uint64_t seed = 0;
};

using Cell = std::variant<std::string, double, long long>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return fmt::format("{:.12e}", *d);
  return std::to_string(std::get<long long>(c));
}

void write_table(const Table& t, const RunConfig& cfg) {
  std::string text;
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::visit([&](const auto& v) { obj[t.header[i]] = v; }, row[i]);
      }
      rows.push_back(std::move(obj));
    }
    text = rows.dump(2) + "\n";
  } else {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      text += (i ? "," : "") + t.header[i];
    }
    text += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        text += (i ? "," : "") + csv_cell(row[i]);
      }
      text += "\n";
    }
  }
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + cfg.out);
    file << text;
  }
}

std::vector<double> kt_values(const RunConfig& cfg, std::vector<double> fallback) {
  if (cfg.kt && !cfg.kt_range.empty()) {
    throw UsageError("--kt and --kt-range are mutually exclusive");
  }
  if (cfg.kt) {
    if (!(*cfg.kt >= 0)) throw UsageError("--kt must be >= 0");
    return {*cfg.kt};
  }
  if (cfg.kt_range.empty()) return fallback;
  const double start = cfg.kt_range[0], stop = cfg.kt_range[1];
  const double count = cfg.kt_range[2];
  if (!(start >= 0) || !(stop >= start)) {
    throw UsageError("--kt-range needs 0 <= START <= STOP");
  }
  if (count < 2 || count != std::floor(count)) {
    throw UsageError("--kt-range COUNT must be an integer >= 2");
  }
  const int n = static_cast<int>(count);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = start + (stop - start) * i / (n - 1);
  return v;
}

std::pair<int, int> grid_size(const RunConfig& cfg, int default_theta, int default_phi) {
  if (cfg.grid.empty()) return {default_theta, default_phi};
  if (cfg.grid[0] < 2 || cfg.grid[1] < 2) throw UsageError("--grid sizes must be >= 2");
  return {cfg.grid[0], cfg.grid[1]};
}

ChannelKind parse_channel(const std::string& name) {
  if (name == "epr") return nqt::channel::Epr{};
  if (name == "ghz") return nqt::channel::GhzStd{};
  if (name == "w") return nqt::channel::WStd{};
  throw UsageError("unknown channel '" + name + "' (expected epr, ghz or w)");
}

NoiseKind parse_noise_flag(const std::string& name) {
  const auto kind = nqt::parse_noise(name);
  if (!kind) throw UsageError("unknown noise '" + name + "' (expected x, y, z or iso)");
  return *kind;
}

double fbar_numeric(const nqt::CircuitUnitary& u, const nqt::NoiseSpec& spec, double kt) {
  return nqt::avg_fidelity_numeric(u, nqt::noisy_channel(u.channel(), spec, kt));
}

int cmd_table1(const RunConfig& cfg) {
  const auto kts = kt_values(cfg, {0.0, 0.1, 0.5, 1.0});
  std::vector<ChannelKind> channels = {nqt::channel::GhzStd{}, nqt::channel::WStd{}};
  if (!cfg.channel.empty()) {
    channels = {parse_channel(cfg.channel)};
    if (std::holds_alternative<nqt::channel::Epr>(channels[0])) {
      throw UsageError("table1 covers the ghz and w channels");
    }
  }
  std::vector<NoiseKind> noises(std::begin(nqt::kAllNoiseKinds), std::end(nqt::kAllNoiseKinds));
  if (!cfg.noise.empty()) noises = {parse_noise_flag(cfg.noise)};

  struct Job {
    std::size_t circuit;
    NoiseKind noise;
    double kt;
  };
  std::vector<nqt::CircuitUnitary> circuits;
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    circuits.push_back(nqt::build_circuit(channels[c]));
    for (NoiseKind n : noises) {
      for (double kt : kts) jobs.push_back({c, n, kt});
    }
  }
  std::vector<std::pair<double, double>> values(jobs.size());
  nqt::parallel_for(jobs.size(), [&](std::size_t i) {
    const auto& j = jobs[i];
    const auto& u = circuits[j.circuit];
    values[i] = {fbar_numeric(u, nqt::NoiseSpec::from_kind(j.noise, 1.0, 3), j.kt),
                 nqt::closed_form(u.channel(), j.noise).averaged(j.kt)};
  });

  Table t{{"channel", "noise", "kt", "fbar_numeric", "fbar_closed", "abs_delta"}, {}};
  bool ok = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const double delta = std::abs(values[i].first - values[i].second);
    ok = ok && delta < 1e-9;
    t.rows.push_back({nqt::channel_name(circuits[jobs[i].circuit].channel()),
                      nqt::noise_name(jobs[i].noise), jobs[i].kt, values[i].first,
                      values[i].second, delta});
  }
  write_table(t, cfg);
  return ok ? kOk : kNumericFailure;
}

int cmd_sweep(const RunConfig& cfg) {
  const nqt::CircuitUnitary ghz = nqt::build_circuit(nqt::channel::GhzStd{});
  const nqt::CircuitUnitary w = nqt::build_circuit(nqt::channel::WStd{});

  if (cfg.figure == "4a" || cfg.figure == "4b" || cfg.figure == "4c") {
    const NoiseKind noise = cfg.figure == "4a"   ? NoiseKind::AxisX
                            : cfg.figure == "4b" ? NoiseKind::AxisY
                                                 : NoiseKind::AxisZ;
    const auto kts = kt_values(cfg, [] {
      std::vector<double> v(301);
      for (int i = 0; i < 301; ++i) v[i] = 3.0 * i / 300;
      return v;
    }());
    const nqt::NoiseSpec spec = nqt::NoiseSpec::from_kind(noise, 1.0, 3);
    std::vector<std::pair<double, double>> values(kts.size());
    nqt::parallel_for(kts.size(), [&](std::size_t i) {
      values[i] = {fbar_numeric(ghz, spec, kts[i]), fbar_numeric(w, spec, kts[i])};
    });
    Table t{{"kt", "fbar_ghz", "fbar_w"}, {}};
    for (std::size_t i = 0; i < kts.size(); ++i) {
      t.rows.push_back({kts[i], values[i].first, values[i].second});
    }
    write_table(t, cfg);
    return kOk;
  }
  if (cfg.figure == "5") {
    const NoiseKind noise = cfg.noise.empty() ? NoiseKind::AxisX : parse_noise_flag(cfg.noise);
    const auto kts = kt_values(cfg, {0.5});
    if (kts.size() != 1) throw UsageError("figure 5 takes a single --kt");
    const auto [nt, np] = grid_size(cfg, 61, 61);
    const nqt::NoiseSpec spec = nqt::NoiseSpec::from_kind(noise, 1.0, 3);
    const nqt::TeleportMap ghz_map(ghz, nqt::noisy_channel(ghz.channel(), spec, kts[0]));
    const nqt::TeleportMap w_map(w, nqt::noisy_channel(w.channel(), spec, kts[0]));
    const auto thetas = nqt::theta_grid(nt);
    const auto phis = nqt::phi_grid(np);
    Table t{{"theta", "phi", "F_ghz", "F_w"}, {}};
    for (double th : thetas) {
      for (double ph : phis) {
        t.rows.push_back({th, ph, ghz_map.fidelity({th, ph}), w_map.fidelity({th, ph})});
      }
    }
    write_table(t, cfg);
    return kOk;
  }
  throw UsageError("--figure must be one of 4a, 4b, 4c, 5");
}

int cmd_epr(const RunConfig& cfg) {
  const auto kts = kt_values(cfg, [] {
    std::vector<double> v(301);
    for (int i = 0; i < 301; ++i) v[i] = 3.0 * i / 300;
    return v;
  }());
  const nqt::CircuitUnitary epr = nqt::build_circuit(nqt::channel::Epr{});
  const nqt::NoiseSpec same = nqt::NoiseSpec::from_axes({nqt::Axis::X, nqt::Axis::X}, 1.0);
  const nqt::NoiseSpec mixed = nqt::NoiseSpec::from_axes({nqt::Axis::X, nqt::Axis::Z}, 1.0);
  const nqt::NoiseSpec iso = nqt::NoiseSpec::from_kind(NoiseKind::Isotropic, 1.0, 2);
  const nqt::ClosedForm same_form = nqt::closed_form_epr_axes({nqt::Axis::X, nqt::Axis::X});
  const nqt::ClosedForm mixed_form = nqt::closed_form_epr_axes({nqt::Axis::X, nqt::Axis::Z});
  const nqt::ClosedForm iso_form = nqt::closed_form(nqt::channel::Epr{}, NoiseKind::Isotropic);

  std::vector<std::array<double, 3>> numeric(kts.size());
  nqt::parallel_for(kts.size(), [&](std::size_t i) {
    numeric[i] = {fbar_numeric(epr, same, kts[i]), fbar_numeric(epr, mixed, kts[i]),
                  fbar_numeric(epr, iso, kts[i])};
  });

  Table t{{"kt", "fbar_same_axis", "fbar_same_axis_closed", "fbar_mixed_axis",
           "fbar_mixed_axis_closed", "fbar_isotropic", "fbar_isotropic_closed",
           "max_abs_delta"},
          {}};
  bool ok = true;
  for (std::size_t i = 0; i < kts.size(); ++i) {
    const double kt = kts[i];
    const double cs = same_form.averaged(kt), cm = mixed_form.averaged(kt),
                 ci = iso_form.averaged(kt);
    const double delta = std::max({std::abs(numeric[i][0] - cs), std::abs(numeric[i][1] - cm),
                                   std::abs(numeric[i][2] - ci)});
    ok = ok && delta < 1e-9 && (kt == 0.0 || numeric[i][1] < numeric[i][0]);
    t.rows.push_back({kt, numeric[i][0], cs, numeric[i][1], cm, numeric[i][2], ci, delta});
  }
  write_table(t, cfg);
  return ok ? kOk : kNumericFailure;
}

int cmd_crossover(const RunConfig& cfg) {
  const NoiseKind noise = cfg.noise.empty() ? NoiseKind::AxisZ : parse_noise_flag(cfg.noise);
  std::pair<double, double> bracket{0.05, 0.5};
  if (!cfg.bracket.empty()) {
    bracket = {cfg.bracket[0], cfg.bracket[1]};
    if (!(bracket.first >= 0) || !(bracket.second > bracket.first)) {
      throw UsageError("--bracket needs 0 <= LO < HI");
    }
  }
  const auto ghz = nqt::closed_form(nqt::channel::GhzStd{}, noise);
  const auto w = nqt::closed_form(nqt::channel::WStd{}, noise);
  double kt_star = 0.0;
  try {
    kt_star = nqt::crossover(ghz, w, bracket);
  } catch (const nqt::ContractViolation& e) {
    std::cerr << "crossover: " << e.what() << "\n";
    return kNumericFailure;
  }
  Table t{{"noise", "bracket_lo", "bracket_hi", "kt_star", "fbar_at_crossover"}, {}};
  t.rows.push_back({nqt::noise_name(noise), bracket.first, bracket.second, kt_star,
                    ghz.averaged(kt_star)});
  write_table(t, cfg);
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.rk4_steps && *cfg.rk4_steps < 1) throw UsageError("--rk4-steps must be >= 1");
  nqt::VerifyOptions opts;
  opts.rk4_steps = cfg.rk4_steps;
  opts.seed = cfg.seed;
  const auto results = nqt::run_verification(opts);
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    std::cout << fmt::format("{} {:<42} residual={:.3e} threshold={:.1e}{}{}\n",
                             r.passed ? "PASS" : "FAIL", r.name, r.residual, r.threshold,
                             r.detail.empty() ? "" : "  ", r.detail);
  }
  std::cout << (ok ? "all checks passed\n" : "verification FAILED\n");
  return ok ? kOk : kNumericFailure;
}

int cmd_groverian(const RunConfig& cfg) {
  std::vector<std::string> names = {"epr", "ghz", "w"};
  if (!cfg.channel.empty()) names = {cfg.channel};
  nqt::GroverianOptions opts;
  opts.seed = cfg.seed;
  Table t{{"channel", "groverian"}, {}};
  for (const auto& n : names) {
    t.rows.push_back({n, nqt::groverian_pure(nqt::make_channel(parse_channel(n)), opts)});
  }
  write_table(t, cfg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy quantum teleportation through EPR, GHZ and W channels"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "Write output to PATH instead of stdout");
  };
  const auto add_kt = [&](CLI::App* sub) {
    sub->add_option("--kt", cfg.kt, "Single kappa*t value");
    sub->add_option("--kt-range", cfg.kt_range, "START STOP COUNT")->expected(3);
  };

  auto* table1 = app.add_subcommand("table1", "Average fidelities for every GHZ/W channel and noise kind");
  add_kt(table1);
  table1->add_option("--channel", cfg.channel, "Restrict to one channel (ghz, w)");
  table1->add_option("--noise", cfg.noise, "Restrict to one noise kind (x, y, z, iso)");
  add_output(table1);

  auto* sweep = app.add_subcommand("sweep", "Figure data: F-bar vs kt (4a-4c) or F(theta, phi) (5)");
  sweep->add_option("--figure", cfg.figure, "4a, 4b, 4c or 5")->required();
  sweep->add_option("--noise", cfg.noise, "Noise kind for figure 5");
  add_kt(sweep);
  sweep->add_option("--grid", cfg.grid, "THETA_POINTS PHI_POINTS")->expected(2);
  add_output(sweep);

  auto* epr = app.add_subcommand("epr", "EPR channel: same-axis, mixed-axis and isotropic noise");
  add_kt(epr);
  add_output(epr);

  auto* cross = app.add_subcommand("crossover", "kt where GHZ and W average fidelities cross");
  cross->add_option("--noise", cfg.noise, "Noise kind (default z)");
  cross->add_option("--bracket", cfg.bracket, "LO HI")->expected(2);
  add_output(cross);

  auto* verify = app.add_subcommand("verify", "Run the full verification suite");
  verify->add_option("--rk4-steps", cfg.rk4_steps, "Override the RK4 step count");
  verify->add_option("--seed", cfg.seed, "Groverian multi-start seed");

  auto* grov = app.add_subcommand("groverian", "Groverian entanglement of the pure channel states");
  grov->add_option("--channel", cfg.channel, "epr, ghz or w (default all)");
  grov->add_option("--seed", cfg.seed, "Multi-start seed");
  add_output(grov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*table1) return cmd_table1(cfg);
    if (*sweep) return cmd_sweep(cfg);
    if (*epr) return cmd_epr(cfg);
    if (*cross) return cmd_crossover(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*grov) return cmd_groverian(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const nqt::ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericFailure;
  }
  return kUsageError;
}
