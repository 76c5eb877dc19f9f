// Copyright 2026 The gicirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "gicirc/analysis.hpp"
#include "gicirc/circuit_io.hpp"
#include "gicirc/csv.hpp"
#include "gicirc/error.hpp"
#include "gicirc/noise_fit.hpp"
#include "gicirc/version.hpp"

namespace gicirc::cli {

using nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) { return fmt::format("{:016x}", value); }

ordered_json ResultDoc::to_json() const {
  ordered_json doc;
  doc["schema_version"] = schema_version;
  doc["command"] = command;
  doc["outputs"] = outputs;
  doc["provenance"] = {{"parameter_hash", parameter_hash}, {"version", version}};
  return doc;
}

ResultDoc ResultDoc::from_json(const ordered_json& doc) {
  try {
    ResultDoc r;
    r.schema_version = doc.at("schema_version").get<std::string>();
    if (r.schema_version != kResultSchema) {
      throw Error(ErrorKind::kParse,
                  fmt::format("unsupported schema_version \"{}\"", r.schema_version));
    }
    r.command = doc.at("command");
    r.outputs = doc.at("outputs");
    const ordered_json& prov = doc.at("provenance");
    r.parameter_hash = prov.at("parameter_hash").get<std::string>();
    r.version = prov.at("version").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, fmt::format("malformed result document: {}", e.what()));
  }
}

namespace {

enum class Format { kJson, kCsv };

// CSV view of a result; every command fills one.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_number(v));
    rows.push_back(std::move(row));
  }
};

struct Result {
  ordered_json outputs = ordered_json::object();
  Table table;
};

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::kUsage, message); }

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    usage(fmt::format("{}: \"{}\" is not a finite number", what, text));
  }
  return v;
}

// start:stop:count, inclusive.
SweepAxis parse_range(const std::string& text, std::string name, std::string_view flag) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
    usage(fmt::format("{} expects start:stop:count, got \"{}\"", flag, text));
  }
  SweepAxis axis;
  axis.name = std::move(name);
  axis.start = parse_double(std::string_view(text).substr(0, c1), flag);
  axis.stop = parse_double(std::string_view(text).substr(c1 + 1, c2 - c1 - 1), flag);
  const std::string_view count = std::string_view(text).substr(c2 + 1);
  const auto [end, ec] = std::from_chars(count.data(), count.data() + count.size(), axis.count);
  if (ec != std::errc() || end != count.data() + count.size() || axis.count < 2) {
    usage(fmt::format("{}: count must be an integer >= 2, got \"{}\"", flag, count));
  }
  return axis;
}

ordered_json to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json to_json(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return read_all(in);
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kIo, fmt::format("cannot open \"{}\"", path));
  return read_all(file);
}

// ---------------------------------------------------------------------------
// Topology and circuit selection shared by simulate, snr, sweep, slope and
// wigner.

struct SystemOptions {
  std::string topology;
  std::string circuit;
  double qng_db = 6.0;
  double qng1_db = 0.0;
  double qng2_db = 6.0;
  double l_i = 0.0;
  double l_is = 0.0;
  double l_ii = 0.0;
  double l_e = 0.0;
  double alpha2 = 36.0;
  double t = 0.5;
  double phi_pump = kPi;
  double rho1 = 0.0;
  double eps1_sq = 1.0;
  double rho2 = 0.0;
  double eps2_sq = 1.0;
};

void add_system_options(CLI::App* sub, SystemOptions& o, bool allow_circuit, bool with_l_e = true) {
  CLI::Option* topo = sub->add_option("--topology", o.topology, "mzi | sq-mzi | sisni")
                          ->check(CLI::IsMember({"mzi", "sq-mzi", "sisni"}));
  if (allow_circuit) {
    sub->add_option("--circuit", o.circuit, "circuit document path, - for stdin")->excludes(topo);
  }
  sub->add_option("--qng-db", o.qng_db, "SQ-MZI squeezer QNG G^2 + g^2 in dB (default 6)");
  sub->add_option("--qng1-db", o.qng1_db, "SISNI PA1 QNG in dB (default: --qng2-db)");
  sub->add_option("--qng2-db", o.qng2_db, "SISNI PA2 QNG in dB (default 6)");
  sub->add_option("--l-i", o.l_i, "SQ-MZI/MZI internal loss, intensity fraction");
  sub->add_option("--l-is", o.l_is, "SISNI signal-arm internal loss");
  sub->add_option("--l-ii", o.l_ii, "SISNI idler-arm internal loss");
  if (with_l_e) sub->add_option("--l-e", o.l_e, "external loss");
  sub->add_option("--alpha2", o.alpha2, "bright input photon number |alpha|^2 (default 36)");
  sub->add_option("--t", o.t, "beamsplitter transmission (default 0.5)");
  sub->add_option("--phi-pump", o.phi_pump, "SISNI relative PA phase, rad (default pi)");
  sub->add_option("--rho1", o.rho1, "PA1 loss parameter; enables the noisy model");
  sub->add_option("--eps1-sq", o.eps1_sq, "PA1 auxiliary thermal variance");
  sub->add_option("--rho2", o.rho2, "PA2 loss parameter; enables the noisy model");
  sub->add_option("--eps2-sq", o.eps2_sq, "PA2 auxiliary thermal variance");
}

bool given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

void forbid(const CLI::App* sub, std::initializer_list<const char*> names, std::string_view where) {
  for (const char* name : names) {
    if (given(sub, name)) usage(fmt::format("{} does not apply to {}", name, where));
  }
}

struct System {
  std::variant<Topology, CircuitSpec> value;
  ordered_json echo = ordered_json::object();

  const Topology* topology() const { return std::get_if<Topology>(&value); }
};

System resolve_system(const CLI::App* sub, const SystemOptions& o, std::istream& in) {
  System s;
  if (!o.circuit.empty()) {
    forbid(sub,
           {"--qng-db", "--qng1-db", "--qng2-db", "--l-i", "--l-is", "--l-ii", "--l-e",
            "--alpha2", "--t", "--phi-pump", "--rho1", "--eps1-sq", "--rho2", "--eps2-sq"},
           "--circuit");
    CircuitSpec circuit = parse_circuit(read_source(o.circuit, in));
    s.echo["circuit"] = ordered_json::parse(serialize_circuit(circuit));
    s.value = std::move(circuit);
    return s;
  }
  if (o.topology.empty()) usage("one of --topology or --circuit is required");
  if (!(o.alpha2 >= 0.0) || !std::isfinite(o.alpha2)) {
    throw Error(ErrorKind::kRange, fmt::format("--alpha2 must be >= 0, got {}", o.alpha2));
  }
  const double alpha = std::sqrt(o.alpha2);
  s.echo["topology"] = o.topology;

  if (o.topology == "mzi" || o.topology == "sq-mzi") {
    forbid(sub,
           {"--qng1-db", "--qng2-db", "--l-is", "--l-ii", "--phi-pump", "--rho1", "--eps1-sq",
            "--rho2", "--eps2-sq"},
           o.topology);
    if (o.topology == "mzi") forbid(sub, {"--qng-db"}, "mzi");
    SqMziParams p = plain_mzi(alpha, o.l_i, o.l_e);
    if (o.topology == "sq-mzi") {
      p.g = gain_from_qng(o.qng_db);
      s.echo["qng_db"] = o.qng_db;
    }
    p.T = o.t;
    p.validate();
    s.echo["l_i"] = o.l_i;
    s.echo["l_e"] = o.l_e;
    s.echo["alpha2"] = o.alpha2;
    s.echo["t"] = o.t;
    s.value = Topology{p};
    return s;
  }

  forbid(sub, {"--qng-db", "--l-i"}, "sisni");
  const double qng1 = given(sub, "--qng1-db") ? o.qng1_db : o.qng2_db;
  SisniParams p;
  p.g1 = gain_from_qng(qng1);
  p.g2 = gain_from_qng(o.qng2_db);
  p.L_is = LossSpec(o.l_is);
  p.L_ii = LossSpec(o.l_ii);
  p.L_e = LossSpec(o.l_e);
  p.alpha = alpha;
  p.T = o.t;
  p.phi_pump = o.phi_pump;
  s.echo["qng1_db"] = qng1;
  s.echo["qng2_db"] = o.qng2_db;
  if (given(sub, "--rho1") || given(sub, "--eps1-sq")) {
    p.noisy1 = NoisyPaParams{o.rho1, kappa_from_qng(qng1, o.rho1, o.eps1_sq), o.eps1_sq};
    s.echo["pa1"] = {{"rho", o.rho1}, {"eps_sq", o.eps1_sq}, {"kappa", p.noisy1->kappa}};
  }
  if (given(sub, "--rho2") || given(sub, "--eps2-sq")) {
    p.noisy2 = NoisyPaParams{o.rho2, kappa_from_qng(o.qng2_db, o.rho2, o.eps2_sq), o.eps2_sq};
    s.echo["pa2"] = {{"rho", o.rho2}, {"eps_sq", o.eps2_sq}, {"kappa", p.noisy2->kappa}};
  }
  p.validate();
  s.echo["l_is"] = o.l_is;
  s.echo["l_ii"] = o.l_ii;
  s.echo["l_e"] = o.l_e;
  s.echo["alpha2"] = o.alpha2;
  s.echo["t"] = o.t;
  s.echo["phi_pump"] = o.phi_pump;
  s.value = Topology{p};
  return s;
}

const Topology& require_topology(const System& s, std::string_view command) {
  const Topology* t = s.topology();
  if (t == nullptr) usage(fmt::format("{} needs --topology", command));
  return *t;
}

// ---------------------------------------------------------------------------
// Subcommands.

Result simulate_command(const System& s) {
  CircuitSpec circuit;
  std::size_t mode = 0;
  if (const Topology* t = s.topology()) {
    BuiltCircuit built = build(*t);
    circuit = std::move(built.circuit);
    mode = built.detected_mode;
  } else {
    circuit = std::get<CircuitSpec>(s.value);
    mode = circuit.detect.mode;
  }
  const GaussianState state = simulate(circuit);
  const QuadratureStats q = quadrature_stats(state, mode, circuit.detect.theta);

  Result r;
  r.outputs["n_modes"] = state.n_modes();
  r.outputs["mean"] = to_json(state.mean());
  r.outputs["cov"] = to_json(state.cov());
  r.outputs["detected"] = {{"mode", mode},
                           {"theta", circuit.detect.theta},
                           {"mean", q.mean},
                           {"variance", q.variance}};

  r.table.header = {"index", "mean"};
  for (Eigen::Index j = 0; j < state.cov().cols(); ++j) {
    r.table.header.push_back(fmt::format("cov_{}", j));
  }
  for (Eigen::Index i = 0; i < state.mean().size(); ++i) {
    std::vector<double> row{static_cast<double>(i), state.mean()(i)};
    for (Eigen::Index j = 0; j < state.cov().cols(); ++j) row.push_back(state.cov()(i, j));
    r.table.add(row);
  }
  return r;
}

ordered_json report_json(const OutputReport& rep) {
  return {{"detected_mode", rep.detected_mode},
          {"mean_x2", rep.mean_X2},
          {"var_x2", rep.var_X2},
          {"snr", rep.snr},
          {"phase_variance", rep.phase_variance}};
}

std::optional<double> closed_form_snr(const Topology& t, double dphi) {
  if (const auto* m = std::get_if<SqMziParams>(&t)) return snr_sq_mzi_closed(*m, dphi);
  const auto& s = std::get<SisniParams>(t);
  if (!s.ideal() || s.phi_pump != kPi) return std::nullopt;
  return snr_sisni_closed(s, dphi);
}

Result snr_command(const System& s, double dphi, double fd_step, bool both_ports) {
  Result r;
  r.table.header = {"port", "snr", "phase_variance", "mean_x2", "var_x2"};
  auto add_row = [&](const std::string& port, const OutputReport& rep) {
    r.table.rows.push_back({port, format_number(rep.snr), format_number(rep.phase_variance),
                            format_number(rep.mean_X2), format_number(rep.var_X2)});
  };

  const Topology* t = s.topology();
  if (t == nullptr) {
    if (both_ports) usage("--both-ports needs --topology sisni");
    const OutputReport rep = engine_report(std::get<CircuitSpec>(s.value), dphi, fd_step);
    r.outputs["report"] = report_json(rep);
    add_row("detected", rep);
    return r;
  }
  const bool sisni = std::holds_alternative<SisniParams>(*t);
  if (both_ports && !sisni) usage("--both-ports needs --topology sisni");

  const OutputReport k = engine_report(*t, dphi, fd_step, SisniPort::kK);
  r.outputs["report"] = report_json(k);
  add_row(sisni ? "k" : "detected", k);
  if (both_ports) {
    const OutputReport j = engine_report(*t, dphi, fd_step, SisniPort::kJ);
    r.outputs["report_j"] = report_json(j);
    add_row("j", j);
  }
  if (const auto closed = closed_form_snr(*t, dphi)) {
    r.outputs["closed_form"] = {{"snr", *closed},
                                {"phase_variance", phase_variance_closed(*t)}};
  }
  const SqMziParams sql = sql_baseline(*t);
  const OutputReport base = engine_report(Topology{sql}, dphi, fd_step);
  r.outputs["sql"] = report_json(base);
  r.outputs["snr_gain_db"] = to_db(k.snr / base.snr);
  return r;
}

Result sweep_command(const Topology& t, const SweepAxis& internal, const SweepAxis& external) {
  const SweepGrid grid = loss_plane(t, internal, external);
  const std::vector<double> ys = grid.y.values();
  const std::vector<double> xs = grid.x.values();
  Result r;
  auto axis_json = [](const SweepAxis& a) {
    return ordered_json{{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}};
  };
  r.outputs["quantity"] = "advantage_db";
  r.outputs["y_axis"] = axis_json(grid.y);
  r.outputs["x_axis"] = axis_json(grid.x);
  r.outputs["values"] = to_json(grid.values);
  r.table.header = {grid.y.name, grid.x.name, "advantage_db"};
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      r.table.add({ys[i], xs[j],
                   grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    }
  }
  return r;
}

Result slope_command(const Topology& t, const std::vector<double>& thetas, double fd_step) {
  const std::vector<SlopePoint> curve = slope_vs_theta(t, thetas, fd_step);
  Result r;
  ordered_json theta_json = ordered_json::array();
  ordered_json slope_json = ordered_json::array();
  r.table.header = {"theta", "slope"};
  for (const SlopePoint& pt : curve) {
    theta_json.push_back(pt.theta);
    slope_json.push_back(pt.slope);
    r.table.add({pt.theta, pt.slope});
  }
  r.outputs["theta"] = std::move(theta_json);
  r.outputs["slope"] = std::move(slope_json);
  return r;
}

Result wigner_command(const Topology& t, const std::vector<double>& phis,
                      const std::vector<double>& les, const std::optional<WignerGrid>& grid) {
  const std::vector<WignerSlice> slices = wigner_panel(t, phis, les, grid);
  Result r;
  r.outputs["slices"] = ordered_json::array();
  r.table.header = {"phi", "l_e", "x", "p", "w"};
  for (const WignerSlice& s : slices) {
    const WignerGrid& g = s.grid;
    ordered_json slice;
    slice["phi"] = s.phi;
    slice["l_e"] = s.L_e;
    slice["mean"] = {s.mean(0), s.mean(1)};
    slice["cov"] = {{s.cov(0, 0), s.cov(0, 1)}, {s.cov(1, 0), s.cov(1, 1)}};
    slice["grid"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
                     {"p_min", g.p_min}, {"p_max", g.p_max}, {"np", g.np}};
    slice["integral"] = s.integral;
    slice["density"] = to_json(s.density);
    r.outputs["slices"].push_back(std::move(slice));

    const double dx = (g.x_max - g.x_min) / static_cast<double>(g.nx - 1);
    const double dp = (g.p_max - g.p_min) / static_cast<double>(g.np - 1);
    for (std::size_t i = 0; i < g.np; ++i) {
      for (std::size_t j = 0; j < g.nx; ++j) {
        r.table.add({s.phi, s.L_e, g.x_min + dx * static_cast<double>(j),
                     g.p_min + dp * static_cast<double>(i),
                     s.density(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
      }
    }
  }
  return r;
}

struct NoiseOptions {
  double l_is = 0.16;
  double l_ii = 0.10;
  double l_e = 0.15;
};

void add_noise_loss_options(CLI::App* sub, NoiseOptions& o) {
  sub->add_option("--l-is", o.l_is, "signal-arm internal loss (default 0.16)");
  sub->add_option("--l-ii", o.l_ii, "idler-arm internal loss (default 0.10)");
  sub->add_option("--l-e", o.l_e, "external loss (default 0.15)");
}

SisniLosses to_losses(const NoiseOptions& o) {
  SisniLosses l{o.l_is, o.l_ii, o.l_e};
  l.validate();
  return l;
}

ordered_json losses_json(const SisniLosses& l) {
  return {{"l_is", l.L_is}, {"l_ii", l.L_ii}, {"l_e", l.L_e}};
}

Result advantage_curve_command(const std::vector<double>& qng1s, const SweepAxis& qng2,
                               const SisniLosses& losses, const PaNoise& pa1,
                               const PaNoise& pa2) {
  const std::vector<double> grid = qng2.values();
  Result r;
  r.outputs["qng2_db"] = grid;
  r.outputs["curves"] = ordered_json::array();
  r.table.header = {"qng1_db", "qng2_db", "advantage_db"};
  for (double q1 : qng1s) {
    const std::vector<double> adv = advantage_vs_qng(q1, grid, losses, pa1, pa2);
    r.outputs["curves"].push_back({{"qng1_db", q1}, {"advantage_db", adv}});
    for (std::size_t k = 0; k < grid.size(); ++k) r.table.add({q1, grid[k], adv[k]});
  }
  return r;
}

Result fit_command(const std::vector<AdvantagePoint>& data, const SisniLosses& losses,
                   const FitOptions& options) {
  const FitResult f = fit_noise_model(data, losses, FitBounds{}, options);
  Result r;
  r.outputs = {{"rho1", f.rho1},
               {"eps1_sq", f.eps1_sq},
               {"rho2", f.rho2},
               {"eps2_sq", f.eps2_sq},
               {"residual_rms_db", f.residual_rms},
               {"iterations", f.iterations},
               {"converged", f.converged},
               {"n_points", data.size()}};
  r.table.header = {"parameter", "value"};
  for (const auto& [key, value] : r.outputs.items()) {
    const std::string text =
        value.is_boolean() ? (value.get<bool>() ? "1" : "0")
        : value.is_number_unsigned() ? std::to_string(value.get<std::size_t>())
                                     : format_number(value.get<double>());
    r.table.rows.push_back({key, text});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Output.

Format resolve_format(const std::string& flag) {
  std::string name = flag;
  if (name.empty()) {
    const char* env = std::getenv("GICIRC_FORMAT");
    name = env != nullptr && *env != '\0' ? env : "json";
    if (name != "json" && name != "csv") {
      usage(fmt::format("GICIRC_FORMAT must be csv or json, got \"{}\"", name));
    }
  }
  return name == "csv" ? Format::kCsv : Format::kJson;
}

std::string render(const ResultDoc& doc, const Table& table, Format format) {
  std::ostringstream os;
  if (format == Format::kJson) {
    os << doc.to_json().dump(2) << '\n';
  } else {
    CsvWriter csv(os);
    csv.header(table.header);
    for (const auto& row : table.rows) csv.row_text(row);
  }
  return os.str();
}

void write_error(std::ostream& err, std::string_view kind, std::string_view message) {
  err << ordered_json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Gaussian interferometer circuit simulator"};
  app.name("gicirc");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  std::string output_path;
  std::string format_flag;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output_path, "write to this file instead of stdout");
    sub->add_option("--format", format_flag, "csv | json (default: $GICIRC_FORMAT or json)")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  SystemOptions sys;
  double dphi = 1e-3;
  double fd_step = kDefaultFdStep;
  bool both_ports = false;
  std::string internal_range = "0:0.9:101";
  std::string external_range = "0:0.9:101";
  std::string theta_range;
  std::vector<double> phis{kPi};
  std::vector<double> les{0.0};
  std::string grid_range;
  NoiseOptions noise;
  std::vector<double> qng1s{4.0, 8.0};
  std::string qng2_range = "2:6:9";
  PaNoise pa1{5e-4, 2.0};
  PaNoise pa2{4e-4, 208.0};
  std::string data_path;
  FitOptions fit_options;

  CLI::App* simulate = app.add_subcommand("simulate", "propagate a state, print mean and covariance");
  add_system_options(simulate, sys, true);
  add_output(simulate);

  CLI::App* snr = app.add_subcommand("snr", "signal, noise, SNR and phase variance");
  add_system_options(snr, sys, true);
  snr->add_option("--dphi", dphi, "phase step, rad (default 1e-3)");
  snr->add_option("--fd-step", fd_step, "finite-difference step, rad (default 1e-3)");
  snr->add_flag("--both-ports", both_ports, "SISNI: also report the j output");
  add_output(snr);

  CLI::App* sweep = app.add_subcommand("sweep", "advantage over internal x external loss");
  add_system_options(sweep, sys, false);
  sweep->add_option("--internal", internal_range, "start:stop:count (default 0:0.9:101)");
  sweep->add_option("--external", external_range, "start:stop:count (default 0:0.9:101)");
  add_output(sweep);

  CLI::App* slope = app.add_subcommand("slope", "d<X(theta)>/dphi versus LO angle");
  add_system_options(slope, sys, false);
  slope->add_option("--theta", theta_range, "start:stop:count, rad (default 360 points on [0, 2pi))");
  slope->add_option("--fd-step", fd_step, "finite-difference step, rad (default 1e-3)");
  add_output(slope);

  CLI::App* wigner = app.add_subcommand("wigner", "detected-mode Wigner densities");
  add_system_options(wigner, sys, false, false);
  wigner->add_option("--phi", phis, "signal phases, rad, comma separated (default pi)")
      ->delimiter(',');
  wigner->add_option("--l-e", les, "external losses, comma separated (default 0)")
      ->delimiter(',');
  wigner->add_option("--grid", grid_range,
                     "start:stop:count for both axes (default: covers every slice to 8 sigma)");
  add_output(wigner);

  CLI::App* curve = app.add_subcommand("advantage-curve", "noisy-PA SISNI advantage versus QNG2");
  curve->add_option("--qng1-db", qng1s, "PA1 QNGs in dB, comma separated (default 4,8)")
      ->delimiter(',');
  curve->add_option("--qng2-db", qng2_range, "start:stop:count in dB (default 2:6:9)");
  curve->add_option("--rho1", pa1.rho, "PA1 loss parameter (default 5e-4)");
  curve->add_option("--eps1-sq", pa1.epsilon2, "PA1 thermal variance (default 2)");
  curve->add_option("--rho2", pa2.rho, "PA2 loss parameter (default 4e-4)");
  curve->add_option("--eps2-sq", pa2.epsilon2, "PA2 thermal variance (default 208)");
  add_noise_loss_options(curve, noise);
  add_output(curve);

  CLI::App* fit = app.add_subcommand("fit", "fit PA noise parameters to advantage data");
  fit->add_option("--data", data_path, "CSV qng1_db,qng2_db,advantage_db[,sigma_db]; - for stdin")
      ->required();
  fit->add_option("--seed", fit_options.seed, "restart seed (default 7)");
  fit->add_option("--restarts", fit_options.restarts, "random simplex starts (default 8)");
  add_noise_loss_options(fit, noise);
  add_output(fit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", e.what());
    return kUsageError;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const Format format = resolve_format(format_flag);
    const std::string name = sub->get_name();

    ordered_json echo;
    echo["name"] = name;
    ordered_json params = ordered_json::object();
    Result result;

    if (sub == simulate || sub == snr || sub == sweep || sub == slope || sub == wigner) {
      const System s = resolve_system(sub, sys, in);
      params = s.echo;
      if (sub == simulate) {
        result = simulate_command(s);
      } else if (sub == snr) {
        if (!(dphi > 0.0) || !(fd_step > 0.0)) {
          throw Error(ErrorKind::kRange, "--dphi and --fd-step must be positive");
        }
        params["dphi"] = dphi;
        params["fd_step"] = fd_step;
        params["both_ports"] = both_ports;
        result = snr_command(s, dphi, fd_step, both_ports);
      } else if (sub == sweep) {
        const Topology& t = require_topology(s, name);
        const bool sisni = std::holds_alternative<SisniParams>(t);
        const SweepAxis internal =
            parse_range(internal_range, sisni ? "l_is_l_ii" : "l_i", "--internal");
        const SweepAxis external = parse_range(external_range, "l_e", "--external");
        params["internal"] = internal_range;
        params["external"] = external_range;
        result = sweep_command(t, internal, external);
      } else if (sub == slope) {
        const Topology& t = require_topology(s, name);
        if (!(fd_step > 0.0)) throw Error(ErrorKind::kRange, "--fd-step must be positive");
        const std::vector<double> thetas =
            theta_range.empty() ? theta_grid(360) : parse_range(theta_range, "theta", "--theta").values();
        params["theta"] = theta_range.empty() ? "360" : theta_range;
        params["fd_step"] = fd_step;
        result = slope_command(t, thetas, fd_step);
      } else {
        const Topology& t = require_topology(s, name);
        std::optional<WignerGrid> grid;
        if (!grid_range.empty()) {
          const SweepAxis axis = parse_range(grid_range, "grid", "--grid");
          grid = WignerGrid{axis.start, axis.stop, axis.count, axis.start, axis.stop, axis.count};
        }
        params["phi"] = phis;
        params["l_e"] = les;
        params["grid"] = grid_range.empty() ? "auto" : grid_range;
        result = wigner_command(t, phis, les, grid);
      }
    } else if (sub == curve) {
      const SisniLosses losses = to_losses(noise);
      const SweepAxis qng2 = parse_range(qng2_range, "qng2_db", "--qng2-db");
      params["qng1_db"] = qng1s;
      params["qng2_db"] = qng2_range;
      params["pa1"] = {{"rho", pa1.rho}, {"eps_sq", pa1.epsilon2}};
      params["pa2"] = {{"rho", pa2.rho}, {"eps_sq", pa2.epsilon2}};
      params["losses"] = losses_json(losses);
      result = advantage_curve_command(qng1s, qng2, losses, pa1, pa2);
    } else {
      const SisniLosses losses = to_losses(noise);
      const std::string text = read_source(data_path, in);
      std::istringstream data_stream(text);
      const std::vector<AdvantagePoint> data = read_advantage_csv(data_stream);
      // Hash the data itself so the echo does not depend on where it came from.
      params["data_fnv1a64"] = hex64(fnv1a64(text));
      params["seed"] = fit_options.seed;
      params["restarts"] = fit_options.restarts;
      params["losses"] = losses_json(losses);
      result = fit_command(data, losses, fit_options);
    }

    echo["params"] = std::move(params);
    ResultDoc doc;
    doc.command = std::move(echo);
    doc.outputs = std::move(result.outputs);
    doc.parameter_hash = hex64(fnv1a64(doc.command.dump()));
    doc.version = std::string(version());

    const std::string text = render(doc, result.table, format);
    if (output_path.empty()) {
      out << text;
    } else {
      std::ofstream file(output_path, std::ios::binary);
      if (!file || !(file << text) || !file.flush()) {
        throw Error(ErrorKind::kIo, fmt::format("cannot write \"{}\"", output_path));
      }
    }
    return kOk;
  } catch (const Error& e) {
    write_error(err, to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::kUsage ? kUsageError : kDomainError;
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what());
    return kDomainError;
  }
}

}  // namespace gicirc::cli
