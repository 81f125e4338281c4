#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "moyal/effective_action.hpp"
#include "moyal/errors.hpp"
#include "moyal/gauge.hpp"
#include "moyal/graded.hpp"
#include "moyal/ribbon.hpp"
#include "moyal/scalar.hpp"
#include "moyal/superalgebra.hpp"
#include "suite.hpp"

namespace nclab {

using json = nlohmann::ordered_json;
using namespace moyal;

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

// Where a subcommand writes its main artifact: --out, else $NCLAB_OUT_DIR/<name>, else the out stream.
class Sink {
 public:
  Sink(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  std::string out_path;
  std::string diagnostics_path;

  std::string resolve(const std::string& default_name) const {
    if (!out_path.empty()) return out_path;
    const char* dir = std::getenv("NCLAB_OUT_DIR");
    if (dir && *dir) return (std::filesystem::path(dir) / default_name).string();
    return {};
  }

  void write(const std::string& text, const std::string& default_name) {
    written_ = resolve(default_name);
    if (written_.empty()) {
      out_ << text;
      return;
    }
    write_file(written_, text);
  }

  // Diagnostics go next to a file artifact (same stem, .json) or to the err stream.
  void diagnostics(const json& d) {
    std::string path = diagnostics_path;
    if (path.empty() && !written_.empty()) path = std::filesystem::path(written_).replace_extension(".json").string();
    if (path.empty()) {
      err_ << d.dump() << "\n";
      return;
    }
    write_file(path, d.dump(2) + "\n");
  }

 private:
  void write_file(const std::string& path, const std::string& text) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
    err_ << "wrote " << path << "\n";
  }

  std::ostream& out_;
  std::ostream& err_;
  std::string written_;
};

// ---- vacuum-scalar ----

struct ScalarArgs {
  double theta = 1.0, mu2 = 0.0, lambda = 1.0;
  int dim = 2, trunc = 16;
};

int vacuum_scalar(const ScalarArgs& a, Sink& sink) {
  if (a.dim != 2 && a.dim != 4) throw DomainError("--dim must be 2 or 4");
  ScalarModel model;
  model.params = {a.theta, a.dim};
  model.mu2 = a.mu2;
  model.lambda = a.lambda;
  model.broken_phase = true;
  VacuumScalar v = scalar_vacuum(model);
  if (a.trunc <= v.p) throw DomainError(fmt::format("--trunc must exceed the vacuum degree p = {}", v.p));

  std::string csv = a.dim == 2 ? "k,a\n" : "k1,k2,a\n";
  for (std::size_t i = 0; i < v.indices.size(); ++i) {
    for (int c : v.indices[i]) csv += std::to_string(c) + ",";
    csv += num(v.a[i]) + "\n";
  }

  Field f = v.field(a.trunc);
  const double residual = scalar_eom_residual(f, model).coeffs.cwiseAbs().maxCoeff();
  StabilityReport st = vacuum_stability(v, a.trunc);
  sink.write(csv, "vacuum-scalar.csv");
  sink.diagnostics({{"p", v.p},
                    {"action", gw_action(f, model)},
                    {"min_inverse_propagator", st.min_value},
                    {"degenerate", st.degenerate},
                    {"heuristic", st.heuristic},
                    {"eom_residual", residual}});
  if (residual > 1e-9 * std::max(1.0, a.mu2)) throw AccuracyError("vacuum equation of motion residual " + num(residual));
  return kExitOk;
}

// ---- vacuum-gauge ----

struct GaugeArgs {
  double omega2 = 0.0, kappa = 0.0, theta = 1.0, alpha = 0.0, v1 = 1.0;
  int dim = 2, mmax = 50;
  bool allow_growing = false;
  std::vector<double> profile;
};

VacuumSequence gauge_sequence(const GaugeArgs& a) {
  GaugeModel model;
  model.params = {a.theta, a.dim};
  model.omega2 = a.omega2;
  model.kappa = a.kappa;
  if (a.dim == 4) return vacuum_sequence_4d(model, a.v1, a.mmax);
  if (a.dim != 2) throw DomainError("--dim must be 2 or 4");
  SequenceOptions opt;
  opt.m_max = a.mmax;
  opt.allow_growing = a.allow_growing;
  return vacuum_sequence_2d(model, a.alpha, opt);
}

int vacuum_gauge(const GaugeArgs& a, Sink& sink) {
  VacuumSequence seq = gauge_sequence(a);
  std::string csv = a.dim == 2 ? "m,u\n" : "m,v\n";
  for (std::size_t m = 0; m < seq.u.size(); ++m) csv += std::to_string(m) + "," + num(seq.u[m]) + "\n";

  json d{{"branch", branch_name(seq.branch)},
         {"dim", seq.dim},
         {"alpha", seq.alpha},
         {"v1", seq.v1},
         {"max_recurrence_residual", seq.max_recurrence_residual},
         {"negative_indices", seq.negative_indices}};
  if (!a.profile.empty()) {
    if (static_cast<int>(a.profile.size()) != a.dim) throw DomainError("--profile needs one coordinate per dimension");
    ProfileValue pv = vacuum_profile_xspace(seq, {a.theta, a.dim}, a.profile.data());
    d["profile"] = {{"x", a.profile}, {"field", pv.field}, {"error_estimate", pv.error_estimate}};
  }
  sink.write(csv, "vacuum-gauge.csv");
  sink.diagnostics(d);
  return kExitOk;
}

// ---- effective-action ----

struct ActionArgs {
  double omega2 = 0.0, m2 = 1.0, theta = 1.0, sigma = 1.0, tolerance = 1e-12;
  bool numeric_tadpole = false;
};

double omega_from_square(double omega2) {
  if (!(omega2 >= 0.0)) throw DomainError("--omega2 must be non-negative");
  return std::sqrt(omega2);
}

int effective_action(const ActionArgs& a, Sink& sink) {
  const double omega = omega_from_square(a.omega2);
  DivergenceTable table = divergent_coefficients(omega, a.m2, a.theta);
  AssemblyReport rep = assemble_gamma_check(table, a.tolerance);

  json entries = json::object();
  for (const auto& [c, ops] : table.entries) {
    json sector = json::object();
    for (const auto& [op, v] : ops) sector[operator_tag(op)] = {{"inverse_eps", v.first}, {"log_eps", v.second}};
    entries[contribution_name(c)] = sector;
  }
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"operator", operator_tag(r.op)},
                    {"gamma_inverse", r.gamma_inverse},
                    {"gamma_log", r.gamma_log},
                    {"sum_inverse", r.sum_inverse},
                    {"sum_log", r.sum_log},
                    {"defect", r.defect}});
  json doc{{"omega2", a.omega2},
           {"omega", omega},
           {"m2", a.m2},
           {"theta", a.theta},
           {"entries", entries},
           {"assembly", rows},
           {"max_defect", rep.max_defect},
           {"failed", rep.failed},
           {"passed", rep.passed()},
           {"exact_assembly_failures", exact_assembly_failures()}};
  if (a.numeric_tadpole) {
    TadpoleFit fit = tadpole_numeric(omega, a.m2, a.theta, default_tadpole_grid(), a.sigma);
    doc["tadpole"] = {{"sigma", a.sigma},
                      {"c_inverse", fit.c_inverse},
                      {"c_log", fit.c_log},
                      {"c_const", fit.c_const},
                      {"expected_inverse", fit.expected_inverse},
                      {"expected_log", fit.expected_log},
                      {"condition", fit.condition},
                      {"profile_integral", fit.profile_integral}};
  }
  sink.write(doc.dump(2) + "\n", "effective-action.json");
  if (!rep.passed()) throw AccuracyError("assembly failed for " + fmt::format("{}", fmt::join(rep.failed, ", ")));
  return kExitOk;
}

// ---- ribbon ----

int ribbon(const std::string& in, int dim, Sink& sink) {
  RibbonGraph g = parse_ribbon(read_file(in));
  Topology t = topology(g);
  Orientation o = orientable(g);
  bool quartic = true;
  for (const auto& v : g.vertices) quartic = quartic && v.size() == 4;
  json doc{{"F", t.faces},
           {"B", t.broken_faces},
           {"g", t.genus},
           {"d_c", nullptr},
           {"d_nc", nullptr},
           {"orientable", o.orientable},
           {"vertices", g.vertices.size()},
           {"internal_lines", g.internal_lines()},
           {"external_legs", g.external_legs()}};
  if (quartic) {
    Degrees d = degrees(g, dim);
    doc["d_c"] = d.commutative;
    doc["d_nc"] = d.noncommutative;
  }
  sink.write(doc.dump(2) + "\n", "ribbon.json");
  return kExitOk;
}

// ---- eps-check ----

struct EpsArgs {
  std::string group, table, elementary;
  bool fine = false;
  unsigned seed = 1;
  int samples = 1000;
};

Phase phase_from_json(const json& v) {
  if (v.is_string()) return Phase::parse(v.get<std::string>());
  if (v.is_number_integer()) return Phase::parse(std::to_string(v.get<long>()));
  throw DomainError("eps table entries must be strings such as \"-1\", \"i\", \"zeta(1/3)\" or the integers 1, -1");
}

json degree_json(const GroupElement& a) { return json(a); }

int eps_check(const EpsArgs& a, Sink& sink) {
  GradingGroup group = GradingGroup::parse(a.group);
  json raw = json::parse(read_file(a.table));
  if (!raw.is_array()) throw DomainError("eps table must be a JSON matrix");
  std::vector<std::vector<Phase>> table;
  for (const auto& row : raw) {
    if (!row.is_array()) throw DomainError("eps table must be a JSON matrix");
    std::vector<Phase> r;
    for (const auto& v : row) r.push_back(phase_from_json(v));
    table.push_back(r);
  }
  CommutationFactor eps = CommutationFactor::from_generators(group, table);
  FactorReport rep = cf_validate(eps, a.seed, a.samples);

  json doc{{"group", group.name()},
           {"valid", rep.valid},
           {"proper", rep.proper},
           {"checked_triples", rep.checked_triples},
           {"violations", rep.violations}};
  if (!rep.valid) {
    sink.write(doc.dump(2) + "\n", "eps-check.json");
    throw DomainError("eps table is not a commutation factor: " + rep.violations.front());
  }

  std::optional<GradedMatrixAlgebra> alg;
  if (a.fine) {
    if (group.orders != std::vector<int>{2, 2}) throw DomainError("--fine uses the Pauli grading and needs Z2xZ2");
    alg = pauli_algebra(eps);
  } else if (!a.elementary.empty()) {
    json phi = json::parse(read_file(a.elementary));
    std::vector<GroupElement> degrees;
    for (const auto& d : phi) degrees.push_back(d.is_array() ? d.get<GroupElement>() : GroupElement{d.get<long>()});
    alg = elementary_algebra(eps, degrees);
  }

  if (alg) {
    json center = json::array();
    for (const auto& z : center_basis(*alg)) center.push_back({{"degree", degree_json(z.degree)}, {"matrix", matrix_json(z.matrix)}});
    doc["algebra"] = {{"kind", a.fine ? "fine" : "elementary"}, {"size", alg->size}};
    doc["center"] = center;
    if (!a.fine) {
      json trace_form = json::array();
      for (const auto& d : alg->phi) trace_form.push_back(eps.signature(d).str());
      doc["trace_form"] = trace_form;
    } else {
      json commuting = json::array();
      for (const auto& d : commuting_degrees(*alg)) commuting.push_back(degree_json(d));
      doc["commuting_degrees"] = commuting;
    }
    if (alg->size <= 4) {
      json ders = json::array();
      for (const auto& deg : alg->degrees()) {
        auto space = derivation_space(*alg, deg);
        bool inner = true;
        for (const auto& t : space) {
          try {
            inner_generator(map_from_coordinates(t, *alg), deg, *alg);
          } catch (const DomainError&) {
            inner = false;
          } catch (const AccuracyError&) {
            inner = false;
          }
        }
        ders.push_back({{"degree", degree_json(deg)}, {"dimension", space.size()}, {"all_inner", inner}});
      }
      doc["derivations"] = ders;
    }
  }
  sink.write(doc.dump(2) + "\n", "eps-check.json");
  return kExitOk;
}

// ---- sweep ----

struct SweepTarget {
  std::vector<std::pair<std::string, double>> params;  // names and defaults, in column order
  std::vector<std::string> outputs;
  // Fills the output columns; returns false when the point fails its accuracy check.
  std::function<bool(const std::map<std::string, double>&, std::vector<std::string>&)> eval;
};

int as_int(double v) { return static_cast<int>(std::lround(v)); }

std::map<std::string, SweepTarget> sweep_targets() {
  std::map<std::string, SweepTarget> t;

  SweepTarget ea;
  ea.params = {{"omega2", 0.5}, {"m2", 1.0}, {"theta", 1.0}};
  ea.outputs = {"max_defect", "passed"};
  for (Operator op : all_operators()) {
    ea.outputs.push_back(std::string(operator_tag(op)) + "_inverse");
    ea.outputs.push_back(std::string(operator_tag(op)) + "_log");
  }
  ea.eval = [](const std::map<std::string, double>& p, std::vector<std::string>& out) {
    AssemblyReport rep =
        assemble_gamma_check(divergent_coefficients(omega_from_square(p.at("omega2")), p.at("m2"), p.at("theta")));
    out = {num(rep.max_defect), rep.passed() ? "1" : "0"};
    for (const auto& r : rep.rows) {
      out.push_back(num(r.gamma_inverse));
      out.push_back(num(r.gamma_log));
    }
    return rep.passed();
  };
  t["effective-action"] = ea;

  SweepTarget cl;
  cl.params = {{"omega", 1e-3}, {"theta", 1.0}, {"mmax", 10}};
  cl.outputs = {"max_defect", "scaled"};
  cl.eval = [](const std::map<std::string, double>& p, std::vector<std::string>& out) {
    auto rows = commutative_limit_check({p.at("omega")}, p.at("theta"), as_int(p.at("mmax")));
    out = {num(rows.front().max_defect), num(rows.front().scaled)};
    return true;
  };
  t["commutative-limit"] = cl;

  SweepTarget vg;
  vg.params = {{"omega2", 0.5}, {"kappa", -1.0}, {"theta", 1.0}, {"mmax", 50}, {"alpha", 0.0}};
  vg.outputs = {"branch", "residual", "u_1", "u_2", "u_last"};
  vg.eval = [](const std::map<std::string, double>& p, std::vector<std::string>& out) {
    GaugeArgs a;
    a.omega2 = p.at("omega2");
    a.kappa = p.at("kappa");
    a.theta = p.at("theta");
    a.mmax = as_int(p.at("mmax"));
    a.alpha = p.at("alpha");
    VacuumSequence s = gauge_sequence(a);
    out = {branch_name(s.branch), num(s.max_recurrence_residual), num(s.u[1]), num(s.u[2]), num(s.u.back())};
    return true;
  };
  t["vacuum-gauge"] = vg;

  SweepTarget sc;
  sc.params = {{"alpha", 1.0}, {"theta", 1.0}};
  sc.outputs = {"omega2", "kappa", "mu2"};
  sc.eval = [](const std::map<std::string, double>& p, std::vector<std::string>& out) {
    SuperCouplings c = couplings_from_alpha(p.at("alpha"), p.at("theta"));
    out = {num(c.omega2), num(c.kappa), num(c.mu2)};
    return true;
  };
  t["super-couplings"] = sc;
  return t;
}

struct SweepArgs {
  std::string target;
  std::vector<std::string> ranges;
  std::vector<std::string> sets;
};

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("expected name=value, got '" + text + "'");
  const std::string value = text.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw DomainError("not a number in '" + text + "'");
  return {text.substr(0, eq), v};
}

int sweep(const SweepArgs& a, Sink& sink) {
  auto targets = sweep_targets();
  auto it = targets.find(a.target);
  if (it == targets.end()) throw DomainError("unknown sweep target '" + a.target + "'");
  const SweepTarget& target = it->second;
  auto known = [&](const std::string& name) {
    for (const auto& [n, _] : target.params)
      if (n == name) return true;
    std::string names;
    for (const auto& [n, _] : target.params) names += (names.empty() ? "" : ", ") + n;
    throw DomainError("unknown parameter '" + name + "' for " + a.target + " (known: " + names + ")");
  };

  std::map<std::string, double> point;
  for (const auto& [n, v] : target.params) point[n] = v;
  for (const auto& s : a.sets) {
    auto [n, v] = parse_assignment(s);
    known(n);
    point[n] = v;
  }
  if (a.ranges.size() > 2) throw DomainError("at most two --range parameters");
  std::vector<SweepRange> ranges;
  for (const auto& r : a.ranges) {
    ranges.push_back(SweepRange::parse(r));
    known(ranges.back().name);
  }
  if (ranges.size() == 2 && ranges[0].name == ranges[1].name) throw DomainError("parameter swept twice");

  std::string csv;
  for (const auto& [n, _] : target.params) csv += n + ",";
  for (std::size_t i = 0; i < target.outputs.size(); ++i) csv += target.outputs[i] + (i + 1 < target.outputs.size() ? "," : "\n");

  std::vector<std::vector<double>> axes;
  for (const auto& r : ranges) axes.push_back(r.values());
  const std::size_t outer = axes.empty() ? 1 : axes[0].size();
  const std::size_t inner = axes.size() < 2 ? 1 : axes[1].size();
  bool all_passed = true;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < outer; ++i)
    for (std::size_t j = 0; j < inner; ++j) {
      if (!axes.empty()) point[ranges[0].name] = axes[0][i];
      if (axes.size() == 2) point[ranges[1].name] = axes[1][j];
      all_passed = target.eval(point, out) && all_passed;
      for (const auto& [n, _] : target.params) csv += num(point[n]) + ",";
      for (std::size_t k = 0; k < out.size(); ++k) csv += out[k] + (k + 1 < out.size() ? "," : "\n");
    }
  sink.write(csv, "sweep-" + a.target + ".csv");
  if (!all_passed) throw AccuracyError("some sweep points failed their accuracy check");
  return kExitOk;
}

// ---- verify ----

int verify(unsigned seed, Sink& sink) {
  std::string text;
  int failed = 0;
  acceptance::run_all(seed, [&](const acceptance::CriterionResult& r) {
    text += acceptance::format_line(r) + "\n";
    failed += !r.passed;
  });
  text += failed ? fmt::format("{} criteria failed\n", failed) : "all criteria passed\n";
  sink.write(text, "verify.txt");
  return failed ? kExitAccuracy : kExitOk;
}

void add_output_options(CLI::App* sub, Sink& sink, bool diagnostics) {
  sub->add_option("--out", sink.out_path, "output file (default: $NCLAB_OUT_DIR/<name>, else stdout)");
  if (diagnostics)
    sub->add_option("--diagnostics", sink.diagnostics_path, "diagnostics JSON file (default: next to --out, else stderr)");
  // consumed by expand_config before parsing; listed here for the help text
  sub->add_option("--config", "file of key = value lines, overridden by flags");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Replaces --config FILE by --key=value arguments placed right after the subcommand, so flags
// given on the command line take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw DomainError("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  std::vector<std::string> injected;
  std::istringstream in(read_file(path));
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty()) throw DomainError(fmt::format("{}:{}: expected key = value", path, lineno));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    injected.push_back("--" + key + "=" + value);
  }
  auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
  if (sub != args.end()) ++sub;
  args.insert(sub, injected.begin(), injected.end());
  return args;
}

}  // namespace

SweepRange SweepRange::parse(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("range must look like name=start:stop:step");
  SweepRange r;
  r.name = text.substr(0, eq);
  std::vector<double> parts;
  std::stringstream s(text.substr(eq + 1));
  std::string item;
  while (std::getline(s, item, ':')) parts.push_back(parse_assignment("x=" + item).second);
  if (parts.size() != 3) throw DomainError("range must look like name=start:stop:step");
  r.start = parts[0];
  r.stop = parts[1];
  r.step = parts[2];
  if (r.step == 0.0) throw DomainError("range step for '" + r.name + "' is zero");
  if (!std::isfinite(r.start) || !std::isfinite(r.stop) || !std::isfinite(r.step))
    throw DomainError("range values must be finite");
  return r;
}

std::vector<double> SweepRange::values() const {
  const double span = (stop - start) / step;
  std::vector<double> v;
  if (span < -1e-9) return v;
  const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  if (count > 1000000) throw DomainError("range for '" + name + "' has too many points");
  for (long i = 0; i < count; ++i) v.push_back(start + static_cast<double>(i) * step);
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moyal-space field theory toolkit", "nclab"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Sink sink(out, err);
  std::function<int()> action;

  ScalarArgs sa;
  auto* vs = app.add_subcommand("vacuum-scalar", "broken-phase vacuum a_k of the Omega = 1 scalar model (CSV)");
  vs->add_option("--theta", sa.theta, "deformation parameter")->required();
  vs->add_option("--mu2", sa.mu2, "mass parameter mu^2")->required();
  vs->add_option("--lambda", sa.lambda, "quartic coupling")->required();
  vs->add_option("--dim", sa.dim, "2 or 4")->capture_default_str();
  vs->add_option("--trunc", sa.trunc, "matrix truncation for the diagnostics")->capture_default_str();
  add_output_options(vs, sink, true);
  vs->callback([&] { action = [&] { return vacuum_scalar(sa, sink); }; });

  GaugeArgs ga;
  auto* vg = app.add_subcommand("vacuum-gauge", "vacuum sequence of the induced gauge model (CSV)");
  vg->add_option("--omega2", ga.omega2, "Omega^2")->required();
  vg->add_option("--kappa", ga.kappa, "mass coupling")->required();
  vg->add_option("--theta", ga.theta, "deformation parameter")->capture_default_str();
  vg->add_option("--dim", ga.dim, "2 or 4")->capture_default_str();
  vg->add_option("--mmax", ga.mmax, "last index m")->capture_default_str();
  auto* alpha = vg->add_option("--alpha", ga.alpha, "free scale (dim 2)");
  vg->add_option("--v1", ga.v1, "free value v_1 (dim 4)")->capture_default_str()->excludes(alpha);
  vg->add_flag("--allow-growing", ga.allow_growing, "accept alpha != 0 for 0 < Omega^2 < 1/3");
  vg->add_option("--profile", ga.profile, "x1,x2[,x3,x4]: sample the x-space profile")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  add_output_options(vg, sink, true);
  vg->callback([&] { action = [&] { return vacuum_gauge(ga, sink); }; });

  ActionArgs ea;
  auto* ef = app.add_subcommand("effective-action", "divergent one-loop coefficients and their assembly (JSON)");
  ef->add_option("--omega2", ea.omega2, "Omega^2")->required();
  ef->add_option("--m2", ea.m2, "mass squared")->required();
  ef->add_option("--theta", ea.theta, "deformation parameter")->required();
  ef->add_flag("--numeric-tadpole", ea.numeric_tadpole, "add the Schwinger-parameter tadpole fit");
  ef->add_option("--sigma", ea.sigma, "width of the tadpole test profile")->capture_default_str();
  ef->add_option("--tolerance", ea.tolerance, "assembly tolerance")->capture_default_str();
  add_output_options(ef, sink, false);
  ef->callback([&] { action = [&] { return effective_action(ea, sink); }; });

  std::string ribbon_in;
  int ribbon_dim = 4;
  auto* rb = app.add_subcommand("ribbon", "faces, genus and power-counting degrees of a ribbon graph (JSON)");
  rb->add_option("--in", ribbon_in, "graph text file")->required();
  rb->add_option("--dim", ribbon_dim, "spacetime dimension")->capture_default_str();
  add_output_options(rb, sink, false);
  rb->callback([&] { action = [&] { return ribbon(ribbon_in, ribbon_dim, sink); }; });

  EpsArgs ka;
  auto* ec = app.add_subcommand("eps-check", "validate a commutation factor and inspect a graded matrix algebra (JSON)");
  ec->add_option("--group", ka.group, "grading group, e.g. Z2xZ2")->required();
  ec->add_option("--eps-table", ka.table, "JSON matrix of phases on generator pairs")->required();
  auto* fine = ec->add_flag("--fine", ka.fine, "Pauli fine grading of M_2 (Z2xZ2 only)");
  ec->add_option("--elementary", ka.elementary, "JSON list of degrees phi(1..D)")->excludes(fine);
  ec->add_option("--seed", ka.seed, "seed for sampled axiom checks on large groups")->capture_default_str();
  ec->add_option("--samples", ka.samples, "sampled triples on large groups")->capture_default_str();
  add_output_options(ec, sink, false);
  ec->callback([&] { action = [&] { return eps_check(ka, sink); }; });

  unsigned seed = 2024;
  auto* vf = app.add_subcommand("verify", "run the acceptance criteria");
  vf->add_option("--seed", seed, "seed for randomized criteria")->capture_default_str();
  add_output_options(vf, sink, false);
  vf->callback([&] { action = [&] { return verify(seed, sink); }; });

  SweepArgs sw;
  auto* sp = app.add_subcommand("sweep", "evaluate a target over up to two parameter ranges (CSV)");
  sp->add_option("--target", sw.target, "effective-action, commutative-limit, vacuum-gauge or super-couplings")
      ->required();
  sp->add_option("--range", sw.ranges, "name=start:stop:step, stop inclusive")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sp->add_option("--set", sw.sets, "name=value for a fixed parameter")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  add_output_options(sp, sink, false);
  sp->callback([&] { action = [&] { return sweep(sw, sink); }; });

  try {
    const std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  try {
    return action();
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << "\n";
    return kExitAccuracy;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid JSON input: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace nclab
