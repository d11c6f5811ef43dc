#include "sesqui_cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sesqui/analyzer.hpp"
#include "sesqui/error.hpp"
#include "sesqui/variational.hpp"

namespace sesqui::cli {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Output formatting.

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_json(std::ostringstream& os, const Json& v, int indent) {
  const std::string pad(indent * 2, ' ');
  const std::string inner((indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write_json(os, v[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      os << (std::isfinite(d) ? format_number(d) : "null");
      return;
    }
    default:
      os << v.dump();
  }
}

}  // namespace

std::string to_json_text(const Json& value) {
  std::ostringstream os;
  write_json(os, value, 0);
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Configuration.

void RunConfig::validate() const {
  if (grid < 16) throw ConfigError("grid size must be >= 16, got " + std::to_string(grid));
  for (double t : {tol, check_tol, legendre_tol, speed_tol}) {
    if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
  }
  if (!(t1 > t0)) throw ConfigError("parameter interval must satisfy t0 < t1");
  for (double x : {c, delta1, delta2}) {
    if (!std::isfinite(x)) throw ConfigError("c, delta1 and delta2 must be finite");
  }
}

Range Range::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto number = [&text](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("malformed range '" + text + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("malformed range '" + text + "'");
    return v;
  };
  Range r;
  if (parts.size() == 1) {
    r.lo = r.hi = number(parts[0]);
    return r;
  }
  if (parts.size() != 3) throw ConfigError("range must be 'value' or 'lo:hi:count', got '" + text + "'");
  r.lo = number(parts[0]);
  r.hi = number(parts[1]);
  const double count = number(parts[2]);
  if (count < 1 || count != std::floor(count) || count > 100000) {
    throw ConfigError("range count must be a positive integer, got '" + parts[2] + "'");
  }
  r.count = static_cast<int>(count);
  if (r.count == 1 && r.hi != r.lo) throw ConfigError("a single-sample range needs lo = hi");
  return r;
}

void ScanConfig::validate() const {
  if (case_name != "I" && case_name != "II" && case_name != "III" && case_name != "IV") {
    throw ConfigError("case must be one of I, II, III, IV; got '" + case_name + "'");
  }
  if (n < 2 || n > 7) throw ConfigError("n must lie in 2..7");
  if (!(check_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

void FlowConfig::validate() const {
  run.validate();
  if (steps < 0) throw ConfigError("steps must be >= 0");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ConfigError("rate must be positive, got " + format_number(rate));
}

namespace {

// ---------------------------------------------------------------------------
// Shared pieces.

Grid make_grid(const RunConfig& c) {
  return c.open ? Grid::open_grid(c.t0, c.t1, c.grid) : Grid::periodic_grid(c.t0, c.t1, c.grid);
}

CurveSpec load_curve(const std::string& path) {
  if (path.empty()) throw ConfigError("--curve is required");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read curve file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return CurveSpec::parse(text.str());
}

struct Stats {
  double min = 0.0, max = 0.0, mean = 0.0;
};

Stats stats(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  s.min = *lo;
  s.max = *hi;
  double acc = 0.0;
  for (double x : v) acc += x;
  s.mean = acc / static_cast<double>(v.size());
  return s;
}

Json stats_json(const std::vector<double>& v) {
  const Stats s = stats(v);
  return Json{{"min", s.min}, {"max", s.max}, {"mean", s.mean}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json equations_json(const EquationsReport& r) {
  Json eqs = Json::array();
  for (const auto& e : r.equations) {
    eqs.push_back(Json{{"index", e.index}, {"evaluated", e.evaluated}, {"max_abs", e.max_abs}, {"pass", e.pass}});
  }
  return eqs;
}

Json constraints_json(const std::vector<DeltaConstraint>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(Json{{"name", c.name}, {"value", c.value}, {"satisfied", c.satisfied}});
  return out;
}

Json solution_json(const DeltaSolution& s) {
  Json notes = Json::array();
  for (const auto& n : s.notes) notes.push_back(n);
  return Json{{"any_delta", s.any_delta},
              {"rho", optional_number(s.rho)},
              {"formula", s.formula},
              {"feasible", s.feasible},
              {"constraints", constraints_json(s.constraints)},
              {"pointwise_rho", s.any_delta ? Json(nullptr) : stats_json(s.pointwise_rho)},
              {"parallel_residual", s.parallel_residual},
              {"rho_alternative", optional_number(s.rho_alternative)},
              {"k2_deviation", optional_number(s.k2_deviation)},
              {"notes", notes}};
}

Json class_json(const CurveClass& c) {
  Json notes = Json::array();
  for (const auto& n : c.notes) notes.push_back(n);
  return Json{{"f_constant", c.f_constant},
              {"alpha0", optional_number(c.alpha0)},
              {"alpha_consistent", c.alpha_consistent},
              {"w0", optional_number(c.w0)},
              {"w0_variance", c.w0_variance},
              {"notes", notes}};
}

CommandResult invalid(const std::string& message) { return {kInvalidInput, "", message}; }

CurvatureTermSign sign_of(const RunConfig& c) {
  return c.flipped_sign ? CurvatureTermSign::kFlipped : CurvatureTermSign::kConsistent;
}

// Full analysis of one curve; throws library errors.
struct Analysis {
  ArcLengthReport arc;
  FrenetData frenet;
  FrameScalars scalars;
  CurveClass cls;
  EquationsReport equations;
  ResidualReport direct;
  ResidualReport closed;
  double route_agreement = 0.0;
  DeltaSolution solution;
  std::optional<IndependenceReport> independence;
  std::optional<Case4Report> case4;
};

Analysis analyze(const CurveSpec& spec, const RunConfig& config) {
  const Grid grid = make_grid(config);
  Analysis a;
  a.arc = arclength_check(spec, grid);
  a.frenet = frenet_apparatus(spec, grid, config.tol);
  a.scalars = frame_scalars(a.frenet);
  const DeltaPair delta{config.delta1, config.delta2};
  a.cls = classify(a.frenet, a.scalars, config.c, config.check_tol);
  a.equations = equations_check(a.frenet, a.scalars, config.c, delta, config.check_tol, sign_of(config));
  a.direct = residual_direct(spec, grid, config.c, delta, a.frenet);
  a.closed = residual_closed_form(a.frenet, a.scalars, config.c, delta, sign_of(config));
  for (std::size_t s = 0; s < a.direct.vectors.size(); ++s) {
    for (std::size_t k = 0; k < a.direct.vectors[s].size(); ++k) {
      a.route_agreement = std::max(a.route_agreement, std::abs(a.direct.vectors[s][k] - a.closed.vectors[s][k]));
    }
  }
  a.solution = solve_delta(a.frenet, a.scalars, config.c, config.check_tol);
  if (a.frenet.order == 2 || a.frenet.order == 3) a.independence = independence_check(spec, a.frenet, grid);
  if (a.frenet.order >= 4 && a.cls.case_tag == CaseTag::kIV && config.delta2 != 0.0) {
    a.case4 = case4_ode_residuals(a.frenet, a.scalars, config.c, delta, config.check_tol);
  }
  return a;
}

Json analysis_json(const Analysis& a, const RunConfig& config, const CurveSpec& spec) {
  Json curvatures = Json::array();
  for (int i = 1; i < a.frenet.order; ++i) {
    Json k = stats_json(a.frenet.curvatures[i - 1].value);
    k["index"] = i;
    curvatures.push_back(k);
  }
  Json report;
  report["class"] = to_string(a.cls.shape);
  report["case"] = a.cls.case_tag ? Json(to_string(*a.cls.case_tag)) : Json(nullptr);
  report["rho"] = optional_number(a.solution.rho);
  report["max_residual"] = a.direct.max_norm;
  report["equations"] = equations_json(a.equations);
  report["parameters"] = Json{{"n", spec.n()},
                              {"legendre_lift", spec.is_legendre_lift()},
                              {"c", config.c},
                              {"delta1", config.delta1},
                              {"delta2", config.delta2},
                              {"grid", config.grid},
                              {"t0", config.t0},
                              {"t1", config.t1},
                              {"periodic", !config.open},
                              {"tol", config.tol},
                              {"check_tol", config.check_tol},
                              {"flipped_sign", config.flipped_sign}};
  report["arclength"] = Json{{"max_speed_deviation", a.arc.max_speed_deviation},
                             {"max_legendre_defect", a.arc.max_legendre_defect},
                             {"max_euclidean_deviation", a.arc.max_euclidean_deviation},
                             {"max_five_term_deviation", a.arc.max_five_term_deviation},
                             {"length", a.arc.length}};
  report["frenet"] = Json{{"order", a.frenet.order},
                          {"m", a.frenet.m()},
                          {"curvatures", curvatures},
                          {"max_gram_deviation", max_gram_deviation(a.frenet)},
                          {"next_curvature_max", a.frenet.next_curvature_max}};
  report["frame_scalars"] = Json{{"f", stats_json(a.scalars.f)},
                                 {"phi_t_e3", stats_json(a.scalars.phi_t_e3)},
                                 {"phi_t_e4", stats_json(a.scalars.phi_t_e4)},
                                 {"eta_e2", stats_json(a.scalars.eta_e2)},
                                 {"eta_e3", stats_json(a.scalars.eta_e3)},
                                 {"eta_e4", stats_json(a.scalars.eta_e4)},
                                 {"phi_t_outside", stats_json(a.scalars.phi_t_outside)}};
  report["classification"] = class_json(a.cls);
  report["span_condition"] = Json{{"pass", a.equations.span_condition_pass},
                                  {"via", a.equations.span_condition_via},
                                  {"leakage", a.equations.span_condition_leakage}};
  report["equations_pass"] = a.equations.pass;
  report["residual"] = Json{{"direct_max_norm", a.direct.max_norm},
                            {"closed_form_max_norm", a.closed.max_norm},
                            {"route_agreement", a.route_agreement},
                            {"off_span", a.direct.max_off_span},
                            {"outside_frenet", a.direct.max_outside_frenet}};
  report["solve_delta"] = solution_json(a.solution);
  if (a.independence) {
    const auto& r = *a.independence;
    report["independence"] = Json{{"set_size", r.set_size},
                                  {"dimension", r.dimension},
                                  {"required_n", r.required_n},
                                  {"min_gram_eigenvalue", r.min_gram_eigenvalue},
                                  {"min_singular_value", r.min_singular_value},
                                  {"independent", r.independent},
                                  {"note", r.note}};
  } else {
    report["independence"] = nullptr;
  }
  if (a.case4) {
    const auto& r = *a.case4;
    report["case4"] = Json{{"rho", r.rho},
                           {"k1_prime", r.k1_prime},
                           {"sum_rule", r.sum_rule},
                           {"k2_prime", r.k2_prime},
                           {"k2k3", r.k2k3},
                           {"w0", r.w0},
                           {"w0_variance", r.w0_variance},
                           {"system_satisfied", r.system_satisfied},
                           {"helix_conclusion", r.helix_conclusion}};
  } else {
    report["case4"] = nullptr;
  }
  return report;
}

// Rejects curves the analysis is not defined for; returns a diagnostic or empty.
std::string precondition_failure(const ArcLengthReport& arc, const RunConfig& config) {
  std::ostringstream os;
  if (arc.max_legendre_defect > config.legendre_tol) {
    os << "curve is not Legendre: max |eta(T)| = " << format_number(arc.max_legendre_defect) << " exceeds "
       << format_number(config.legendre_tol);
  } else if (arc.max_speed_deviation > config.speed_tol) {
    os << "curve is not unit speed: max |g(T,T)^(1/2) - 1| = " << format_number(arc.max_speed_deviation)
       << " exceeds " << config.speed_tol;
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Commands.

CommandResult cmd_analyze(const RunConfig& config) {
  try {
    config.validate();
    if (config.c != -3.0) {
      return invalid("analyze evaluates curves in the coordinate model, which has c = -3; got c = " +
                     format_number(config.c));
    }
    const CurveSpec spec = load_curve(config.curve_path);
    const ArcLengthReport arc = arclength_check(spec, make_grid(config));
    if (const std::string why = precondition_failure(arc, config); !why.empty()) return invalid(why);
    const Analysis a = analyze(spec, config);
    return {kSuccess, to_json_text(analysis_json(a, config, spec)), ""};
  } catch (const ConfigError& e) {
    return invalid(e.what());
  } catch (const Error& e) {
    return invalid(e.what());
  }
}

CommandResult cmd_verify_example(const RunConfig& config_in) {
  RunConfig config = config_in;
  try {
    config.validate();
    if (config.c != -3.0) return invalid("the built-in example lives in the c = -3 model; got c = " + format_number(config.c));
    config.open = false;
    config.t0 = 0.0;
    config.t1 = 2.0 * std::numbers::pi;
    const CurveSpec spec = CurveSpec::parse("n=2\nsin(2*t)\n-cos(2*t)\n0\n0\n1\n");
    const Grid grid = make_grid(config);

    RunConfig reference = config;
    reference.delta1 = -8.0;
    reference.delta2 = 2.0;
    const Analysis a = analyze(spec, reference);
    const ResidualReport biharmonic = residual_direct(spec, grid, -3.0, {0.0, 1.0}, a.frenet);
    const ResidualReport requested = residual_direct(spec, grid, -3.0, {config.delta1, config.delta2}, a.frenet);

    double k1_error = 0.0;
    if (a.frenet.order >= 2) {
      for (double k : a.frenet.curvatures[0].value) k1_error = std::max(k1_error, std::abs(k - 2.0));
    }
    double f_max = 0.0;
    for (double f : a.scalars.f) f_max = std::max(f_max, std::abs(f));

    Json checks = Json::array();
    bool all = true;
    auto check = [&](const std::string& name, bool ok, double value) {
      checks.push_back(Json{{"name", name}, {"pass", ok}, {"value", value}});
      all = all && ok;
    };
    check("osculating order 2", a.frenet.order == 2, a.frenet.order);
    check("k1 = 2 within 1e-9", a.frenet.order >= 2 && k1_error < 1e-9, k1_error);
    check("phi T orthogonal to E2 within 1e-9", f_max < 1e-9, f_max);
    check("residual below 1e-8 for delta = (-8, 2)", a.direct.max_norm < 1e-8, a.direct.max_norm);
    check("closed form below 1e-8 for delta = (-8, 2)", a.closed.max_norm < 1e-8, a.closed.max_norm);
    check("frame equations pass", a.equations.pass, a.equations.span_condition_leakage);
    check("not biharmonic: residual norm 8 for delta = (0, 1)", std::abs(biharmonic.max_norm - 8.0) < 1e-6,
          biharmonic.max_norm);
    check("rho = -4", a.solution.rho && std::abs(*a.solution.rho + 4.0) < 1e-9, a.solution.rho.value_or(NAN));
    check("case II circle", a.cls.shape == CurveShape::kCircle && a.cls.case_tag == CaseTag::kII, 0.0);
    if (a.independence) {
      check("independent set, min singular value > 0.1", a.independence->min_singular_value > 0.1,
            a.independence->min_singular_value);
    }

    Json notes = Json::array();
    if (config.flipped_sign) {
      notes.push_back("the (c+3)/4 k1 term vanishes at c = -3, so its sign cannot be tested on this model");
    }
    Json report;
    report["status"] = all ? "PASS" : "FAIL";
    report["checks"] = checks;
    report["class"] = to_string(a.cls.shape);
    report["case"] = a.cls.case_tag ? Json(to_string(*a.cls.case_tag)) : Json(nullptr);
    report["rho"] = optional_number(a.solution.rho);
    report["max_residual"] = a.direct.max_norm;
    report["equations"] = equations_json(a.equations);
    report["requested_delta"] = Json{{"delta1", config.delta1},
                                     {"delta2", config.delta2},
                                     {"max_residual", requested.max_norm},
                                     {"biharmonic_norm", biharmonic.max_norm}};
    report["notes"] = notes;

    CommandResult r{all ? kSuccess : kCheckFailed, to_json_text(report), ""};
    if (!all) {
      std::ostringstream os;
      os << "failed checks:";
      for (const auto& c : checks) {
        if (!c["pass"].get<bool>()) os << "\n  " << c["name"].get<std::string>();
      }
      r.diagnostics = os.str();
    }
    return r;
  } catch (const ConfigError& e) {
    return invalid(e.what());
  } catch (const Error& e) {
    return {kCheckFailed, "", std::string("example pipeline failed: ") + e.what()};
  }
}

namespace {

struct ScanCell {
  double c = 0.0, k1 = 0.0, k2 = 0.0, alpha = 0.0;
};

std::string bool_text(bool b) { return b ? "true" : "false"; }

const DeltaConstraint* find_constraint(const DeltaSolution& s, const std::string& prefix) {
  for (const auto& c : s.constraints) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

std::string scan_row(const ScanConfig& config, const ScanCell& cell) {
  const std::string& name = config.case_name;
  std::vector<double> ks;
  double f = 0.0, g4 = 0.0;
  std::string note;
  if (name == "I" || name == "II") {
    ks = {cell.k1};
    if (cell.k2 != 0.0) ks.push_back(cell.k2);
  } else if (name == "III") {
    f = 1.0;
    ks = {cell.k1};
    if (cell.k2 != 0.0) ks.push_back(cell.k2);
  } else {
    f = std::cos(cell.alpha);
    g4 = std::sin(cell.alpha);
    const double k2k3 = -3.0 * (cell.c - 1.0) / 8.0 * std::sin(2.0 * cell.alpha);
    const double k3 = cell.k2 != 0.0 ? k2k3 / cell.k2 : 0.0;
    ks = {cell.k1, cell.k2, k3 > 0.0 ? k3 : 0.0};
    if (!(k3 > 0.0)) note = "k3 = -3(c-1)/8 sin 2a0 / k2 is not positive";
  }
  std::ostringstream row;
  try {
    // Trim trailing zero curvatures so the order matches the data.
    while (ks.size() > 1 && ks.back() == 0.0) ks.pop_back();
    const FrenetData frenet = constant_frenet(config.n, ks);
    const FrameScalars scalars = constant_scalars(frenet.samples(), frenet.m(), f, 0.0, g4);
    const DeltaSolution s = solve_delta(frenet, scalars, cell.c, config.check_tol);
    const DeltaConstraint* geo = find_constraint(s, "not (");
    const DeltaConstraint* nonzero = find_constraint(s, "rho != 0");
    const std::string case_tag = s.cls.case_tag ? to_string(*s.cls.case_tag) : "";
    std::string failed;
    for (const auto& c : s.constraints) {
      if (!c.satisfied && &c != nonzero && &c != geo) failed += (failed.empty() ? "" : "; ") + c.name;
    }
    if (nonzero && !nonzero->satisfied) {
      note += std::string(note.empty() ? "" : "; ") + "excluded: requires delta1/delta2 != 0";
    }
    if (s.notes.size()) note += std::string(note.empty() ? "" : "; ") + s.notes.front();
    if (case_tag != name) note += std::string(note.empty() ? "" : "; ") + "data classify as case " + case_tag;
    // Case III existence additionally needs c > 1.
    bool feasible = s.feasible;
    if (name == "III" && !(cell.c > 1.0)) {
      feasible = false;
      failed += std::string(failed.empty() ? "" : "; ") + "c > 1";
    }
    row << name << ',' << case_tag << ',' << format_number(cell.c) << ',' << format_number(cell.k1) << ','
        << format_number(cell.k2) << ',' << (name == "IV" ? format_number(cell.alpha) : std::string()) << ','
        << (s.rho ? format_number(*s.rho) : std::string()) << ',' << bool_text(feasible) << ','
        << bool_text(geo && !geo->satisfied) << ',' << bool_text(!nonzero || nonzero->satisfied) << ',' << '"'
        << failed << "\",\"" << note << '"';
  } catch (const Error& e) {
    row << name << ",," << format_number(cell.c) << ',' << format_number(cell.k1) << ',' << format_number(cell.k2)
        << ',' << (name == "IV" ? format_number(cell.alpha) : std::string()) << ",,false,false,false,\"\",\""
        << e.what() << '"';
  }
  return row.str();
}

}  // namespace

CommandResult cmd_scan(const ScanConfig& config) {
  try {
    config.validate();
  } catch (const ConfigError& e) {
    return invalid(e.what());
  }
  std::vector<ScanCell> cells;
  const bool use_alpha = config.case_name == "IV";
  for (int a = 0; a < config.c.count; ++a) {
    for (int b = 0; b < config.k1.count; ++b) {
      for (int d = 0; d < config.k2.count; ++d) {
        for (int e = 0; e < (use_alpha ? config.alpha.count : 1); ++e) {
          const ScanCell cell{config.c.at(a), config.k1.at(b), config.k2.at(d), use_alpha ? config.alpha.at(e) : 0.0};
          if (cell.k1 > 0.0 && cell.k2 >= 0.0) cells.push_back(cell);
        }
      }
    }
  }
  std::vector<std::string> rows(cells.size());
  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < cells.size(); i += workers) rows[i] = scan_row(config, cells[i]);
    });
  }
  for (auto& t : pool) t.join();

  std::ostringstream os;
  os << "requested_case,case,c,k1,k2,alpha0,rho,feasible,geodesic_only,rho_nonzero,failed_constraints,note\n";
  for (const auto& r : rows) os << r << '\n';
  return {kSuccess, os.str(), ""};
}

CommandResult cmd_flow(const FlowConfig& config) {
  try {
    config.validate();
    if (config.run.c != -3.0) return invalid("flow runs in the c = -3 model; got c = " + format_number(config.run.c));
    const CurveSpec spec = load_curve(config.run.curve_path);
    const DiscreteCurve start = DiscreteCurve::sample(spec, make_grid(config.run));
    DescentOptions options;
    options.steps = config.steps;
    options.rate = config.rate;
    const Trajectory tr = descend(start, {config.run.delta1, config.run.delta2}, options);
    std::ostringstream os;
    os << "step,energy,max_defect,analyzer_residual\n";
    for (const auto& row : tr.rows) {
      os << row.step << ',' << format_number(row.energy) << ',' << format_number(row.max_defect) << ','
         << format_number(row.analyzer_residual) << '\n';
    }
    return {kSuccess, os.str(), "stop: " + tr.stop_reason};
  } catch (const ConfigError& e) {
    return invalid(e.what());
  } catch (const Error& e) {
    return invalid(e.what());
  }
}

// ---------------------------------------------------------------------------
// Argument parsing.

namespace {

void add_run_options(CLI::App* cmd, RunConfig& c, bool with_curve) {
  if (with_curve) cmd->add_option("--curve", c.curve_path, "Curve file")->required();
  cmd->add_option("--c", c.c, "Constant phi-sectional curvature of the space form");
  cmd->add_option("--delta1", c.delta1, "Coefficient of the Dirichlet term");
  cmd->add_option("--delta2", c.delta2, "Coefficient of the bending term");
  cmd->add_option("--grid", c.grid, "Number of samples (>= 16)");
  cmd->add_option("--tol", c.tol, "Osculating-order tolerance");
  cmd->add_option("--check-tol", c.check_tol, "Equation and constancy tolerance");
  cmd->add_option("--t0", c.t0, "Start of the parameter interval");
  cmd->add_option("--t1", c.t1, "End of the parameter interval");
  cmd->add_flag("--open", c.open, "Open interval with fixed ends instead of a closed curve");
  cmd->add_option("--out", c.out, "Write the report to this file instead of standard output");
}

Range parse_range_option(const std::string& text, const Range& fallback) {
  return text.empty() ? fallback : Range::parse(text);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sesqui-harmonic Legendre curve analysis in Sasakian space forms"};
  app.require_subcommand(1);

  RunConfig analyze_cfg;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a curve file and print a JSON report");
  add_run_options(analyze_cmd, analyze_cfg, true);
  analyze_cmd->add_flag("--minus-sign", analyze_cfg.flipped_sign, "Use the opposite sign of the (c+3)/4 term");
  analyze_cmd->add_option("--legendre-tol", analyze_cfg.legendre_tol, "Maximum |eta(T)| accepted");
  analyze_cmd->add_option("--speed-tol", analyze_cfg.speed_tol, "Maximum deviation from unit speed accepted");

  RunConfig verify_cfg;
  auto* verify_cmd = app.add_subcommand("verify-example", "Check the built-in circle example");
  add_run_options(verify_cmd, verify_cfg, false);
  verify_cmd->add_flag("--minus-sign", verify_cfg.flipped_sign, "Use the opposite sign of the (c+3)/4 term");

  ScanConfig scan_cfg;
  std::string scan_c, scan_k1, scan_k2, scan_alpha;
  auto* scan_cmd = app.add_subcommand("scan", "Feasibility sweep of the case formulas, CSV output");
  scan_cmd->add_option("--case", scan_cfg.case_name, "I, II, III or IV");
  scan_cmd->add_option("--c", scan_c, "Range lo:hi:count or a single value");
  scan_cmd->add_option("--k1", scan_k1, "Range of k1");
  scan_cmd->add_option("--k2", scan_k2, "Range of k2");
  scan_cmd->add_option("--alpha", scan_alpha, "Range of alpha0 (case IV)");
  scan_cmd->add_option("--n", scan_cfg.n, "Dimension parameter of the ambient space");
  scan_cmd->add_option("--tol", scan_cfg.check_tol, "Tolerance");
  scan_cmd->add_option("--threads", scan_cfg.threads, "Worker threads (0: all cores)");
  scan_cmd->add_option("--out", scan_cfg.out, "Write the CSV to this file");

  FlowConfig flow_cfg;
  flow_cfg.run.delta1 = 0.0;
  flow_cfg.run.delta2 = 1.0;
  auto* flow_cmd = app.add_subcommand("flow", "Projected gradient descent of the discrete energy, CSV output");
  add_run_options(flow_cmd, flow_cfg.run, true);
  flow_cmd->add_option("--steps", flow_cfg.steps, "Number of descent steps");
  flow_cmd->add_option("--rate", flow_cfg.rate, "Initial step size of each line search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  }

  CommandResult result;
  std::string destination;
  if (*analyze_cmd) {
    result = cmd_analyze(analyze_cfg);
    destination = analyze_cfg.out;
  } else if (*verify_cmd) {
    result = cmd_verify_example(verify_cfg);
    destination = verify_cfg.out;
  } else if (*scan_cmd) {
    try {
      scan_cfg.c = parse_range_option(scan_c, scan_cfg.c);
      scan_cfg.k1 = parse_range_option(scan_k1, scan_cfg.k1);
      scan_cfg.k2 = parse_range_option(scan_k2, scan_cfg.k2);
      scan_cfg.alpha = parse_range_option(scan_alpha, scan_cfg.alpha);
      result = cmd_scan(scan_cfg);
    } catch (const ConfigError& e) {
      result = invalid(e.what());
    }
    destination = scan_cfg.out;
  } else if (*flow_cmd) {
    result = cmd_flow(flow_cfg);
    destination = flow_cfg.run.out;
  }

  if (!result.output.empty()) {
    if (destination.empty()) {
      out << result.output;
    } else {
      std::ofstream file(destination, std::ios::binary);
      if (!file) {
        err << "cannot write '" << destination << "'\n";
        return kInvalidInput;
      }
      file << result.output;
    }
  }
  if (!result.diagnostics.empty()) err << result.diagnostics << "\n";
  return result.exit_code;
}

}  // namespace sesqui::cli
