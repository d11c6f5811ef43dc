#include "sesqui/curve.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "sesqui/error.hpp"

namespace sesqui {

std::vector<double> CoordinateJet::values() const {
  std::vector<double> v(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) v[i] = coords[i].value();
  return v;
}

CurveSpec::CurveSpec(int n, std::vector<Expression> coords) : n_(n), exprs_(std::move(coords)) {
  if (n < 1) throw StructuralError("curve dimension parameter n must be >= 1");
  if (static_cast<int>(exprs_.size()) != 2 * n + 1) {
    throw StructuralError("curve with n = " + std::to_string(n) + " needs " + std::to_string(2 * n + 1) +
                          " coordinate expressions, got " + std::to_string(exprs_.size()));
  }
}

CurveSpec::CurveSpec(int n, std::vector<Expression> horizontal, double z0)
    : n_(n), exprs_(std::move(horizontal)), lift_z0_(z0) {
  if (n < 1) throw StructuralError("curve dimension parameter n must be >= 1");
  if (static_cast<int>(exprs_.size()) != 2 * n) {
    throw StructuralError("Legendre profile with n = " + std::to_string(n) + " needs " + std::to_string(2 * n) +
                          " expressions, got " + std::to_string(exprs_.size()));
  }
  if (!std::isfinite(z0)) throw DomainError("Legendre lift start value must be finite");
}

CurveSpec CurveSpec::from_expressions(int n, const std::vector<std::string>& coords) {
  std::vector<Expression> e;
  e.reserve(coords.size());
  for (const auto& s : coords) e.push_back(Expression::parse(s));
  return CurveSpec(n, std::move(e));
}

CurveSpec make_legendre(int n, std::vector<Expression> horizontal, double z0) {
  return CurveSpec(n, std::move(horizontal), z0);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void line_error(int line, const std::string& what, std::size_t column = 0) {
  throw ParseError("line " + std::to_string(line) + ": " + what, column);
}

Expression parse_line(std::string_view text, int line) {
  try {
    return Expression::parse(text);
  } catch (const ParseError& e) {
    line_error(line, e.what(), e.position());
  }
}

}  // namespace

CurveSpec CurveSpec::parse(std::string_view text) {
  std::optional<int> n;
  std::vector<Expression> exprs;
  std::optional<double> z0;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!n) {
      if (line.size() < 2 || line[0] != 'n') line_error(line_no, "expected header 'n=<int>'");
      std::string_view rest = trim(line.substr(1));
      if (rest.empty() || rest[0] != '=') line_error(line_no, "expected header 'n=<int>'");
      rest = trim(rest.substr(1));
      int value = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
      if (ec != std::errc() || ptr != rest.data() + rest.size()) line_error(line_no, "malformed integer in header");
      if (value < 1) line_error(line_no, "n must be >= 1");
      n = value;
      continue;
    }

    const int dim = 2 * *n + 1;
    if (static_cast<int>(exprs.size()) + (z0 ? 1 : 0) >= dim) {
      line_error(line_no, "more than " + std::to_string(dim) + " coordinate lines");
    }
    const bool z_line = static_cast<int>(exprs.size()) == dim - 1;
    if (z_line && line.starts_with("legendre")) {
      std::string_view arg = trim(line.substr(8));
      if (arg.size() < 2 || arg.front() != '(' || arg.back() != ')') {
        line_error(line_no, "expected 'legendre(<z0>)'");
      }
      Expression e = parse_line(arg.substr(1, arg.size() - 2), line_no);
      if (e.depends_on_parameter()) line_error(line_no, "legendre start value must not depend on t");
      z0 = e.evaluate(0.0);
      continue;
    }
    exprs.push_back(parse_line(line, line_no));
  }
  if (!n) throw ParseError("missing header 'n=<int>'", 0);
  const int dim = 2 * *n + 1;
  const int have = static_cast<int>(exprs.size()) + (z0 ? 1 : 0);
  if (have != dim) {
    throw StructuralError("curve file declares n = " + std::to_string(*n) + " and needs " + std::to_string(dim) +
                          " coordinate lines, found " + std::to_string(have));
  }
  if (z0) return make_legendre(*n, std::move(exprs), *z0);
  return CurveSpec(*n, std::move(exprs));
}

double CurveSpec::lifted_z(double t) const {
  if (!lift_z0_) throw StructuralError("curve has no Legendre lift");
  if (t == 0.0) return *lift_z0_;
  auto integrand = [this](double s) {
    const Jet v = Jet::variable(s, 1);
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) acc += exprs_[n_ + i].evaluate(v).value() * exprs_[i].evaluate(v).derivative(1);
    return acc;
  };
  const double a = std::min(0.0, t), b = std::max(0.0, t);
  double error = 0.0, l1 = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, b, 12, 1e-12, &error, &l1);
  if (!std::isfinite(integral) || error > 1e-10 * std::max(1.0, l1)) {
    std::ostringstream os;
    os << "Legendre lift quadrature did not converge on [0, " << t << "]: estimate " << integral
       << ", error estimate " << error << ", L1 norm " << l1;
    throw NumericError(os.str());
  }
  return *lift_z0_ + (t >= 0.0 ? integral : -integral);
}

CoordinateJet CurveSpec::jet(double t, int degree) const {
  if (degree < 0 || degree > Jet::kMaxDegree) throw StructuralError("jet degree out of range");
  const Jet tv = Jet::variable(t, degree);
  CoordinateJet j;
  j.t = t;
  j.coords.reserve(dim());
  for (const auto& e : exprs_) j.coords.push_back(e.evaluate(tv).truncated(degree));
  if (lift_z0_) {
    std::array<double, Jet::kMaxDegree + 1> c{};
    c[0] = lifted_z(t);
    if (degree > 0) {
      Jet integrand = Jet::constant(0.0, degree - 1);
      for (int i = 0; i < n_; ++i) integrand += j.coords[n_ + i] * j.coords[i].derivative();
      for (int k = 1; k <= degree; ++k) c[k] = integrand.coefficient(k - 1) / k;
    }
    j.coords.push_back(Jet::from_coefficients(std::span<const double>(c.data(), degree + 1)));
  }
  return j;
}

ModelPoint CurveSpec::point(double t) const { return ModelPoint(jet(t, 0).values()); }

CoordinateJet parse_and_jet(const CurveSpec& spec, double t) { return spec.jet(t, 4); }

TangentVec velocity(const CurveSpec& spec, double t) {
  const CoordinateJet j = spec.jet(t, 1);
  std::vector<double> v(j.dim());
  for (int i = 0; i < j.dim(); ++i) v[i] = j.derivative(i, 1);
  return TangentVec(ModelPoint(j.values()), std::move(v));
}

double legendre_defect(const CurveSpec& spec, double t) {
  const TangentVec v = velocity(spec, t);
  return eta(v.base, v);
}

MovingJets moving_jets(const CurveSpec& spec, double t, int degree) {
  if (degree < 1) throw StructuralError("moving jets need degree >= 1");
  const CoordinateJet j = spec.jet(t, degree);
  std::vector<Jet> vel(j.dim());
  for (int i = 0; i < j.dim(); ++i) vel[i] = j.coords[i].derivative();
  const FrameVec<Jet> p = coords_to_frame<Jet>(j.coords, vel);
  const Jet speed2 = frame_dot(p, p);
  if (!(speed2.value() > 1e-24)) throw GeometryError("irregular point (zero velocity)", t);
  MovingJets m;
  m.t = t;
  m.point = j.coords;
  m.inv_speed = Jet(1.0) / sqrt(speed2);
  m.speed = std::sqrt(speed2.value());
  m.tangent.resize(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) m.tangent[k] = p[k] * m.inv_speed;
  return m;
}

FrameVec<Jet> covariant_derivative_along(const MovingJets& m, const FrameVec<Jet>& field) {
  if (field.size() != m.tangent.size()) throw StructuralError("field dimension does not match the curve");
  FrameVec<Jet> d(field.size());
  for (std::size_t k = 0; k < field.size(); ++k) d[k] = field[k].derivative() * m.inv_speed;
  return covariant_derivative(m.tangent, field, d);
}

std::vector<FrameVec<double>> covariant_derivative_along(const CurveSpec& spec, const Grid& grid,
                                                         const std::vector<FrameVec<double>>& field) {
  grid.validate();
  if (static_cast<int>(field.size()) != grid.samples) {
    throw StructuralError("sampled field has " + std::to_string(field.size()) + " samples, grid has " +
                          std::to_string(grid.samples));
  }
  const std::size_t dim = static_cast<std::size_t>(spec.dim());
  for (const auto& v : field) {
    if (v.size() != dim) throw StructuralError("sampled field dimension does not match the curve");
  }
  std::vector<FrameVec<double>> dv(field.size(), FrameVec<double>(dim));
  std::vector<double> column(field.size());
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < field.size(); ++j) column[j] = field[j][k];
    const auto d = grid_derivative(column, grid.step(), grid.periodic);
    for (std::size_t j = 0; j < field.size(); ++j) dv[j][k] = d[j];
  }
  std::vector<FrameVec<double>> out(field.size());
  for (int j = 0; j < grid.samples; ++j) {
    const MovingJets m = moving_jets(spec, grid.at(j), 1);
    FrameVec<double> t(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      t[k] = m.tangent[k].value();
      dv[j][k] /= m.speed;
    }
    out[j] = covariant_derivative(t, field[j], dv[j]);
  }
  return out;
}

ArcLengthReport arclength_check(const CurveSpec& spec, const Grid& grid) {
  grid.validate();
  ArcLengthReport r;
  r.min_speed = std::numeric_limits<double>::infinity();
  std::vector<double> speeds(grid.samples);
  const int two_n = 2 * spec.n();
  for (int j = 0; j < grid.samples; ++j) {
    const double t = grid.at(j);
    const TangentVec v = velocity(spec, t);
    const double speed = std::sqrt(metric(v.base, v, v));
    if (!(speed > 1e-12)) throw GeometryError("irregular point (zero velocity)", t);
    speeds[j] = speed;
    double euclid = 0.0;
    for (int i = 0; i < two_n; ++i) euclid += v.comps[i] * v.comps[i];
    const double five = euclid + v.comps[two_n] * v.comps[two_n];
    r.max_speed_deviation = std::max(r.max_speed_deviation, std::abs(speed - 1.0));
    r.min_speed = std::min(r.min_speed, speed);
    r.max_speed = std::max(r.max_speed, speed);
    r.max_legendre_defect = std::max(r.max_legendre_defect, std::abs(eta(v.base, v)));
    r.max_euclidean_deviation = std::max(r.max_euclidean_deviation, std::abs(euclid - 4.0));
    r.max_five_term_deviation = std::max(r.max_five_term_deviation, std::abs(five - 4.0));
  }
  const double h = grid.step();
  for (int j = 0; j < grid.samples; ++j) {
    const bool end = !grid.periodic && (j == 0 || j == grid.samples - 1);
    r.length += (end ? 0.5 : 1.0) * h * speeds[j];
  }
  return r;
}

SampledCurve reparametrize_arclength(const CurveSpec& spec, const Grid& grid) {
  grid.validate();
  auto speed = [&spec](double t) {
    const TangentVec v = velocity(spec, t);
    const double s = std::sqrt(metric(v.base, v, v));
    if (!(s > 1e-12)) throw GeometryError("irregular point (zero velocity)", t);
    return s;
  };
  auto arc = [&speed](double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(speed, a, b, 10, 1e-12);
  };

  // Cumulative length at the nodes t0 + j h, j = 0..cells.
  const int cells = grid.periodic ? grid.samples : grid.samples - 1;
  const double h = (grid.t1 - grid.t0) / cells;
  std::vector<double> knots(cells + 1, 0.0);
  for (int j = 0; j < cells; ++j) {
    const double a = grid.t0 + j * h;
    knots[j + 1] = knots[j] + arc(a, a + h);
  }

  SampledCurve out;
  out.length = knots.back();
  const double ds = out.length / cells;
  for (int j = 0; j < grid.samples; ++j) {
    const double target = j * ds;
    int cell = static_cast<int>(std::upper_bound(knots.begin(), knots.end(), target) - knots.begin()) - 1;
    cell = std::clamp(cell, 0, cells - 1);
    const double a = grid.t0 + cell * h;
    const double base = knots[cell];
    double t = a;
    if (target > base) {
      auto f = [&](double x) { return base + arc(a, x) - target; };
      double lo = a, hi = a + h;
      if (f(hi) <= 0.0) {
        t = hi;
      } else {
        boost::uintmax_t iters = 100;
        auto [l, r] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50),
                                                        iters);
        t = 0.5 * (l + r);
      }
    }
    out.s.push_back(target);
    out.t.push_back(t);
    out.points.push_back(spec.jet(t, 0).values());
  }
  return out;
}

}  // namespace sesqui
