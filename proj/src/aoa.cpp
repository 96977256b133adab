#include "ztnd/aoa.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "ztnd/errors.hpp"

namespace ztnd::aoa {

namespace {

// Smallest admissible eigenvalue ratio of F^T F; below it the bearing lines
// are too close to parallel for the intersection to mean anything.
constexpr double kMinConditioning = 1e-8;

void check_margin(const Station& s, const Point& u, double margin) {
  if (!(std::abs(u.x - s.x) >= margin)) {
    throw GeometryDegenerate("target x = " + std::to_string(u.x) + " within margin " +
                             std::to_string(margin) + " of station x = " + std::to_string(s.x));
  }
}

double eigen_ratio_2x2_sym(const Matrix& a) {
  const double tr = a(0, 0) + a(1, 1);
  const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double hi = tr / 2.0 + disc;
  const double lo = tr / 2.0 - disc;
  return hi > 0.0 ? lo / hi : 0.0;
}

}  // namespace

Trajectory lissajous(double cx, double cy, double ax, double ay, double wx, double wy) {
  Trajectory tr;
  tr.pos_at = [=](double t) { return Point{cx + ax * std::cos(wx * t), cy + ay * std::sin(wy * t)}; };
  tr.vel_at = [=](double t) { return Point{-ax * wx * std::sin(wx * t), ay * wy * std::cos(wy * t)}; };
  return tr;
}

Trajectory circle(double cx, double cy, double radius, double omega) {
  return lissajous(cx, cy, radius, radius, omega, omega);
}

double bearing_tangent(const Station& s, const Point& u, double margin) {
  check_margin(s, u, margin);
  return (u.y - s.y) / (u.x - s.x);
}

double bearing_tangent_rate(const Station& s, const Point& u, const Point& v, double margin) {
  check_margin(s, u, margin);
  const double dx = u.x - s.x;
  return (v.y * dx - (u.y - s.y) * v.x) / (dx * dx);
}

Matrix Scenario::f_at(double t) const {
  const Point u = truth_.pos_at(t);
  Matrix f(stations_.size(), 2);
  for (std::size_t i = 0; i < stations_.size(); ++i) {
    f(i, 0) = -bearing_tangent(stations_[i], u, margin_);
    f(i, 1) = 1.0;
  }
  return f;
}

Vector Scenario::h_at(double t) const {
  const Point u = truth_.pos_at(t);
  Vector h(stations_.size());
  for (std::size_t i = 0; i < stations_.size(); ++i) {
    const Station& s = stations_[i];
    h[i] = s.y - s.x * bearing_tangent(s, u, margin_);
  }
  return h;
}

Matrix Scenario::df_at(double t) const {
  const Point u = truth_.pos_at(t);
  const Point v = truth_.vel_at(t);
  Matrix df(stations_.size(), 2);
  for (std::size_t i = 0; i < stations_.size(); ++i) {
    df(i, 0) = -bearing_tangent_rate(stations_[i], u, v, margin_);
  }
  return df;
}

Vector Scenario::dh_at(double t) const {
  const Point u = truth_.pos_at(t);
  const Point v = truth_.vel_at(t);
  Vector dh(stations_.size());
  for (std::size_t i = 0; i < stations_.size(); ++i) {
    dh[i] = -stations_[i].x * bearing_tangent_rate(stations_[i], u, v, margin_);
  }
  return dh;
}

TimeVaryingLinearProblem Scenario::problem() const {
  TimeVaryingLinearProblem p;
  p.name = "aoa";
  p.dim = 2;
  p.equations = stations_.size();
  // Captures a copy so the problem outlives the scenario object.
  const auto self = std::make_shared<const Scenario>(*this);
  p.m_at = [self](double t) { return self->f_at(t); };
  p.dm_at = [self](double t) { return self->df_at(t); };
  p.b_at = [self](double t) { return scalar_mul(-1.0, self->h_at(t)); };
  p.db_at = [self](double t) { return scalar_mul(-1.0, self->dh_at(t)); };
  p.solution_at = [self](double t) {
    const Point u = self->truth_.pos_at(t);
    return Vector{u.x, u.y};
  };
  return p;
}

Scenario build_scenario(std::vector<Station> stations, Trajectory truth, double margin,
                        double horizon, std::size_t samples) {
  if (stations.size() < 2) throw GeometryDegenerate("need at least two stations");
  if (!truth.pos_at || !truth.vel_at) throw InvalidArgument("trajectory evaluators missing");
  if (samples < 2) samples = 2;

  Scenario sc;
  sc.stations_ = std::move(stations);
  sc.truth_ = std::move(truth);
  sc.margin_ = margin;

  for (std::size_t k = 0; k < samples; ++k) {
    const double t = horizon * static_cast<double>(k) / static_cast<double>(samples - 1);
    const Matrix f = sc.f_at(t);  // throws on margin violations
    const Matrix normal = mat_mul(transpose(f), f);
    if (!(eigen_ratio_2x2_sym(normal) >= kMinConditioning)) {
      throw GeometryDegenerate("bearing lines nearly parallel at t = " + std::to_string(t));
    }
  }
  return sc;
}

Scenario default_scenario() {
  return build_scenario({{-5.0, 0.0}, {5.0, 0.0}}, circle(0.0, 3.0, 2.0, 0.5));
}

Trace track(const ModelSpec& model, const Scenario& sc, const NoiseModel& noise, Point init,
            const IntegratorConfig& cfg) {
  if (model.kind != ModelKind::AZTND && model.kind != ModelKind::OZNN) {
    throw InvalidArgument("AoA tracking supports aztnd and oznn, got " +
                          std::string(to_string(model.kind)));
  }
  for (const Station& s : sc.stations()) check_margin(s, init, sc.margin());
  const Vector g0{init.x, init.y};
  return simulate(model, sc.problem(), noise, g0, cfg);
}

}  // namespace ztnd::aoa
