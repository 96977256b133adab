#pragma once

#include <functional>
#include <vector>

#include "ztnd/integrator.hpp"
#include "ztnd/problem.hpp"

namespace ztnd::aoa {

struct Station {
  double x = 0.0;
  double y = 0.0;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Ground-truth target motion with its analytic velocity.
struct Trajectory {
  std::function<Point(double)> pos_at;
  std::function<Point(double)> vel_at;
};

/// x = cx + ax cos(wx t), y = cy + ay sin(wy t). A circle is ax = ay, wx = wy.
Trajectory lissajous(double cx, double cy, double ax, double ay, double wx, double wy);
Trajectory circle(double cx, double cy, double radius, double omega);

inline constexpr double kDefaultMargin = 0.2;

/// (u.y - s.y) / (u.x - s.x); throws GeometryDegenerate when |u.x - s.x| < margin.
double bearing_tangent(const Station& s, const Point& u, double margin = kDefaultMargin);

/// d/dt tan(theta) by the quotient rule.
double bearing_tangent_rate(const Station& s, const Point& u, const Point& v,
                            double margin = kDefaultMargin);

/// Stations plus truth, and the linear system F(t) g = h(t) with
/// row i of F = [-tan theta_i, 1] and h_i = y_i - x_i tan theta_i.
class Scenario {
 public:
  const std::vector<Station>& stations() const { return stations_; }
  const Trajectory& truth() const { return truth_; }
  double margin() const { return margin_; }

  Matrix f_at(double t) const;
  Vector h_at(double t) const;
  Matrix df_at(double t) const;
  Vector dh_at(double t) const;

  /// The system as a problem with M = F, b = -h, so that the shared residual
  /// M g + b equals F g - h and z* is the true position.
  TimeVaryingLinearProblem problem() const;

 private:
  friend Scenario build_scenario(std::vector<Station>, Trajectory, double, double, std::size_t);
  std::vector<Station> stations_;
  Trajectory truth_;
  double margin_ = kDefaultMargin;
};

/// Validates >= 2 stations, the x-margin, and full column rank of F on
/// `samples` points of [0, horizon]. Throws GeometryDegenerate.
Scenario build_scenario(std::vector<Station> stations, Trajectory truth,
                        double margin = kDefaultMargin, double horizon = 10.0,
                        std::size_t samples = 1001);

/// Stations (-5, 0), (5, 0); target on a radius-2 circle about (0, 3) at 0.5 rad/s.
Scenario default_scenario();

/// Runs AZTND or OZNN on the bearing system; solution_errors hold the
/// position error against the truth. Throws InvalidArgument for other models
/// and GeometryDegenerate when `init` violates the margin.
Trace track(const ModelSpec& model, const Scenario& sc, const NoiseModel& noise, Point init,
            const IntegratorConfig& cfg);

}  // namespace ztnd::aoa
