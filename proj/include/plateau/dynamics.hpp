#pragma once

// Polynomial ODE systems, RK4 series generation and truncated Lie-series
// flow maps x(t+δt) ≈ Σ_{k≤N} δt^k/k! X^k[x].

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "plateau/polycore.hpp"
#include "plateau/series.hpp"

namespace plateau {

struct LorenzParams {
  double sigma = 10.0;
  double r = 28.0;
  double b = 8.0 / 3.0;

  bool is_finite() const noexcept;
  // R above the onset of chaos, 24.74.
  bool chaotic() const noexcept { return r > 24.74; }
};

// ẋ1 = σ(x2 − x1), ẋ2 = −x2 − x1·x3 + R·x1, ẋ3 = x1·x2 − b·x3
VectorField lorenz_field(const LorenzParams& params);

class TruncatedFlowMap {
 public:
  TruncatedFlowMap(unsigned order, double delta_t, std::vector<MultivariatePolynomial> components);

  unsigned order() const noexcept { return order_; }
  double delta_t() const noexcept { return delta_t_; }
  std::size_t dimension() const noexcept { return components_.size(); }
  const MultivariatePolynomial& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<MultivariatePolynomial>& components() const noexcept { return components_; }
  unsigned max_degree() const noexcept;

 private:
  unsigned order_;
  double delta_t_;
  std::vector<MultivariatePolynomial> components_;
};

TruncatedFlowMap build_truncated_flow_map(const VectorField& field, unsigned order, double delta_t);

std::vector<double> flow_step(const TruncatedFlowMap& map, std::span<const double> state);

class Trajectory {
 public:
  Trajectory(std::size_t dimension, double delta_t, std::vector<double> states);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return states_.size() / dimension_; }
  double delta_t() const noexcept { return delta_t_; }
  std::span<const double> state(std::size_t i) const;

 private:
  std::size_t dimension_;
  double delta_t_;
  std::vector<double> states_;  // row-major
};

// Any |component| above this aborts integration.
inline constexpr double kBlowupThreshold = 1e8;

// Classical RK4. Records x0 followed by `steps` states spaced delta_t apart;
// each recorded step is split into `substeps` RK4 steps of delta_t/substeps.
Trajectory rk4_integrate(const VectorField& field, std::span<const double> x0, double delta_t,
                         std::size_t steps, std::size_t substeps = 1);

// ε(J) = x_c(J) − F̄_c(x(J−1)) for J = 1..size−1: the one-step errors of a
// flow map forecasting one coordinate along a recorded trajectory.
std::vector<double> one_step_errors(const Trajectory& trajectory, const TruncatedFlowMap& map,
                                    std::size_t coordinate);

TimeSeries sample_coordinate(const Trajectory& trajectory, std::size_t coordinate);

// "i,x1,...,xn", 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace plateau
