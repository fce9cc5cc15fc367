#include "plateau/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "plateau/error.hpp"

namespace plateau {

bool LorenzParams::is_finite() const noexcept {
  return std::isfinite(sigma) && std::isfinite(r) && std::isfinite(b);
}

VectorField lorenz_field(const LorenzParams& params) {
  if (!params.is_finite()) throw InvalidArgument("Lorenz parameters must be finite");
  using Terms = MultivariatePolynomial::TermMap;
  const ExponentTuple x1{1, 0, 0}, x2{0, 1, 0}, x3{0, 0, 1};
  MultivariatePolynomial f1(3, Terms{{x1, -params.sigma}, {x2, params.sigma}});
  MultivariatePolynomial f2(3, Terms{{x1, params.r}, {x2, -1.0}, {ExponentTuple{1, 0, 1}, -1.0}});
  MultivariatePolynomial f3(3, Terms{{x3, -params.b}, {ExponentTuple{1, 1, 0}, 1.0}});
  return VectorField({std::move(f1), std::move(f2), std::move(f3)});
}

TruncatedFlowMap::TruncatedFlowMap(unsigned order, double delta_t,
                                   std::vector<MultivariatePolynomial> components)
    : order_(order), delta_t_(delta_t), components_(std::move(components)) {}

unsigned TruncatedFlowMap::max_degree() const noexcept {
  unsigned d = 0;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

TruncatedFlowMap build_truncated_flow_map(const VectorField& field, unsigned order, double delta_t) {
  if (order < 1) throw InvalidArgument("flow map order must be ≥ 1");
  if (!(delta_t > 0.0) || !std::isfinite(delta_t)) throw InvalidArgument("delta_t must be > 0");
  const std::size_t n = field.dimension();
  std::vector<MultivariatePolynomial> components;
  components.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    MultivariatePolynomial term = MultivariatePolynomial::variable(n, i);  // X^0[x_i]
    MultivariatePolynomial sum = term;
    double scale = 1.0;
    for (unsigned k = 1; k <= order; ++k) {
      term = lie_derivative(field, term);
      scale *= delta_t / k;
      sum = sum + term * scale;
    }
    components.push_back(std::move(sum));
  }
  return TruncatedFlowMap(order, delta_t, std::move(components));
}

std::vector<double> flow_step(const TruncatedFlowMap& map, std::span<const double> state) {
  if (state.size() != map.dimension()) {
    throw DimensionError("state has " + std::to_string(state.size()) + " components, map has " +
                         std::to_string(map.dimension()));
  }
  std::vector<double> next(map.dimension());
  for (std::size_t i = 0; i < map.dimension(); ++i) next[i] = map[i].evaluate(state);
  return next;
}

Trajectory::Trajectory(std::size_t dimension, double delta_t, std::vector<double> states)
    : dimension_(dimension), delta_t_(delta_t), states_(std::move(states)) {
  if (dimension_ == 0 || states_.size() % dimension_ != 0) {
    throw DimensionError("trajectory buffer is not a whole number of states");
  }
}

std::span<const double> Trajectory::state(std::size_t i) const {
  if (i >= size()) throw InvalidArgument("trajectory index out of range");
  return std::span<const double>(states_).subspan(i * dimension_, dimension_);
}

Trajectory rk4_integrate(const VectorField& field, std::span<const double> x0, double delta_t,
                         std::size_t steps, std::size_t substeps) {
  const std::size_t n = field.dimension();
  if (x0.size() != n) throw DimensionError("initial state dimension does not match the field");
  if (!(delta_t > 0.0) || !std::isfinite(delta_t)) throw InvalidArgument("delta_t must be > 0");
  if (substeps == 0) throw InvalidArgument("substeps must be ≥ 1");
  for (double v : x0) {
    if (!std::isfinite(v)) throw InvalidArgument("initial state must be finite");
  }

  std::vector<double> states(x0.begin(), x0.end());
  states.reserve(n * (steps + 1));
  std::vector<double> x(x0.begin(), x0.end()), k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double h = delta_t / static_cast<double>(substeps);

  for (std::size_t step = 1; step <= steps; ++step) {
    for (std::size_t s = 0; s < substeps; ++s) {
      field.evaluate(x, k1);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
      field.evaluate(tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
      field.evaluate(tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
      field.evaluate(tmp, k4);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
    for (double v : x) {
      if (!std::isfinite(v) || std::abs(v) > kBlowupThreshold) {
        throw BlowupError("integration blew up at step " + std::to_string(step), step);
      }
    }
    states.insert(states.end(), x.begin(), x.end());
  }
  return Trajectory(n, delta_t, std::move(states));
}

std::vector<double> one_step_errors(const Trajectory& trajectory, const TruncatedFlowMap& map,
                                    std::size_t coordinate) {
  if (map.dimension() != trajectory.dimension()) {
    throw DimensionError("flow map and trajectory dimensions differ");
  }
  if (coordinate >= map.dimension()) throw InvalidArgument("coordinate out of range");
  std::vector<double> errors;
  errors.reserve(trajectory.size());
  for (std::size_t j = 1; j < trajectory.size(); ++j) {
    const double forecast = map[coordinate].evaluate(trajectory.state(j - 1));
    errors.push_back(trajectory.state(j)[coordinate] - forecast);
  }
  return errors;
}

TimeSeries sample_coordinate(const Trajectory& trajectory, std::size_t coordinate) {
  if (coordinate >= trajectory.dimension()) {
    throw InvalidArgument("coordinate " + std::to_string(coordinate) + " out of range for a " +
                          std::to_string(trajectory.dimension()) + "-dimensional trajectory");
  }
  std::vector<double> values;
  values.reserve(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) values.push_back(trajectory.state(i)[coordinate]);
  return TimeSeries(std::move(values), "x" + std::to_string(coordinate + 1));
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << 'i';
  for (std::size_t j = 0; j < trajectory.dimension(); ++j) out << ",x" << (j + 1);
  out << '\n';
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    out << i;
    for (double v : trajectory.state(i)) out << ',' << format_full(v);
    out << '\n';
  }
}

}  // namespace plateau
