#include "spinpair/fidelity.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace spinpair {

namespace {

double overlap_fn(double u) { return 0.5 * (1.0 + u); }
double plane_fn(double u) { return 1.0 - u * u; }

const NamedFidelity kNamed[] = {
    {"overlap", overlap_fn, FidelitySpec{0.5, 0.5, 0.0, {}, 0.0}},
    {"plane", plane_fn, FidelitySpec{2.0 / 3.0, 0.0, -2.0 / 3.0, {}, 0.0}},
};

}  // namespace

double legendre_p(int n, double u) {
  if (n < 0) throw std::invalid_argument("legendre_p: negative order");
  return std::legendre(static_cast<unsigned>(n), std::clamp(u, -1.0, 1.0));
}

double FidelitySpec::evaluate(double u) const {
  u = std::clamp(u, -1.0, 1.0);
  double out = f0 + f1 * u + f2 * (0.5 * (3.0 * u * u - 1.0));
  for (std::size_t k = 0; k < tail.size(); ++k)
    out += tail[k] * legendre_p(static_cast<int>(k) + 3, u);
  return out;
}

GaussLegendreRule::GaussLegendreRule(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendreRule: need at least one node");
  std::unique_ptr<gsl_integration_glfixed_table,
                  decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)),
            gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("GaussLegendreRule: table allocation failed");
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &x, &w,
                                  table.get());
    nodes[i] = x;
    weights[i] = w;
  }
}

FidelitySpec project_legendre(const std::function<double(double)>& f, int order,
                              int nodes) {
  if (order < 0) throw std::invalid_argument("project_legendre: negative order");
  if (nodes < 2 * order + 1)
    throw std::invalid_argument("project_legendre: needs nodes >= 2*order + 1");

  const GaussLegendreRule rule(nodes);
  std::vector<double> coeff(static_cast<std::size_t>(order) + 1, 0.0);
  std::vector<double> values(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) values[i] = f(rule.nodes[i]);
  for (int n = 0; n <= order; ++n) {
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      integral += rule.weights[i] * values[i] * legendre_p(n, rule.nodes[i]);
    coeff[n] = 0.5 * (2.0 * n + 1.0) * integral;
  }

  FidelitySpec spec;
  spec.f0 = coeff[0];
  if (order >= 1) spec.f1 = coeff[1];
  if (order >= 2) spec.f2 = coeff[2];
  for (int n = 3; n <= order; ++n) spec.tail.push_back(coeff[n]);

  double residual = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    residual = std::max(residual, std::abs(values[i] - spec.evaluate(rule.nodes[i])));
  spec.truncation_residual = residual;
  return spec;
}

double average_fidelity(const CovariantSeed& seed, const FidelitySpec& spec) {
  return spec.f0 + (seed.alpha / 3.0) * spec.f1 + (seed.gamma / 10.0) * spec.f2;
}

double sphere_average(const std::function<double(const BlochVector&)>& fn,
                      int cos_nodes, int azimuth_nodes) {
  if (azimuth_nodes < 1)
    throw std::invalid_argument("sphere_average: need at least one azimuth node");
  const GaussLegendreRule rule(cos_nodes);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double c = rule.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    double ring = 0.0;
    for (int j = 0; j < azimuth_nodes; ++j) {
      const double phi = 2.0 * M_PI * j / azimuth_nodes;
      ring += fn(BlochVector(s * std::cos(phi), s * std::sin(phi), c));
    }
    total += rule.weights[i] * ring / azimuth_nodes;
  }
  return 0.5 * total;
}

double average_fidelity_by_quadrature(const CovariantSeed& seed,
                                      const std::function<double(double)>& f,
                                      int cos_nodes, int azimuth_nodes) {
  const BlochVector outcome = BlochVector::z_axis();
  return sphere_average(
      [&](const BlochVector& m) {
        return f(outcome.dot(m)) * outcome_density(seed, outcome, m);
      },
      cos_nodes, azimuth_nodes);
}

const NamedFidelity* find_named_fidelity(std::string_view key) {
  for (const NamedFidelity& named : kNamed)
    if (named.name == key) return &named;
  return nullptr;
}

}  // namespace spinpair
