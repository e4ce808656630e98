#pragma once

#include "spinpair/covariant_measurement.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace spinpair {

// Legendre coefficients of a fidelity function of u = n.m:
//   f(u) = f0 P0(u) + f1 P1(u) + f2 P2(u) + sum_k tail[k] P_{3+k}(u).
// Only f0, f1, f2 enter the average over a covariant measurement; the tail is
// carried for reporting and for evaluate().
struct FidelitySpec {
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  std::vector<double> tail;
  // Largest |f - series| seen at the projection nodes; zero for hand-built specs.
  double truncation_residual = 0.0;

  double evaluate(double u) const;
};

// P_n(u), with u clamped to [-1, 1] to absorb dot-product rounding.
double legendre_p(int n, double u);

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  explicit GaussLegendreRule(int n);
};

// Coefficients f_n = (2n+1)/2 integral f(u) P_n(u) du for n = 0..order,
// by Gauss-Legendre quadrature.  Requires nodes >= 2*order + 1.
FidelitySpec project_legendre(const std::function<double(double)>& f, int order,
                              int nodes);

// Closed form  f0 + (alpha/3) f1 + (gamma/10) f2.
double average_fidelity(const CovariantSeed& seed, const FidelitySpec& spec);

// Independent route: numerically integrates f(n.m) * outcome_density over the
// sphere of m with the +z outcome fixed, Gauss-Legendre in cos(theta) crossed
// with a uniform trapezoid in azimuth.
double average_fidelity_by_quadrature(const CovariantSeed& seed,
                                      const std::function<double(double)>& f,
                                      int cos_nodes = 64, int azimuth_nodes = 64);

// Average of fn over the unit sphere with the same two-angle quadrature.
double sphere_average(const std::function<double(const BlochVector&)>& fn,
                      int cos_nodes = 64, int azimuth_nodes = 64);

struct NamedFidelity {
  std::string_view name;
  double (*fn)(double);
  FidelitySpec spec;
};

// Built-ins: "overlap" (1+u)/2 and "plane" 1-u^2.  Null if the key is unknown.
const NamedFidelity* find_named_fidelity(std::string_view key);

}  // namespace spinpair
