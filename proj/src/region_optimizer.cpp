#include "spinpair/region_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

namespace spinpair {

namespace {

constexpr double kActiveTol = 1e-12;

Optimum finish(const FidelitySpec& spec, MeasurementClass c, CovariantSeed seed,
               bool degenerate, bool unique) {
  Optimum out;
  out.seed = seed;
  out.value = average_fidelity(seed, spec);
  out.measurement_class = c;
  out.active_constraints = active_constraints(seed, c, kActiveTol);
  out.degenerate_objective = degenerate;
  out.unique_maximizer = unique;
  return out;
}

// Largest abscissa whose square stays inside the float-evaluated parabola
// bound 1 + cap - a^2 >= 0, so corner seeds pass the exact admissibility test.
double edge_abscissa(double cap) {
  double a = std::sqrt(1.0 + cap);
  while (1.0 + cap - a * a < 0.0) a = std::nextafter(a, 0.0);
  return a;
}

// Point of the parabola gamma = alpha^2 - 1 at the given abscissa, with gamma
// nudged up by ulps if rounding pushed it below the float-evaluated boundary.
CovariantSeed parabola_seed(double alpha, double cap) {
  double g = alpha * alpha - 1.0;
  while (1.0 + g - alpha * alpha < 0.0)
    g = std::nextafter(g, std::numeric_limits<double>::infinity());
  if (g > cap) return CovariantSeed{alpha, cap};  // only reachable at the corners
  return CovariantSeed{alpha, g};
}

Optimum optimize_parallel(const FidelitySpec& spec) {
  const CovariantSeed vertices[] = {{1.5, 1.0}, {-1.5, 1.0}, {0.0, -2.0}};
  double values[3];
  for (int i = 0; i < 3; ++i) values[i] = average_fidelity(vertices[i], spec);
  const double best = *std::max_element(values, values + 3);

  int hits[3];
  int count = 0;
  for (int i = 0; i < 3; ++i)
    if (values[i] == best) hits[count++] = i;

  const MeasurementClass c = MeasurementClass::CollectiveParallel;
  if (count == 1) return finish(spec, c, vertices[hits[0]], false, true);
  if (count == 2) {
    const CovariantSeed& p = vertices[hits[0]];
    const CovariantSeed& q = vertices[hits[1]];
    const CovariantSeed midpoint{0.5 * (p.alpha + q.alpha),
                                 0.5 * (p.gamma + q.gamma)};
    return finish(spec, c, midpoint, false, false);
  }
  // Three-way value tie from rounding alone; any vertex attains the maximum.
  return finish(spec, c, vertices[0], false, false);
}

Optimum optimize_capped(const FidelitySpec& spec, MeasurementClass c,
                        double cap) {
  const double a_edge = edge_abscissa(cap);
  if (spec.f2 < 0.0) {
    const double astar = -5.0 * spec.f1 / (3.0 * spec.f2);
    if (astar >= a_edge)
      return finish(spec, c, parabola_seed(a_edge, cap), false, true);
    if (astar <= -a_edge)
      return finish(spec, c, parabola_seed(-a_edge, cap), false, true);
    return finish(spec, c, parabola_seed(astar, cap), false, true);
  }
  if (spec.f1 > 0.0) return finish(spec, c, CovariantSeed{a_edge, cap}, false, true);
  if (spec.f1 < 0.0) return finish(spec, c, CovariantSeed{-a_edge, cap}, false, true);
  // f1 = 0, f2 > 0: the whole gamma cap ties; report its midpoint.
  return finish(spec, c, CovariantSeed{0.0, cap}, false, false);
}

double lattice_coordinate(int k, int grid) {
  return -3.0 + (6.0 * k) / (grid - 1);
}

}  // namespace

Optimum optimize(const FidelitySpec& spec, MeasurementClass c) {
  if (!std::isfinite(spec.f0) || !std::isfinite(spec.f1) || !std::isfinite(spec.f2))
    throw std::invalid_argument("optimize: non-finite fidelity coefficients");
  if (spec.f1 == 0.0 && spec.f2 == 0.0)
    return finish(spec, c, CovariantSeed{0.0, 0.0}, true, false);

  switch (c) {
    case MeasurementClass::CollectiveParallel:
      return optimize_parallel(spec);
    case MeasurementClass::CollectiveAntiparallel:
      return optimize_capped(spec, c, 2.0);
    case MeasurementClass::Locc:
      return optimize_capped(spec, c, 1.0);
  }
  throw std::invalid_argument("unknown measurement class");
}

Optimum brute_force_optimum(const FidelitySpec& spec, MeasurementClass c,
                            int grid) {
  if (grid < 100)
    throw std::invalid_argument("brute_force_optimum: grid must be >= 100");

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    int gi = -1;
    int ai = -1;
  };

  const double f0 = spec.f0, f1 = spec.f1, f2 = spec.f2;
  const auto scan_rows = [&](int g_begin, int g_end) {
    Best best;
    for (int gi = g_begin; gi < g_end; ++gi) {
      const double g = lattice_coordinate(gi, grid);
      bool row_ok = true;
      switch (c) {
        case MeasurementClass::CollectiveParallel:
        case MeasurementClass::Locc:
          row_ok = g <= 1.0;
          break;
        case MeasurementClass::CollectiveAntiparallel:
          row_ok = g <= 2.0;
          break;
      }
      if (!row_ok) continue;
      for (int ai = 0; ai < grid; ++ai) {
        const double a = lattice_coordinate(ai, grid);
        bool ok = true;
        switch (c) {
          case MeasurementClass::CollectiveParallel:
            ok = 1.0 + a + 0.5 * g >= 0.0 && 1.0 - a + 0.5 * g >= 0.0;
            break;
          case MeasurementClass::CollectiveAntiparallel:
          case MeasurementClass::Locc:
            ok = 1.0 + g - a * a >= 0.0;
            break;
        }
        if (!ok) continue;
        const double value = f0 + (a / 3.0) * f1 + (g / 10.0) * f2;
        if (value > best.value) best = Best{value, gi, ai};
      }
    }
    return best;
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, 8));
  std::vector<std::future<Best>> futures;
  const int rows_per_worker = (grid + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * rows_per_worker;
    const int end = std::min(grid, begin + rows_per_worker);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, scan_rows, begin, end));
  }

  Best best;
  for (auto& f : futures) {
    const Best candidate = f.get();
    if (candidate.ai < 0) continue;
    const bool wins =
        candidate.value > best.value ||
        (candidate.value == best.value &&
         (candidate.gi < best.gi || (candidate.gi == best.gi && candidate.ai < best.ai)));
    if (best.ai < 0 || wins) best = candidate;
  }
  if (best.ai < 0)
    throw std::runtime_error("brute_force_optimum: no admissible lattice point");

  const CovariantSeed seed{lattice_coordinate(best.ai, grid),
                           lattice_coordinate(best.gi, grid)};
  Optimum out;
  out.seed = seed;
  out.value = average_fidelity(seed, spec);
  out.measurement_class = c;
  out.active_constraints = active_constraints(seed, c, kActiveTol);
  out.degenerate_objective = spec.f1 == 0.0 && spec.f2 == 0.0;
  out.unique_maximizer = true;
  return out;
}

}  // namespace spinpair
