#pragma once

#include "spinpair/covariant_measurement.hpp"
#include "spinpair/fidelity.hpp"

#include <string>
#include <vector>

namespace spinpair {

// Certificate for a maximizer of average_fidelity over one admissibility
// region.  Every name in active_constraints has residual 0 within 1e-12 at
// seed, and seed passes is_admissible for the class.
struct Optimum {
  CovariantSeed seed;
  double value = 0.0;
  MeasurementClass measurement_class = MeasurementClass::CollectiveParallel;
  std::vector<std::string> active_constraints;
  // f1 = f2 = 0: the objective is flat and (0, 0) is returned.
  bool degenerate_objective = false;
  // False when an entire edge attains the optimum; the edge midpoint is
  // returned in that case.
  bool unique_maximizer = true;
};

// Exact maximization of f0 + (alpha/3) f1 + (gamma/10) f2 over the region:
// triangle vertices for the parallel class, gamma-cap corners or the parabola
// tangency alpha = -5 f1 / (3 f2) for the other two.
Optimum optimize(const FidelitySpec& spec, MeasurementClass c);

// Scan of the admissible lattice points of a grid x grid lattice over
// [-3, 3]^2 (grid >= 100).  The scan may be partitioned across workers;
// the winner is independent of the partitioning.
Optimum brute_force_optimum(const FidelitySpec& spec, MeasurementClass c,
                            int grid);

}  // namespace spinpair
