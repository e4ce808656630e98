#pragma once

#include "spinpair/operator_algebra.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinpair {

// Parameters of the covariant measurement family.  The seed attached to the
// +z outcome is
//   1x1 + alpha (S_z x 1 + 1 x S_z) + gamma (2 S_z x S_z - S_x x S_x - S_y x S_y)
// and the element for outcome n is the seed rotated from +z to n.
struct CovariantSeed {
  double alpha = 0.0;
  double gamma = 0.0;
};

enum class MeasurementClass { CollectiveParallel, CollectiveAntiparallel, Locc };

std::string_view to_string(MeasurementClass c);
std::optional<MeasurementClass> measurement_class_from_string(std::string_view s);

TwoSpinOperator seed_operator(const CovariantSeed& seed);
TwoSpinOperator oriented_element(const CovariantSeed& seed, const BlochVector& n);

// Density of outcome n on the pair polarized along m, with respect to the
// normalized uniform sphere measure:  1 + alpha (n.m) + (gamma/2) P2(n.m).
double outcome_density(const CovariantSeed& seed, const BlochVector& n,
                       const BlochVector& m);

// Closed-form spectra, ascending.  The seed operator is block diagonal in the
// product basis; its flip picks up a 2x2 block mixing the aligned states.
std::array<double, 4> seed_spectrum(const CovariantSeed& seed);
std::array<double, 4> flipped_seed_spectrum(const CovariantSeed& seed);

// Exact inequality tests on (alpha, gamma); regions are closed.
//   CollectiveParallel      gamma <= 1,  1 + alpha + gamma/2 >= 0,
//                                        1 - alpha + gamma/2 >= 0
//   CollectiveAntiparallel  gamma <= 2,  1 + gamma - alpha^2 >= 0
//   Locc                    gamma <= 1,  1 + gamma - alpha^2 >= 0
// The Locc conditions are necessary for a local realization; the region is
// the intersection of the other two.
bool is_admissible(const CovariantSeed& seed, MeasurementClass c);

// Same decision through the dense eigensolver: smallest eigenvalue of the
// relevant operator(s) >= -tol.  Requires tol > 0.
bool numeric_admissibility(const CovariantSeed& seed, MeasurementClass c,
                           double tol);

// Names of the class constraints whose residual vanishes within tol at seed.
std::vector<std::string> active_constraints(const CovariantSeed& seed,
                                            MeasurementClass c,
                                            double tol = 1e-12);

struct PovmElement {
  BlochVector direction;
  double weight = 0.0;
  TwoSpinOperator op;
};

struct DiscretePovm {
  std::vector<PovmElement> elements;
};

// Restriction of the covariant family to a spherical 2-design: element k is
// the oriented operator for direction k with weight 1/K.  The direction set
// must have vanishing first moment and second moment 1/3 within 1e-10, else
// the call is rejected with a moment-deficiency report.
DiscretePovm discretize(const CovariantSeed& seed,
                        const std::vector<BlochVector>& directions);

// Built-in exact 2-designs.
std::vector<BlochVector> tetrahedron_design();
std::vector<BlochVector> octahedron_design();
std::vector<BlochVector> icosahedron_design();

// One unit vector per line, three whitespace-separated decimals; blank lines
// and lines starting with '#' are skipped.
std::vector<BlochVector> load_directions(const std::filesystem::path& path);

}  // namespace spinpair
