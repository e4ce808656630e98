// Acceptance gate: one line per criterion, exit code counts failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include <spinpair/covariant_measurement.hpp>
#include <spinpair/fidelity.hpp>
#include <spinpair/monte_carlo.hpp>
#include <spinpair/operator_algebra.hpp>
#include <spinpair/region_optimizer.hpp>

using namespace spinpair;

namespace {

int failures = 0;

void report(int index, const char* label, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index, label,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

constexpr MeasurementClass kClasses[] = {MeasurementClass::CollectiveParallel,
                                         MeasurementClass::CollectiveAntiparallel,
                                         MeasurementClass::Locc};

void criterion_overlap_optima() {
  const FidelitySpec spec = find_named_fidelity("overlap")->spec;
  const double closed[] = {0.75, 0.5 + 0.5 / std::sqrt(3.0),
                           0.5 + 1.0 / (3.0 * std::sqrt(2.0))};
  double dev = 0.0;
  for (int i = 0; i < 3; ++i)
    dev = std::max(dev, std::abs(optimize(spec, kClasses[i]).value - closed[i]));
  report(1, "overlap cost optima 3/4, 1/2+1/(2*sqrt(3)), 1/2+1/(3*sqrt(2))",
         dev <= 1e-12, fmt("max deviation %.3g, tolerance 1e-12", dev));
}

void criterion_plane_optima() {
  const FidelitySpec spec = find_named_fidelity("plane")->spec;
  const double closed[] = {0.8, 11.0 / 15.0, 11.0 / 15.0};
  double dev = 0.0;
  for (int i = 0; i < 3; ++i)
    dev = std::max(dev, std::abs(optimize(spec, kClasses[i]).value - closed[i]));
  report(2, "plane cost optima 4/5 and 11/15", dev <= 1e-12,
         fmt("max deviation %.3g, tolerance 1e-12", dev));
}

void criterion_region_oracle() {
  const auto start = std::chrono::steady_clock::now();
  const int grid = 201;
  long points = 0;
  long mismatches = 0;
  for (int gi = 0; gi < grid; ++gi) {
    for (int ai = 0; ai < grid; ++ai) {
      const CovariantSeed seed{-3.0 + 6.0 * ai / (grid - 1),
                               -3.0 + 6.0 * gi / (grid - 1)};
      const double seed_min = seed_spectrum(seed)[0];
      const double flip_min = flipped_seed_spectrum(seed)[0];
      const double margins[] = {std::abs(seed_min), std::abs(flip_min),
                                std::min(std::abs(seed_min), std::abs(flip_min))};
      for (int k = 0; k < 3; ++k) {
        if (margins[k] <= 1e-9) continue;
        ++points;
        if (numeric_admissibility(seed, kClasses[k], 1e-9) !=
            is_admissible(seed, kClasses[k]))
          ++mismatches;
      }
    }
  }
  const double elapsed = seconds_since(start);
  report(3, "201x201 region grid: inequalities match the eigenvalue oracle",
         mismatches == 0 && elapsed < 5.0,
         fmt("%.0f mismatches over %.0f checks, %.2f s (limit 5 s)",
             static_cast<double>(mismatches), static_cast<double>(points), elapsed));
}

void criterion_lattice_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  std::uniform_real_distribution<double> magnitude(0.05, 1.0);
  std::bernoulli_distribution sign(0.5);
  const int grid = 2001;
  const double spacing = 6.0 / (grid - 1);
  double worst_excess = -1e300;
  bool ordered = true;
  for (int trial = 0; trial < 50; ++trial) {
    const FidelitySpec spec{offset(rng), (sign(rng) ? 1.0 : -1.0) * magnitude(rng),
                            (sign(rng) ? 1.0 : -1.0) * magnitude(rng)};
    const double bound =
        (std::abs(spec.f1) / 3.0 + std::abs(spec.f2) / 10.0) * spacing;
    for (MeasurementClass c : kClasses) {
      const double exact = optimize(spec, c).value;
      const double lattice = brute_force_optimum(spec, c, grid).value;
      if (lattice > exact + 1e-12) ordered = false;
      worst_excess = std::max(worst_excess, (exact - lattice) - bound);
    }
  }
  const double elapsed = seconds_since(start);
  report(4, "closed-form optimum within the lattice Lipschitz bound, 50 random triples",
         ordered && worst_excess <= 0.0 && elapsed < 60.0,
         fmt("worst gap minus bound %.3g, %.1f s (limit 60 s)", worst_excess, elapsed));
}

void criterion_monte_carlo() {
  const auto start = std::chrono::steady_clock::now();
  struct Case {
    const char* fidelity;
    MeasurementClass mclass;
  };
  const Case cases[] = {{"overlap", MeasurementClass::CollectiveParallel},
                        {"overlap", MeasurementClass::CollectiveAntiparallel},
                        {"overlap", MeasurementClass::Locc},
                        {"plane", MeasurementClass::CollectiveParallel},
                        {"plane", MeasurementClass::CollectiveAntiparallel}};
  const std::uint64_t trials = 1000000;
  std::uint64_t rng_seed = 20240801;
  double worst = 0.0;  // deviation in units of 4 se
  for (const Case& c : cases) {
    const NamedFidelity* named = find_named_fidelity(c.fidelity);
    const Optimum best = optimize(named->spec, c.mclass);
    const SimulationReport run =
        estimate_fidelity(best.seed, named->fn, trials, rng_seed++);
    worst = std::max(worst, std::abs(run.mean_fidelity - best.value) /
                                (4.0 * run.standard_error));
  }
  const SimulationReport strategy = estimate_locc_strategy(trials, rng_seed);
  const double closed = 0.5 + 1.0 / (3.0 * std::sqrt(2.0));
  worst = std::max(worst, std::abs(strategy.mean_fidelity - closed) /
                              (4.0 * strategy.standard_error));
  const double elapsed = seconds_since(start);
  report(5, "1e6-trial estimates within 4 se at the five optima and the bisectrix",
         worst <= 1.0 && elapsed < 30.0,
         fmt("worst |dev|/4se %.2f, %.1f s (limit 30 s)", worst, elapsed));
}

void criterion_discretization() {
  std::mt19937_64 rng(515151);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  const auto designs = tetrahedron_design();
  double worst_completeness = 0.0;
  double worst_average = 0.0;
  int tested = 0;
  while (tested < 25) {
    const CovariantSeed seed{coeff(rng), coeff(rng)};
    if (!is_admissible(seed, MeasurementClass::CollectiveParallel)) continue;
    ++tested;
    const DiscretePovm povm = discretize(seed, designs);
    TwoSpinOperator sum = 0.0 * identity_operator();
    for (const PovmElement& element : povm.elements)
      sum = sum + element.weight * element.op;
    worst_completeness =
        std::max(worst_completeness, max_coefficient_distance(sum, identity_operator()));
    for (const char* name : {"overlap", "plane"}) {
      const NamedFidelity* named = find_named_fidelity(name);
      double discrete = 0.0;
      for (const PovmElement& element : povm.elements) {
        discrete += element.weight *
                    sphere_average([&](const BlochVector& m) {
                      return named->fn(element.direction.dot(m)) *
                             outcome_density(seed, element.direction, m);
                    });
      }
      worst_average = std::max(
          worst_average, std::abs(discrete - average_fidelity(seed, named->spec)));
    }
  }
  report(6, "tetrahedron discretization: identity within 1e-12, averages within 1e-10",
         worst_completeness <= 1e-12 && worst_average <= 1e-10,
         fmt("identity gap %.3g, average gap %.3g", worst_completeness, worst_average));
}

void criterion_property_suite() {
  std::mt19937_64 rng(616161);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> wide(-3.0, 3.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> order(0, 12);

  const auto random_operator = [&]() {
    TwoSpinOperator op;
    op.scalar = coeff(rng);
    for (int i = 0; i < 3; ++i) {
      op.first_local(i) = coeff(rng);
      op.second_local(i) = coeff(rng);
      for (int j = 0; j < 3; ++j) op.correlation(i, j) = coeff(rng);
    }
    return op;
  };
  const auto random_direction = [&]() {
    while (true) {
      Eigen::Vector3d v{gauss(rng), gauss(rng), gauss(rng)};
      if (v.norm() > 1e-3) return BlochVector(v / v.norm());
    }
  };

  int involution_bad = 0, duality_bad = 0, relation_bad = 0;
  double spectrum_dev = 0.0, orthogonality_dev = 0.0;
  const GaussLegendreRule rule(64);
  for (int trial = 0; trial < 1000; ++trial) {
    const TwoSpinOperator a = random_operator();
    const TwoSpinOperator b = random_operator();
    if (max_coefficient_distance(partial_spin_flip(partial_spin_flip(a)), a) != 0.0)
      ++involution_bad;
    if (trace_pair(a, partial_spin_flip(b)) != trace_pair(partial_spin_flip(a), b))
      ++duality_bad;

    const BlochVector m = random_direction();
    if (max_coefficient_distance(partial_spin_flip(antiparallel_state(m)),
                                 parallel_state(m)) != 0.0)
      ++relation_bad;

    const CovariantSeed seed{wide(rng), wide(rng)};
    const auto closed = seed_spectrum(seed);
    const auto dense = eigenvalues(seed_operator(seed));
    const auto closed_flip = flipped_seed_spectrum(seed);
    const auto dense_flip = eigenvalues(partial_spin_flip(seed_operator(seed)));
    for (int k = 0; k < 4; ++k) {
      spectrum_dev = std::max(spectrum_dev, std::abs(closed[k] - dense[k]));
      spectrum_dev = std::max(spectrum_dev, std::abs(closed_flip[k] - dense_flip[k]));
    }

    const int i = order(rng), j = order(rng);
    double integral = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      integral +=
          rule.weights[k] * legendre_p(i, rule.nodes[k]) * legendre_p(j, rule.nodes[k]);
    const double expected = i == j ? 2.0 / (2.0 * i + 1.0) : 0.0;
    orthogonality_dev = std::max(orthogonality_dev, std::abs(integral - expected));
  }
  const bool pass = involution_bad == 0 && duality_bad == 0 && relation_bad == 0 &&
                    spectrum_dev <= 1e-10 && orthogonality_dev <= 1e-12;
  std::ostringstream detail;
  detail << involution_bad + duality_bad + relation_bad
         << " exactness misses, spectra dev " << fmt("%.3g", spectrum_dev)
         << ", orthogonality dev " << fmt("%.3g", orthogonality_dev);
  report(7, "flip, duality, state relation, spectra, orthogonality on 1000 instances",
         pass, detail.str());
}

void criterion_truncation() {
  std::mt19937_64 rng(717171);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  double worst = 0.0;
  int tested = 0;
  while (tested < 20) {
    const CovariantSeed seed{coeff(rng), coeff(rng)};
    if (!is_admissible(seed, MeasurementClass::CollectiveParallel)) continue;
    ++tested;
    const double t3 = amp(rng), t4 = amp(rng), t5 = amp(rng), t6 = amp(rng);
    for (const char* name : {"overlap", "plane"}) {
      const NamedFidelity* named = find_named_fidelity(name);
      const auto tailed = [&](double u) {
        return named->fn(u) + t3 * legendre_p(3, u) + t4 * legendre_p(4, u) +
               t5 * legendre_p(5, u) + t6 * legendre_p(6, u);
      };
      const double base = average_fidelity_by_quadrature(seed, named->fn);
      const double shifted = average_fidelity_by_quadrature(seed, tailed);
      worst = std::max(worst, std::abs(shifted - base));
    }
  }
  report(8, "order 3-6 Legendre tails leave the quadrature average unchanged",
         worst <= 1e-10, fmt("max change %.3g, tolerance 1e-10", worst));
}

}  // namespace

int main() {
  criterion_overlap_optima();
  criterion_plane_optima();
  criterion_region_oracle();
  criterion_lattice_oracle();
  criterion_monte_carlo();
  criterion_discretization();
  criterion_property_suite();
  criterion_truncation();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
