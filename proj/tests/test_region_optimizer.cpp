#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <spinpair/region_optimizer.hpp>

using namespace spinpair;

namespace {

const FidelitySpec kOverlap{0.5, 0.5, 0.0};
const FidelitySpec kPlane{2.0 / 3.0, 0.0, -2.0 / 3.0};

constexpr MeasurementClass kClasses[] = {MeasurementClass::CollectiveParallel,
                                         MeasurementClass::CollectiveAntiparallel,
                                         MeasurementClass::Locc};

bool lists(const std::vector<std::string>& names, const char* wanted) {
  return std::find(names.begin(), names.end(), wanted) != names.end();
}

// Magnitudes bounded away from zero keep the lattice-gap bound meaningful.
FidelitySpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> magnitude(0.05, 1.0);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  std::bernoulli_distribution sign(0.5);
  return FidelitySpec{offset(rng), (sign(rng) ? 1.0 : -1.0) * magnitude(rng),
                      (sign(rng) ? 1.0 : -1.0) * magnitude(rng)};
}

}  // namespace

TEST_CASE("overlap fidelity optima across the three classes") {
  Optimum parallel = optimize(kOverlap, MeasurementClass::CollectiveParallel);
  CHECK(parallel.seed.alpha == 1.5);
  CHECK(parallel.seed.gamma == 1.0);
  CHECK(std::abs(parallel.value - 0.75) <= 1e-15);
  CHECK(parallel.unique_maximizer);
  CHECK(!parallel.degenerate_objective);
  CHECK(is_admissible(parallel.seed, MeasurementClass::CollectiveParallel));
  CHECK(lists(parallel.active_constraints, "gamma <= 1"));
  CHECK(lists(parallel.active_constraints, "1 - alpha + gamma/2 >= 0"));

  Optimum antiparallel = optimize(kOverlap, MeasurementClass::CollectiveAntiparallel);
  CHECK(std::abs(antiparallel.seed.alpha - std::sqrt(3.0)) <= 1e-12);
  CHECK(antiparallel.seed.gamma == 2.0);
  CHECK(std::abs(antiparallel.value - 0.7886751345948129) <= 1e-12);
  CHECK(antiparallel.unique_maximizer);
  CHECK(is_admissible(antiparallel.seed, MeasurementClass::CollectiveAntiparallel));
  CHECK(lists(antiparallel.active_constraints, "gamma <= 2"));
  CHECK(lists(antiparallel.active_constraints, "1 + gamma - alpha^2 >= 0"));

  Optimum locc = optimize(kOverlap, MeasurementClass::Locc);
  CHECK(std::abs(locc.seed.alpha - std::sqrt(2.0)) <= 1e-12);
  CHECK(locc.seed.gamma == 1.0);
  CHECK(std::abs(locc.value - 0.7357022603955158) <= 1e-12);
  CHECK(locc.unique_maximizer);
  CHECK(is_admissible(locc.seed, MeasurementClass::Locc));
  CHECK(lists(locc.active_constraints, "gamma <= 1"));
  CHECK(lists(locc.active_constraints, "1 + gamma - alpha^2 >= 0"));
}

TEST_CASE("plane fidelity optima across the three classes") {
  Optimum parallel = optimize(kPlane, MeasurementClass::CollectiveParallel);
  CHECK(parallel.seed.alpha == 0.0);
  CHECK(parallel.seed.gamma == -2.0);
  CHECK(std::abs(parallel.value - 0.8) <= 1e-15);
  CHECK(parallel.unique_maximizer);
  CHECK(lists(parallel.active_constraints, "1 + alpha + gamma/2 >= 0"));
  CHECK(lists(parallel.active_constraints, "1 - alpha + gamma/2 >= 0"));
  CHECK(!lists(parallel.active_constraints, "gamma <= 1"));

  Optimum antiparallel = optimize(kPlane, MeasurementClass::CollectiveAntiparallel);
  CHECK(antiparallel.seed.alpha == 0.0);
  CHECK(antiparallel.seed.gamma == -1.0);
  CHECK(std::abs(antiparallel.value - 11.0 / 15.0) <= 1e-15);
  CHECK(antiparallel.unique_maximizer);
  CHECK(antiparallel.active_constraints ==
        std::vector<std::string>{"1 + gamma - alpha^2 >= 0"});

  Optimum locc = optimize(kPlane, MeasurementClass::Locc);
  CHECK(locc.seed.alpha == 0.0);
  CHECK(locc.seed.gamma == -1.0);
  CHECK(std::abs(locc.value - 11.0 / 15.0) <= 1e-15);
  CHECK(locc.active_constraints ==
        std::vector<std::string>{"1 + gamma - alpha^2 >= 0"});
}

TEST_CASE("ties are reported at segment midpoints with the uniqueness flag down") {
  FidelitySpec cap_tie{0.0, 0.0, 1.0};
  Optimum parallel = optimize(cap_tie, MeasurementClass::CollectiveParallel);
  CHECK(parallel.seed.alpha == 0.0);
  CHECK(parallel.seed.gamma == 1.0);
  CHECK(!parallel.unique_maximizer);
  CHECK(std::abs(parallel.value - 0.1) <= 1e-15);
  CHECK(parallel.active_constraints == std::vector<std::string>{"gamma <= 1"});

  Optimum antiparallel = optimize(cap_tie, MeasurementClass::CollectiveAntiparallel);
  CHECK(antiparallel.seed.alpha == 0.0);
  CHECK(antiparallel.seed.gamma == 2.0);
  CHECK(!antiparallel.unique_maximizer);
  CHECK(std::abs(antiparallel.value - 0.2) <= 1e-15);

  Optimum locc = optimize(cap_tie, MeasurementClass::Locc);
  CHECK(locc.seed.alpha == 0.0);
  CHECK(locc.seed.gamma == 1.0);
  CHECK(!locc.unique_maximizer);

  // 0.5*6 - 1 and 0.2*10 both evaluate exactly, so two vertices tie bitwise.
  FidelitySpec edge_tie{0.0, 6.0, -10.0};
  Optimum slanted = optimize(edge_tie, MeasurementClass::CollectiveParallel);
  CHECK(slanted.seed.alpha == 0.75);
  CHECK(slanted.seed.gamma == -0.5);
  CHECK(!slanted.unique_maximizer);
  CHECK(std::abs(slanted.value - 2.0) <= 1e-15);

  FidelitySpec mirrored{0.0, -6.0, -10.0};
  Optimum other = optimize(mirrored, MeasurementClass::CollectiveParallel);
  CHECK(other.seed.alpha == -0.75);
  CHECK(other.seed.gamma == -0.5);
  CHECK(!other.unique_maximizer);
}

TEST_CASE("a flat objective is flagged and pinned at the origin") {
  FidelitySpec flat{0.7, 0.0, 0.0};
  for (MeasurementClass c : kClasses) {
    Optimum best = optimize(flat, c);
    CHECK(best.seed.alpha == 0.0);
    CHECK(best.seed.gamma == 0.0);
    CHECK(best.value == 0.7);
    CHECK(best.degenerate_objective);
    CHECK(!best.unique_maximizer);
  }
}

TEST_CASE("interior tangency picks the stationary point of the parabola arc") {
  // f2 < 0 sends the optimum to gamma = alpha^2 - 1 at alpha = -5 f1 / (3 f2).
  FidelitySpec spec{0.0, 0.3, -1.0};
  double astar = -5.0 * 0.3 / (3.0 * -1.0);
  for (MeasurementClass c :
       {MeasurementClass::CollectiveAntiparallel, MeasurementClass::Locc}) {
    Optimum best = optimize(spec, c);
    CHECK(best.seed.alpha == doctest::Approx(astar).epsilon(1e-15));
    CHECK(std::abs(best.seed.gamma - (astar * astar - 1.0)) <= 1e-12);
    CHECK(is_admissible(best.seed, c));
    CHECK(lists(best.active_constraints, "1 + gamma - alpha^2 >= 0"));
    CHECK(best.unique_maximizer);
  }
}

TEST_CASE("optima are invariant under mirroring the odd coefficient") {
  std::mt19937_64 rng(10001);
  for (int trial = 0; trial < 200; ++trial) {
    FidelitySpec spec = random_spec(rng);
    FidelitySpec mirrored{spec.f0, -spec.f1, spec.f2};
    for (MeasurementClass c : kClasses) {
      Optimum a = optimize(spec, c);
      Optimum b = optimize(mirrored, c);
      CHECK(a.seed.alpha == -b.seed.alpha);
      CHECK(a.seed.gamma == b.seed.gamma);
      CHECK(a.value == b.value);
    }
  }
}

TEST_CASE("the locc optimum never beats either collective optimum") {
  std::mt19937_64 rng(10002);
  for (int trial = 0; trial < 200; ++trial) {
    FidelitySpec spec = random_spec(rng);
    double parallel = optimize(spec, MeasurementClass::CollectiveParallel).value;
    double antiparallel = optimize(spec, MeasurementClass::CollectiveAntiparallel).value;
    double locc = optimize(spec, MeasurementClass::Locc).value;
    CHECK(locc <= std::min(parallel, antiparallel) + 1e-12);
  }
}

TEST_CASE("random admissible seeds never beat the reported optimum") {
  std::mt19937_64 rng(10003);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    FidelitySpec spec = random_spec(rng);
    for (MeasurementClass c : kClasses) {
      Optimum best = optimize(spec, c);
      int probed = 0;
      while (probed < 500) {
        CovariantSeed seed{coeff(rng), coeff(rng)};
        if (!is_admissible(seed, c)) continue;
        ++probed;
        CHECK(average_fidelity(seed, spec) <= best.value + 1e-12);
      }
    }
  }
}

TEST_CASE("the optimizer certificate is admissible with tight constraints") {
  std::mt19937_64 rng(10004);
  for (int trial = 0; trial < 200; ++trial) {
    FidelitySpec spec = random_spec(rng);
    for (MeasurementClass c : kClasses) {
      Optimum best = optimize(spec, c);
      CHECK(is_admissible(best.seed, c));
      CHECK(best.measurement_class == c);
      auto tight = active_constraints(best.seed, c);
      CHECK(tight == best.active_constraints);
    }
  }
}

TEST_CASE("the lattice scan stays within the spacing bound of the closed form") {
  std::mt19937_64 rng(10005);
  const int grid = 201;
  const double spacing = 6.0 / (grid - 1);
  for (int trial = 0; trial < 25; ++trial) {
    FidelitySpec spec = random_spec(rng);
    for (MeasurementClass c : kClasses) {
      Optimum exact = optimize(spec, c);
      Optimum scanned = brute_force_optimum(spec, c, grid);
      double bound = (std::abs(spec.f1) / 3.0 + std::abs(spec.f2) / 10.0) * spacing;
      CHECK(scanned.value <= exact.value + 1e-12);
      CHECK(exact.value - scanned.value <= bound);
      CHECK(is_admissible(scanned.seed, c));
    }
  }
}

TEST_CASE("the lattice scan is deterministic") {
  FidelitySpec spec{0.1, 0.37, -0.82};
  for (MeasurementClass c : kClasses) {
    Optimum first = brute_force_optimum(spec, c, 301);
    Optimum second = brute_force_optimum(spec, c, 301);
    CHECK(first.seed.alpha == second.seed.alpha);
    CHECK(first.seed.gamma == second.seed.gamma);
    CHECK(first.value == second.value);
  }
}

TEST_CASE("bad optimizer inputs are rejected") {
  CHECK_THROWS_AS(brute_force_optimum(kOverlap, MeasurementClass::Locc, 99),
                  std::invalid_argument);
  FidelitySpec bad{std::nan(""), 0.0, 0.0};
  CHECK_THROWS_AS(optimize(bad, MeasurementClass::Locc), std::invalid_argument);
}
