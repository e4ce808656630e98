#include "spinpair/covariant_measurement.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinpair {

namespace {

struct Constraint {
  const char* name;
  double (*residual)(const CovariantSeed&);
};

constexpr Constraint kGammaLe1{"gamma <= 1",
                               [](const CovariantSeed& s) { return 1.0 - s.gamma; }};
constexpr Constraint kGammaLe2{"gamma <= 2",
                               [](const CovariantSeed& s) { return 2.0 - s.gamma; }};
constexpr Constraint kPlusAlpha{
    "1 + alpha + gamma/2 >= 0",
    [](const CovariantSeed& s) { return 1.0 + s.alpha + 0.5 * s.gamma; }};
constexpr Constraint kMinusAlpha{
    "1 - alpha + gamma/2 >= 0",
    [](const CovariantSeed& s) { return 1.0 - s.alpha + 0.5 * s.gamma; }};
constexpr Constraint kParabola{
    "1 + gamma - alpha^2 >= 0",
    [](const CovariantSeed& s) { return 1.0 + s.gamma - s.alpha * s.alpha; }};

const Constraint* class_constraints(MeasurementClass c, int* count) {
  static const Constraint parallel[] = {kGammaLe1, kPlusAlpha, kMinusAlpha};
  static const Constraint antiparallel[] = {kGammaLe2, kParabola};
  static const Constraint locc[] = {kGammaLe1, kParabola};
  switch (c) {
    case MeasurementClass::CollectiveParallel:
      *count = 3;
      return parallel;
    case MeasurementClass::CollectiveAntiparallel:
      *count = 2;
      return antiparallel;
    case MeasurementClass::Locc:
      *count = 2;
      return locc;
  }
  throw std::invalid_argument("unknown measurement class");
}

void check_seed_finite(const CovariantSeed& seed) {
  if (!std::isfinite(seed.alpha) || !std::isfinite(seed.gamma))
    throw std::invalid_argument("seed: non-finite parameter");
}

}  // namespace

std::string_view to_string(MeasurementClass c) {
  switch (c) {
    case MeasurementClass::CollectiveParallel:
      return "parallel";
    case MeasurementClass::CollectiveAntiparallel:
      return "antiparallel";
    case MeasurementClass::Locc:
      return "locc";
  }
  return "unknown";
}

std::optional<MeasurementClass> measurement_class_from_string(std::string_view s) {
  if (s == "parallel") return MeasurementClass::CollectiveParallel;
  if (s == "antiparallel") return MeasurementClass::CollectiveAntiparallel;
  if (s == "locc") return MeasurementClass::Locc;
  return std::nullopt;
}

TwoSpinOperator seed_operator(const CovariantSeed& seed) {
  check_seed_finite(seed);
  const Eigen::Vector3d local(0.0, 0.0, seed.alpha);
  Eigen::Matrix3d corr = Eigen::Matrix3d::Zero();
  corr(0, 0) = -seed.gamma;
  corr(1, 1) = -seed.gamma;
  corr(2, 2) = 2.0 * seed.gamma;
  return TwoSpinOperator{1.0, local, local, corr};
}

TwoSpinOperator oriented_element(const CovariantSeed& seed, const BlochVector& n) {
  return rotate_operator(seed_operator(seed), Rotation::align_z_to(n));
}

double outcome_density(const CovariantSeed& seed, const BlochVector& n,
                       const BlochVector& m) {
  check_seed_finite(seed);
  const double u = n.dot(m);
  return 1.0 + seed.alpha * u + 0.5 * seed.gamma * (0.5 * (3.0 * u * u - 1.0));
}

std::array<double, 4> seed_spectrum(const CovariantSeed& seed) {
  check_seed_finite(seed);
  std::array<double, 4> out{1.0 + seed.alpha + 0.5 * seed.gamma,
                            1.0 - seed.alpha + 0.5 * seed.gamma,
                            1.0 - seed.gamma, 1.0};
  std::sort(out.begin(), out.end());
  return out;
}

std::array<double, 4> flipped_seed_spectrum(const CovariantSeed& seed) {
  check_seed_finite(seed);
  const double r = std::hypot(seed.alpha, 0.5 * seed.gamma);
  std::array<double, 4> out{1.0 - 0.5 * seed.gamma, 1.0 - 0.5 * seed.gamma,
                            1.0 + 0.5 * seed.gamma - r,
                            1.0 + 0.5 * seed.gamma + r};
  std::sort(out.begin(), out.end());
  return out;
}

bool is_admissible(const CovariantSeed& seed, MeasurementClass c) {
  check_seed_finite(seed);
  int count = 0;
  const Constraint* constraints = class_constraints(c, &count);
  for (int i = 0; i < count; ++i)
    if (constraints[i].residual(seed) < 0.0) return false;
  return true;
}

bool numeric_admissibility(const CovariantSeed& seed, MeasurementClass c,
                           double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("numeric_admissibility: tol must be > 0");
  const TwoSpinOperator op = seed_operator(seed);
  const bool seed_psd = eigenvalues(op)[0] >= -tol;
  const bool flip_psd = eigenvalues(partial_spin_flip(op))[0] >= -tol;
  switch (c) {
    case MeasurementClass::CollectiveParallel:
      return seed_psd;
    case MeasurementClass::CollectiveAntiparallel:
      return flip_psd;
    case MeasurementClass::Locc:
      return seed_psd && flip_psd;
  }
  throw std::invalid_argument("unknown measurement class");
}

std::vector<std::string> active_constraints(const CovariantSeed& seed,
                                            MeasurementClass c, double tol) {
  check_seed_finite(seed);
  std::vector<std::string> out;
  int count = 0;
  const Constraint* constraints = class_constraints(c, &count);
  for (int i = 0; i < count; ++i)
    if (std::abs(constraints[i].residual(seed)) <= tol)
      out.emplace_back(constraints[i].name);
  return out;
}

DiscretePovm discretize(const CovariantSeed& seed,
                        const std::vector<BlochVector>& directions) {
  check_seed_finite(seed);
  if (directions.empty())
    throw std::invalid_argument("discretize: empty direction set");

  Eigen::Vector3d first = Eigen::Vector3d::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  for (const BlochVector& n : directions) {
    first += n.vec();
    second += n.vec() * n.vec().transpose();
  }
  const double k = static_cast<double>(directions.size());
  first /= k;
  second /= k;

  const double first_dev = first.cwiseAbs().maxCoeff();
  const double second_dev =
      (second - Eigen::Matrix3d::Identity() / 3.0).cwiseAbs().maxCoeff();
  if (first_dev > 1e-10 || second_dev > 1e-10) {
    std::ostringstream msg;
    msg << "discretize: direction set is not a spherical 2-design "
        << "(first moment deviation " << first_dev
        << ", second moment deviation " << second_dev << ", threshold 1e-10)";
    throw std::invalid_argument(msg.str());
  }

  DiscretePovm povm;
  povm.elements.reserve(directions.size());
  for (const BlochVector& n : directions)
    povm.elements.push_back(PovmElement{n, 1.0 / k, oriented_element(seed, n)});
  return povm;
}

std::vector<BlochVector> tetrahedron_design() {
  const double s = 1.0 / std::sqrt(3.0);
  return {BlochVector(s, s, s), BlochVector(s, -s, -s), BlochVector(-s, s, -s),
          BlochVector(-s, -s, s)};
}

std::vector<BlochVector> octahedron_design() {
  return {BlochVector::x_axis(),  BlochVector::y_axis(),  BlochVector::z_axis(),
          -BlochVector::x_axis(), -BlochVector::y_axis(), -BlochVector::z_axis()};
}

std::vector<BlochVector> icosahedron_design() {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double norm = std::sqrt(1.0 + phi * phi);
  const double a = 1.0 / norm;
  const double b = phi / norm;
  std::vector<BlochVector> out;
  for (const double sa : {a, -a})
    for (const double sb : {b, -b}) {
      out.emplace_back(0.0, sa, sb);
      out.emplace_back(sa, sb, 0.0);
      out.emplace_back(sb, 0.0, sa);
    }
  return out;
}

std::vector<BlochVector> load_directions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open direction file: " + path.string());
  std::vector<BlochVector> out;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    double x = 0.0, y = 0.0, z = 0.0;
    if (!(fields >> x >> y >> z)) {
      throw std::invalid_argument("direction file line " +
                                  std::to_string(line_number) +
                                  ": expected three decimals");
    }
    std::string extra;
    if (fields >> extra)
      throw std::invalid_argument("direction file line " +
                                  std::to_string(line_number) +
                                  ": trailing content");
    try {
      out.emplace_back(x, y, z);
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument("direction file line " +
                                  std::to_string(line_number) + ": " +
                                  err.what());
    }
  }
  return out;
}

}  // namespace spinpair
