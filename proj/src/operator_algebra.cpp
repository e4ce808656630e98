#include "spinpair/operator_algebra.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace spinpair {

namespace {

constexpr double kUnitNormBand = 1e-9;

bool all_finite(const TwoSpinOperator& a) {
  return std::isfinite(a.scalar) && a.first_local.allFinite() &&
         a.second_local.allFinite() && a.correlation.allFinite();
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& k) {
  Eigen::Matrix3d m;
  m << 0.0, -k.z(), k.y(), k.z(), 0.0, -k.x(), -k.y(), k.x(), 0.0;
  return m;
}

}  // namespace

BlochVector::BlochVector(double x, double y, double z)
    : BlochVector(Eigen::Vector3d(x, y, z)) {}

BlochVector::BlochVector(const Eigen::Vector3d& v) : v_(v) {
  if (!v_.allFinite())
    throw std::invalid_argument("BlochVector: non-finite component");
  const double norm = v_.norm();
  if (std::abs(norm - 1.0) > kUnitNormBand)
    throw std::invalid_argument("BlochVector: norm differs from 1 by more than 1e-9");
  v_ /= norm;
}

Rotation::Rotation(const BlochVector& axis, double angle)
    : axis_(axis), angle_(angle) {
  if (!std::isfinite(angle))
    throw std::invalid_argument("Rotation: non-finite angle");
  const Eigen::Matrix3d k = cross_matrix(axis_.vec());
  so3_ = Eigen::Matrix3d::Identity() + std::sin(angle_) * k +
         (1.0 - std::cos(angle_)) * (k * k);
}

Rotation Rotation::identity() { return Rotation(BlochVector::z_axis(), 0.0); }

Rotation Rotation::about_z(double angle) {
  return Rotation(BlochVector::z_axis(), angle);
}

Rotation Rotation::align_z_to(const BlochVector& n) {
  const double s = std::hypot(n.x(), n.y());
  if (s == 0.0) {
    if (n.z() > 0.0) return identity();
    return Rotation(BlochVector::x_axis(), M_PI);
  }
  const BlochVector axis(-n.y() / s, n.x() / s, 0.0);
  return Rotation(axis, std::atan2(s, n.z()));
}

Eigen::Matrix2cd Rotation::su2() const {
  const std::complex<double> i(0.0, 1.0);
  const Eigen::Matrix2cd generator = axis_.x() * spin_half(0) +
                                     axis_.y() * spin_half(1) +
                                     axis_.z() * spin_half(2);
  return std::cos(angle_ / 2.0) * Eigen::Matrix2cd::Identity() -
         2.0 * i * std::sin(angle_ / 2.0) * generator;
}

TwoSpinOperator make_operator(double scalar,
                              const Eigen::Vector3d& first_local,
                              const Eigen::Vector3d& second_local,
                              const Eigen::Matrix3d& correlation) {
  TwoSpinOperator a{scalar, first_local, second_local, correlation};
  if (!all_finite(a))
    throw std::invalid_argument("make_operator: non-finite coefficient");
  return a;
}

TwoSpinOperator identity_operator() {
  return TwoSpinOperator{1.0, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(),
                         Eigen::Matrix3d::Zero()};
}

TwoSpinOperator operator+(const TwoSpinOperator& a, const TwoSpinOperator& b) {
  return TwoSpinOperator{a.scalar + b.scalar, a.first_local + b.first_local,
                         a.second_local + b.second_local,
                         a.correlation + b.correlation};
}

TwoSpinOperator operator-(const TwoSpinOperator& a, const TwoSpinOperator& b) {
  return TwoSpinOperator{a.scalar - b.scalar, a.first_local - b.first_local,
                         a.second_local - b.second_local,
                         a.correlation - b.correlation};
}

TwoSpinOperator operator*(double c, const TwoSpinOperator& a) {
  return TwoSpinOperator{c * a.scalar, c * a.first_local, c * a.second_local,
                         c * a.correlation};
}

double max_coefficient_distance(const TwoSpinOperator& a,
                                const TwoSpinOperator& b) {
  double out = std::abs(a.scalar - b.scalar);
  out = std::max(out, (a.first_local - b.first_local).cwiseAbs().maxCoeff());
  out = std::max(out, (a.second_local - b.second_local).cwiseAbs().maxCoeff());
  out = std::max(out, (a.correlation - b.correlation).cwiseAbs().maxCoeff());
  return out;
}

TwoSpinOperator partial_spin_flip(const TwoSpinOperator& a) {
  return TwoSpinOperator{a.scalar, a.first_local, -a.second_local,
                         -a.correlation};
}

TwoSpinOperator parallel_state(const BlochVector& m) {
  const Eigen::Vector3d v = m.vec();
  return TwoSpinOperator{0.25, 0.5 * v, 0.5 * v, v * v.transpose()};
}

TwoSpinOperator antiparallel_state(const BlochVector& m) {
  const Eigen::Vector3d v = m.vec();
  return TwoSpinOperator{0.25, 0.5 * v, -0.5 * v, -(v * v.transpose())};
}

TwoSpinOperator rotate_operator(const TwoSpinOperator& a, const Rotation& r) {
  const Eigen::Matrix3d& o = r.so3();
  return TwoSpinOperator{a.scalar, o * a.first_local, o * a.second_local,
                         o * a.correlation * o.transpose()};
}

double trace_pair(const TwoSpinOperator& a, const TwoSpinOperator& b) {
  return 4.0 * a.scalar * b.scalar + a.first_local.dot(b.first_local) +
         a.second_local.dot(b.second_local) +
         0.25 * a.correlation.cwiseProduct(b.correlation).sum();
}

Eigen::Matrix2cd spin_half(int axis) {
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  switch (axis) {
    case 0:
      s(0, 1) = 0.5;
      s(1, 0) = 0.5;
      break;
    case 1:
      s(0, 1) = -0.5 * i;
      s(1, 0) = 0.5 * i;
      break;
    case 2:
      s(0, 0) = 0.5;
      s(1, 1) = -0.5;
      break;
    default:
      throw std::invalid_argument("spin_half: axis must be 0, 1 or 2");
  }
  return s;
}

Eigen::Matrix4cd to_dense(const TwoSpinOperator& a) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix4cd m = a.scalar * Eigen::Matrix4cd::Identity();
  for (int i = 0; i < 3; ++i) {
    m += a.first_local[i] * kron2(spin_half(i), id);
    m += a.second_local[i] * kron2(id, spin_half(i));
    for (int j = 0; j < 3; ++j)
      m += a.correlation(i, j) * kron2(spin_half(i), spin_half(j));
  }
  return m;
}

TwoSpinOperator from_dense(const Eigen::Matrix4cd& m) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  TwoSpinOperator a;
  a.scalar = 0.25 * m.trace().real();
  for (int i = 0; i < 3; ++i) {
    a.first_local[i] = (m * kron2(spin_half(i), id)).trace().real();
    a.second_local[i] = (m * kron2(id, spin_half(i))).trace().real();
    for (int j = 0; j < 3; ++j)
      a.correlation(i, j) =
          4.0 * (m * kron2(spin_half(i), spin_half(j))).trace().real();
  }
  return a;
}

std::array<double, 4> eigenvalues(const TwoSpinOperator& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(to_dense(a),
                                                         Eigen::EigenvaluesOnly);
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()[i];
  return out;
}

Eigen::Matrix4cd partial_transpose_second(const Eigen::Matrix4cd& m) {
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          out(2 * a + b, 2 * c + d) = m(2 * a + d, 2 * c + b);
  return out;
}

Eigen::Matrix2cd spin_flip_unitary() {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
  u(0, 1) = -1.0;
  u(1, 0) = 1.0;
  return u;
}

}  // namespace spinpair
