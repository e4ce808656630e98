#pragma once

#include <Eigen/Dense>

#include <array>

namespace spinpair {

// Unit direction on the Bloch sphere.  Construction renormalizes inputs whose
// norm lies within 1e-9 of 1 and rejects anything further out.
class BlochVector {
 public:
  BlochVector(double x, double y, double z);
  explicit BlochVector(const Eigen::Vector3d& v);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Eigen::Vector3d& vec() const { return v_; }

  double dot(const BlochVector& other) const { return v_.dot(other.v_); }
  BlochVector operator-() const { return BlochVector(-v_); }

  static BlochVector x_axis() { return BlochVector(1.0, 0.0, 0.0); }
  static BlochVector y_axis() { return BlochVector(0.0, 1.0, 0.0); }
  static BlochVector z_axis() { return BlochVector(0.0, 0.0, 1.0); }

 private:
  Eigen::Vector3d v_;
};

// Rotation stored as axis and angle.  su2() is the spin-1/2 representative
// exp(-i angle axis.S); conjugating a spin operator by su2() moves its
// coefficient vectors by so3().
class Rotation {
 public:
  Rotation(const BlochVector& axis, double angle);

  static Rotation identity();
  static Rotation about_z(double angle);
  // Any rotation mapping +z to n; the azimuthal freedom is fixed by taking
  // the axis z x n.  Exact +-z inputs map to the identity / a pi turn about x.
  static Rotation align_z_to(const BlochVector& n);

  const BlochVector& axis() const { return axis_; }
  double angle() const { return angle_; }
  const Eigen::Matrix3d& so3() const { return so3_; }
  Eigen::Matrix2cd su2() const;

 private:
  BlochVector axis_;
  double angle_;
  Eigen::Matrix3d so3_;
};

// Hermitian operator on two spin-1/2 particles, stored as real coefficients of
//
//   scalar * 1x1 + sum_i first_local[i] S_i x 1 + sum_i second_local[i] 1 x S_i
//                + sum_ij correlation(i,j) S_i x S_j
//
// where S_x, S_y, S_z are the single-spin operators with eigenvalues +-1/2.
struct TwoSpinOperator {
  double scalar = 0.0;
  Eigen::Vector3d first_local = Eigen::Vector3d::Zero();
  Eigen::Vector3d second_local = Eigen::Vector3d::Zero();
  Eigen::Matrix3d correlation = Eigen::Matrix3d::Zero();
};

// Rejects non-finite coefficients.
TwoSpinOperator make_operator(double scalar,
                              const Eigen::Vector3d& first_local,
                              const Eigen::Vector3d& second_local,
                              const Eigen::Matrix3d& correlation);
TwoSpinOperator identity_operator();

TwoSpinOperator operator+(const TwoSpinOperator& a, const TwoSpinOperator& b);
TwoSpinOperator operator-(const TwoSpinOperator& a, const TwoSpinOperator& b);
TwoSpinOperator operator*(double c, const TwoSpinOperator& a);

// Largest absolute difference over the 16 coefficients.
double max_coefficient_distance(const TwoSpinOperator& a,
                                const TwoSpinOperator& b);

// Negates the second-spin local vector and the correlation block; the scalar
// and first-spin parts are untouched.  An involution.
TwoSpinOperator partial_spin_flip(const TwoSpinOperator& a);

// Projectors onto both spins along m, and onto spin 1 along m with spin 2
// along -m.  parallel_state(m) equals the partial spin flip of
// antiparallel_state(m).
TwoSpinOperator parallel_state(const BlochVector& m);
TwoSpinOperator antiparallel_state(const BlochVector& m);

TwoSpinOperator rotate_operator(const TwoSpinOperator& a, const Rotation& r);

// Tr(a b) in coefficient form: 4 w w' + x.x' + y.y' + z:z'/4.
double trace_pair(const TwoSpinOperator& a, const TwoSpinOperator& b);

// S_x, S_y, S_z for axis = 0, 1, 2.
Eigen::Matrix2cd spin_half(int axis);

Eigen::Matrix4cd to_dense(const TwoSpinOperator& a);
// Inverse of to_dense on the Hermitian span; exact up to rounding.
TwoSpinOperator from_dense(const Eigen::Matrix4cd& m);

// Eigenvalues of the dense Hermitian form, ascending.
std::array<double, 4> eigenvalues(const TwoSpinOperator& a);

// Transpose of the second tensor factor in the product basis.
Eigen::Matrix4cd partial_transpose_second(const Eigen::Matrix4cd& m);
// Fixed single-spin unitary (pi rotation about y) conjugating the partial
// transpose into the partial spin flip.
Eigen::Matrix2cd spin_flip_unitary();

}  // namespace spinpair
