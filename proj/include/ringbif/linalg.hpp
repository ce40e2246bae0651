#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ringbif {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

inline constexpr cplx I_unit{0.0, 1.0};

// Standard symplectic matrix, counter-clockwise quarter turn.
inline Mat2 symplectic_J() {
  Mat2 j;
  j << 0.0, -1.0, 1.0, 0.0;
  return j;
}

// e^{J theta}: counter-clockwise rotation.
inline Mat2 rotation(double theta) {
  Mat2 r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Largest entry of |m - m^H|.
inline double hermitian_defect(const CMat& m) { return max_abs(CMat(m - m.adjoint())); }

}  // namespace ringbif
