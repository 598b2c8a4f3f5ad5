#pragma once

// Closed-form 2x2 linear algebra for single-qubit propagators.
//
// Conventions (hbar = 1):
//   su2_exp(a, x) = exp(-i (x/2) a.sigma)     with a normalised
//   U = e^{i global_phase} su2_exp(axis, angle)   for axis_angle_decompose
//
// axis_angle_decompose returns the canonical branch angle in [0, pi] and
// global_phase in (-pi, pi]. At angle == pi the axis sign is fixed so that the
// first non-negligible component in (z, x, y) order is positive.

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace geogate {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
// sigma_j for j in {0, 1, 2}
Matrix2 by_index(int j);
}  // namespace pauli

// a.sigma for a real 3-vector (not normalised).
Matrix2 dot_sigma(const Vec3& a);

Matrix2 su2_exp(const Vec3& axis, double angle);

bool is_finite(const Matrix2& m);
bool is_unitary(const Matrix2& m, double tol);

// |Tr(target^dagger actual)| / 2. Throws PreconditionViolation if either
// argument is not unitary to 1e-8.
double trace_fidelity(const Matrix2& target, const Matrix2& actual);

bool equal_up_to_phase(const Matrix2& a, const Matrix2& b, double tol = 1e-9);

struct AxisAngle {
    Vec3 axis{0.0, 0.0, 1.0};
    double angle = 0.0;
    double global_phase = 0.0;
};

AxisAngle axis_angle_decompose(const Matrix2& u);

// Adjoint (SO(3)) image: U (v.sigma) U^dagger = (R v).sigma.
Matrix3 adjoint_rotation(const Matrix2& u);

// Bloch vector of a normalised pure state.
Vec3 bloch_vector(const Vector2& psi);

// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace geogate
