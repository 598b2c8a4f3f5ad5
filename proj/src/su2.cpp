#include "geogate/su2.hpp"

#include <cmath>

#include "geogate/errors.hpp"

namespace geogate {

namespace pauli {

Matrix2 identity() { return Matrix2::Identity(); }

Matrix2 x() {
    Matrix2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix2 y() {
    Matrix2 m;
    m << 0.0, -kI, kI, 0.0;
    return m;
}

Matrix2 z() {
    Matrix2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Matrix2 by_index(int j) {
    switch (j) {
        case 0: return x();
        case 1: return y();
        case 2: return z();
        default: throw InvalidArgument("pauli index must be 0, 1 or 2");
    }
}

}  // namespace pauli

Matrix2 dot_sigma(const Vec3& a) {
    Matrix2 m;
    m << a.z(), Complex(a.x(), -a.y()), Complex(a.x(), a.y()), -a.z();
    return m;
}

Matrix2 su2_exp(const Vec3& axis, double angle) {
    if (!axis.allFinite() || !std::isfinite(angle)) {
        throw InvalidArgument("su2_exp: non-finite input");
    }
    const double norm = axis.norm();
    if (norm == 0.0) {
        if (angle != 0.0) {
            throw InvalidArgument("su2_exp: zero axis with nonzero angle");
        }
        return Matrix2::Identity();
    }
    const Vec3 a = axis / norm;
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    Matrix2 m;
    m << Complex(c, -s * a.z()), Complex(-s * a.y(), -s * a.x()),
        Complex(s * a.y(), -s * a.x()), Complex(c, s * a.z());
    return m;
}

bool is_finite(const Matrix2& m) {
    for (int i = 0; i < 4; ++i) {
        const Complex v = m(i % 2, i / 2);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

bool is_unitary(const Matrix2& m, double tol) {
    if (!is_finite(m)) return false;
    return (m.adjoint() * m - Matrix2::Identity()).cwiseAbs().maxCoeff() <= tol;
}

double trace_fidelity(const Matrix2& target, const Matrix2& actual) {
    constexpr double tol = 1e-8;
    if (!is_unitary(target, tol) || !is_unitary(actual, tol)) {
        throw PreconditionViolation("trace_fidelity: input not unitary to 1e-8");
    }
    const double f = std::abs((target.adjoint() * actual).trace()) / 2.0;
    return std::min(f, 1.0);
}

bool equal_up_to_phase(const Matrix2& a, const Matrix2& b, double tol) {
    return 1.0 - std::abs((a.adjoint() * b).trace()) / 2.0 < tol;
}

double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

namespace {

// Sign fix for half-turns: first component in (z, x, y) order above 1e-12
// must be positive.
Vec3 canonical_half_turn_axis(const Vec3& n) {
    for (int idx : {2, 0, 1}) {
        if (std::abs(n[idx]) > 1e-12) return n[idx] > 0.0 ? n : Vec3(-n);
    }
    return n;
}

}  // namespace

AxisAngle axis_angle_decompose(const Matrix2& u) {
    if (!is_unitary(u, 1e-10)) {
        throw PreconditionViolation("axis_angle_decompose: input not unitary to 1e-10");
    }
    double phase = std::arg(u.determinant()) / 2.0;
    const Matrix2 v = u * std::exp(-kI * phase);

    const double c = 0.5 * (v(0, 0) + v(1, 1)).real();
    const Vec3 sn(-0.5 * (v(0, 1) + v(1, 0)).imag(),
                  0.5 * (v(1, 0) - v(0, 1)).real(),
                  -0.5 * (v(0, 0) - v(1, 1)).imag());
    const double s = sn.norm();

    AxisAngle out;
    if (s < 1e-14) {
        // +-identity
        if (c < 0.0) phase += kPi;
        out.axis = Vec3(0.0, 0.0, 1.0);
        out.angle = 0.0;
        out.global_phase = wrap_angle(phase);
        return out;
    }
    Vec3 n = sn / s;
    double angle = 2.0 * std::atan2(s, c);  // [0, 2pi]
    if (angle > kPi) {
        angle = 2.0 * kPi - angle;
        n = -n;
        phase += kPi;
    }
    if (std::abs(angle - kPi) < 1e-12) {
        n = canonical_half_turn_axis(n);
    }
    out.axis = n;
    out.angle = angle;
    out.global_phase = wrap_angle(phase);
    return out;
}

Matrix3 adjoint_rotation(const Matrix2& u) {
    Matrix3 r;
    const Matrix2 ud = u.adjoint();
    for (int k = 0; k < 3; ++k) {
        const Matrix2 rotated = u * pauli::by_index(k) * ud;
        for (int j = 0; j < 3; ++j) {
            r(j, k) = 0.5 * (pauli::by_index(j) * rotated).trace().real();
        }
    }
    return r;
}

Vec3 bloch_vector(const Vector2& psi) {
    const Complex a = psi(0);
    const Complex b = psi(1);
    const Complex ab = std::conj(a) * b;
    return Vec3(2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b));
}

}  // namespace geogate
