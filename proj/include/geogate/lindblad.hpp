#pragma once

// Master equation for a driven qubit with relaxation and pure dephasing:
//   drho/dt = -i[H, rho] + g1 D[s-] rho + (g_phi / 2) D[sz] rho
//   D[L] rho = (2 L rho L^dag - L^dag L rho - rho L^dag L) / 2
// Rates and time are in units of Omega. s- = |0><1| lowers |1> to |0>.

#include <vector>

#include "geogate/evolution.hpp"
#include "geogate/pulses.hpp"
#include "geogate/su2.hpp"

namespace geogate {

struct LindbladParams {
    double gamma1 = 0.0;
    double gamma_phi = 0.0;
};

Matrix2 lindblad_rhs(const Matrix2& rho, const Matrix2& hamiltonian, const LindbladParams& params);

struct MasterSample {
    double time = 0.0;
    Matrix2 rho;
    double fidelity = 1.0;  // <psi_ideal(t)| rho(t) |psi_ideal(t)>
};

struct MasterOptions {
    double dt = kPi / 2000.0;  // upper bound; each segment gets a whole number of steps
    int record_every = 1;
    Vector2 initial{1.0, 0.0};
};

// Classical RK4 with the piecewise-constant noisy Hamiltonian. The reference
// state is the noise-free, decoherence-free evolution of the initial state.
// Throws InvalidArgument when dt exceeds pi/100 and AccuracyFailure when trace,
// hermiticity or positivity drift past tolerance.
std::vector<MasterSample> evolve_master(const PulseSequence& seq, const StaticError& err,
                                        const LindbladParams& params,
                                        const MasterOptions& options = {});

// Smallest eigenvalue of a Hermitian 2x2 matrix.
double min_eigenvalue(const Matrix2& rho);

}  // namespace geogate
