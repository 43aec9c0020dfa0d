#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "wavelag/grid.hpp"
#include "wavelag/params.hpp"

namespace wavelag {

/// Dense first-order generator acting on stacked (y, z, u):
///   y-rows: dy/dt = z
///   z-rows: dz/dt = lap y, with the reflecting ghost at x = 0 and the
///           feedback ghost at x = L folded in
///   u-rows: du/dt = -(1/tau) * upwind d/drho, inflow value taken from z(L)
/// The constant state (1, 0, 0) lies in the kernel.
struct GeneratorMatrix {
  Eigen::MatrixXd A;
  int N = 0;
  int M = 0;
  double dx = 0.0;
  double drho = 0.0;

  int dim() const { return 2 * (N + 1) + (M + 1); }
  int iy(int i) const { return i; }
  int iz(int i) const { return (N + 1) + i; }
  int iu(int j) const { return 2 * (N + 1) + j; }

  // boundary-row bookkeeping
  int reflecting_row() const { return iz(0); }
  int feedback_row() const { return iz(N); }
  int inflow_row() const { return iu(0); }
};

GeneratorMatrix assemble_generator(const SystemParams& p, const Grid1D& g);

/// Discrete conserved functional of the generator, as a coefficient vector:
/// trapezoid weights on z, the point value (alpha+beta)*y(L), and the
/// quadrature on u adjoint to the upwind transport (right-endpoint weights,
/// zero weight on the inflow cell). Satisfies l^T A = 0 to rounding.
Eigen::VectorXd conserved_functional(const SystemParams& p, const Grid1D& g);

/// Gram matrix of the weighted energy inner product in the same pairing:
/// cell-difference stiffness on y, trapezoid mass on z, right-endpoint mass
/// on u, plus the rank-one coupling varpi * l l^T. Positive semidefinite;
/// the summation-by-parts identities against the generator are exact, which
/// is what the dissipativity tests rely on.
Eigen::MatrixXd gram_matrix(const SystemParams& p, const Grid1D& g);

struct DeflatedGenerator {
  Eigen::MatrixXd A;      // (d-1) x (d-1) compression
  Eigen::MatrixXd basis;  // d x (d-1), orthonormal, spans ker l
  double deflation_residual = 0.0;
};

/// Compression of the generator to the kernel of the conserved functional
/// (codimension 1; removes the neutral constant mode). The residual reports
/// ||A^T l|| / ||l||, i.e. how far l is from being exactly conserved.
DeflatedGenerator deflate(const GeneratorMatrix& gen, const SystemParams& p,
                          const Grid1D& g);

/// Full spectrum of a real dense matrix, sorted by ascending real part
/// (ties by imaginary part). Dimension capped at 2000. The matrix is
/// rescaled by a diagonal power-of-two similarity before the QR iteration,
/// which leaves eigenvalues bit-exact but improves their accuracy.
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& A);

struct EigenDecomposition {
  std::vector<std::complex<double>> values;  // sorted as in eigenvalues()
  Eigen::MatrixXcd vectors;                  // unit columns matching values
};

/// Spectrum with eigenvectors (same ordering and balancing as eigenvalues()).
EigenDecomposition eigen_decomposition(const Eigen::MatrixXd& A);

/// Spectral norm of (i*gamma*I - A)^{-1}, computed as 1/sigma_min of the
/// shifted matrix (no inverse is formed). Throws std::runtime_error naming
/// the nearest eigenvalue when the shift is numerically singular.
double resolvent_norm(const Eigen::MatrixXd& A, double gamma);

struct ResolventSweep {
  std::vector<double> gamma;
  std::vector<double> norm;         // ||(i*gamma - A)^{-1}||_2
  std::vector<double> lower_bound;  // 1 / dist(i*gamma, spectrum)
};

ResolventSweep resolvent_sweep(const Eigen::MatrixXd& A, double gamma_min,
                               double gamma_max, int count);

/// Everything the spectral side reports about one (params, grid) pair:
/// spectrum of the deflated generator, its largest real part, the
/// imaginary-axis sweep, and the deflation residual.
struct SpectralReport {
  std::vector<std::complex<double>> eigenvalues;  // deflated, sorted by real part
  double max_real_part = 0.0;
  ResolventSweep sweep;  // empty when sweep_count == 0
  double deflation_residual = 0.0;
  int deflated_dim = 0;
};

/// Assembles, deflates, and analyzes the generator. sweep_count == 0 skips
/// the resolvent sweep.
SpectralReport build_spectral_report(const SystemParams& p, const Grid1D& g,
                                     double gamma_min = -50.0, double gamma_max = 50.0,
                                     int sweep_count = 0);

/// Operator norm of the resolvent measured in the metric induced by a
/// positive-definite Gram matrix (used to contrast with the Euclidean sweep).
double resolvent_norm_weighted(const Eigen::MatrixXd& A, double gamma,
                               const Eigen::MatrixXd& gram);

/// Positive-definite Gram of the trapezoid/second-order-difference functional
/// formulas (the metric the time-domain records use).
Eigen::MatrixXd gram_matrix_trapezoid(const SystemParams& p, const Grid1D& g);

struct BvpSolution {
  Eigen::VectorXcd y;
  Eigen::VectorXcd z;
  Eigen::VectorXcd u;
  double residual_inf = 0.0;  // ||(lambda*I - A) * sol - rhs||_inf
};

/// Solves (lambda*I - A)(y,z,u) = (F,G,V) by exact block elimination:
/// the delay rows reduce to a one-term recursion with the discrete
/// exponential kernel (1 + lambda*tau*drho)^{-j}, whose tail feeds the
/// feedback closure of a tridiagonal two-point problem for y; z and u are
/// reconstructed afterwards. Requires Re(lambda) > 0; the reported residual
/// is measured against the assembled generator.
BvpSolution resolvent_bvp_check(const SystemParams& p, const Grid1D& g,
                                std::complex<double> lambda,
                                const Eigen::VectorXd& F, const Eigen::VectorXd& G,
                                const Eigen::VectorXd& V);

}  // namespace wavelag
