#include "wavelag/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wavelag/numerics.hpp"

namespace wavelag {

namespace {

Eigen::VectorXd trapezoid_weights(int n, double h) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n + 1, h);
  w(0) = 0.5 * h;
  w(n) = 0.5 * h;
  return w;
}

/// Osborne-style balancing with power-of-two factors: returns the diagonal
/// scale d such that D^{-1} A D has row and column norms of comparable size.
/// Eigenvalues of the scaled matrix are bit-identical to those of A.
Eigen::VectorXd balance(Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  bool converged = false;
  for (int sweep = 0; sweep < 50 && !converged; ++sweep) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(A(j, i));
        r += std::abs(A(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * s) {
        converged = false;
        d(i) *= f;
        A.col(i) *= f;
        A.row(i) /= f;
      }
    }
  }
  return d;
}

}  // namespace

GeneratorMatrix assemble_generator(const SystemParams& p, const Grid1D& g) {
  GeneratorMatrix gen;
  gen.N = g.N;
  gen.M = g.M;
  gen.dx = g.dx;
  gen.drho = g.drho;
  const int d = gen.dim();
  gen.A = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd& A = gen.A;

  const int N = g.N;
  const int M = g.M;
  const double idx2 = 1.0 / (g.dx * g.dx);

  for (int i = 0; i <= N; ++i) A(gen.iy(i), gen.iz(i)) = 1.0;

  // reflecting ghost at the free end
  A(gen.iz(0), gen.iy(0)) = -2.0 * idx2;
  A(gen.iz(0), gen.iy(1)) = 2.0 * idx2;
  for (int i = 1; i < N; ++i) {
    A(gen.iz(i), gen.iy(i - 1)) = idx2;
    A(gen.iz(i), gen.iy(i)) = -2.0 * idx2;
    A(gen.iz(i), gen.iy(i + 1)) = idx2;
  }
  // feedback ghost at x = L: y_x(L) = -alpha z(L) - beta u(1)
  A(gen.iz(N), gen.iy(N - 1)) = 2.0 * idx2;
  A(gen.iz(N), gen.iy(N)) = -2.0 * idx2;
  A(gen.iz(N), gen.iz(N)) = -2.0 * p.alpha / g.dx;
  A(gen.iz(N), gen.iu(M)) = -2.0 * p.beta / g.dx;

  // transport rows: first-order upwind, inflow value z(L). The inflow cell
  // itself relaxes onto z(L) through its upwind ghost; nothing downstream
  // reads it, so it stays a bookkeeping variable with eigenvalue -M/tau.
  const double c = 1.0 / (p.tau * g.drho);
  A(gen.iu(0), gen.iu(0)) = -c;
  A(gen.iu(0), gen.iz(N)) = c;
  A(gen.iu(1), gen.iu(1)) = -c;
  A(gen.iu(1), gen.iz(N)) = c;
  for (int j = 2; j <= M; ++j) {
    A(gen.iu(j), gen.iu(j)) = -c;
    A(gen.iu(j), gen.iu(j - 1)) = c;
  }
  return gen;
}

Eigen::VectorXd conserved_functional(const SystemParams& p, const Grid1D& g) {
  const int N = g.N;
  const int M = g.M;
  const int d = 2 * (N + 1) + (M + 1);
  Eigen::VectorXd l = Eigen::VectorXd::Zero(d);
  l(N) = p.alpha + p.beta;  // y(L)
  const Eigen::VectorXd wz = trapezoid_weights(N, g.dx);
  for (int i = 0; i <= N; ++i) l(N + 1 + i) = wz(i);
  for (int j = 1; j <= M; ++j) l(2 * (N + 1) + j) = -p.beta * p.tau * g.drho;
  return l;
}

Eigen::MatrixXd gram_matrix(const SystemParams& p, const Grid1D& g) {
  const int N = g.N;
  const int M = g.M;
  const int d = 2 * (N + 1) + (M + 1);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(d, d);

  // cell-difference stiffness: y^T K y = sum (y_{i+1}-y_i)^2 / dx
  const double idx = 1.0 / g.dx;
  for (int i = 0; i < N; ++i) {
    G(i, i) += idx;
    G(i + 1, i + 1) += idx;
    G(i, i + 1) -= idx;
    G(i + 1, i) -= idx;
  }
  const Eigen::VectorXd wz = trapezoid_weights(N, g.dx);
  for (int i = 0; i <= N; ++i) G(N + 1 + i, N + 1 + i) = wz(i);
  for (int j = 1; j <= M; ++j) G(2 * (N + 1) + j, 2 * (N + 1) + j) = p.xi * g.drho;

  const Eigen::VectorXd l = conserved_functional(p, g);
  G += p.varpi * l * l.transpose();
  return G;
}

Eigen::MatrixXd gram_matrix_trapezoid(const SystemParams& p, const Grid1D& g) {
  const int N = g.N;
  const int M = g.M;
  const int d = 2 * (N + 1) + (M + 1);

  // D^T W D with the same second-order differences the functionals use
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N + 1, N + 1);
  const double i2dx = 1.0 / (2.0 * g.dx);
  D(0, 0) = -3.0 * i2dx;
  D(0, 1) = 4.0 * i2dx;
  D(0, 2) = -i2dx;
  for (int i = 1; i < N; ++i) {
    D(i, i - 1) = -i2dx;
    D(i, i + 1) = i2dx;
  }
  D(N, N) = 3.0 * i2dx;
  D(N, N - 1) = -4.0 * i2dx;
  D(N, N - 2) = i2dx;

  const Eigen::VectorXd wx = trapezoid_weights(N, g.dx);
  const Eigen::VectorXd wr = trapezoid_weights(M, g.drho);

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(d, d);
  G.topLeftCorner(N + 1, N + 1) = D.transpose() * wx.asDiagonal() * D;
  for (int i = 0; i <= N; ++i) G(N + 1 + i, N + 1 + i) = wx(i);
  for (int j = 0; j <= M; ++j) G(2 * (N + 1) + j, 2 * (N + 1) + j) = p.xi * wr(j);

  Eigen::VectorXd l = Eigen::VectorXd::Zero(d);
  l(N) = p.alpha + p.beta;
  for (int i = 0; i <= N; ++i) l(N + 1 + i) = wx(i);
  for (int j = 0; j <= M; ++j) l(2 * (N + 1) + j) = -p.beta * p.tau * wr(j);
  G += p.varpi * l * l.transpose();
  return G;
}

DeflatedGenerator deflate(const GeneratorMatrix& gen, const SystemParams& p,
                          const Grid1D& g) {
  const int d = gen.dim();
  Eigen::VectorXd l = conserved_functional(p, g);
  const double lnorm = l.norm();
  if (!(lnorm > 1e-300)) throw std::runtime_error("deflate: functional is numerically zero");

  // Householder complement of l: columns 2..d of the reflection taking e_0 to
  // l/||l|| form an orthonormal basis of ker l.
  Eigen::VectorXd v = l / lnorm;
  v(0) -= 1.0;
  const double vn2 = v.squaredNorm();
  Eigen::MatrixXd basis(d, d - 1);
  for (int k = 1; k < d; ++k) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(d);
    col(k) = 1.0;
    if (vn2 > 0.0) col -= (2.0 * v(k) / vn2) * v;
    basis.col(k - 1) = col;
  }

  DeflatedGenerator out;
  out.basis = basis;
  out.A = basis.transpose() * gen.A * basis;
  // how far the functional is from being conserved, seen from inside ker l
  out.deflation_residual = (basis.transpose() * (gen.A.transpose() * l)).norm() / lnorm;
  return out;
}

namespace {

void check_dense_budget(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  if (A.rows() > 2000)
    throw std::invalid_argument("eigenvalues: dimension exceeds the dense budget (2000)");
}

bool eig_order(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& A) {
  check_dense_budget(A);
  Eigen::MatrixXd B = A;
  balance(B);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(B, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues: QR iteration failed");
  std::vector<std::complex<double>> ev(A.rows());
  for (int i = 0; i < A.rows(); ++i) ev[i] = solver.eigenvalues()(i);
  std::sort(ev.begin(), ev.end(), eig_order);
  return ev;
}

EigenDecomposition eigen_decomposition(const Eigen::MatrixXd& A) {
  check_dense_budget(A);
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXd B = A;
  const Eigen::VectorXd d = balance(B);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(B, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen_decomposition: QR iteration failed");

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  const auto& vals = solver.eigenvalues();
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return eig_order(vals(a), vals(b)); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = vals(order[k]);
    Eigen::VectorXcd v = solver.eigenvectors().col(order[k]);
    for (int i = 0; i < n; ++i) v(i) *= d(i);  // undo the balancing similarity
    out.vectors.col(k) = v / v.norm();
  }
  return out;
}

double resolvent_norm(const Eigen::MatrixXd& A, double gamma) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXcd shifted = -A.cast<std::complex<double>>();
  for (int i = 0; i < n; ++i) shifted(i, i) += std::complex<double>(0.0, gamma);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(shifted);
  const double smin = svd.singularValues()(n - 1);
  const double smax = svd.singularValues()(0);
  if (!(smin > smax * 1e-14)) {
    const auto ev = eigenvalues(A);
    double best = std::numeric_limits<double>::infinity();
    std::complex<double> nearest = ev.empty() ? 0.0 : ev.front();
    for (const auto& lam : ev) {
      const double dist = std::abs(lam - std::complex<double>(0.0, gamma));
      if (dist < best) {
        best = dist;
        nearest = lam;
      }
    }
    std::ostringstream os;
    os << "resolvent_norm: shift i*" << gamma << " is numerically singular; nearest eigenvalue "
       << nearest.real() << (nearest.imag() < 0 ? " - " : " + ") << std::abs(nearest.imag())
       << "i at distance " << best;
    throw std::runtime_error(os.str());
  }
  return 1.0 / smin;
}

ResolventSweep resolvent_sweep(const Eigen::MatrixXd& A, double gamma_min,
                               double gamma_max, int count) {
  if (count < 2) throw std::invalid_argument("resolvent_sweep: count must be >= 2");
  const auto ev = eigenvalues(A);
  ResolventSweep sweep;
  sweep.gamma.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double gamma = gamma_min + (gamma_max - gamma_min) * k / (count - 1);
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& lam : ev) dist = std::min(dist, std::abs(lam - std::complex<double>(0.0, gamma)));
    sweep.gamma.push_back(gamma);
    sweep.norm.push_back(resolvent_norm(A, gamma));
    sweep.lower_bound.push_back(1.0 / dist);
  }
  return sweep;
}

SpectralReport build_spectral_report(const SystemParams& p, const Grid1D& g,
                                     double gamma_min, double gamma_max,
                                     int sweep_count) {
  const GeneratorMatrix gen = assemble_generator(p, g);
  const DeflatedGenerator defl = deflate(gen, p, g);
  SpectralReport rep;
  rep.eigenvalues = eigenvalues(defl.A);
  rep.max_real_part = rep.eigenvalues.back().real();
  rep.deflation_residual = defl.deflation_residual;
  rep.deflated_dim = static_cast<int>(defl.A.rows());
  if (sweep_count > 0) rep.sweep = resolvent_sweep(defl.A, gamma_min, gamma_max, sweep_count);
  return rep;
}

double resolvent_norm_weighted(const Eigen::MatrixXd& A, double gamma,
                               const Eigen::MatrixXd& gram) {
  const int n = static_cast<int>(A.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("resolvent_norm_weighted: gram matrix must be positive definite");
  }
  const Eigen::MatrixXd Lt = llt.matrixL();
  Eigen::MatrixXcd shifted = -A.cast<std::complex<double>>();
  for (int i = 0; i < n; ++i) shifted(i, i) += std::complex<double>(0.0, gamma);
  // || L^T (i g - A)^{-1} L^{-T} ||_2
  const Eigen::MatrixXcd inv = shifted.partialPivLu().solve(
      Eigen::MatrixXcd::Identity(n, n));
  const Eigen::MatrixXcd weighted =
      Lt.transpose().cast<std::complex<double>>() * inv *
      Lt.transpose().cast<std::complex<double>>().inverse();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(weighted);
  return svd.singularValues()(0);
}

BvpSolution resolvent_bvp_check(const SystemParams& p, const Grid1D& g,
                                std::complex<double> lambda,
                                const Eigen::VectorXd& F, const Eigen::VectorXd& G,
                                const Eigen::VectorXd& V) {
  using cd = std::complex<double>;
  const int N = g.N;
  const int M = g.M;
  if (F.size() != N + 1 || G.size() != N + 1 || V.size() != M + 1) {
    throw std::invalid_argument("resolvent_bvp_check: rhs sizes do not match grid");
  }
  if (!(lambda.real() > 0.0)) {
    throw std::invalid_argument("resolvent_bvp_check: requires Re(lambda) > 0");
  }

  const double dx = g.dx;
  const double idx2 = 1.0 / (dx * dx);
  // discrete exponential kernel of the upwind delay rows:
  //   u_j = a u_{j-1} + a tau drho V_j,  a = (1 + lambda tau drho)^{-1}
  const cd a = 1.0 / (1.0 + lambda * p.tau * g.drho);

  // u(1) = a^M z(L) + tail(V); the tail is independent of the solution
  cd tail = 0.0;
  {
    cd pw = 1.0;  // a^{M-k} running from k = M down to 1
    for (int k = M; k >= 1; --k) {
      tail += pw * (a * p.tau * g.drho * V(k));
      pw *= a;
    }
  }
  cd aM = 1.0;
  for (int j = 0; j < M; ++j) aM *= a;

  // tridiagonal system for y: (lambda^2 - lap) y = G + lambda F with the
  // feedback row augmented by the eliminated delay tail
  Eigen::VectorXcd diag(N + 1), lower(N), upper(N), rhs(N + 1);
  const cd l2 = lambda * lambda;
  diag(0) = l2 + 2.0 * idx2;
  upper(0) = -2.0 * idx2;
  rhs(0) = G(0) + lambda * F(0);
  for (int i = 1; i < N; ++i) {
    lower(i - 1) = -idx2;
    diag(i) = l2 + 2.0 * idx2;
    upper(i) = -idx2;
    rhs(i) = G(i) + lambda * F(i);
  }
  lower(N - 1) = -2.0 * idx2;
  const cd robin = (2.0 / dx) * (p.alpha + p.beta * aM);
  diag(N) = l2 + 2.0 * idx2 + lambda * robin;
  rhs(N) = G(N) + lambda * F(N) + robin * F(N) - (2.0 * p.beta / dx) * tail;

  // Thomas elimination
  Eigen::VectorXcd cp(N), dp(N + 1);
  cd piv = diag(0);
  if (std::abs(piv) == 0.0) throw std::runtime_error("resolvent_bvp_check: singular pivot");
  cp(0) = upper(0) / piv;
  dp(0) = rhs(0) / piv;
  for (int i = 1; i <= N; ++i) {
    piv = diag(i) - lower(i - 1) * cp(i - 1);
    if (std::abs(piv) == 0.0) throw std::runtime_error("resolvent_bvp_check: singular pivot");
    if (i < N) cp(i) = upper(i) / piv;
    dp(i) = (rhs(i) - lower(i - 1) * dp(i - 1)) / piv;
  }

  BvpSolution sol;
  sol.y.resize(N + 1);
  sol.z.resize(N + 1);
  sol.u.resize(M + 1);
  sol.y(N) = dp(N);
  for (int i = N - 1; i >= 0; --i) sol.y(i) = dp(i) - cp(i) * sol.y(i + 1);
  for (int i = 0; i <= N; ++i) sol.z(i) = lambda * sol.y(i) - F(i);

  const cd zL = sol.z(N);
  sol.u(0) = a * (zL + p.tau * g.drho * V(0));
  sol.u(1) = a * (zL + p.tau * g.drho * V(1));
  for (int j = 2; j <= M; ++j) sol.u(j) = a * (sol.u(j - 1) + p.tau * g.drho * V(j));

  // residual against the assembled generator
  const GeneratorMatrix gen = assemble_generator(p, g);
  const int d = gen.dim();
  Eigen::VectorXcd x(d), b(d);
  for (int i = 0; i <= N; ++i) {
    x(gen.iy(i)) = sol.y(i);
    x(gen.iz(i)) = sol.z(i);
    b(gen.iy(i)) = F(i);
    b(gen.iz(i)) = G(i);
  }
  for (int j = 0; j <= M; ++j) {
    x(gen.iu(j)) = sol.u(j);
    b(gen.iu(j)) = V(j);
  }
  const Eigen::VectorXcd res =
      lambda * x - gen.A.cast<cd>() * x - b;
  sol.residual_inf = res.cwiseAbs().maxCoeff();
  return sol;
}

}  // namespace wavelag
