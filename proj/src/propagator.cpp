#include "fsrs/propagator.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <utility>

#include "fsrs/errors.hpp"

namespace fsrs::bath {

Propagator::Propagator(RedfieldGenerator gen) : gen_(std::move(gen)) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(gen_.matrix);
    if (solver.info() != Eigen::Success)
        throw ComputeError("propagator: eigendecomposition of the generator failed");
    evals_ = solver.eigenvalues();
    vecs_ = solver.eigenvectors();
    vecs_inv_ = vecs_.partialPivLu().solve(
        Eigen::MatrixXcd::Identity(vecs_.rows(), vecs_.cols()));

    // Reconstruction residual decides whether L is numerically defective.
    const double scale = std::max(1.0, gen_.matrix.cwiseAbs().maxCoeff());
    const double residual =
        (vecs_ * evals_.asDiagonal() * vecs_inv_ - gen_.matrix).cwiseAbs().maxCoeff();
    use_expm_ = residual > 1e-8 * scale;
}

Eigen::MatrixXcd Propagator::green_matrix(double t_ps) const {
    if (t_ps < 0.0) throw ComputeError("propagator: negative evolution time");
    if (use_expm_) return (gen_.matrix * t_ps).exp();
    Eigen::VectorXcd phases(evals_.size());
    for (Eigen::Index k = 0; k < evals_.size(); ++k) phases(k) = std::exp(evals_(k) * t_ps);
    return vecs_ * phases.asDiagonal() * vecs_inv_;
}

Eigen::VectorXcd Propagator::apply_green(const Eigen::VectorXcd& v, double t_ps) const {
    if (use_expm_) return (gen_.matrix * t_ps).exp() * v;
    Eigen::VectorXcd coeffs = vecs_inv_ * v;
    for (Eigen::Index k = 0; k < evals_.size(); ++k) coeffs(k) *= std::exp(evals_(k) * t_ps);
    return vecs_ * coeffs;
}

Eigen::MatrixXcd Propagator::propagate(const Eigen::MatrixXcd& rho0, double t_ps) const {
    if (t_ps < 0.0) throw ComputeError("propagate: negative evolution time");
    const int dim = dimension();
    if (rho0.rows() != dim || rho0.cols() != dim)
        throw ComputeError("propagate: density matrix dimension mismatch");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw ComputeError("propagate: input density matrix is not hermitian");
    if (std::abs(rho0.trace().real() - 1.0) > 1e-9 || std::abs(rho0.trace().imag()) > 1e-9)
        throw ComputeError("propagate: input density matrix does not have unit trace");
    return propagate_operator(rho0, t_ps);
}

Eigen::MatrixXcd Propagator::propagate_operator(const Eigen::MatrixXcd& op, double t_ps) const {
    const int dim = dimension();
    Eigen::VectorXcd vec = Eigen::Map<const Eigen::VectorXcd>(op.data(), dim * dim);
    Eigen::VectorXcd out = apply_green(vec, t_ps);
    return Eigen::Map<const Eigen::MatrixXcd>(out.data(), dim, dim);
}

}  // namespace fsrs::bath
