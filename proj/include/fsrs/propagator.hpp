#pragma once

#include <Eigen/Dense>

#include "fsrs/redfield.hpp"

namespace fsrs::bath {

// Time-evolution map G(t) = exp(L t) of a RedfieldGenerator, cached through
// one eigendecomposition of L.  Immutable after construction; all methods are
// const and safe to call concurrently.
class Propagator {
public:
    explicit Propagator(RedfieldGenerator gen);

    const RedfieldGenerator& generator() const { return gen_; }
    int dimension() const { return gen_.levels.dimension(); }

    // True when L failed the diagonalizability residual check and G(t) falls
    // back to scaling-and-squaring matrix exponentials.
    bool uses_expm_fallback() const { return use_expm_; }

    // Dense Green's superoperator G(t) (column-major vectorization).
    Eigen::MatrixXcd green_matrix(double t_ps) const;

    // Evolves a density matrix: validates hermiticity, unit trace and t >= 0.
    Eigen::MatrixXcd propagate(const Eigen::MatrixXcd& rho0, double t_ps) const;

    // Evolves an arbitrary operator without density-matrix validation; the
    // response-function engine uses this for non-hermitian doorway slices.
    Eigen::MatrixXcd propagate_operator(const Eigen::MatrixXcd& op, double t_ps) const;

    // Eigendecomposition access for closed-form mode sums:
    // L = modes * diag(eigenvalues) * modes_inverse (when not defective).
    const Eigen::VectorXcd& eigenvalues() const { return evals_; }
    const Eigen::MatrixXcd& modes() const { return vecs_; }
    const Eigen::MatrixXcd& modes_inverse() const { return vecs_inv_; }

private:
    Eigen::VectorXcd apply_green(const Eigen::VectorXcd& v, double t_ps) const;

    RedfieldGenerator gen_;
    Eigen::VectorXcd evals_;
    Eigen::MatrixXcd vecs_;
    Eigen::MatrixXcd vecs_inv_;
    bool use_expm_ = false;
};

}  // namespace fsrs::bath
