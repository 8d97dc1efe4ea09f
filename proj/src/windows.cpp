#include "fsrs/windows.hpp"

#include <cmath>

namespace fsrs::response {

namespace {
using cplx = std::complex<double>;
constexpr cplx im(0.0, 1.0);
}  // namespace

std::vector<Eigen::MatrixXcd> window_w(const Eigen::MatrixXd& alpha,
                                       const Eigen::MatrixXcd& xi, const PulseSpec& pulse,
                                       const std::vector<double>& shift_grid) {
    const auto dim = alpha.rows();
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(shift_grid.size());
    for (double v : shift_grid) {
        Eigen::MatrixXcd w(dim, dim);
        for (Eigen::Index a = 0; a < dim; ++a)
            for (Eigen::Index b = 0; b < dim; ++b)
                w(a, b) = alpha(a, b) / (1.0 / pulse.s2 - im * (v - xi(a, b)));
        out.push_back(std::move(w));
    }
    return out;
}

Eigen::MatrixXcd window_v(const Eigen::MatrixXd& alpha, const Eigen::MatrixXcd& xi,
                          const PulseSpec& pulse, double t_upper_ps) {
    const auto dim = alpha.rows();
    const double delta = pulse.delta_radps();
    const double width = 1.0 / pulse.s2 + 1.0 / pulse.s3;
    Eigen::MatrixXcd v(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b) {
            const cplx denom = width - im * (delta + xi(a, b));
            cplx val = alpha(a, b) / denom;
            if (std::isfinite(t_upper_ps)) val *= 1.0 - std::exp(-denom * t_upper_ps);
            v(a, b) = val;
        }
    return v;
}

cplx doorway_weight(double w0_radps, cplx xi_eg) {
    // xi_ge = -conj(xi_eg): same width, mirrored frequency.
    const cplx xi_ge = -std::conj(xi_eg);
    return 1.0 / (-w0_radps - xi_ge) + 1.0 / (w0_radps - xi_eg);
}

cplx doorway_kernel(double t0_ps, cplx xi_eg) {
    if (t0_ps >= 0.0) return -im * std::exp(-im * xi_eg * t0_ps);
    return -im * std::exp(-im * std::conj(xi_eg) * t0_ps);
}

namespace {

template <typename WeightFn>
Eigen::MatrixXcd doorway_matrix(const core::PolaritonBasis& basis, WeightFn weight) {
    const int n = basis.n_states();
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    for (int e1 = 0; e1 < n; ++e1) {
        const cplx w = weight(e1);
        for (int e2 = 0; e2 < n; ++e2)
            d(e2, e1) = basis.dipoles_ge(e2) * basis.dipoles_ge(e1) * w;
    }
    return d;
}

}  // namespace

Eigen::MatrixXcd doorway_matrix_time(const core::PolaritonBasis& basis,
                                     const Eigen::VectorXcd& xi_eg, double t0_ps) {
    return doorway_matrix(basis, [&](int e) { return doorway_kernel(t0_ps, xi_eg(e)); });
}

Eigen::MatrixXcd doorway_matrix_freq(const core::PolaritonBasis& basis,
                                     const Eigen::VectorXcd& xi_eg, double w0_radps) {
    return doorway_matrix(basis, [&](int e) { return doorway_weight(w0_radps, xi_eg(e)); });
}

}  // namespace fsrs::response
