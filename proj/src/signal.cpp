#include "fsrs/signal.hpp"

#include <cmath>
#include <complex>

#include "fsrs/errors.hpp"
#include "fsrs/lineshape.hpp"
#include "fsrs/threading.hpp"
#include "fsrs/windows.hpp"

namespace fsrs::engine {

namespace {

using cplx = std::complex<double>;
constexpr cplx im(0.0, 1.0);

Eigen::MatrixXcd manifold_block(const Eigen::MatrixXcd& full, const bath::LevelSpace& lv) {
    return full.block(1, 1, lv.n_molecules + 1, lv.n_molecules + 1);
}

Eigen::MatrixXcd embed_manifold(const Eigen::MatrixXcd& manifold, const bath::LevelSpace& lv) {
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(lv.dimension(), lv.dimension());
    full.block(1, 1, manifold.rows(), manifold.cols()) = manifold;
    return full;
}

// Doorway slice operator for initial bright state e1: column e1 holds
// mu_{e2} mu_{e1} (the printed asymmetric form without the w0 weight, which
// multiplies the whole slice).
Eigen::MatrixXcd doorway_slice(const core::PolaritonBasis& basis, int e1) {
    const int n = basis.n_states();
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
    for (int e2 = 0; e2 < n; ++e2)
        b(e2, e1) = basis.dipoles_ge(e2) * basis.dipoles_ge(e1);
    return b;
}

struct SliceCurves {
    int e1 = 0;
    cplx xi_eg;                                   // pump line frequency of e1
    std::vector<std::vector<double>> population;  // [delay][shift]
    std::vector<std::vector<double>> coherence;   // [delay][shift]
};

// Weighted sum of the per-slice curves over the pump axis; writes are
// disjoint per pump index, so the loop parallelizes cleanly.
void assemble_pump_axis(SpectrumGrid& grid, const std::vector<SliceCurves>& slices,
                        std::size_t workers) {
    const std::size_t np = grid.n_pump();
    const std::size_t ns = grid.n_shift();
    parallel_chunks(np, workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            const double w0 = grid.pump_axis[p];
            for (const auto& slice : slices) {
                const double lw = doorway_lorentzian(w0, slice.xi_eg);
                for (std::size_t d = 0; d < grid.n_delay(); ++d) {
                    const std::size_t base = grid.index(d, p, 0);
                    for (std::size_t s = 0; s < ns; ++s) {
                        grid.population[base + s] += lw * slice.population[d][s];
                        grid.coherence[base + s] += lw * slice.coherence[d][s];
                    }
                }
            }
        }
    });
    for (std::size_t i = 0; i < grid.total.size(); ++i)
        grid.total[i] = grid.population[i] + grid.coherence[i];
}

void flag_overlap(SpectrumGrid& grid, const response::PulseSpec& pulse) {
    for (std::size_t d = 0; d < grid.n_delay(); ++d)
        grid.pulse_overlap[d] = pulse.pulse_overlap(grid.delay_axis[d]) ? 1 : 0;
}

}  // namespace

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> split_channels(const Eigen::MatrixXcd& rho) {
    Eigen::MatrixXcd diag = rho.diagonal().asDiagonal();
    return {diag, rho - diag};
}

Eigen::MatrixXcd initial_pumped_state(const core::PolaritonBasis& basis,
                                      const bath::LevelSpace& levels) {
    const double mu_up = basis.dipoles_ge(basis.up_index());
    const double mu_lp = basis.dipoles_ge(basis.lp_index());
    const double norm = std::sqrt(mu_up * mu_up + mu_lp * mu_lp);
    if (!(norm > 0.0))
        throw ComputeError("initial_pumped_state: both bright dipoles vanish, nothing to pump");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(levels.dimension());
    psi(levels.level_of(basis.up_index())) = mu_up / norm;
    psi(levels.level_of(basis.lp_index())) = mu_lp / norm;
    return psi * psi.adjoint();
}

std::vector<double> spectrum_from_state(const core::PolaritonBasis& basis,
                                        const Eigen::MatrixXcd& xi_manifold,
                                        const response::PulseSpec& pulse,
                                        const Eigen::MatrixXcd& rho_manifold,
                                        const std::vector<double>& probe_freqs) {
    const int n = basis.n_states();
    const double s2 = pulse.s2, s3 = pulse.s3;
    const double delta = pulse.delta_radps();

    // Pair weights of both loop pathways: P_ab = alpha_ab {alpha, rho}_ab.
    const Eigen::MatrixXcd anti = basis.alpha * rho_manifold + rho_manifold * basis.alpha;
    Eigen::MatrixXcd pair_weight(n, n);
    double wmax = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            pair_weight(a, b) = basis.alpha(a, b) * anti(a, b);
            wmax = std::max(wmax, std::abs(pair_weight(a, b)));
        }

    std::vector<cplx> acc(probe_freqs.size(), cplx(0.0, 0.0));
    const double skip = wmax * 1e-16;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;  // elastic line omitted
            const cplx w = pair_weight(a, b);
            if (std::abs(w) <= skip) continue;
            const cplx xi = xi_manifold(a, b);
            for (std::size_t i = 0; i < probe_freqs.size(); ++i)
                acc[i] += w * response::f_function(probe_freqs[i], xi, s2, s3, delta);
        }

    std::vector<double> out(probe_freqs.size());
    for (std::size_t i = 0; i < probe_freqs.size(); ++i) out[i] = response::absorptive(acc[i]);
    return out;
}

SpectrumGrid signal_1d(const core::PolaritonBasis& basis, const bath::Propagator& prop,
                       const response::PulseSpec& pulse, const GridRequest& grids) {
    pulse.validate();
    const auto& gen = prop.generator();
    const auto& lv = gen.levels;
    const Eigen::MatrixXcd xi_full = bath::complex_line_frequencies(gen);
    const Eigen::MatrixXcd xi_m = xi_full.block(1, 1, basis.n_states(), basis.n_states());

    SpectrumGrid grid =
        SpectrumGrid::allocate(grids.shift_axis, {}, grids.delay_axis, grids.max_points);
    flag_overlap(grid, pulse);

    const Eigen::MatrixXcd rho0 = initial_pumped_state(basis, lv);
    const std::size_t workers = resolve_thread_count(grids.threads);
    parallel_chunks(grid.n_delay(), workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t d = lo; d < hi; ++d) {
            const Eigen::MatrixXcd rho_t = prop.propagate(rho0, grid.delay_axis[d]);
            const auto [pop, coh] = split_channels(manifold_block(rho_t, lv));
            const auto pv = spectrum_from_state(basis, xi_m, pulse, pop, grid.shift_axis);
            const auto cv = spectrum_from_state(basis, xi_m, pulse, coh, grid.shift_axis);
            const std::size_t base = grid.index(d, 0, 0);
            for (std::size_t s = 0; s < grid.n_shift(); ++s) {
                grid.population[base + s] = pv[s];
                grid.coherence[base + s] = cv[s];
                grid.total[base + s] = pv[s] + cv[s];
            }
        }
    });
    return grid;
}

double doorway_lorentzian(double w0_radps, std::complex<double> xi_eg) {
    // i * Lambda_e(w0): the doorway weight is purely imaginary, so this is
    // the real positive Lorentzian carried by each slice.
    return (im * response::doorway_weight(w0_radps, xi_eg)).real();
}

SpectrumGrid signal_2d(const core::PolaritonBasis& basis, const bath::Propagator& prop,
                       const response::PulseSpec& pulse, const GridRequest& grids) {
    pulse.validate();
    if (grids.pump_axis.empty())
        throw ComputeError("signal_2d: pump (w0) axis must be nonempty");
    const auto& gen = prop.generator();
    const auto& lv = gen.levels;
    const Eigen::MatrixXcd xi_full = bath::complex_line_frequencies(gen);
    const Eigen::MatrixXcd xi_m = xi_full.block(1, 1, basis.n_states(), basis.n_states());

    SpectrumGrid grid = SpectrumGrid::allocate(grids.shift_axis, grids.pump_axis,
                                               grids.delay_axis, grids.max_points);
    flag_overlap(grid, pulse);

    std::vector<SliceCurves> slices;
    for (int e1 = 0; e1 < basis.n_states(); ++e1) {
        if (std::abs(basis.dipoles_ge(e1)) < 1e-14) continue;  // dark states are not pumped
        SliceCurves sc;
        sc.e1 = e1;
        sc.xi_eg = xi_full(lv.level_of(e1), lv.ground());
        const auto [pop0, coh0] = split_channels(doorway_slice(basis, e1));
        const Eigen::MatrixXcd pop_full = embed_manifold(pop0, lv);
        const Eigen::MatrixXcd coh_full = embed_manifold(coh0, lv);
        for (double t : grid.delay_axis) {
            const Eigen::MatrixXcd pop_t = manifold_block(prop.propagate_operator(pop_full, t), lv);
            const Eigen::MatrixXcd coh_t = manifold_block(prop.propagate_operator(coh_full, t), lv);
            sc.population.push_back(spectrum_from_state(basis, xi_m, pulse, pop_t, grid.shift_axis));
            sc.coherence.push_back(spectrum_from_state(basis, xi_m, pulse, coh_t, grid.shift_axis));
        }
        slices.push_back(std::move(sc));
    }

    assemble_pump_axis(grid, slices, resolve_thread_count(grids.threads));
    return grid;
}

SpectrumGrid signal_ct(const core::PolaritonBasis& basis, const bath::Propagator& prop,
                       const response::PulseSpec& pulse, const GridRequest& grids) {
    pulse.validate();
    if (grids.pump_axis.empty())
        throw ComputeError("signal_ct: pump (w0) axis must be nonempty");
    const auto& gen = prop.generator();
    const auto& lv = gen.levels;
    if (!lv.has_ct || !basis.alpha_ct)
        throw ConfigError("signal_ct: charge-transfer level not configured");
    if (prop.uses_expm_fallback())
        throw ComputeError("signal_ct: generator is numerically defective; the eigenmode "
                           "expansion of the in-window propagation is unavailable");

    const Eigen::MatrixXcd xi_full = bath::complex_line_frequencies(gen);
    const Eigen::VectorXd& act = *basis.alpha_ct;
    const int n = basis.n_states();
    const int dim = lv.dimension();

    SpectrumGrid grid = SpectrumGrid::allocate(grids.shift_axis, grids.pump_axis,
                                               grids.delay_axis, grids.max_points);
    flag_overlap(grid, pulse);

    // Complex line frequencies of the final polariton-CT coherences.
    Eigen::VectorXcd xi_ect(n);
    for (int e = 0; e < n; ++e) xi_ect(e) = xi_full(lv.level_of(e), lv.ct_level());

    const auto& evals = prop.eigenvalues();
    const auto& modes = prop.modes();
    const auto& modes_inv = prop.modes_inverse();
    const double s2 = pulse.s2, s3 = pulse.s3;
    const double delta = pulse.delta_radps();
    const std::size_t ns = grid.n_shift();
    const std::size_t nd = grid.n_delay();

    // Per prepared part (population or coherence block of a doorway slice):
    // expand over generator eigenmodes; each mode contributes the
    // mode-shifted lineshape on every final coherence (e4, ct).
    auto part_curves = [&](const Eigen::MatrixXcd& part) {
        // part is manifold-sized; embed into the full level space, then
        // project onto the generator's eigenmodes.
        const Eigen::MatrixXcd full = embed_manifold(part, lv);
        const Eigen::VectorXcd vec0 =
            Eigen::Map<const Eigen::VectorXcd>(full.data(), full.size());
        const Eigen::VectorXcd c0 = modes_inv * vec0;
        const double cmax = c0.cwiseAbs().maxCoeff();

        std::vector<std::vector<cplx>> acc(nd, std::vector<cplx>(ns, cplx(0.0, 0.0)));
        for (int k = 0; k < c0.size(); ++k) {
            if (std::abs(c0(k)) <= 1e-14 * cmax) continue;
            // amp(e4) = alpha_ct(e4) sum_{e3} alpha_ct(e3) * mode[(e4, e3)].
            Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(n);
            for (int e4 = 0; e4 < n; ++e4) {
                cplx s(0.0, 0.0);
                for (int e3 = 0; e3 < n; ++e3)
                    s += act(e3) * modes(lv.level_of(e4) + dim * lv.level_of(e3), k);
                amp(e4) = act(e4) * s;
            }
            const double amax = amp.cwiseAbs().maxCoeff();
            if (amax == 0.0) continue;
            for (int e4 = 0; e4 < n; ++e4) {
                if (std::abs(amp(e4)) <= 1e-16 * amax) continue;
                // Lineshape of this (mode, final coherence) pair over v.
                std::vector<cplx> fvec(ns);
                for (std::size_t s_i = 0; s_i < ns; ++s_i)
                    fvec[s_i] = response::f_function_mode(grid.shift_axis[s_i], xi_ect(e4), s2,
                                                          s3, delta, evals(k));
                for (std::size_t d = 0; d < nd; ++d) {
                    const cplx w = c0(k) * std::exp(evals(k) * grid.delay_axis[d]) * amp(e4);
                    for (std::size_t s_i = 0; s_i < ns; ++s_i) acc[d][s_i] += w * fvec[s_i];
                }
            }
        }
        std::vector<std::vector<double>> out(nd, std::vector<double>(ns));
        for (std::size_t d = 0; d < nd; ++d)
            for (std::size_t s_i = 0; s_i < ns; ++s_i) out[d][s_i] = response::absorptive(acc[d][s_i]);
        return out;
    };

    std::vector<SliceCurves> slices;
    for (int e1 = 0; e1 < n; ++e1) {
        if (std::abs(basis.dipoles_ge(e1)) < 1e-14) continue;
        SliceCurves sc;
        sc.e1 = e1;
        sc.xi_eg = xi_full(lv.level_of(e1), lv.ground());
        const auto [pop0, coh0] = split_channels(doorway_slice(basis, e1));
        sc.population = part_curves(pop0);
        sc.coherence = part_curves(coh0);
        slices.push_back(std::move(sc));
    }

    assemble_pump_axis(grid, slices, resolve_thread_count(grids.threads));
    return grid;
}

}  // namespace fsrs::engine
