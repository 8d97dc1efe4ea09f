#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "fsrs/constants.hpp"
#include "fsrs/errors.hpp"
#include "fsrs/lineshape.hpp"
#include "fsrs/polariton.hpp"
#include "fsrs/propagator.hpp"
#include "fsrs/redfield.hpp"
#include "fsrs/signal.hpp"
#include "fsrs/spectrum.hpp"
#include "test_helpers.hpp"

using namespace fsrs;
using cplx = std::complex<double>;
using testutil::aggregate_spec;
using testutil::default_pulses;

namespace {

struct Model {
    core::PolaritonBasis basis;
    bath::Propagator prop;
    Eigen::MatrixXcd xi_manifold;
};

Model make_model(double detuning_in_g, bool with_ct = false) {
    const auto spec = aggregate_spec(detuning_in_g, with_ct);
    auto basis = core::build_basis(spec);
    auto gen = bath::build_generator(basis, bath::BathSpec{}, spec.ct_energy);
    const Eigen::MatrixXcd xi_full = bath::complex_line_frequencies(gen);
    const int n = basis.n_states();
    return {std::move(basis), bath::Propagator(std::move(gen)), xi_full.block(1, 1, n, n)};
}

// Position of the largest sample within +-window of the expected line.
double local_argmax(const engine::SpectrumGrid& grid, const std::vector<double>& values,
                    std::size_t d, std::size_t p, double expected, double window) {
    double best = -1e300, at = 0.0;
    for (std::size_t s = 0; s < grid.n_shift(); ++s) {
        const double v = grid.shift_axis[s];
        if (std::abs(v - expected) > window) continue;
        const double y = values[grid.index(d, p, s)];
        if (y > best) {
            best = y;
            at = v;
        }
    }
    REQUIRE(best > -1e300);
    return at;
}

Eigen::MatrixXcd random_complex(std::mt19937& rng, int dim) {
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            m(r, c) = cplx(testutil::uniform(rng, -1.0, 1.0), testutil::uniform(rng, -1.0, 1.0));
    return m;
}

}  // namespace

TEST_CASE("split_channels is an exact diagonal/off-diagonal decomposition") {
    std::mt19937 rng(42);
    const Eigen::MatrixXcd rho = random_complex(rng, 5);
    const auto [pop, coh] = engine::split_channels(rho);
    CHECK((pop + coh - rho).cwiseAbs().maxCoeff() < 1e-15);
    for (int r = 0; r < 5; ++r) {
        CHECK(std::abs(coh(r, r)) == 0.0);
        for (int c = 0; c < 5; ++c)
            if (r != c) CHECK(std::abs(pop(r, c)) == 0.0);
    }
}

TEST_CASE("broadband pump prepares the normalized bright superposition") {
    const auto model = make_model(1.25);
    const auto& lv = model.prop.generator().levels;
    const Eigen::MatrixXcd rho = engine::initial_pumped_state(model.basis, lv);

    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    const double mu_up = model.basis.dipoles_ge(model.basis.up_index());
    const double mu_lp = model.basis.dipoles_ge(model.basis.lp_index());
    const double norm2 = mu_up * mu_up + mu_lp * mu_lp;
    CHECK(std::abs(std::sqrt(norm2) - 3.1623) < 1e-3);

    const int up = lv.level_of(model.basis.up_index());
    const int lp = lv.level_of(model.basis.lp_index());
    CHECK(std::abs(rho(up, up).real() - mu_up * mu_up / norm2) < 1e-12);
    CHECK(std::abs(rho(lp, lp).real() - mu_lp * mu_lp / norm2) < 1e-12);
    CHECK(std::abs(rho(up, up).real() - 0.5969) < 1e-3);  // upper-branch share at +1.25g
    CHECK(std::abs(rho(up, lp) - cplx(mu_up * mu_lp / norm2, 0.0)) < 1e-12);
    CHECK(std::abs(rho(0, 0)) == 0.0);  // ground
    for (int e = 1; e < model.basis.n_molecules; ++e)
        CHECK(std::abs(rho(lv.level_of(e), lv.level_of(e))) == 0.0);
}

TEST_CASE("signal contraction matches a naive pair-sum oracle") {
    const auto model = make_model(1.25);
    const int n = model.basis.n_states();
    std::mt19937 rng(314);

    std::vector<double> freqs;
    for (double v = 50.0; v <= 240.0; v += 7.3) freqs.push_back(v);

    auto naive = [&](const Eigen::MatrixXcd& rho) {
        const Eigen::MatrixXcd anti = model.basis.alpha * rho + rho * model.basis.alpha;
        std::vector<double> out;
        for (double v : freqs) {
            cplx acc(0.0, 0.0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b) continue;
                    acc += model.basis.alpha(a, b) * anti(a, b) *
                           response::f_function(v, model.xi_manifold(a, b), 1.0, 0.035,
                                                default_pulses().delta_radps());
                }
            out.push_back(acc.imag() / std::numbers::pi);
        }
        return out;
    };

    // Diagonal state: each line reports alpha_ab^2 (rho_a + rho_b).
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a) diag(a, a) = testutil::uniform(rng, 0.0, 1.0);
    // General complex operator, as produced by doorway slices.
    const Eigen::MatrixXcd general = random_complex(rng, n);

    for (const auto& rho : {diag, general}) {
        const auto got =
            engine::spectrum_from_state(model.basis, model.xi_manifold, default_pulses(), rho, freqs);
        const auto want = naive(rho);
        double scale = 0.0;
        for (double w : want) scale = std::max(scale, std::abs(w));
        for (std::size_t i = 0; i < freqs.size(); ++i)
            CHECK(std::abs(got[i] - want[i]) < 1e-12 * scale);
    }
}

TEST_CASE("vanishing polarizability silences the detector") {
    auto spec = aggregate_spec(1.25);
    spec.near_edge_dipoles.assign(10, 0.0);
    const auto basis = core::build_basis(spec);
    const bath::Propagator prop(bath::build_generator(basis, bath::BathSpec{}));

    engine::GridRequest req;
    req.shift_axis = engine::make_axis(60.0, 230.0, 10.0);
    req.delay_axis = {0.05, 2.0};
    const auto grid = engine::signal_1d(basis, prop, default_pulses(), req);
    for (double v : grid.total) CHECK(v == 0.0);
}

TEST_CASE("one-dimensional signal: layout, channel additivity, line positions") {
    const auto model = make_model(1.25);
    engine::GridRequest req;
    req.shift_axis = engine::make_axis(40.0, 260.0, 0.5);
    req.delay_axis = {0.03, 1.0};

    const auto grid = engine::signal_1d(model.basis, model.prop, default_pulses(), req);
    CHECK(grid.n_shift() == 441);
    CHECK(grid.n_pump() == 1);
    CHECK(grid.pump_axis.empty());
    CHECK(grid.n_delay() == 2);
    REQUIRE(grid.total.size() == 441 * 2);
    CHECK(grid.pulse_overlap[0] == 1);  // 0.03 ps < sigma_2
    CHECK(grid.pulse_overlap[1] == 0);

    double scale = 0.0;
    for (double v : grid.total) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < grid.total.size(); ++i) {
        CHECK(std::abs(grid.total[i] - grid.population[i] - grid.coherence[i]) < 1e-12 * scale);
        CHECK(std::isfinite(grid.total[i]));
    }

    // All three inelastic lines at T = 1 ps, within one grid step.
    for (double line : {88.27, 130.74, 219.01})
        CHECK(std::abs(local_argmax(grid, grid.population, 1, 0, line, 12.0) - line) <= 0.51);
}

TEST_CASE("zero detuning merges the dark lines at half the bright splitting") {
    const auto model = make_model(0.0);
    engine::GridRequest req;
    req.shift_axis = engine::make_axis(60.0, 260.0, 0.5);
    req.delay_axis = {1.0};
    const auto grid = engine::signal_1d(model.basis, model.prop, default_pulses(), req);
    CHECK(std::abs(local_argmax(grid, grid.population, 0, 0, 107.43, 15.0) - 107.43) <= 0.51);
    CHECK(std::abs(local_argmax(grid, grid.population, 0, 0, 214.85, 15.0) - 214.85) <= 0.51);
}

TEST_CASE("a line measures the population sum of its two states") {
    const auto model = make_model(1.25);
    const int n = model.basis.n_states();
    const int up = model.basis.up_index(), lp = model.basis.lp_index();

    // Mask the polarizability down to the single up-lp pair so only that
    // line radiates; any split of the pair sum then gives the same signal.
    core::PolaritonBasis masked = model.basis;
    masked.alpha = Eigen::MatrixXd::Zero(n, n);
    masked.alpha(up, lp) = masked.alpha(lp, up) = model.basis.alpha(up, lp);

    Eigen::MatrixXcd rho_a = Eigen::MatrixXcd::Zero(n, n);
    rho_a(up, up) = 1.0;
    Eigen::MatrixXcd rho_b = Eigen::MatrixXcd::Zero(n, n);
    rho_b(up, up) = 0.6;
    rho_b(lp, lp) = 0.4;

    std::vector<double> freqs = {180.0, 219.01, 250.0};
    const auto sa =
        engine::spectrum_from_state(masked, model.xi_manifold, default_pulses(), rho_a, freqs);
    const auto sb =
        engine::spectrum_from_state(masked, model.xi_manifold, default_pulses(), rho_b, freqs);
    for (std::size_t i = 0; i < freqs.size(); ++i)
        CHECK(std::abs(sa[i] - sb[i]) < 1e-12 * std::abs(sa[i]));
}

TEST_CASE("pump-resolved signal recomposes from doorway-weighted slices") {
    const auto model = make_model(1.25);
    const auto& gen = model.prop.generator();
    const auto& lv = gen.levels;
    const Eigen::MatrixXcd xi_full = bath::complex_line_frequencies(gen);
    const auto pulse = default_pulses();

    engine::GridRequest req;
    req.shift_axis = engine::make_axis(60.0, 230.0, 6.0);
    req.pump_axis = {ev_to_radps(model.basis.omega_lp()), 2770.0,
                     ev_to_radps(model.basis.omega_up())};
    req.delay_axis = {0.03, 1.0, 5.0};
    const auto grid = engine::signal_2d(model.basis, model.prop, pulse, req);

    // Independent recomposition through the public pieces: evolve each bright
    // slice's diagonal and off-diagonal parts separately and weight by the
    // slice Lorentzian in w0.
    const int n = model.basis.n_states();
    const int dim = lv.dimension();
    for (std::size_t p = 0; p < req.pump_axis.size(); ++p) {
        for (std::size_t d = 0; d < req.delay_axis.size(); ++d) {
            std::vector<double> pop(req.shift_axis.size(), 0.0);
            std::vector<double> coh(req.shift_axis.size(), 0.0);
            for (int e1 : {model.basis.lp_index(), model.basis.up_index()}) {
                const double mu1 = model.basis.dipoles_ge(e1);
                Eigen::MatrixXcd slice = Eigen::MatrixXcd::Zero(dim, dim);
                for (int e2 = 0; e2 < n; ++e2)
                    slice(lv.level_of(e2), lv.level_of(e1)) = model.basis.dipoles_ge(e2) * mu1;
                const auto [pop0, coh0] = engine::split_channels(slice);
                const double lw = engine::doorway_lorentzian(
                    req.pump_axis[p], xi_full(lv.level_of(e1), lv.ground()));
                for (auto [part, out] : {std::pair{&pop0, &pop}, std::pair{&coh0, &coh}}) {
                    const Eigen::MatrixXcd evolved =
                        model.prop.propagate_operator(*part, req.delay_axis[d]);
                    const auto curve = engine::spectrum_from_state(
                        model.basis, model.xi_manifold, pulse,
                        evolved.block(1, 1, n, n), req.shift_axis);
                    for (std::size_t s = 0; s < curve.size(); ++s)
                        (*out)[s] += lw * curve[s];
                }
            }
            for (std::size_t s = 0; s < req.shift_axis.size(); ++s) {
                const std::size_t idx = grid.index(d, p, s);
                CHECK(std::abs(grid.population[idx] - pop[s]) <
                      1e-10 * std::max(1e-300, std::abs(pop[s])) + 1e-18);
                CHECK(std::abs(grid.coherence[idx] - coh[s]) <
                      1e-10 * std::max(1e-300, std::abs(coh[s])) + 1e-18);
            }
        }
    }
}

TEST_CASE("pump-resolved slices: early dominance and dark-state growth") {
    const auto model = make_model(1.25);
    engine::GridRequest req;
    req.shift_axis = engine::make_axis(40.0, 260.0, 0.5);
    req.pump_axis = {ev_to_radps(model.basis.omega_lp()), ev_to_radps(model.basis.omega_up())};
    req.delay_axis = {0.03, 1.0, 5.0};
    const auto grid = engine::signal_2d(model.basis, model.prop, default_pulses(), req);

    // Pumping on the upper branch first lights up the up-ds line; pumping on
    // the lower branch the ds-lp line.
    CHECK(std::abs(local_argmax(grid, grid.population, 0, 1, 88.27, 60.0) - 88.27) <= 0.51);
    CHECK(std::abs(local_argmax(grid, grid.population, 0, 0, 130.74, 60.0) - 130.74) <= 0.51);

    // Population leaks into the dark manifold: the ds-lp line in the
    // up-pumped slice grows with delay.
    auto at = [&](std::size_t d, double v) {
        const std::size_t s =
            static_cast<std::size_t>(std::lround((v - 40.0) / 0.5));
        return grid.population[grid.index(d, 1, s)];
    };
    CHECK(at(1, 130.74) > at(0, 130.74));
    CHECK(at(2, 130.74) > at(1, 130.74));

    // The up-lp coherence beat is essentially gone after 1 ps.
    auto coh_mag = [&](std::size_t d) {
        double m = 0.0;
        for (std::size_t s = 0; s < grid.n_shift(); ++s)
            m = std::max(m, std::abs(grid.coherence[grid.index(d, 1, s)]));
        return m;
    };
    CHECK(coh_mag(1) < 0.05 * coh_mag(0));
}

TEST_CASE("grid evaluation is deterministic across thread counts") {
    const auto model = make_model(-1.25);
    engine::GridRequest req;
    req.shift_axis = engine::make_axis(60.0, 230.0, 2.0);
    req.pump_axis = engine::make_axis(2700.0, 2850.0, 50.0);
    req.delay_axis = {0.03, 2.0};

    req.threads = 1;
    const auto a = engine::signal_2d(model.basis, model.prop, default_pulses(), req);
    req.threads = 3;
    const auto b = engine::signal_2d(model.basis, model.prop, default_pulses(), req);
    CHECK(a.total == b.total);
    CHECK(a.population == b.population);
    CHECK(a.coherence == b.coherence);

    req.threads = 1;
    const auto c = engine::signal_1d(model.basis, model.prop, default_pulses(), req);
    req.threads = 3;
    const auto d = engine::signal_1d(model.basis, model.prop, default_pulses(), req);
    CHECK(c.total == d.total);
}

TEST_CASE("grids enforce the evaluation budget with a sizing hint") {
    engine::GridRequest req;
    req.shift_axis = engine::make_axis(40.0, 260.0, 0.5);
    req.delay_axis = {0.03, 1.0, 5.0};
    req.max_points = 100;

    const auto model = make_model(1.25);
    const std::string msg = testutil::thrown_message<ComputeError>([&] {
        (void)engine::signal_1d(model.basis, model.prop, default_pulses(), req);
    });
    CHECK(testutil::contains(msg, "max_points"));

    CHECK_THROWS_AS((void)engine::make_axis(10.0, 5.0, 1.0), ComputeError);
    CHECK_THROWS_AS((void)engine::make_axis(5.0, 10.0, 0.0), ComputeError);
}

TEST_CASE("make_axis includes both endpoints on exact grids") {
    const auto axis = engine::make_axis(40.0, 260.0, 0.5);
    REQUIRE(axis.size() == 441);
    CHECK(axis.front() == 40.0);
    CHECK(std::abs(axis.back() - 260.0) < 1e-9);
    const auto coarse = engine::make_axis(0.0, 1.0, 0.3);  // 0, 0.3, 0.6, 0.9
    CHECK(coarse.size() == 4);
}

TEST_CASE("charge-transfer signal: line positions, slice selectivity, linearity") {
    const auto model = make_model(1.25, /*with_ct=*/true);
    const auto& gen = model.prop.generator();
    const double w_up = ev_to_radps(model.basis.omega_up());
    const double w_lp = ev_to_radps(model.basis.omega_lp());

    engine::GridRequest req;
    req.shift_axis = engine::make_axis(180.0, 500.0, 0.5);
    req.pump_axis = {w_lp, w_up};
    req.delay_axis = {0.03, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    const auto grid = engine::signal_ct(model.basis, model.prop, default_pulses(), req);

    // Up-pumped slice at early delay shows the up-ct line; the dark and lp
    // lines appear as population relaxes downward.
    CHECK(std::abs(local_argmax(grid, grid.population, 0, 1, 452.9, 20.0) - 452.9) <= 0.51);
    CHECK(std::abs(local_argmax(grid, grid.population, 4, 1, 364.7, 20.0) - 364.7) <= 0.51);
    CHECK(std::abs(local_argmax(grid, grid.population, 6, 1, 233.9, 20.0) - 233.9) <= 0.51);

    // The lp-pumped slice never shows an appreciable up-ct line.
    for (std::size_t d = 0; d < grid.n_delay(); ++d) {
        double slice_max = 0.0, up_ct = 0.0;
        for (std::size_t s = 0; s < grid.n_shift(); ++s) {
            const double v = grid.population[grid.index(d, 0, s)];
            slice_max = std::max(slice_max, v);
            if (std::abs(grid.shift_axis[s] - 452.9) < 2.0) up_ct = std::max(up_ct, v);
        }
        CHECK(up_ct < 0.01 * slice_max);
    }

    // Peak height tracks a single population linearly: regress the lp-ct
    // line in the lp-pumped slice against the directly propagated lp
    // population of that slice.
    const auto& lv = gen.levels;
    const int dim = lv.dimension();
    std::vector<double> peak, pop;
    const std::size_t s_lp =
        static_cast<std::size_t>(std::lround((233.92 - 180.0) / 0.5));
    Eigen::MatrixXcd slice0 = Eigen::MatrixXcd::Zero(dim, dim);
    const double mu_lp = model.basis.dipoles_ge(model.basis.lp_index());
    slice0(lv.level_of(0), lv.level_of(0)) = mu_lp * mu_lp;
    for (std::size_t d = 0; d < grid.n_delay(); ++d) {
        peak.push_back(grid.population[grid.index(d, 0, s_lp)]);
        const auto rho = model.prop.propagate_operator(slice0, grid.delay_axis[d]);
        pop.push_back(rho(lv.level_of(0), lv.level_of(0)).real());
    }
    const auto nd = static_cast<double>(peak.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < peak.size(); ++i) {
        sx += pop[i];
        sy += peak[i];
        sxx += pop[i] * pop[i];
        sxy += pop[i] * peak[i];
        syy += peak[i] * peak[i];
    }
    const double r = (nd * sxy - sx * sy) /
                     std::sqrt((nd * sxx - sx * sx) * (nd * syy - sy * sy));
    CHECK(r * r > 0.999);

    // Configuration errors.
    engine::GridRequest bad = req;
    bad.pump_axis.clear();
    CHECK_THROWS_AS((void)engine::signal_ct(model.basis, model.prop, default_pulses(), bad),
                    ComputeError);
    const auto no_ct = make_model(1.25);
    CHECK_THROWS_AS((void)engine::signal_ct(no_ct.basis, no_ct.prop, default_pulses(), req),
                    ConfigError);
}
