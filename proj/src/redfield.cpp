#include "fsrs/redfield.hpp"

#include <cmath>
#include <complex>

#include "fsrs/constants.hpp"
#include "fsrs/errors.hpp"

namespace fsrs::bath {

namespace {

using cplx = std::complex<double>;

// Column-major vectorization index of rho(r, c).
inline int vec_index(int r, int c, int dim) { return r + dim * c; }

// Adds coeff * (B^T (x) A) to the superoperator, i.e. the map rho -> A rho B.
void add_sandwich(Eigen::MatrixXcd& super, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                  cplx coeff) {
    const int dim = static_cast<int>(a.rows());
    for (int c2 = 0; c2 < dim; ++c2)
        for (int c1 = 0; c1 < dim; ++c1) {
            const double bt = b(c1, c2);  // (B^T)(c2, c1)
            if (bt == 0.0) continue;
            for (int r2 = 0; r2 < dim; ++r2)
                for (int r1 = 0; r1 < dim; ++r1) {
                    const double av = a(r2, r1);
                    if (av == 0.0) continue;
                    super(vec_index(r2, c2, dim), vec_index(r1, c1, dim)) += coeff * av * bt;
                }
        }
}

// Lindblad dissipator D[c] rho = c rho c^+ - 1/2 {c^+ c, rho} for a real
// jump operator, scaled by `rate`.
void add_dissipator(Eigen::MatrixXcd& super, const Eigen::MatrixXd& c, double rate) {
    const int dim = static_cast<int>(c.rows());
    const Eigen::MatrixXd ctc = c.transpose() * c;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);
    add_sandwich(super, c, c.transpose(), rate);
    add_sandwich(super, ctc, eye, -0.5 * rate);
    add_sandwich(super, eye, ctc, -0.5 * rate);
}

}  // namespace

std::vector<RateChannel> relaxation_rates(const core::PolaritonBasis& basis,
                                          const BathSpec& bath) {
    bath.validate();
    const int n_states = basis.n_states();
    const double degenerate_gap = 1e-9;  // rad/ps
    std::vector<RateChannel> channels;
    channels.reserve(static_cast<std::size_t>(n_states) * (n_states - 1) / 2);

    for (int a = 0; a < n_states; ++a)
        for (int b = 0; b < a; ++b) {
            RateChannel ch;
            // Basis order is ascending in energy, so `a` is the upper state.
            ch.upper = a;
            ch.lower = b;
            ch.omega_radps = ev_to_radps(basis.frequencies(a) - basis.frequencies(b));
            double weight = 0.0;
            for (int i = 0; i < basis.n_molecules; ++i) {
                const double ua = basis.transform(a, i);
                const double ub = basis.transform(b, i);
                weight += ua * ua * ub * ub;
            }
            ch.weight = weight;
            if (ch.omega_radps > degenerate_gap) {
                ch.gamma = spectral_density(ch.omega_radps, bath) * weight;
                const double nbar = bose_occupation(ch.omega_radps, bath.temperature);
                ch.rate_up = ch.gamma * nbar;
                ch.rate_down = ch.gamma * (nbar + 1.0);
            } else {
                // Degenerate pair: J(w) n(w) -> 2 lambda0 kT / (hbar gamma0).
                ch.gamma = 0.0;
                const double limit = degenerate_transfer_limit(bath) * weight;
                ch.rate_up = limit;
                ch.rate_down = limit;
            }
            channels.push_back(ch);
        }
    return channels;
}

RedfieldGenerator build_generator(const core::PolaritonBasis& basis, const BathSpec& bath,
                                  std::optional<double> ct_energy_ev) {
    RedfieldGenerator gen;
    gen.bath = bath;
    gen.levels.n_molecules = basis.n_molecules;
    gen.levels.has_ct = ct_energy_ev.has_value();
    const int dim = gen.levels.dimension();

    gen.energies_ev = Eigen::VectorXd::Zero(dim);
    for (int m = 0; m < basis.n_states(); ++m)
        gen.energies_ev(gen.levels.level_of(m)) = basis.frequencies(m);
    if (ct_energy_ev) gen.energies_ev(gen.levels.ct_level()) = *ct_energy_ev;

    gen.rates = relaxation_rates(basis, bath);

    gen.matrix = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);

    // Coherent part -i [H0, rho] with H0 diagonal in the level basis.
    const cplx im(0.0, 1.0);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const double w_rc = ev_to_radps(gen.energies_ev(r) - gen.energies_ev(c));
            gen.matrix(vec_index(r, c, dim), vec_index(r, c, dim)) += -im * w_rc;
        }

    // Bath channels between manifold levels (excitation-number conserving:
    // no decay to the ground state, no coupling to the CT level).
    for (const auto& ch : gen.rates) {
        const int up_l = gen.levels.level_of(ch.upper);
        const int lo_l = gen.levels.level_of(ch.lower);
        Eigen::MatrixXd jump_down = Eigen::MatrixXd::Zero(dim, dim);
        jump_down(lo_l, up_l) = 1.0;  // |lower><upper|
        add_dissipator(gen.matrix, jump_down, ch.rate_down);
        Eigen::MatrixXd jump_up = Eigen::MatrixXd::Zero(dim, dim);
        jump_up(up_l, lo_l) = 1.0;  // |upper><lower|
        add_dissipator(gen.matrix, jump_up, ch.rate_up);
    }

    // Uniform extra dephasing: sum_a gamma D[|a><a|] leaves populations alone
    // and damps every coherence at exactly gamma_extra.
    if (bath.extra_dephasing > 0.0) {
        for (int a = 0; a < dim; ++a) {
            Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(dim, dim);
            proj(a, a) = 1.0;
            add_dissipator(gen.matrix, proj, bath.extra_dephasing);
        }
    }

    // Total outgoing population rate per level; ground and CT have none.
    gen.out_rates = Eigen::VectorXd::Zero(dim);
    for (const auto& ch : gen.rates) {
        gen.out_rates(gen.levels.level_of(ch.upper)) += ch.rate_down;
        gen.out_rates(gen.levels.level_of(ch.lower)) += ch.rate_up;
    }

    gen.dephasing = Eigen::MatrixXd::Zero(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            gen.dephasing(a, b) = 0.5 * (gen.out_rates(a) + gen.out_rates(b));

    return gen;
}

Eigen::MatrixXcd complex_line_frequencies(const RedfieldGenerator& gen) {
    const int dim = gen.levels.dimension();
    Eigen::MatrixXcd xi(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const double w_ab = ev_to_radps(gen.energies_ev(a) - gen.energies_ev(b));
            xi(a, b) = cplx(w_ab, -(gen.dephasing(a, b) + gen.bath.extra_dephasing));
        }
    return xi;
}

Eigen::VectorXd gibbs_populations(const core::PolaritonBasis& basis, double temperature_k) {
    const double kt = thermal_energy_ev(temperature_k);
    Eigen::VectorXd p(basis.n_states());
    // Shift by the lowest level for numerical safety before normalizing.
    const double e0 = basis.frequencies.minCoeff();
    for (int m = 0; m < basis.n_states(); ++m)
        p(m) = std::exp(-(basis.frequencies(m) - e0) / kt);
    p /= p.sum();
    return p;
}

}  // namespace fsrs::bath
