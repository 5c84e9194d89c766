#include "agsim/wavepacket.hpp"

#include <cmath>
#include <complex>

#include "agsim/sine_basis.hpp"

namespace agsim {

namespace sb = sine_basis;

void sine_basis::fill_block(Eigen::MatrixXd& block, int n, int m0, int cols) {
    block.resize(n, cols);
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int c = 0; c < cols; ++c) {
        const double k = wavenumber(m0 + c, n);
        for (int i = 0; i < n; ++i) block(i, c) = norm * std::sin(k * (i + 1));
    }
}

namespace {

template <typename Mat>
Mat analyze_impl(const Mat& x) {
    const int n = static_cast<int>(x.rows());
    Mat c(n, x.cols());
    Eigen::MatrixXd block;
    constexpr int kBlock = 256;
    for (int m0 = 1; m0 <= n; m0 += kBlock) {
        const int cols = std::min(kBlock, n - m0 + 1);
        sb::fill_block(block, n, m0, cols);
        c.middleRows(m0 - 1, cols).noalias() = block.transpose() * x;
    }
    return c;
}

} // namespace

Eigen::MatrixXcd sine_basis::analyze(const Eigen::MatrixXcd& x) { return analyze_impl(x); }
Eigen::MatrixXd sine_basis::analyze(const Eigen::MatrixXd& x) { return analyze_impl(x); }

Eigen::MatrixXcd sine_basis::synthesize(const Eigen::MatrixXcd& c) {
    const int n = static_cast<int>(c.rows());
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, c.cols());
    Eigen::MatrixXd block;
    constexpr int kBlock = 256;
    for (int m0 = 1; m0 <= n; m0 += kBlock) {
        const int cols = std::min(kBlock, n - m0 + 1);
        sb::fill_block(block, n, m0, cols);
        x.noalias() += block * c.middleRows(m0 - 1, cols);
    }
    return x;
}

std::vector<std::string> WavePacketSpec::warnings() const {
    std::vector<std::string> out;
    if (amplitude > 0.1)
        out.push_back("packet amplitude > 0.1: harmonic approximation degrades");
    if (center_wavenumber > 0.0 && 2.0 * constants::pi / center_wavenumber < 10.0)
        out.push_back("packet wavelength < 10 cells: strong lattice dispersion");
    return out;
}

void WavePacketSpec::validate(int num_cells, const SimConfig& config) const {
    if (amplitude < 0.0) throw domain_error("packet amplitude must be >= 0");
    if (!(width > 0.0)) throw domain_error("packet width must be > 0");
    if (!(center_wavenumber > 0.0 && center_wavenumber < constants::pi))
        throw domain_error("packet wavenumber must lie in (0, pi) per cell");
    const double margin = 4.0 * width;
    double lo = 0.0, hi = num_cells - 1.0;
    if (config.boundary == SimConfig::Boundary::sponge) {
        lo += config.sponge_width;
        hi -= config.sponge_width;
    }
    if (center - margin < lo || center + margin > hi)
        throw config_error("packet support overlaps the boundary/sponge region");
}

LatticeState init_sine_mode(int mode_index, double amplitude, const SquidArrayParams& params,
                            const SimConfig& config, double flux_fraction) {
    params.validate();
    (void)flux_fraction;
    const int n = params.num_cells;
    if (config.boundary == SimConfig::Boundary::periodic)
        throw config_error("sine modes assume clamped ends");
    if (mode_index < 1 || mode_index > n)
        throw domain_error("mode_index must lie in [1, num_cells]");
    LatticeState state;
    state.time = 0.0;
    state.p = Eigen::VectorXd::Zero(n);
    state.phi.resize(n);
    const double k = sb::wavenumber(mode_index, n);
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int i = 0; i < n; ++i) state.phi(i) = amplitude * norm * std::sin(k * (i + 1));
    return state;
}

LatticeState init_wavepacket(const WavePacketSpec& spec, const SquidArrayParams& params,
                             const SimConfig& config, double flux_fraction) {
    params.validate();
    const int n = params.num_cells;
    spec.validate(n, config);

    LatticeState state;
    state.time = 0.0;
    state.phi = Eigen::VectorXd::Zero(n);
    state.p = Eigen::VectorXd::Zero(n);
    if (spec.amplitude == 0.0) return state;

    const double sign = spec.direction == WavePacketSpec::Direction::right ? 1.0 : -1.0;
    Eigen::MatrixXcd z(n, 1);
    for (int i = 0; i < n; ++i) {
        const double dx = i - spec.center;
        const double env = std::exp(-dx * dx / (4.0 * spec.width * spec.width));
        z(i, 0) = spec.amplitude * env *
                  std::exp(std::complex<double>(0.0, sign * spec.center_wavenumber * dx));
    }

    const double mu = config.include_junction_capacitance ? params.capacitance_ratio() : 0.0;
    const double chi = std::cos(constants::pi * flux_fraction);
    Eigen::MatrixXcd c = sb::analyze(z);
    Eigen::MatrixXcd cdot(n, 1);
    for (int m = 1; m <= n; ++m) {
        const double k = sb::wavenumber(m, n);
        const double om = sb::mode_frequency(k, chi, mu);
        const double nu = sb::mass_eigenvalue(k, mu);
        cdot(m - 1, 0) = std::complex<double>(0.0, -om) * nu * c(m - 1, 0);
    }
    state.phi = sb::synthesize(c).col(0).real();
    // p = M phi': the mass eigenvalue nu_m is folded in above.
    state.p = sb::synthesize(cdot).col(0).real();
    return state;
}

} // namespace agsim
