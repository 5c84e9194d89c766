#include "agsim/transmon.hpp"

#include <cmath>

namespace agsim {

using constants::hbar;
using constants::pi;
using constants::von_klitzing;

namespace {

struct ChargeDiag {
    Eigen::VectorXd levels;
    double gap;
    double element_abs; // |<1|n|0>|
};

ChargeDiag diagonalize(double ec, double ej, int n_max) {
    const int dim = 2 * n_max + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double q = i - n_max;
        h(i, i) = ec * q * q;
        if (i + 1 < dim) {
            h(i, i + 1) = -0.5 * ej;
            h(i + 1, i) = -0.5 * ej;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    ChargeDiag out;
    out.levels = es.eigenvalues().head(std::min(dim, 8));
    out.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    double elem = 0.0;
    for (int i = 0; i < dim; ++i)
        elem += es.eigenvectors()(i, 1) * (i - n_max) * es.eigenvectors()(i, 0);
    out.element_abs = std::abs(elem);
    return out;
}

} // namespace

TransmonSpec transmon_levels(double charging_energy, double josephson_energy, int n_max) {
    if (!(charging_energy > 0.0) || !(josephson_energy >= 0.0))
        throw domain_error("charging and Josephson energies must be positive");
    if (n_max < 10) throw domain_error("charge cutoff n_max must be >= 10");

    const ChargeDiag base = diagonalize(charging_energy, josephson_energy, n_max);
    const ChargeDiag doubled = diagonalize(charging_energy, josephson_energy, 2 * n_max);
    const double shift = std::abs(doubled.gap - base.gap) / doubled.gap;
    if (shift > 1e-8)
        throw cutoff_error("charge cutoff not converged: gap shift " + std::to_string(shift));

    TransmonSpec spec;
    spec.charge_cutoff = n_max;
    spec.eigenvalues = base.levels;
    spec.qubit_gap = base.gap;
    spec.charge_matrix_element = std::complex<double>(0.0, base.element_abs);
    spec.cutoff_shift = shift;
    return spec;
}

void UnruhCircuitParams::validate() const {
    if (!(cavity_frequency > 0.0)) throw domain_error("cavity_frequency must be > 0");
    if (!(cavity_capacitance > 0.0)) throw domain_error("cavity_capacitance must be > 0");
    if (!(cavity_impedance > 0.0)) throw domain_error("cavity_impedance must be > 0");
    if (fbar_capacitance < 0.0) throw domain_error("fbar_capacitance must be >= 0");
    if (!(fbar_thickness > 0.0)) throw domain_error("fbar_thickness must be > 0");
    if (drive_amplitude < 0.0) throw domain_error("drive_amplitude must be >= 0");
    if (!(junction_capacitance > 0.0)) throw domain_error("junction_capacitance must be > 0");
    if (!(josephson_energy > 0.0)) throw domain_error("josephson_energy must be > 0");
}

std::vector<std::string> UnruhCircuitParams::warnings() const {
    std::vector<std::string> out;
    if (fbar_capacitance > 0.05 * cavity_capacitance)
        out.push_back("C_m0/C_c above 0.05: single-mode cavity reduction degrades");
    if (drive_amplitude > 0.01 * fbar_thickness)
        out.push_back("A/D above 0.01: linearized capacitance modulation degrades");
    return out;
}

std::complex<double> coupling_g(const UnruhCircuitParams& circuit, const TransmonSpec& spec) {
    circuit.validate();
    const double prefactor = std::sqrt(von_klitzing / (4.0 * pi * circuit.cavity_impedance));
    return prefactor * (circuit.charging_energy() / hbar) *
           (circuit.fbar_capacitance / circuit.cavity_capacitance) *
           spec.charge_matrix_element;
}

std::complex<double> coupling_gm(const UnruhCircuitParams& circuit, std::complex<double> g) {
    circuit.validate();
    return (2.0 * circuit.junction_capacitance / circuit.island_capacitance()) *
           (circuit.drive_amplitude / circuit.fbar_thickness) * g;
}

} // namespace agsim
