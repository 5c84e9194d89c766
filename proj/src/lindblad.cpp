#include "agsim/lindblad.hpp"

#include <cmath>

#include "agsim/negativity.hpp"

namespace agsim {

void DensityMatrix::validate(double herm_tol, double trace_tol, double eig_tol) const {
    if (rho.rows() != rho.cols() || rho.rows() == 0)
        throw domain_error("density matrix must be square");
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol) throw accuracy_error("density matrix not Hermitian");
    const double tr = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (tr > trace_tol) throw accuracy_error("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -eig_tol)
        throw accuracy_error("density matrix has a negative eigenvalue");
}

DensityMatrix qubit_cavity_ground(int n_fock) {
    DensityMatrix d;
    d.rho = Eigen::MatrixXcd::Zero(2 * n_fock, 2 * n_fock);
    d.rho(0, 0) = 1.0;
    return d;
}

LindbladEvolver::LindbladEvolver(const RabiParams& params, Frame frame)
    : p_(params), frame_(frame), nf_(params.n_fock), dim_(2 * params.n_fock) {
    p_.validate();
    sq_.resize(nf_ + 1);
    for (int n = 0; n <= nf_; ++n) sq_(n) = std::sqrt(double(n));
    k1_.resize(dim_, dim_);
    k2_.resize(dim_, dim_);
    k3_.resize(dim_, dim_);
    k4_.resize(dim_, dim_);
    tmp_.resize(dim_, dim_);
}

LindbladEvolver::Coeffs LindbladEvolver::coeffs(double t) const {
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> big_g =
        p_.g_ratio + p_.gm_ratio * std::cos(p_.omega_m_ratio * t);
    Coeffs c;
    if (frame_ == Frame::lab) {
        c.num = 1.0;
        c.sz = 0.5 * p_.qubit_gap_ratio;
        c.pa = -i * big_g;
        c.pad = i * big_g;
        c.ma = -i * std::conj(big_g);
        c.mad = i * std::conj(big_g);
    } else {
        const std::complex<double> ph = std::exp(i * 2.0 * t);
        c.num = 0.0;
        c.sz = 0.5 * (p_.qubit_gap_ratio - 1.0);
        c.pa = -i * big_g;
        c.pad = i * big_g * ph;
        c.ma = -i * std::conj(big_g) / ph;
        c.mad = i * std::conj(big_g);
    }
    return c;
}

void LindbladEvolver::rhs(double t, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
    using cplx = std::complex<double>;
    const Coeffs c = coeffs(t);
    const int nf = nf_;
    const int d = dim_;
    out.setZero(d, d);

    const cplx* r = rho.data();
    cplx* o = out.data();
    const double* sq = sq_.data();
    const double gc = p_.gamma_c_ratio;
    const double gq = p_.gamma_qb_ratio;
    const cplx mi{0.0, -1.0};

    // -i [H, rho] term by term; column-major: column cc has offset cc*d.
    const cplx lpa = mi * c.pa, lpad = mi * c.pad, lma = mi * c.ma, lmad = mi * c.mad;
    const cplx rpa = -mi * c.pa, rpad = -mi * c.pad, rma = -mi * c.ma, rmad = -mi * c.mad;

    for (int cc = 0; cc < d; ++cc) {
        const cplx* rc = r + cc * d;
        cplx* oc = o + cc * d;
        const int n_c = cc % nf;
        const bool e_c = cc >= nf;
        // Left H rho: diagonal terms
        if (c.num != 0.0 || c.sz != 0.0) {
            for (int rr = 0; rr < d; ++rr) {
                const double diag = c.num * (rr % nf) + c.sz * (rr >= nf ? 1.0 : -1.0);
                oc[rr] += mi * diag * rc[rr];
            }
        }
        // Left sigma^+ a : row (e,m) <- sqrt(m+1) (g,m+1)
        for (int m = 0; m + 1 < nf; ++m) oc[nf + m] += lpa * sq[m + 1] * rc[m + 1];
        // Left sigma^+ a^dag : row (e,m) <- sqrt(m) (g,m-1)
        for (int m = 1; m < nf; ++m) oc[nf + m] += lpad * sq[m] * rc[m - 1];
        // Left sigma^- a : row (g,m) <- sqrt(m+1) (e,m+1)
        for (int m = 0; m + 1 < nf; ++m) oc[m] += lma * sq[m + 1] * rc[nf + m + 1];
        // Left sigma^- a^dag : row (g,m) <- sqrt(m) (e,m-1)
        for (int m = 1; m < nf; ++m) oc[m] += lmad * sq[m] * rc[nf + m - 1];

        // Right rho H contributions into this column:
        // col (g,n) of rho X with X = s^+ a gets rho(:, (e,n-1)) sqrt(n)
        if (!e_c && n_c >= 1) {
            const cplx* src = r + (nf + n_c - 1) * d;
            const cplx w = rpa * sq[n_c];
            for (int rr = 0; rr < d; ++rr) oc[rr] += w * src[rr];
        }
        // X = s^+ a^dag : col (g,n) <- rho(:, (e,n+1)) sqrt(n+1)
        if (!e_c && n_c + 1 < nf) {
            const cplx* src = r + (nf + n_c + 1) * d;
            const cplx w = rpad * sq[n_c + 1];
            for (int rr = 0; rr < d; ++rr) oc[rr] += w * src[rr];
        }
        // X = s^- a : col (e,n) <- rho(:, (g,n-1)) sqrt(n)
        if (e_c && n_c >= 1) {
            const cplx* src = r + (n_c - 1) * d;
            const cplx w = rma * sq[n_c];
            for (int rr = 0; rr < d; ++rr) oc[rr] += w * src[rr];
        }
        // X = s^- a^dag : col (e,n) <- rho(:, (g,n+1)) sqrt(n+1)
        if (e_c && n_c + 1 < nf) {
            const cplx* src = r + (n_c + 1) * d;
            const cplx w = rmad * sq[n_c + 1];
            for (int rr = 0; rr < d; ++rr) oc[rr] += w * src[rr];
        }
        if (c.num != 0.0 || c.sz != 0.0) {
            const double diag = c.num * n_c + c.sz * (e_c ? 1.0 : -1.0);
            const cplx w = -mi * diag;
            for (int rr = 0; rr < d; ++rr) oc[rr] += w * rc[rr];
        }

        // Cavity dissipator gamma_c (a rho a^dag - {a^dag a, rho}/2)
        if (gc > 0.0) {
            if (n_c + 1 < nf) {
                const cplx* src = r + (cc + 1) * d; // column (s', n_c+1)
                const double wc = gc * sq[n_c + 1];
                for (int s = 0; s < 2; ++s) {
                    const int base = s * nf;
                    for (int m = 0; m + 1 < nf; ++m)
                        oc[base + m] += wc * sq[m + 1] * src[base + m + 1];
                }
            }
            for (int rr = 0; rr < d; ++rr)
                oc[rr] -= 0.5 * gc * ((rr % nf) + n_c) * rc[rr];
        }
        // Qubit dissipator gamma_qb (s^- rho s^+ - {s^+ s^-, rho}/2)
        if (gq > 0.0) {
            if (e_c) {
                // contributes to column (g, n_c): handled when cc is that column
            }
            if (!e_c) {
                const cplx* src = r + (nf + n_c) * d; // column (e, n_c)
                for (int m = 0; m < nf; ++m) oc[m] += gq * src[nf + m];
            }
            const double we = 0.5 * gq * ((e_c ? 1.0 : 0.0));
            for (int rr = 0; rr < d; ++rr) {
                const double w = we + 0.5 * gq * (rr >= nf ? 1.0 : 0.0);
                if (w != 0.0) oc[rr] -= w * rc[rr];
            }
        }
    }
}

Eigen::MatrixXcd LindbladEvolver::rhs_dense(double t, const Eigen::MatrixXcd& rho) const {
    const std::complex<double> i{0.0, 1.0};
    const Coeffs c = coeffs(t);
    const int nf = nf_;
    Eigen::MatrixXcd a = ops::annihilation(nf);
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(2, 2);
    sp(1, 0) = 1.0;
    Eigen::MatrixXcd sm = sp.adjoint();
    Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);

    Eigen::MatrixXcd h = c.num * ops::kron(id2, ops::number(nf)) +
                         c.sz * ops::sigma_z(nf) + c.pa * ops::kron(sp, a) +
                         c.pad * ops::kron(sp, a.adjoint()) + c.ma * ops::kron(sm, a) +
                         c.mad * ops::kron(sm, a.adjoint());

    Eigen::MatrixXcd out = -i * (h * rho - rho * h);
    Eigen::MatrixXcd aj = ops::joint_annihilation(nf);
    Eigen::MatrixXcd smj = ops::sigma_minus(nf);
    out += p_.gamma_c_ratio *
           (aj * rho * aj.adjoint() -
            0.5 * (aj.adjoint() * aj * rho + rho * aj.adjoint() * aj));
    out += p_.gamma_qb_ratio *
           (smj * rho * smj.adjoint() -
            0.5 * (smj.adjoint() * smj * rho + rho * smj.adjoint() * smj));
    return out;
}

void LindbladEvolver::rk4_step(Eigen::MatrixXcd& rho, double& t, double dt) const {
    rhs(t, rho, k1_);
    tmp_ = rho + (0.5 * dt) * k1_;
    rhs(t + 0.5 * dt, tmp_, k2_);
    tmp_ = rho + (0.5 * dt) * k2_;
    rhs(t + 0.5 * dt, tmp_, k3_);
    tmp_ = rho + dt * k3_;
    rhs(t + dt, tmp_, k4_);
    rho += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    t += dt;
}

double LindbladEvolver::mean_photon(const Eigen::MatrixXcd& rho) const {
    double sum = 0.0;
    for (int r = 0; r < dim_; ++r) sum += (r % nf_) * rho(r, r).real();
    return sum;
}

double LindbladEvolver::qubit_excitation(const Eigen::MatrixXcd& rho) const {
    double sum = 0.0;
    for (int r = nf_; r < dim_; ++r) sum += rho(r, r).real();
    return sum;
}

std::complex<double> LindbladEvolver::a_squared(const Eigen::MatrixXcd& rho) const {
    std::complex<double> sum = 0.0;
    for (int s = 0; s < 2; ++s) {
        const int base = s * nf_;
        for (int m = 0; m + 2 < nf_; ++m)
            sum += sq_(m + 1) * sq_(m + 2) * rho(base + m + 2, base + m);
    }
    return sum;
}

EvolveResult lindblad_evolve(const DensityMatrix& rho0, const RabiParams& params,
                             double t_final, const EvolveOptions& options) {
    params.validate();
    rho0.validate();
    if (rho0.rho.rows() != 2 * params.n_fock)
        throw domain_error("initial state dimension does not match n_fock");
    if (!(options.dt > 0.0)) throw config_error("dt must be > 0");
    if (options.stride <= 0) throw config_error("stride must be > 0");

    LindbladEvolver evolver(params, options.frame);
    EvolveResult res;
    res.min_eigenvalue = 1.0;
    Eigen::MatrixXcd rho = rho0.rho;
    double t = rho0.time;
    const long nsteps = std::lround((t_final - rho0.time) / options.dt);

    auto record = [&]() {
        res.trace.times.push_back(t);
        res.trace.mean_photon.push_back(evolver.mean_photon(rho));
        res.trace.a_squared.push_back(evolver.a_squared(rho));
        res.trace.qubit_excitation.push_back(evolver.qubit_excitation(rho));
        if (options.record_negativity)
            res.trace.log_negativity.push_back(log_negativity(rho, params.n_fock));
        res.max_trace_error =
            std::max(res.max_trace_error, std::abs(rho.trace() - std::complex<double>(1.0)));
        res.max_hermiticity_error = std::max(
            res.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
        res.min_eigenvalue = std::min(res.min_eigenvalue, es.eigenvalues().minCoeff());
        if (res.max_trace_error > 1e-6)
            throw accuracy_error("trace drift exceeds 1e-6: reduce dt");
        if (res.min_eigenvalue < -1e-6)
            throw accuracy_error("state negativity beyond tolerance: reduce dt");
    };

    record();
    for (long s = 0; s < nsteps; ++s) {
        evolver.rk4_step(rho, t, options.dt);
        if ((s + 1) % options.stride == 0 || s + 1 == nsteps) record();
    }
    res.final_state = DensityMatrix{rho, t};
    return res;
}

} // namespace agsim
