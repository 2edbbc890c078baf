#pragma once

#include "hopcoh/bogoliubov.hpp"
#include "hopcoh/dissipation.hpp"
#include "hopcoh/model.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <complex>
#include <stdexcept>
#include <vector>

namespace hopcoh::fock {

using SparseC = Eigen::SparseMatrix<Complex>;
using DenseC = Eigen::MatrixXcd;

struct FockConfig {
    int n_max = 14;            // truncation per mode; dimension (n_max+1)^2
    int n_max_ceiling = 40;
    double convergence_tol = 1e-4;    // relative <a^dag a> change between growths
    double edge_tol = 1e-6;           // population allowed at the truncation edge
    int null_space_limit = 30;        // per-mode dim above which propagation is used
};

struct FockState {
    DenseC rho;                  // two-mode density matrix, photon index major
    int n_max = 0;
    Eigen::Matrix4d covariance = Eigen::Matrix4d::Identity() * 0.5;
    double edge_population = 0.0;
};

namespace detail {

inline SparseC identity(int d)
{
    SparseC id(d, d);
    id.setIdentity();
    return id;
}

inline SparseC lower(int n)
{
    SparseC a(n, n);
    std::vector<Eigen::Triplet<Complex>> t;
    for (int k = 1; k < n; ++k) t.emplace_back(k - 1, k, std::sqrt(double(k)));
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

inline SparseC kron(const SparseC& a, const SparseC& b)
{
    SparseC out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<Complex>> t;
    t.reserve(std::size_t(a.nonZeros()) * std::size_t(b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (SparseC::InnerIterator ia(a, ka); ia; ++ia)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (SparseC::InnerIterator ib(b, kb); ib; ++ib)
                    t.emplace_back(int(ia.row()) * int(b.rows()) + int(ib.row()),
                                   int(ia.col()) * int(b.cols()) + int(ib.col()),
                                   ia.value() * ib.value());
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

struct Operators {
    SparseC a, b, ad, bd;
    int n;  // per-mode dimension
};

inline Operators two_mode_ops(int n_max)
{
    const int n = n_max + 1;
    Operators op;
    op.n = n;
    const SparseC low = lower(n), id = identity(n);
    op.a = kron(low, id);
    op.b = kron(id, low);
    op.ad = SparseC(op.a.adjoint());
    op.bd = SparseC(op.b.adjoint());
    return op;
}

} // namespace detail

/// Truncated-Fock Hamiltonian of the selected variant.
inline SparseC build_hamiltonian(const ModelParams& p, int n_max,
                                 const FockConfig& cfg = {})
{
    check_params(p);
    if (n_max > cfg.n_max_ceiling)
        throw std::invalid_argument("truncation exceeds configured ceiling");
    const auto op = detail::two_mode_ops(n_max);
    const Complex i(0, 1);
    const double D = p.diamagnetic();
    const SparseC h0 = p.omega_a * (op.ad * op.a).eval()
                       + p.omega_b * (op.bd * op.b).eval();
    const SparseC xsum = op.a + op.ad;
    const SparseC pdiff = op.b - op.bd;
    switch (p.variant) {
    case Variant::FullHopfield:
        return SparseC(h0 + i * p.g * (xsum * pdiff) + D * (xsum * xsum));
    case Variant::Dicke:
        return SparseC(h0 + i * p.g * (xsum * pdiff));
    case Variant::NoAnti:
        return SparseC(h0 + i * p.g * (op.ad * op.b - op.a * op.bd)
                       + D * (op.ad * op.a + op.a * op.ad));
    case Variant::NoRes:
        return SparseC(h0 + i * p.g * (op.a * op.b - op.ad * op.bd)
                       + D * (op.a * op.a + op.ad * op.ad));
    case Variant::SPlusSqueeze:
        return SparseC(h0 + i * p.g * (xsum * pdiff)
                       + D * (op.a * op.a + op.ad * op.ad));
    case Variant::SPlusPhase:
        return SparseC(h0 + i * p.g * (xsum * pdiff)
                       + D * (op.ad * op.a + op.a * op.ad));
    }
    throw std::logic_error("unreachable");
}

namespace detail {

inline Eigen::Matrix4d covariance_of(const DenseC& rho, int n_max)
{
    const auto op = two_mode_ops(n_max);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex i(0, 1);
    std::array<DenseC, 4> quad;
    quad[0] = inv_sqrt2 * DenseC(op.a + op.ad);
    quad[1] = i * inv_sqrt2 * DenseC(op.ad - op.a);
    quad[2] = inv_sqrt2 * DenseC(op.b + op.bd);
    quad[3] = i * inv_sqrt2 * DenseC(op.bd - op.b);
    Eigen::Matrix4d sig;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            sig(r, c) = 0.5 * ((quad[r] * quad[c] + quad[c] * quad[r]) * rho)
                            .trace().real();
    return sig;
}

inline double edge_population(const DenseC& rho, int n_max)
{
    const int n = n_max + 1;
    double pop = 0.0;
    for (int na = 0; na < n; ++na)
        for (int nb = 0; nb < n; ++nb)
            if (na == n_max || nb == n_max)
                pop += rho(na * n + nb, na * n + nb).real();
    return pop;
}

inline double photon_number(const DenseC& rho, int n_max)
{
    const auto op = two_mode_ops(n_max);
    return (DenseC(op.ad * op.a) * rho).trace().real();
}

} // namespace detail

/// Ground state by dense diagonalization, growing the truncation until the
/// photon occupation converges.
inline FockState ground_state(const ModelParams& p, const FockConfig& cfg = {})
{
    const auto stab = validate_stability(build_quadratic_form(p));
    if (!stab.stable)
        throw std::domain_error("unstable variant has no ground state");
    double prev = -1.0;
    FockState best;
    for (int n_max = cfg.n_max; n_max <= cfg.n_max_ceiling;
         n_max = std::min(n_max * 2, n_max == cfg.n_max_ceiling
                                         ? cfg.n_max_ceiling + 1
                                         : cfg.n_max_ceiling)) {
        const DenseC h = DenseC(build_hamiltonian(p, n_max, cfg));
        Eigen::SelfAdjointEigenSolver<DenseC> es(h);
        const Eigen::VectorXcd gs = es.eigenvectors().col(0);
        FockState st;
        st.n_max = n_max;
        st.rho = gs * gs.adjoint();
        st.covariance = detail::covariance_of(st.rho, n_max);
        st.edge_population = detail::edge_population(st.rho, n_max);
        const double na = detail::photon_number(st.rho, n_max);
        const double scale = std::max(1.0, std::abs(na));
        if (prev >= 0.0 && std::abs(na - prev) / scale < cfg.convergence_tol
            && st.edge_population < cfg.edge_tol)
            return st;
        prev = na;
        best = st;
    }
    throw std::runtime_error("ground state did not converge within the truncation ceiling");
}

namespace detail {

/// Lindblad generator applied to rho for the polariton-basis jump operators.
struct Generator {
    DenseC h;
    std::vector<std::pair<double, DenseC>> jumps;  // (rate, operator)

    DenseC apply(const DenseC& rho) const
    {
        const Complex i(0, 1);
        DenseC out = -i * (h * rho - rho * h);
        for (const auto& [r, o] : jumps) {
            const DenseC od = o.adjoint();
            out += r * (o * rho * od - 0.5 * (od * o * rho + rho * od * o));
        }
        return out;
    }
};

inline Generator make_generator(const ModelParams& p, const BathSpec& bath,
                                int n_max, const FockConfig& cfg)
{
    const auto op = two_mode_ops(n_max);
    const PolaritonBasis basis = polariton_basis(p);
    const RateSet rs = rates(basis, bath);
    Generator gen;
    gen.h = DenseC(build_hamiltonian(p, n_max, cfg));
    auto add_mode = [&](const ModeCoefficients& c, const ModeRates& r) {
        const DenseC pj = DenseC(c.w * op.a + c.x * op.b + c.y * op.ad + c.z * op.bd);
        if (r.gain > 0.0) gen.jumps.emplace_back(r.gain, pj.adjoint());
        if (r.loss > 0.0) gen.jumps.emplace_back(r.loss, pj);
    };
    add_mode(basis.plus, rs.plus);
    add_mode(basis.minus, rs.minus);
    return gen;
}

/// Sparse Liouvillian (column-stacking vec convention).
inline SparseC liouvillian(const ModelParams& p, const BathSpec& bath,
                           int n_max, const FockConfig& cfg)
{
    const auto op = two_mode_ops(n_max);
    const int d = op.n * op.n;
    const SparseC id = identity(d);
    const Complex i(0, 1);
    const SparseC h = build_hamiltonian(p, n_max, cfg);
    SparseC l = -i * (kron(id, h) - kron(SparseC(h.transpose()), id));

    const PolaritonBasis basis = polariton_basis(p);
    const RateSet rs = rates(basis, bath);
    auto add_jump = [&](double rate, const SparseC& o) {
        if (rate <= 0.0) return;
        const SparseC od = SparseC(o.adjoint());
        const SparseC odo = SparseC(od * o);
        l = l + rate * (kron(SparseC(o.conjugate()), o)
                        - 0.5 * kron(id, odo)
                        - 0.5 * kron(SparseC(odo.transpose()), id));
    };
    auto add_mode = [&](const ModeCoefficients& c, const ModeRates& r) {
        const SparseC pj = SparseC(c.w * op.a + c.x * op.b + c.y * op.ad + c.z * op.bd);
        add_jump(r.gain, SparseC(pj.adjoint()));
        add_jump(r.loss, pj);
    };
    add_mode(basis.plus, rs.plus);
    add_mode(basis.minus, rs.minus);
    return l;
}

inline DenseC steady_by_null_space(const ModelParams& p, const BathSpec& bath,
                                   int n_max, const FockConfig& cfg)
{
    const int d = (n_max + 1) * (n_max + 1);
    SparseC l = liouvillian(p, bath, n_max, cfg);
    // weighted trace constraint added to the first row pins normalization
    double weight = 0.0;
    for (int k = 0; k < d * d; ++k) weight += std::abs(l.coeff(k, k));
    weight = std::max(weight / (d * d), 1e-12);
    std::vector<Eigen::Triplet<Complex>> t;
    for (int k = 0; k < d; ++k) t.emplace_back(0, k * d + k, Complex(weight, 0));
    SparseC trace_row(d * d, d * d);
    trace_row.setFromTriplets(t.begin(), t.end());
    l = SparseC(l + trace_row);
    l.makeCompressed();

    Eigen::SparseLU<SparseC> lu(l);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("Liouvillian factorization failed");
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d * d);
    rhs(0) = weight;
    const Eigen::VectorXcd x = lu.solve(rhs);
    DenseC rho = Eigen::Map<const DenseC>(x.data(), d, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return rho;
}

inline DenseC steady_by_propagation(const ModelParams& p, const BathSpec& bath,
                                    int n_max, const FockConfig& cfg)
{
    const Generator gen = make_generator(p, bath, n_max, cfg);
    const int d = (n_max + 1) * (n_max + 1);
    DenseC rho = DenseC::Zero(d, d);
    rho(0, 0) = 1.0;  // start from the bare vacuum
    // slowest relaxation sets the horizon; step from the fastest scale
    const PolaritonBasis basis = polariton_basis(p);
    const RateSet rs = rates(basis, bath);
    const double slow = std::min(rs.plus.damping(), rs.minus.damping());
    if (slow <= 0.0)
        throw std::domain_error("undamped mode, no unique steady state");
    const double dt = 0.05 / std::max(basis.omega_plus, 1.0);
    const double horizon = 40.0 / slow;
    double t = 0.0;
    while (t < horizon) {
        const DenseC k1 = gen.apply(rho);
        const DenseC k2 = gen.apply(DenseC(rho + 0.5 * dt * k1));
        const DenseC k3 = gen.apply(DenseC(rho + 0.5 * dt * k2));
        const DenseC k4 = gen.apply(DenseC(rho + dt * k3));
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return rho;
}

} // namespace detail

/// Steady state of the polariton-basis Lindblad equation: sparse null-space
/// solve at moderate truncations, long-time propagation beyond.
inline FockState lindblad_steady_state(const ModelParams& p, const BathSpec& bath,
                                       const FockConfig& cfg = {})
{
    check_bath(bath);
    for (int n_max = cfg.n_max; n_max <= cfg.n_max_ceiling;
         n_max = std::min(n_max * 2, n_max == cfg.n_max_ceiling
                                         ? cfg.n_max_ceiling + 1
                                         : cfg.n_max_ceiling)) {
        DenseC rho = (n_max + 1 <= cfg.null_space_limit)
                         ? detail::steady_by_null_space(p, bath, n_max, cfg)
                         : detail::steady_by_propagation(p, bath, n_max, cfg);
        FockState st;
        st.n_max = n_max;
        st.rho = std::move(rho);
        st.edge_population = detail::edge_population(st.rho, n_max);
        if (st.edge_population < cfg.edge_tol) {
            st.covariance = detail::covariance_of(st.rho, n_max);
            return st;
        }
    }
    throw std::runtime_error("steady state did not converge within the truncation ceiling");
}

/// Residual ||L rho|| under one application of the generator.
inline double generator_residual(const ModelParams& p, const BathSpec& bath,
                                 const FockState& st, const FockConfig& cfg = {})
{
    const auto gen = detail::make_generator(p, bath, st.n_max, cfg);
    return gen.apply(st.rho).norm();
}

/// Logarithmic negativity: ln of the trace norm of the partial transpose.
inline double negativity(const FockState& st)
{
    const int n = st.n_max + 1;
    DenseC pt(st.rho.rows(), st.rho.cols());
    for (int ia = 0; ia < n; ++ia)
        for (int ja = 0; ja < n; ++ja)
            for (int ib = 0; ib < n; ++ib)
                for (int jb = 0; jb < n; ++jb)
                    pt(ia * n + jb, ja * n + ib) = st.rho(ia * n + ib, ja * n + jb);
    Eigen::SelfAdjointEigenSolver<DenseC> es(pt);
    const double trace_norm = es.eigenvalues().cwiseAbs().sum();
    return std::max(0.0, std::log(trace_norm));
}

} // namespace hopcoh::fock
