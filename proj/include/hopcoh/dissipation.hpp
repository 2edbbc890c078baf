#pragma once

#include "hopcoh/bogoliubov.hpp"
#include "hopcoh/model.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace hopcoh {

/// Two Ohmic reservoirs: spectral responses zeta_a(w) = gamma*w,
/// zeta_b(w) = kappa*w, at temperatures T_a, T_b (k_B = 1).
struct BathSpec {
    double gamma = 1e-3;
    double kappa = 1e-3;
    double T_a = 0.0;
    double T_b = 0.0;
};

inline void check_bath(const BathSpec& b)
{
    if (b.gamma < 0.0 || b.kappa < 0.0)
        throw std::invalid_argument("rates must be non-negative");
    if (b.T_a < 0.0 || b.T_b < 0.0)
        throw std::invalid_argument("temperatures must be non-negative");
}

/// Bose occupation 1/(e^{w/T} - 1); exactly zero at T = 0.
inline double thermal_occupation(double omega, double temperature)
{
    if (!(omega > 0.0)) throw std::invalid_argument("frequency must be positive");
    if (temperature < 0.0) throw std::invalid_argument("temperature must be non-negative");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

struct ModeRates {
    double weight_a = 0.0;  // zeta_a(w_j) |W_j|^2
    double weight_b = 0.0;  // zeta_b(w_j) |X_j|^2
    double gain = 0.0;      // Gamma(+w_j)
    double loss = 0.0;      // Gamma(-w_j)
    double damping() const { return weight_a + weight_b; }
};

struct RateSet {
    ModeRates plus, minus;
};

inline RateSet rates(const PolaritonBasis& basis, const BathSpec& bath)
{
    check_bath(bath);
    auto mode = [&](double wj, const ModeCoefficients& c) {
        ModeRates r;
        r.weight_a = bath.gamma * wj * std::norm(c.w - c.y);
        r.weight_b = bath.kappa * wj * std::norm(c.x - c.z);
        const double na = thermal_occupation(wj, bath.T_a);
        const double nb = thermal_occupation(wj, bath.T_b);
        r.gain = r.weight_a * na + r.weight_b * nb;
        r.loss = r.weight_a * (na + 1.0) + r.weight_b * (nb + 1.0);
        return r;
    };
    return RateSet{mode(basis.omega_plus, basis.plus),
                   mode(basis.omega_minus, basis.minus)};
}

/// Second moments in the polariton basis; index 0 is the + mode.
struct MomentVector {
    std::array<Complex, 2> p2{};    // <p_j^2>
    std::array<Complex, 2> pd2{};   // <p_j^dag 2>
    std::array<Complex, 2> occ{};   // <p_j^dag p_j>
    Complex pd_plus_p_minus{};
    Complex pd_minus_p_plus{};
    Complex pd_plus_pd_minus{};
    Complex p_plus_p_minus{};
};

namespace detail {

struct LinearCoeff {
    Complex slope;   // m' = slope * m + source
    Complex source;
};

inline std::array<LinearCoeff, 10> moment_system(const PolaritonBasis& basis,
                                                 const RateSet& rs)
{
    const std::array<double, 2> w{basis.omega_plus, basis.omega_minus};
    const std::array<double, 2> z{rs.plus.damping(), rs.minus.damping()};
    const std::array<double, 2> gain{rs.plus.gain, rs.minus.gain};
    const Complex i(0, 1);
    std::array<LinearCoeff, 10> sys;
    for (int j = 0; j < 2; ++j) {
        sys[j] = {-z[j] - 2.0 * i * w[j], 0.0};       // p2
        sys[2 + j] = {-z[j] + 2.0 * i * w[j], 0.0};   // pd2
        sys[4 + j] = {-z[j], gain[j]};                // occ
    }
    const double zsum = z[0] + z[1];
    const double wdiff = w[0] - w[1], wsum = w[0] + w[1];
    sys[6] = {-zsum + i * wdiff, 0.0};  // <p+^dag p->
    sys[7] = {-zsum - i * wdiff, 0.0};  // <p-^dag p+>
    sys[8] = {-zsum + i * wsum, 0.0};   // <p+^dag p-^dag>
    sys[9] = {-zsum - i * wsum, 0.0};   // <p+ p->
    return sys;
}

inline std::array<Complex, 10> pack(const MomentVector& m)
{
    return {m.p2[0], m.p2[1], m.pd2[0], m.pd2[1], m.occ[0], m.occ[1],
            m.pd_plus_p_minus, m.pd_minus_p_plus, m.pd_plus_pd_minus,
            m.p_plus_p_minus};
}

inline MomentVector unpack(const std::array<Complex, 10>& v)
{
    MomentVector m;
    m.p2 = {v[0], v[1]};
    m.pd2 = {v[2], v[3]};
    m.occ = {v[4], v[5]};
    m.pd_plus_p_minus = v[6];
    m.pd_minus_p_plus = v[7];
    m.pd_plus_pd_minus = v[8];
    m.p_plus_p_minus = v[9];
    return m;
}

} // namespace detail

/// Right-hand sides of the second-moment equations of motion.
inline MomentVector moment_derivatives(const MomentVector& moments,
                                       const RateSet& rs,
                                       const PolaritonBasis& basis)
{
    const auto sys = detail::moment_system(basis, rs);
    const auto v = detail::pack(moments);
    std::array<Complex, 10> dv;
    for (int k = 0; k < 10; ++k) dv[k] = sys[k].slope * v[k] + sys[k].source;
    return detail::unpack(dv);
}

/// Analytic time evolution: every equation is scalar linear with constant
/// coefficients, so each moment relaxes exponentially to its fixed point.
inline MomentVector evolve_moments(const MomentVector& initial,
                                   const PolaritonBasis& basis,
                                   const RateSet& rs, double t)
{
    if (t < 0.0) throw std::invalid_argument("time must be non-negative");
    const auto sys = detail::moment_system(basis, rs);
    const auto v0 = detail::pack(initial);
    std::array<Complex, 10> vt;
    for (int k = 0; k < 10; ++k) {
        const auto [c, s] = sys[k];
        if (c == Complex(0.0)) {
            vt[k] = v0[k] + s * t;
        } else {
            const Complex fixed = -s / c;
            vt[k] = fixed + (v0[k] - fixed) * std::exp(c * t);
        }
    }
    return detail::unpack(vt);
}

enum class CovBasis { Bare, Polariton };

struct CovarianceState {
    Eigen::Matrix4d sigma = Eigen::Matrix4d::Identity() * 0.5;
    CovBasis basis_tag = CovBasis::Bare;
};

/// Steady-state quadrature variance of one polariton mode.
inline double steady_mode_variance(const ModeRates& r, double omega,
                                   const BathSpec& bath)
{
    if (r.damping() <= 0.0)
        throw std::domain_error("undamped mode, no unique steady state");
    const double na = thermal_occupation(omega, bath.T_a);
    const double nb = thermal_occupation(omega, bath.T_b);
    return (r.weight_a * (1.0 + 2.0 * na) + r.weight_b * (1.0 + 2.0 * nb))
           / (2.0 * r.damping());
}

/// Diagonal steady-state covariance diag(nu+, nu+, nu-, nu-) in the
/// polariton basis; symmetrized X-P covariance is zero.
inline CovarianceState steady_polariton_covariance(const PolaritonBasis& basis,
                                                   const BathSpec& bath)
{
    const RateSet rs = rates(basis, bath);
    const double nup = steady_mode_variance(rs.plus, basis.omega_plus, bath);
    const double num = steady_mode_variance(rs.minus, basis.omega_minus, bath);
    CovarianceState st;
    st.basis_tag = CovBasis::Polariton;
    st.sigma = Eigen::Vector4d(nup, nup, num, num).asDiagonal();
    return st;
}

/// Ground-state covariance in the bare basis. FullHopfield uses the explicit
/// tau/delta formulas; other variants go through the symplectic transform.
inline CovarianceState ground_state_covariance(const ModelParams& p)
{
    check_params(p);
    CovarianceState st;
    st.basis_tag = CovBasis::Bare;
    if (p.g == 0.0) return st;  // decoupled oscillators: bare vacuum
    if (p.variant == Variant::FullHopfield) {
        const auto [wp, wm] = hopfield_frequencies(p);
        const auto c = bare_coefficients(p);
        const double xx = 0.5 * p.omega_a * (c.tau_plus / wp + c.tau_minus / wm);
        const double pp = 0.5 * (wp * c.tau_plus + wm * c.tau_minus) / p.omega_a;
        Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
        s.diagonal() << xx, pp, xx, pp;
        s(0, 3) = s(3, 0) = c.delta;
        s(1, 2) = s(2, 1) = c.delta;
        st.sigma = s;
        return st;
    }
    const PolaritonBasis basis = diagonalize_general(build_quadratic_form(p));
    st.sigma = 0.5 * basis.transform * basis.transform.transpose();
    return st;
}

/// Transform-path ground-state covariance S (I/2) S^T, any stable variant.
inline CovarianceState ground_state_covariance_transform(const ModelParams& p)
{
    const PolaritonBasis basis = p.variant == Variant::FullHopfield && p.g > 0.0
                                     ? hopfield_coefficients(p)
                                     : diagonalize_general(build_quadratic_form(p));
    CovarianceState st;
    st.basis_tag = CovBasis::Bare;
    st.sigma = 0.5 * basis.transform * basis.transform.transpose();
    return st;
}

/// Thermal steady-state covariance in the bare basis, S sigma' S^T.
inline CovarianceState thermal_bare_covariance(const ModelParams& p,
                                               const BathSpec& bath)
{
    const PolaritonBasis basis = polariton_basis(p);
    const CovarianceState sp = steady_polariton_covariance(basis, bath);
    CovarianceState st;
    st.basis_tag = CovBasis::Bare;
    st.sigma = basis.transform * sp.sigma * basis.transform.transpose();
    return st;
}

/// Explicit-block thermal covariance for FullHopfield (g > 0). The matter
/// momentum entry carries a 1/omega_j weight; without it the blocks do not
/// reproduce the transform path or the Fock-space steady state.
inline CovarianceState thermal_bare_covariance_explicit(const ModelParams& p,
                                                        const BathSpec& bath)
{
    if (p.variant != Variant::FullHopfield || p.g <= 0.0)
        throw std::invalid_argument("explicit blocks require FullHopfield, g > 0");
    const PolaritonBasis basis = hopfield_coefficients(p);
    const RateSet rs = rates(basis, bath);
    const double wp = basis.omega_plus, wm = basis.omega_minus;
    const double vp = steady_mode_variance(rs.plus, wp, bath);
    const double vm = steady_mode_variance(rs.minus, wm, bath);
    const auto c = bare_coefficients(p);
    const double wa = p.omega_a, wb = p.omega_b, g = p.g;

    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s(0, 0) = wa * (vp * c.tau_plus / wp + vm * c.tau_minus / wm);
    s(1, 1) = (wp * vp * c.tau_plus + wm * vm * c.tau_minus) / wa;
    s(2, 2) = 4.0 * g * g * wa * (wp * vp * c.chi_plus + wm * vm * c.chi_minus);
    s(3, 3) = 4.0 * g * g * wa * wb * wb
              * (vp * c.chi_plus / wp + vm * c.chi_minus / wm);
    const double sab01 = -2.0 * g * wa * wb
                         * (vp * c.vartheta_plus / wp + vm * c.vartheta_minus / wm);
    const double sab10 = 2.0 * g * (wp * vp * c.vartheta_plus + wm * vm * c.vartheta_minus);
    s(0, 3) = s(3, 0) = sab01;
    s(1, 2) = s(2, 1) = sab10;
    return CovarianceState{s, CovBasis::Bare};
}

struct SecularReport {
    double ratio = 0.0;
    bool pass = false;
};

/// Secular-approximation validity: polariton splitting vs dissipation scale.
inline SecularReport secular_validity(const PolaritonBasis& basis,
                                      const BathSpec& bath)
{
    const double split = basis.omega_plus - basis.omega_minus;
    const double scale = std::max({bath.gamma * basis.omega_plus,
                                   bath.kappa * basis.omega_plus,
                                   std::numeric_limits<double>::min()});
    SecularReport rep;
    rep.ratio = split / scale;
    rep.pass = rep.ratio >= 10.0;
    return rep;
}

} // namespace hopcoh
