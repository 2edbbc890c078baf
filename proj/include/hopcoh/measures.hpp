#pragma once

#include "hopcoh/dissipation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace hopcoh {

/// Entropy kernel f(x) = (x+1/2)ln(x+1/2) - (x-1/2)ln(x-1/2), f(1/2) = 0.
/// Values in [1/2 - 1e-9, 1/2) are clamped to the pure-state limit.
inline double entropy_kernel(double x)
{
    if (x < 0.5 - 1e-9)
        throw std::domain_error("unphysical symplectic eigenvalue");
    if (x <= 0.5) return 0.0;
    return (x + 0.5) * std::log(x + 0.5) - (x - 0.5) * std::log(x - 0.5);
}

/// Symplectic eigenvalues of a 4x4 covariance matrix, descending.
inline std::pair<double, double> symplectic_eigenvalues(const CovarianceState& state)
{
    const Eigen::Matrix4d& s = state.sigma;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> pd(s);
    if (pd.eigenvalues()(0) <= 0.0)
        throw std::domain_error("covariance matrix not positive definite");
    Eigen::EigenSolver<Eigen::Matrix4d> es(symplectic_form() * s);
    std::array<double, 4> mods;
    for (int i = 0; i < 4; ++i) mods[i] = std::abs(es.eigenvalues()(i));
    std::sort(mods.begin(), mods.end());
    // each value appears twice; report once each
    return {mods[3], mods[1]};
}

/// Physicality check: both symplectic eigenvalues >= 1/2 - tol.
inline bool is_physical(const CovarianceState& state, double tol = 1e-9)
{
    const auto [v1, v2] = symplectic_eigenvalues(state);
    return v2 >= 0.5 - tol;
}

/// Relative-entropy coherence of a one-mode Gaussian state.
inline double one_mode_coherence(const Eigen::Matrix2d& sigma_n,
                                 const Eigen::Vector2d& displacement)
{
    const double det = sigma_n.determinant();
    if (det < 0.25 - 1e-9)
        throw std::domain_error("unphysical one-mode covariance");
    const double v = std::sqrt(std::max(det, 0.25));
    const double mu = 0.5 * (sigma_n.trace() + displacement.squaredNorm() - 1.0);
    const double c = -entropy_kernel(v) + entropy_kernel(mu + 0.5);
    return std::max(c, 0.0);
}

/// Mean occupations (mu_a, mu_b) of a bare-basis covariance matrix.
inline std::pair<double, double> mean_occupations(const CovarianceState& state)
{
    const Eigen::Matrix4d& s = state.sigma;
    return {0.5 * (s(0, 0) + s(1, 1) - 1.0), 0.5 * (s(2, 2) + s(3, 3) - 1.0)};
}

/// Relative-entropy coherence of the two-mode state,
/// C_tot = S(rho_th) - S(rho).
inline double two_mode_coherence(const CovarianceState& state,
                                 const Eigen::Vector4d& displacement = Eigen::Vector4d::Zero())
{
    const auto [v1, v2] = symplectic_eigenvalues(state);
    const auto [mua, mub] = mean_occupations(state);
    const double da = 0.5 * displacement.head<2>().squaredNorm();
    const double db = 0.5 * displacement.tail<2>().squaredNorm();
    const double s_th = entropy_kernel(mua + da + 0.5) + entropy_kernel(mub + db + 0.5);
    const double s_rho = entropy_kernel(v1) + entropy_kernel(v2);
    return std::max(s_th - s_rho, 0.0);
}

/// Logarithmic negativity from the partial-transpose symplectic eigenvalue.
inline double log_negativity(const CovarianceState& state)
{
    const Eigen::Matrix4d& s = state.sigma;
    const double det_a = s.block<2, 2>(0, 0).determinant();
    const double det_b = s.block<2, 2>(2, 2).determinant();
    const double det_ab = s.block<2, 2>(0, 2).determinant();
    const double det_s = s.determinant();
    const double delta = det_a + det_b - 2.0 * det_ab;
    const double disc = std::max(delta * delta - 4.0 * det_s, 0.0);
    const double dmin2 = 0.5 * (delta - std::sqrt(disc));
    if (dmin2 <= 0.0)
        throw std::domain_error("covariance matrix not positive definite");
    const double dmin = std::sqrt(dmin2);
    return std::max(0.0, -std::log(2.0 * dmin));
}

struct CoherenceReport {
    double c_a = 0.0, c_b = 0.0, c_tot = 0.0;
    double mu_a = 0.0, mu_b = 0.0;
    double v1 = 0.5, v2 = 0.5;
    double log_neg = 0.0;
    bool secular_ok = true;
    double secular_ratio = std::numeric_limits<double>::infinity();
};

/// All measures for one covariance matrix (bare basis, zero displacement).
inline CoherenceReport report_from_covariance(const CovarianceState& state)
{
    CoherenceReport r;
    r.c_a = one_mode_coherence(state.sigma.block<2, 2>(0, 0), Eigen::Vector2d::Zero());
    r.c_b = one_mode_coherence(state.sigma.block<2, 2>(2, 2), Eigen::Vector2d::Zero());
    r.c_tot = two_mode_coherence(state);
    std::tie(r.mu_a, r.mu_b) = mean_occupations(state);
    std::tie(r.v1, r.v2) = symplectic_eigenvalues(state);
    r.log_neg = log_negativity(state);
    return r;
}

/// Ground-state or thermal report for one parameter point. When a bath is
/// given the thermal steady state is used and secular validity is attached.
inline CoherenceReport coherence_report(const ModelParams& params,
                                        const std::optional<BathSpec>& bath = std::nullopt)
{
    if (bath) {
        const PolaritonBasis basis = polariton_basis(params);
        CovarianceState st;
        st.basis_tag = CovBasis::Bare;
        st.sigma = basis.transform
                   * steady_polariton_covariance(basis, *bath).sigma
                   * basis.transform.transpose();
        CoherenceReport r = report_from_covariance(st);
        const auto sec = secular_validity(basis, *bath);
        r.secular_ok = sec.pass;
        r.secular_ratio = sec.ratio;
        return r;
    }
    return report_from_covariance(ground_state_covariance(params));
}

} // namespace hopcoh
