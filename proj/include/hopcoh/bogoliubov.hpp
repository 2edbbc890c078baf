#pragma once

#include "hopcoh/model.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <complex>
#include <utility>

namespace hopcoh {

using Complex = std::complex<double>;

/// Coefficients of one polariton mode, p = w a + x b + y a^dag + z b^dag.
struct ModeCoefficients {
    Complex w, x, y, z;

    /// Canonical-commutation norm |w|^2 + |x|^2 - |y|^2 - |z|^2.
    double symplectic_norm() const
    {
        return std::norm(w) + std::norm(x) - std::norm(y) - std::norm(z);
    }
};

struct PolaritonBasis {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    ModeCoefficients plus, minus;
    /// Real symplectic matrix mapping polariton quadratures (X+, P+, X-, P-)
    /// to bare quadratures (X_a, P_a, X_b, P_b).
    Eigen::Matrix4d transform = Eigen::Matrix4d::Identity();
};

/// Quadrature transform assembled from the complex mode coefficients.
inline Eigen::Matrix4d transform_from_coefficients(const ModeCoefficients& plus,
                                                   const ModeCoefficients& minus)
{
    Eigen::Matrix4d s;
    const std::array<ModeCoefficients, 2> modes{plus, minus};
    for (int k = 0; k < 2; ++k) {
        const auto& c = modes[k];
        const Complex wy_m = c.w - c.y, wy_p = c.w + c.y;
        const Complex xz_m = c.x - c.z, xz_p = c.x + c.z;
        s(0, 2 * k) = wy_m.real();
        s(0, 2 * k + 1) = wy_m.imag();
        s(1, 2 * k) = -wy_p.imag();
        s(1, 2 * k + 1) = wy_p.real();
        s(2, 2 * k) = xz_m.real();
        s(2, 2 * k + 1) = xz_m.imag();
        s(3, 2 * k) = -xz_p.imag();
        s(3, 2 * k + 1) = xz_p.real();
    }
    return s;
}

/// Recovers complex mode coefficients from a real symplectic quadrature
/// transform (bare = S * polariton). The per-mode phase is whatever the
/// transform encodes; covariance results do not depend on it.
inline std::pair<ModeCoefficients, ModeCoefficients>
coefficients_from_transform(const Eigen::Matrix4d& s)
{
    const Eigen::Matrix4d om = symplectic_form();
    const Eigen::Matrix4d sinv = -om * s.transpose() * om;  // S^-1 for symplectic S
    std::array<ModeCoefficients, 2> out;
    for (int j = 0; j < 2; ++j) {
        Eigen::Vector4cd row;
        for (int k = 0; k < 4; ++k)
            row(k) = Complex(sinv(2 * j, k), sinv(2 * j + 1, k));
        out[j].w = 0.5 * (row(0) - Complex(0, 1) * row(1));
        out[j].y = 0.5 * (row(0) + Complex(0, 1) * row(1));
        out[j].x = 0.5 * (row(2) - Complex(0, 1) * row(3));
        out[j].z = 0.5 * (row(2) + Complex(0, 1) * row(3));
    }
    return {out[0], out[1]};
}

/// Closed-form Hopfield polariton frequencies (omega_+, omega_-).
inline std::pair<double, double> hopfield_frequencies(const ModelParams& p)
{
    check_params(p);
    const double wa = p.omega_a, wb = p.omega_b;
    const double wc2 = 4.0 * p.g * p.g * wa / wb;  // omega_C^2
    const double s = wb * wb + wc2 + wa * wa;
    const double r = std::sqrt(s * s - 4.0 * wa * wa * wb * wb);
    return {std::sqrt(0.5 * (s + r)), std::sqrt(0.5 * (s - r))};
}

/// Closed-form Hopfield mode coefficients and the associated transform.
inline PolaritonBasis hopfield_coefficients(const ModelParams& p)
{
    check_params(p);
    const auto [wp, wm] = hopfield_frequencies(p);
    if (std::abs(wp - wm) < 1e-8)
        throw std::domain_error("degenerate polaritons");
    const double wa = p.omega_a, wb = p.omega_b, g = p.g;
    auto mode = [&](double wj) {
        const double n = (wj / wb) * (std::pow(1.0 - wj * wj / (wb * wb), 2)
                                      + 4.0 * g * g * wa / (wb * wb * wb));
        const double pref = 1.0 / std::sqrt(n);
        const double sq = std::sqrt(g * g * wa / (wb * wb * wb));
        ModeCoefficients c;
        c.w = pref * (wj * wj / (wb * wb) - 1.0) * (wj + wa) / (2.0 * wb)
              * std::sqrt(wb / wa);
        c.x = Complex(0, 1) * pref * sq * (1.0 + wj / wb);
        c.y = pref * (wj * wj / (wb * wb) - 1.0) * (wj - wa) / (2.0 * wb)
              * std::sqrt(wb / wa);
        c.z = Complex(0, 1) * pref * sq * (1.0 - wj / wb);
        return c;
    };
    PolaritonBasis basis;
    basis.omega_plus = wp;
    basis.omega_minus = wm;
    basis.plus = mode(wp);
    basis.minus = mode(wm);
    basis.transform = transform_from_coefficients(basis.plus, basis.minus);
    return basis;
}

/// Closed-form solution of the D = 0 model below the critical coupling.
inline PolaritonBasis dicke_solution(const ModelParams& p)
{
    check_params(p);
    if (p.g >= p.critical_coupling())
        throw std::domain_error("beyond critical coupling");
    const double wa = p.omega_a, wb = p.omega_b, g = p.g;
    const double r = std::sqrt(std::pow(wa * wa - wb * wb, 2) + 16.0 * g * g * wa * wb);
    const double wp = std::sqrt(0.5 * (wa * wa + wb * wb + r));
    const double wm = std::sqrt(0.5 * (wa * wa + wb * wb - r));
    if (std::abs(wp - wm) < 1e-8)
        throw std::domain_error("degenerate polaritons");
    auto mode = [&](double wj) {
        // x carries the opposite sign of (omega_j + omega_b)/(omega_j - omega_b);
        // the printed sign is inconsistent with the general diagonalizer.
        ModeCoefficients c;
        c.w = Complex(0, 1) * (wj * wj + wa * wb + (wa + wb) * wj) / (2.0 * g * wa);
        c.x = -(wj + wb) / (wj - wb);
        c.y = Complex(0, 1) * (wj * wj - wa * wb - (wa - wb) * wj) / (2.0 * g * wa);
        c.z = 1.0;
        double n = c.symplectic_norm();
        if (n < 0.0) {  // vector describes a creation operator; swap roles
            c = ModeCoefficients{std::conj(c.y), std::conj(c.z),
                                 std::conj(c.w), std::conj(c.x)};
            n = -n;
        }
        const double scale = 1.0 / std::sqrt(n);
        c.w *= scale; c.x *= scale; c.y *= scale; c.z *= scale;
        return c;
    };
    PolaritonBasis basis;
    basis.omega_plus = wp;
    basis.omega_minus = wm;
    basis.plus = mode(wp);
    basis.minus = mode(wm);
    basis.transform = transform_from_coefficients(basis.plus, basis.minus);
    return basis;
}

/// General symplectic diagonalizer: eigen-decomposes Omega*M, pairs the
/// conjugate eigenvalues and normalizes the eigenvectors symplectically.
/// Works for every stable variant; the closed forms above cross-check it.
inline PolaritonBasis diagonalize_general(const QuadraticForm& form)
{
    const auto stab = validate_stability(form);
    if (!stab.stable)
        throw std::domain_error("unstable quadratic form");
    const Eigen::Matrix4d om = symplectic_form();
    Eigen::EigenSolver<Eigen::Matrix4d> es(om * form.matrix);

    struct NormalMode {
        double omega;
        Eigen::Vector4d u, v;
    };
    std::array<NormalMode, 2> modes;
    int found = 0;
    for (int i = 0; i < 4 && found < 2; ++i) {
        if (es.eigenvalues()(i).imag() <= 0.0) continue;
        const double w = es.eigenvalues()(i).imag();
        Eigen::Vector4d u = es.eigenvectors().col(i).real();
        Eigen::Vector4d v = es.eigenvectors().col(i).imag();
        double c = u.dot(om * v);
        if (c < 0.0) { v = -v; c = -c; }
        u /= std::sqrt(c);
        v /= std::sqrt(c);
        modes[found++] = NormalMode{w, u, v};
    }
    if (found != 2)
        throw std::domain_error("unstable quadratic form");
    if (modes[0].omega < modes[1].omega) std::swap(modes[0], modes[1]);
    if (std::abs(modes[0].omega - modes[1].omega) < 1e-8)
        throw std::domain_error("degenerate polaritons");

    PolaritonBasis basis;
    basis.omega_plus = modes[0].omega;
    basis.omega_minus = modes[1].omega;
    basis.transform.col(0) = modes[0].u;
    basis.transform.col(1) = modes[0].v;
    basis.transform.col(2) = modes[1].u;
    basis.transform.col(3) = modes[1].v;
    std::tie(basis.plus, basis.minus) = coefficients_from_transform(basis.transform);
    return basis;
}

/// Polariton basis for arbitrary params: closed form for FullHopfield,
/// general diagonalizer otherwise.
inline PolaritonBasis polariton_basis(const ModelParams& p)
{
    if (p.variant == Variant::FullHopfield && p.g > 0.0)
        return hopfield_coefficients(p);
    return diagonalize_general(build_quadratic_form(p));
}

/// Auxiliary weights of the bare-basis covariance formulas (FullHopfield).
struct BareBasisCoefficients {
    double omega_c = 0.0;
    double tau_plus = 0.0, tau_minus = 0.0;
    double chi_plus = 0.0, chi_minus = 0.0;
    double lambda_plus = 0.0, lambda_minus = 0.0;
    double epsilon_plus = 0.0, epsilon_minus = 0.0;
    double vartheta_plus = 0.0, vartheta_minus = 0.0;
    double delta = 0.0;
};

inline BareBasisCoefficients bare_coefficients(const ModelParams& p)
{
    check_params(p);
    const auto [wp, wm] = hopfield_frequencies(p);
    const double wb = p.omega_b;
    BareBasisCoefficients c;
    c.omega_c = 2.0 * p.g * std::sqrt(p.omega_a / wb);
    if (p.g == 0.0) {
        // Decoupled limit: the mode continuing omega_a carries all the weight.
        const bool plus_is_a = std::abs(wp - p.omega_a) <= std::abs(wm - p.omega_a);
        c.tau_plus = plus_is_a ? 1.0 : 0.0;
        c.tau_minus = 1.0 - c.tau_plus;
        return c;
    }
    auto fill = [&](double wj, double& tau, double& chi, double& lambda,
                    double& epsilon, double& vartheta) {
        const double d = wj * wj - wb * wb;
        chi = 1.0 / (c.omega_c * c.omega_c * wb * wb + d * d);
        tau = d * d * chi;
        lambda = c.omega_c * std::pow(wb, 1.5) * std::sqrt(chi / wj);
        epsilon = c.omega_c * std::sqrt(wj * wb * chi);
        vartheta = d * chi;  // = tau / (omega_j^2 - omega_b^2)
    };
    fill(wp, c.tau_plus, c.chi_plus, c.lambda_plus, c.epsilon_plus, c.vartheta_plus);
    fill(wm, c.tau_minus, c.chi_minus, c.lambda_minus, c.epsilon_minus, c.vartheta_minus);
    c.delta = p.g * (wp * c.vartheta_plus + wm * c.vartheta_minus);
    return c;
}

} // namespace hopcoh
