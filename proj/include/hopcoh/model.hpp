#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hopcoh {

/// Hamiltonian variants of the two-mode light-matter model.
/// FullHopfield carries the diamagnetic term D = g^2/omega_b; Dicke drops it.
/// The remaining variants select subsets of the term decomposition.
enum class Variant {
    FullHopfield,
    Dicke,
    NoAnti,        // H0 + Hres (beam-splitter + phase rotation)
    NoRes,         // H0 + Hanti (one- and two-mode squeezing)
    SPlusSqueeze,  // HS + Hs (Dicke-type coupling + one-mode squeezing)
    SPlusPhase,    // HS + Hp (Dicke-type coupling + phase rotation)
};

inline const char* variant_name(Variant v)
{
    switch (v) {
    case Variant::FullHopfield: return "full";
    case Variant::Dicke: return "dicke";
    case Variant::NoAnti: return "no-anti";
    case Variant::NoRes: return "no-res";
    case Variant::SPlusSqueeze: return "s-plus-squeeze";
    case Variant::SPlusPhase: return "s-plus-phase";
    }
    return "?";
}

inline Variant variant_from_name(const std::string& s)
{
    for (Variant v : {Variant::FullHopfield, Variant::Dicke, Variant::NoAnti,
                      Variant::NoRes, Variant::SPlusSqueeze, Variant::SPlusPhase})
        if (s == variant_name(v)) return v;
    throw std::invalid_argument("unknown variant: " + s);
}

/// Physical parameters, all frequencies in units of omega_b.
struct ModelParams {
    double omega_a = 1.0;
    double omega_b = 1.0;
    double g = 0.0;
    Variant variant = Variant::FullHopfield;

    /// Diamagnetic coefficient D = g^2/omega_b (zero in the Dicke family).
    double diamagnetic() const { return g * g / omega_b; }

    /// Critical coupling of the D = 0 model.
    double critical_coupling() const { return 0.5 * std::sqrt(omega_a * omega_b); }
};

inline void check_params(const ModelParams& p)
{
    if (!(p.omega_a > 0.0) || !(p.omega_b > 0.0))
        throw std::invalid_argument("frequencies must be strictly positive");
    if (!(p.g >= 0.0))
        throw std::invalid_argument("coupling must be non-negative");
}

/// Quadrature matrix M with H = 1/2 xi M xi^T, xi = (X_a, P_a, X_b, P_b).
struct QuadraticForm {
    Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();
    Variant variant_tag = Variant::FullHopfield;
};

/// Two-mode symplectic form in the (X_a, P_a, X_b, P_b) ordering.
inline Eigen::Matrix4d symplectic_form()
{
    Eigen::Matrix4d om = Eigen::Matrix4d::Zero();
    om(0, 1) = 1.0; om(1, 0) = -1.0;
    om(2, 3) = 1.0; om(3, 2) = -1.0;
    return om;
}

namespace detail {

// ig(a^dag b - a b^dag) + D(a^dag a + a a^dag) in quadratures:
// -g(Xa Pb - Pa Xb) + D(Xa^2 + Pa^2)
inline Eigen::Matrix4d res_term(double g, double D)
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 2.0 * D;
    m(1, 1) = 2.0 * D;
    m(0, 3) = m(3, 0) = -g;
    m(1, 2) = m(2, 1) = g;
    return m;
}

// ig(a b - a^dag b^dag) + D(a a + a^dag a^dag) in quadratures:
// -g(Xa Pb + Pa Xb) + D(Xa^2 - Pa^2)
inline Eigen::Matrix4d anti_term(double g, double D)
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 2.0 * D;
    m(1, 1) = -2.0 * D;
    m(0, 3) = m(3, 0) = -g;
    m(1, 2) = m(2, 1) = -g;
    return m;
}

} // namespace detail

/// Quadratic form of the selected variant; zero-point constants are dropped.
inline QuadraticForm build_quadratic_form(const ModelParams& p)
{
    check_params(p);
    const double D = p.diamagnetic();
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << p.omega_a, p.omega_a, p.omega_b, p.omega_b;
    switch (p.variant) {
    case Variant::FullHopfield:
        m += detail::res_term(p.g, D) + detail::anti_term(p.g, D);
        break;
    case Variant::Dicke:
        m += detail::res_term(p.g, 0.0) + detail::anti_term(p.g, 0.0);
        break;
    case Variant::NoAnti:
        m += detail::res_term(p.g, D);
        break;
    case Variant::NoRes:
        m += detail::anti_term(p.g, D);
        break;
    case Variant::SPlusSqueeze:
        m += detail::res_term(p.g, 0.0) + detail::anti_term(p.g, 0.0);
        m(0, 0) += 2.0 * D;
        m(1, 1) -= 2.0 * D;
        break;
    case Variant::SPlusPhase:
        m += detail::res_term(p.g, 0.0) + detail::anti_term(p.g, 0.0);
        m(0, 0) += 2.0 * D;
        m(1, 1) += 2.0 * D;
        break;
    }
    return QuadraticForm{m, p.variant};
}

struct StabilityReport {
    bool stable = false;
    double min_abs_imag = 0.0;  // smallest |Im| over eigenvalues of Omega*M
    double max_rel_real = 0.0;  // largest |Re| / max(1, |Im|)
};

/// Dynamical stability: all eigenvalues of Omega*M purely imaginary, nonzero.
inline StabilityReport validate_stability(const QuadraticForm& form)
{
    const Eigen::Matrix4d k = symplectic_form() * form.matrix;
    Eigen::EigenSolver<Eigen::Matrix4d> es(k);
    StabilityReport rep;
    rep.stable = true;
    rep.min_abs_imag = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        const double re = std::abs(es.eigenvalues()(i).real());
        const double im = std::abs(es.eigenvalues()(i).imag());
        rep.min_abs_imag = std::min(rep.min_abs_imag, im);
        rep.max_rel_real = std::max(rep.max_rel_real, re / std::max(1.0, im));
        if (re >= 1e-9 * std::max(1.0, im) || im <= 0.0) rep.stable = false;
    }
    return rep;
}

} // namespace hopcoh
