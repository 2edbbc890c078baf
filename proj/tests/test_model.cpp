#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopcoh/bogoliubov.hpp"
#include "hopcoh/model.hpp"

#include <Eigen/Eigenvalues>

using namespace hopcoh;

namespace {

ModelParams params(double eta_a, double g, Variant v)
{
    return ModelParams{eta_a, 1.0, g, v};
}

// Independent oracle: dense eigensolve of Omega*M, return sorted |Im|.
std::array<double, 2> normal_frequencies(const QuadraticForm& f)
{
    Eigen::EigenSolver<Eigen::Matrix4d> es(symplectic_form() * f.matrix);
    std::array<double, 4> im;
    for (int i = 0; i < 4; ++i) im[i] = std::abs(es.eigenvalues()(i).imag());
    std::sort(im.begin(), im.end());
    return {im[3], im[1]};
}

} // namespace

TEST_CASE("decoupled oscillators give the identity form")
{
    const auto f = build_quadratic_form(params(1.0, 0.0, Variant::FullHopfield));
    CHECK((f.matrix - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Dicke form differs from FullHopfield by the diamagnetic entry")
{
    const auto full = build_quadratic_form(params(1.0, 0.3, Variant::FullHopfield));
    const auto dicke = build_quadratic_form(params(1.0, 0.3, Variant::Dicke));
    Eigen::Matrix4d diff = full.matrix - dicke.matrix;
    // D = 0.09; the (a+a^dag)^2 term contributes 4D to the X_a X_a entry
    CHECK(diff(0, 0) == doctest::Approx(4 * 0.09).epsilon(1e-14));
    diff(0, 0) = 0.0;
    CHECK(diff.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("deep-strong resonant Hopfield normal frequencies")
{
    const auto f = build_quadratic_form(params(1.0, 1.0, Variant::FullHopfield));
    const auto [w1, w2] = normal_frequencies(f);
    CHECK(w1 == doctest::Approx(std::sqrt(2.0) + 1.0).epsilon(1e-12));
    CHECK(w2 == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("variant decomposition is linear")
{
    for (double eta : {0.2, 0.5, 1.0, 2.0, 5.0})
        for (double g : {0.0, 0.1, 0.7, 1.5, 3.0}) {
            const auto full = build_quadratic_form(params(eta, g, Variant::FullHopfield));
            const auto noanti = build_quadratic_form(params(eta, g, Variant::NoAnti));
            const auto nores = build_quadratic_form(params(eta, g, Variant::NoRes));
            Eigen::Matrix4d h0 = Eigen::Matrix4d::Zero();
            h0.diagonal() << eta, eta, 1.0, 1.0;
            const Eigen::Matrix4d sum = noanti.matrix + nores.matrix - h0;
            CHECK((sum - full.matrix).cwiseAbs().maxCoeff() < 1e-14);
        }
}

TEST_CASE("s-plus variants recombine to FullHopfield")
{
    const double eta = 0.7, g = 0.4;
    const auto full = build_quadratic_form(params(eta, g, Variant::FullHopfield));
    const auto dicke = build_quadratic_form(params(eta, g, Variant::Dicke));
    const auto ssq = build_quadratic_form(params(eta, g, Variant::SPlusSqueeze));
    const auto sph = build_quadratic_form(params(eta, g, Variant::SPlusPhase));
    const Eigen::Matrix4d sum = ssq.matrix + sph.matrix - dicke.matrix;
    CHECK((sum - full.matrix).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("FullHopfield is stable across the deep-strong range")
{
    for (double eta : {0.2, 0.5, 1.0, 2.0, 5.0})
        for (double g = 0.0; g <= 3.0; g += 0.25) {
            const auto rep = validate_stability(
                build_quadratic_form(params(eta, g, Variant::FullHopfield)));
            CHECK(rep.stable);
        }
}

TEST_CASE("Dicke stability flips at the critical coupling")
{
    CHECK_FALSE(validate_stability(
        build_quadratic_form(params(1.0, 0.6, Variant::Dicke))).stable);
    const auto near = validate_stability(
        build_quadratic_form(params(1.0, 0.49, Variant::Dicke)));
    CHECK(near.stable);
    CHECK(near.min_abs_imag > 0.0);
    CHECK(near.min_abs_imag < 0.2);  // soft mode approaching zero
    CHECK_FALSE(validate_stability(
        build_quadratic_form(params(1.0, 0.5, Variant::Dicke))).stable);
}

TEST_CASE("normal frequencies agree with the closed form on a grid")
{
    for (double eta : {0.2, 0.5, 1.0, 2.0, 5.0})
        for (double g = 0.0; g <= 3.0; g += 0.01) {
            const auto f = build_quadratic_form(params(eta, g, Variant::FullHopfield));
            const auto [w1, w2] = normal_frequencies(f);
            const auto [wp, wm] = hopfield_frequencies(params(eta, g, Variant::FullHopfield));
            CHECK(std::abs(w1 - wp) < 1e-10);
            CHECK(std::abs(w2 - wm) < 1e-10);
        }
}

TEST_CASE("invalid parameters are rejected")
{
    CHECK_THROWS_AS(build_quadratic_form(ModelParams{-1.0, 1.0, 0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_quadratic_form(ModelParams{1.0, 1.0, -0.1}),
                    std::invalid_argument);
}
