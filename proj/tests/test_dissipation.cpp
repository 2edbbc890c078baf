#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopcoh/dissipation.hpp"

using namespace hopcoh;

TEST_CASE("thermal occupation")
{
    CHECK(thermal_occupation(1.0, 1.0)
          == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-12));
    CHECK(thermal_occupation(1.0, 0.0) == 0.0);
    // classical limit N -> T/omega
    CHECK(thermal_occupation(2.0, 1000.0) == doctest::Approx(499.5).epsilon(1e-3));
    CHECK_THROWS_AS(thermal_occupation(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(thermal_occupation(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("detailed-balance identity loss - gain = damping")
{
    const ModelParams p{1.0, 1.0, 1.0};
    const BathSpec bath{1e-3, 1e-3, 1.0, 1.0};
    const auto basis = polariton_basis(p);
    const auto rs = rates(basis, bath);
    for (const auto& r : {rs.plus, rs.minus}) {
        CHECK(r.loss - r.gain == doctest::Approx(r.damping()).epsilon(1e-12));
        CHECK(r.damping() > 0.0);
    }
}

TEST_CASE("thermal occupation is the fixed point of the occupation equation")
{
    const ModelParams p{1.0, 1.0, 1.0};
    const BathSpec bath{1e-3, 2e-3, 0.7, 0.7};
    const auto basis = polariton_basis(p);
    const auto rs = rates(basis, bath);
    MomentVector m;
    m.occ[0] = thermal_occupation(basis.omega_plus, 0.7);
    m.occ[1] = thermal_occupation(basis.omega_minus, 0.7);
    const auto dm = moment_derivatives(m, rs, basis);
    CHECK(std::abs(dm.occ[0]) < 1e-15);
    CHECK(std::abs(dm.occ[1]) < 1e-15);
}

TEST_CASE("moment evolution")
{
    const ModelParams p{1.0, 1.0, 0.5};
    const BathSpec bath{1e-3, 1e-3, 0.5, 0.5};
    const auto basis = polariton_basis(p);
    const auto rs = rates(basis, bath);

    MomentVector m0;
    m0.p2[0] = Complex(0.2, 0.1);
    m0.occ[0] = 3.0;
    m0.occ[1] = 0.5;
    m0.p_plus_p_minus = Complex(0.0, 0.4);

    SUBCASE("t = 0 is the identity")
    {
        const auto m = evolve_moments(m0, basis, rs, 0.0);
        CHECK(std::abs(m.p2[0] - m0.p2[0]) < 1e-15);
        CHECK(std::abs(m.occ[0] - m0.occ[0]) < 1e-15);
        CHECK(std::abs(m.p_plus_p_minus - m0.p_plus_p_minus) < 1e-15);
    }

    SUBCASE("evolution matches a midpoint integration")
    {
        auto axpy = [](MomentVector x, const MomentVector& d, double h) {
            for (int j = 0; j < 2; ++j) {
                x.p2[j] += h * d.p2[j];
                x.pd2[j] += h * d.pd2[j];
                x.occ[j] += h * d.occ[j];
            }
            x.pd_plus_p_minus += h * d.pd_plus_p_minus;
            x.pd_minus_p_plus += h * d.pd_minus_p_plus;
            x.pd_plus_pd_minus += h * d.pd_plus_pd_minus;
            x.p_plus_p_minus += h * d.p_plus_p_minus;
            return x;
        };
        const double t_end = 50.0;
        const int steps = 100000;
        const double dt = t_end / steps;
        MomentVector m = m0;
        for (int s = 0; s < steps; ++s) {
            const auto mid = axpy(m, moment_derivatives(m, rs, basis), 0.5 * dt);
            m = axpy(m, moment_derivatives(mid, rs, basis), dt);
        }
        const auto exact = evolve_moments(m0, basis, rs, t_end);
        CHECK(std::abs(m.occ[0] - exact.occ[0]) < 1e-6);
        CHECK(std::abs(m.occ[1] - exact.occ[1]) < 1e-6);
        CHECK(std::abs(m.p2[0] - exact.p2[0]) < 1e-4);
    }

    SUBCASE("long-time limit matches the steady covariance")
    {
        const auto m = evolve_moments(m0, basis, rs, 1e5);
        const double nup = 0.5 + m.occ[0].real();  // nu = <pd p> + 1/2
        const double num = 0.5 + m.occ[1].real();
        const auto st = steady_polariton_covariance(basis, bath);
        CHECK(nup == doctest::Approx(st.sigma(0, 0)).epsilon(1e-12));
        CHECK(num == doctest::Approx(st.sigma(2, 2)).epsilon(1e-12));
        CHECK(std::abs(m.p2[0]) < 1e-12);
        CHECK(std::abs(m.p_plus_p_minus) < 1e-12);
    }

    SUBCASE("closed system conserves occupation")
    {
        const BathSpec off{0.0, 0.0, 0.0, 0.0};
        const auto rs0 = rates(basis, off);
        const auto m = evolve_moments(m0, basis, rs0, 123.0);
        CHECK(std::abs(m.occ[0] - m0.occ[0]) < 1e-12);
        CHECK(std::abs(m.occ[1] - m0.occ[1]) < 1e-12);
        CHECK(std::abs(std::abs(m.p2[0]) - std::abs(m0.p2[0])) < 1e-12);
    }
}

TEST_CASE("steady polariton covariance")
{
    const ModelParams p{1.0, 1.0, 1.0};
    const auto basis = polariton_basis(p);

    SUBCASE("zero temperature gives the vacuum")
    {
        const auto st = steady_polariton_covariance(basis, BathSpec{1e-3, 1e-3, 0, 0});
        CHECK((st.sigma - 0.5 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff()
              < 1e-14);
    }

    SUBCASE("equal temperatures are rate independent")
    {
        const auto a = steady_polariton_covariance(basis, BathSpec{1e-3, 1e-3, 1, 1});
        const auto b = steady_polariton_covariance(basis, BathSpec{1e-2, 5e-4, 1, 1});
        CHECK((a.sigma - b.sigma).cwiseAbs().maxCoeff() < 1e-12);
        const double expect = 0.5 + thermal_occupation(basis.omega_plus, 1.0);
        CHECK(a.sigma(0, 0) == doctest::Approx(expect).epsilon(1e-12));
    }

    SUBCASE("unequal temperatures interpolate")
    {
        const auto mixed = steady_polariton_covariance(basis, BathSpec{1e-3, 1e-3, 1, 0});
        const double hot = 0.5 + thermal_occupation(basis.omega_plus, 1.0);
        CHECK(mixed.sigma(0, 0) > 0.5);
        CHECK(mixed.sigma(0, 0) < hot);
    }

    SUBCASE("undamped mode is rejected")
    {
        CHECK_THROWS_AS(steady_polariton_covariance(basis, BathSpec{0, 0, 0, 0}),
                        std::domain_error);
    }
}

TEST_CASE("ground-state covariance closed form")
{
    const ModelParams p{1.0, 1.0, 1.0};
    const auto st = ground_state_covariance(p);
    const double isq = 1.0 / std::sqrt(2.0) / 2.0;  // 0.5/sqrt(2)
    CHECK(st.sigma(0, 0) == doctest::Approx(isq).epsilon(1e-12));
    CHECK(st.sigma(2, 2) == doctest::Approx(isq).epsilon(1e-12));
    CHECK(st.sigma(1, 1) == doctest::Approx(3.0 * isq).epsilon(1e-12));
    CHECK(st.sigma(3, 3) == doctest::Approx(3.0 * isq).epsilon(1e-12));
    CHECK(st.sigma(0, 3) == doctest::Approx(isq).epsilon(1e-12));
    CHECK(st.sigma(1, 2) == doctest::Approx(isq).epsilon(1e-12));
    CHECK(st.sigma(0, 1) == 0.0);
    CHECK(st.sigma(0, 2) == 0.0);
}

TEST_CASE("explicit and transform ground states agree on a grid")
{
    for (double eta : {0.2, 1.0, 5.0})
        for (double g : {0.05, 0.3, 1.0, 2.0, 3.0}) {
            const ModelParams p{eta, 1.0, g};
            const auto a = ground_state_covariance(p);
            const auto b = ground_state_covariance_transform(p);
            CHECK((a.sigma - b.sigma).cwiseAbs().maxCoeff() < 1e-10);
        }
}

TEST_CASE("explicit and transform thermal covariances agree")
{
    const BathSpec bath{1e-3, 4e-3, 1.0, 0.3};
    for (double eta : {0.5, 1.0, 2.0})
        for (double g : {0.1, 0.7, 1.5}) {
            const ModelParams p{eta, 1.0, g};
            const auto a = thermal_bare_covariance(p, bath);
            const auto b = thermal_bare_covariance_explicit(p, bath);
            CHECK((a.sigma - b.sigma).cwiseAbs().maxCoeff() < 1e-10);
        }
}

TEST_CASE("decoupled thermal state is two independent thermal modes")
{
    const ModelParams p{2.0, 1.0, 0.0};
    const BathSpec bath{1e-3, 1e-3, 0.8, 0.8};
    const auto st = thermal_bare_covariance(p, bath);
    const double na = 0.5 + thermal_occupation(2.0, 0.8);
    const double nb = 0.5 + thermal_occupation(1.0, 0.8);
    Eigen::Matrix4d expect = Eigen::Vector4d(na, na, nb, nb).asDiagonal();
    CHECK((st.sigma - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("secular validity")
{
    const auto basis = polariton_basis(ModelParams{1.0, 1.0, 1.0});
    const auto ok = secular_validity(basis, BathSpec{1e-3, 1e-3, 0, 0});
    CHECK(ok.pass);
    CHECK(ok.ratio == doctest::Approx(2.0 / 2.414213562373e-3).epsilon(1e-6));

    const auto near = polariton_basis(ModelParams{1.0, 1.0, 1e-4});
    const auto bad = secular_validity(near, BathSpec{1e-3, 1e-3, 0, 0});
    CHECK_FALSE(bad.pass);
}
