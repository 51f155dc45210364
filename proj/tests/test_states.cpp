#include <doctest.h>

#include "oqs/states.hpp"
#include "oracles.hpp"

using namespace oqs;

namespace {

DensityMatrix random_density_for_test(std::mt19937_64& rng) {
    ComplexMatrix g = oracle::random_matrix(3, 3, rng);
    ComplexMatrix w = g * g.adjoint();
    w /= w.trace().real();
    return DensityMatrix(std::move(w));
}

}  // namespace

TEST_SUITE("states") {

TEST_CASE("project basis and superposition states") {
    DensityMatrix ground = project(PureState::basis(2, 0));
    CHECK(std::abs(ground.matrix()(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(ground.matrix()(1, 1)) < 1e-15);

    ComplexVector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    DensityMatrix rho = project(PureState(plus));
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            CHECK(std::abs(rho.matrix()(i, j) - 0.5) < 1e-15);

    // rank one and idempotent
    CHECK(max_norm(ComplexMatrix(rho.matrix() * rho.matrix()) - rho.matrix()) < 1e-12);
}

TEST_CASE("projection of random states is normalized") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 6; ++rep) {
        ComplexVector v = oracle::random_matrix(5, 1, rng).col(0);
        v /= v.norm();
        DensityMatrix rho = project(PureState(v));
        CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-12);
    }
    ComplexVector bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(PureState{bad}, NormalizationError);
}

TEST_CASE("expectation values") {
    CHECK(expectation(project(PureState::basis(2, 0)), sigma_z()).real() ==
          doctest::Approx(1.0));
    CHECK(std::abs(expectation(project(PureState::basis(2, 0)), sigma_z()).imag()) < 1e-15);

    std::mt19937_64 rng(17);
    DensityMatrix rho = random_density_for_test(rng);
    CHECK(expectation(rho, identity(3)).real() == doctest::Approx(1.0));

    DensityMatrix mixed((ComplexMatrix(0.5 * identity(2))));
    CHECK(std::abs(expectation(mixed, sigma_x())) < 1e-15);
}

TEST_CASE("expectation is real for Hermitian observables and linear") {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 5; ++rep) {
        DensityMatrix rho = random_density_for_test(rng);
        ComplexMatrix a = oracle::random_hermitian(3, rng);
        ComplexMatrix b = oracle::random_hermitian(3, rng);
        CHECK(std::abs(expectation(rho, a).imag()) < 1e-12);
        cxd sum = expectation(rho, ComplexMatrix(a + b));
        CHECK(std::abs(sum - expectation(rho, a) - expectation(rho, b)) < 1e-12);
    }
    DensityMatrix rho = random_density_for_test(rng);
    CHECK_THROWS_AS(expectation(rho, identity(2)), DimensionError);
}

TEST_CASE("trace distance") {
    DensityMatrix g = project(PureState::basis(2, 0));
    DensityMatrix e = project(PureState::basis(2, 1));
    CHECK(trace_distance(g, g) == doctest::Approx(0.0));
    CHECK(trace_distance(g, e) == doctest::Approx(1.0));
    DensityMatrix mixed((ComplexMatrix(0.5 * identity(2))));
    CHECK(trace_distance(mixed, g) == doctest::Approx(0.5));
    CHECK(trace_distance(g, mixed) == doctest::Approx(0.5));

    DensityMatrix qutrit((ComplexMatrix(identity(3) / 3.0)));
    CHECK_THROWS_AS(trace_distance(g, qutrit), DimensionError);
}

TEST_CASE("trace distance is unitarily invariant") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 5; ++rep) {
        DensityMatrix rho = random_density_for_test(rng);
        DensityMatrix sig = random_density_for_test(rng);
        const double base = trace_distance(rho, sig);
        CHECK(base >= 0.0);
        CHECK(base <= 1.0);
        ComplexMatrix h = oracle::random_hermitian(3, rng);
        ComplexMatrix u = expm(ComplexMatrix(cxd(0.0, -1.0) * h));
        DensityMatrix rho_u((ComplexMatrix(u * rho.matrix() * u.adjoint())));
        DensityMatrix sig_u((ComplexMatrix(u * sig.matrix() * u.adjoint())));
        CHECK(std::abs(trace_distance(rho_u, sig_u) - base) < 1e-10);
    }
}

TEST_CASE("density matrix constructors reject each violation distinctly") {
    ComplexMatrix notherm = ComplexMatrix::Zero(2, 2);
    notherm(0, 0) = 0.5;
    notherm(1, 1) = 0.5;
    notherm(0, 1) = cxd(0.0, 0.4);
    notherm(1, 0) = cxd(0.0, 0.4);  // equal, not conjugate: not Hermitian
    CHECK_THROWS_AS(DensityMatrix{notherm}, HermiticityError);

    ComplexMatrix badtrace = 0.7 * identity(2);
    CHECK_THROWS_AS(DensityMatrix{badtrace}, NormalizationError);

    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}, PositivityError);

    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("tiny negative eigenvalues are clamped at construction") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0 + 5e-11;
    m(1, 1) = -5e-11;
    DensityMatrix rho(m);
    Spectrum s = eigh(rho.matrix());
    CHECK(s.eigenvalues(0) >= 0.0);
}

TEST_CASE("relaxed constructor renormalizes mild trace drift") {
    ComplexMatrix m = (1.0 + 5e-7) * 0.5 * identity(2);
    DensityMatrix rho = DensityMatrix::relaxed(m);
    CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-14);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix((1.0 + 5e-7) * 0.5 * identity(2))),
                    NormalizationError);
    CHECK_THROWS_AS(DensityMatrix::relaxed(ComplexMatrix(1.1 * 0.5 * identity(2))),
                    NormalizationError);
}

}  // TEST_SUITE
