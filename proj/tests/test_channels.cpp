#include <doctest.h>

#include "oqs/channels.hpp"
#include "oracles.hpp"

using namespace oqs;

namespace {

KrausSet amplitude_damping(double p) {
    ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - p);
    ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
    k1(0, 1) = std::sqrt(p);
    return KrausSet(2, {k0, k1});
}

ComplexVector entangled_pair(Eigen::Index d) {
    ComplexVector v = ComplexVector::Zero(d * d);
    for (Eigen::Index j = 0; j < d; ++j) v(j * d + j) = 1.0;
    return v;
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("identity channel acts as the identity") {
    QuantumChannel id = QuantumChannel::identity_channel(2);
    std::mt19937_64 rng(3);
    DensityMatrix rho = random_density(2, rng);
    CHECK(max_norm(apply(id, rho).matrix() - rho.matrix()) < 1e-12);

    // Choi of the identity is the rank-one entangled projector, trace d.
    ComplexVector v = entangled_pair(2);
    CHECK(max_norm(id.choi() - ComplexMatrix(v * v.adjoint())) < 1e-14);
    CHECK(std::abs(id.choi().trace() - 2.0) < 1e-14);
}

TEST_CASE("full amplitude damping maps everything to the ground state") {
    QuantumChannel phi = choi_from_kraus(amplitude_damping(1.0));
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        DensityMatrix rho = random_density(2, rng);
        DensityMatrix out = apply(phi, rho);
        CHECK(std::abs(out.matrix()(0, 0) - 1.0) < 1e-12);
        CHECK(std::abs(out.matrix()(1, 1)) < 1e-12);
    }
}

TEST_CASE("apply preserves the trace for random channels") {
    std::mt19937_64 rng(7);
    for (Eigen::Index d : {2, 3}) {
        QuantumChannel phi = random_cptp(d, rng);
        DensityMatrix mixed((ComplexMatrix(identity(d) / double(d))));
        CHECK(std::abs(apply(phi, mixed).matrix().trace() - 1.0) < 1e-10);
        CHECK_THROWS_AS(apply(phi, random_density(d == 2 ? 3 : 2, rng)),
                        DimensionError);
    }
}

TEST_CASE("choi of a single sigma_x Kraus operator") {
    KrausSet flip(2, {sigma_x()});
    QuantumChannel phi = choi_from_kraus(flip);
    // w = (sigma_x kron I) v flips the first index pair: (1,0,0,1) -> rows 2,3 and 0,1
    ComplexVector w = ComplexVector::Zero(4);
    w(2) = 1.0;  // K[1,0] slot: row-major flatten of sigma_x
    w(1) = 1.0;
    CHECK(max_norm(phi.choi() - ComplexMatrix(w * w.adjoint())) < 1e-14);
}

TEST_CASE("fully depolarizing channel has maximally mixed choi") {
    std::vector<ComplexMatrix> paulis = {identity(2), sigma_x(), sigma_y(), sigma_z()};
    for (auto& k : paulis) k *= 0.5;
    QuantumChannel phi = choi_from_kraus(KrausSet(2, paulis));
    CHECK(max_norm(phi.choi() - ComplexMatrix(0.5 * identity(4))) < 1e-14);
}

TEST_CASE("kraus completeness is enforced") {
    ComplexMatrix half = 0.5 * identity(2);
    CHECK_THROWS_AS(KrausSet(2, {half}), CompletenessError);
    std::vector<ComplexMatrix> toomany(5, ComplexMatrix(identity(2) / std::sqrt(5.0)));
    CHECK_THROWS_AS(KrausSet(2, toomany), DimensionError);
}

TEST_CASE("kraus_from_choi on the identity channel") {
    KrausSet k = kraus_from_choi(QuantumChannel::identity_channel(3));
    REQUIRE(k.operators().size() == 1);
    CHECK(max_norm(k.operators()[0] - identity(3)) < 1e-10);
}

TEST_CASE("choi -> kraus -> choi is a fixed point") {
    std::mt19937_64 rng(11);
    for (Eigen::Index d : {2, 3}) {
        for (int rep = 0; rep < 10; ++rep) {
            QuantumChannel phi = random_cptp(d, rng);
            KrausSet k = kraus_from_choi(phi);
            CHECK(static_cast<Eigen::Index>(k.operators().size()) <= d * d);
            QuantumChannel back = choi_from_kraus(k);
            CHECK(max_norm(back.choi() - phi.choi()) < 1e-10);
            // second pass leaves the choi unchanged too
            QuantumChannel again = choi_from_kraus(kraus_from_choi(back));
            CHECK(max_norm(again.choi() - phi.choi()) < 1e-10);
            CptpReport rep2 = is_cptp(back.choi(), d);
            CHECK(rep2.cp);
            CHECK(rep2.tp);
        }
    }
}

TEST_CASE("amplitude damping kraus weights from the choi spectrum") {
    QuantumChannel phi = choi_from_kraus(amplitude_damping(0.3));
    KrausSet k = kraus_from_choi(phi);
    REQUIRE(k.operators().size() == 2);

    // Eigendecompose the 4x4 choi with the independent Jacobi solver: the
    // nonzero eigenvalues are the squared Frobenius weights of the two
    // operators, 1 + 0.7 and 0.3.
    auto ref = oracle::jacobi_eigh(phi.choi());
    CHECK(ref.eigenvalues[3] == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(ref.eigenvalues[2] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(std::abs(ref.eigenvalues[0]) < 1e-12);
    CHECK(std::abs(ref.eigenvalues[1]) < 1e-12);

    const double w0 = k.operators()[0].norm();  // Frobenius
    const double w1 = k.operators()[1].norm();
    CHECK(w0 == doctest::Approx(std::sqrt(1.7)).epsilon(1e-10));
    CHECK(w1 == doctest::Approx(std::sqrt(0.3)).epsilon(1e-10));

    // dominant operator carries singular values {1, sqrt(0.7)}
    Spectrum sv = eigh(ComplexMatrix(k.operators()[0].adjoint() * k.operators()[0]));
    CHECK(std::sqrt(sv.eigenvalues(1)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::sqrt(sv.eigenvalues(0)) == doctest::Approx(std::sqrt(0.7)).epsilon(1e-10));
}

TEST_CASE("is_cptp classifies the transpose map as non-CP") {
    // Choi of the transpose map is the swap operator.
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    CptpReport rep = is_cptp(swap, 2);
    CHECK(!rep.cp);
    CHECK(rep.tp);
    CHECK(rep.min_choi_eig == doctest::Approx(-1.0).epsilon(1e-12));
    auto ref = oracle::jacobi_eigh(swap);
    CHECK(ref.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));

    CptpReport idrep = is_cptp(QuantumChannel::identity_channel(2).choi(), 2);
    CHECK(idrep.cp);
    CHECK(idrep.tp);

    CptpReport scaled = is_cptp(ComplexMatrix(2.0 * QuantumChannel::identity_channel(2).choi()), 2);
    CHECK(scaled.cp);
    CHECK(!scaled.tp);

    ComplexMatrix nh = ComplexMatrix::Zero(4, 4);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(is_cptp(nh, 2), HermiticityError);
}

TEST_CASE("dilation of the identity and of unitary channels") {
    Dilation d_id = dilate(QuantumChannel::identity_channel(3));
    CHECK(d_id.dim_r == 1);
    CHECK(max_norm(d_id.unitary - identity(3)) < 1e-10);

    std::mt19937_64 rng(13);
    ComplexMatrix v = random_unitary(2, rng);
    KrausSet k(2, {v});
    Dilation dil = dilate(choi_from_kraus(k));
    CHECK(dil.dim_r == 1);
    // equal up to a global phase
    cxd phase = dil.unitary(0, 0) / v(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
    CHECK(max_norm(dil.unitary - ComplexMatrix(phase * v)) < 1e-9);
}

TEST_CASE("dilation reproduces amplitude damping") {
    QuantumChannel phi = choi_from_kraus(amplitude_damping(0.3));
    Dilation dil = dilate(phi);
    CHECK(dil.dim_r == 2);
    CHECK(max_norm(ComplexMatrix(dil.unitary.adjoint() * dil.unitary) -
                   identity(4)) < 1e-10);
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        DensityMatrix rho = random_density(2, rng);
        CHECK(max_norm(apply_dilation(dil, rho).matrix() -
                       apply(phi, rho).matrix()) < 1e-9);
    }
}

TEST_CASE("dilation equivalence for random channels") {
    std::mt19937_64 rng(19);
    for (Eigen::Index d : {2, 3}) {
        for (int rep = 0; rep < 5; ++rep) {
            QuantumChannel phi = random_cptp(d, rng);
            Dilation dil = dilate(phi);
            CHECK(dil.dim_r <= d * d);
            CHECK(max_norm(ComplexMatrix(dil.unitary.adjoint() * dil.unitary) -
                           identity(d * dil.dim_r)) < 1e-10);
            for (int s = 0; s < 5; ++s) {
                DensityMatrix rho = random_density(d, rng);
                CHECK(max_norm(apply_dilation(dil, rho).matrix() -
                               apply(phi, rho).matrix()) < 1e-9);
            }
        }
    }
}

TEST_CASE("extend_isometry") {
    std::mt19937_64 rng(23);
    ComplexMatrix u = random_unitary(4, rng);
    std::vector<ComplexVector> all;
    for (Eigen::Index c = 0; c < 4; ++c) all.push_back(u.col(c));
    CHECK(max_norm(extend_isometry(all) - u) == 0.0);

    std::vector<ComplexVector> e1 = {ComplexVector::Zero(2)};
    e1[0](0) = 1.0;
    CHECK(max_norm(extend_isometry(e1) - identity(2)) == 0.0);

    ComplexVector diag(2);
    diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    ComplexMatrix completed = extend_isometry({diag});
    CHECK((completed.col(0) - diag).norm() == 0.0);
    ComplexVector expect2(2);
    expect2 << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    cxd phase = completed(0, 1) / expect2(0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    CHECK((completed.col(1) - phase * expect2).norm() < 1e-12);
    CHECK(max_norm(ComplexMatrix(completed.adjoint() * completed) - identity(2)) < 1e-10);

    ComplexVector bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(extend_isometry({bad}), IsometryError);
    CHECK_THROWS_AS(extend_isometry({diag, diag}), IsometryError);
}

TEST_CASE("partial transpose certifies Bell-state entanglement") {
    ComplexVector bell = entangled_pair(2) / std::sqrt(2.0);
    DensityMatrix rho = project(PureState(bell));
    ComplexMatrix pt = partial_transpose(rho, 2, 2);
    CHECK(std::abs(pt.trace() - 1.0) < 1e-14);
    CHECK(max_norm(pt - pt.adjoint().eval()) < 1e-14);

    auto ref = oracle::jacobi_eigh(pt);
    CHECK(ref.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(ref.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ref.eigenvalues[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ref.eigenvalues[3] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ppt_min_eig(rho, 2, 2) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("partial transpose leaves product and maximally mixed states positive") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 10; ++rep) {
        DensityMatrix a = random_density(2, rng);
        DensityMatrix b = random_density(2, rng);
        DensityMatrix prod((ComplexMatrix(kron(a.matrix(), b.matrix()))));
        CHECK(ppt_min_eig(prod, 2, 2) >= -1e-12);
    }
    DensityMatrix mixed((ComplexMatrix(0.25 * identity(4))));
    ComplexMatrix pt = partial_transpose(mixed, 2, 2);
    CHECK(max_norm(pt - mixed.matrix()) == 0.0);
    CHECK(ppt_min_eig(mixed, 2, 2) == doctest::Approx(0.25));
    CHECK_THROWS_AS(partial_transpose(mixed, 3, 2), DimensionError);
}

TEST_CASE("partial transpose is an involution") {
    std::mt19937_64 rng(31);
    DensityMatrix rho = random_density(6, rng);
    ComplexMatrix once = partial_transpose(rho, 2, 3);
    ComplexMatrix twice(6, 6);
    for (Eigen::Index a = 0; a < 2; ++a)
        for (Eigen::Index ap = 0; ap < 2; ++ap)
            for (Eigen::Index b = 0; b < 3; ++b)
                for (Eigen::Index bp = 0; bp < 3; ++bp)
                    twice(a * 3 + b, ap * 3 + bp) = once(a * 3 + bp, ap * 3 + b);
    CHECK(max_norm(twice - rho.matrix()) == 0.0);
}

}  // TEST_SUITE
