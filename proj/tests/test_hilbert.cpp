#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lpcompact/diagonal_operator.hpp"
#include "lpcompact/fixtures.hpp"
#include "lpcompact/hilbert.hpp"
#include "oracles.hpp"

using namespace lpc;

namespace {
AscentOptions test_options(std::uint64_t seed = 1) {
    AscentOptions opt;
    opt.restarts = 16;
    opt.iters = 120;
    opt.seed = seed;
    return opt;
}
} // namespace

TEST_CASE("operator tuple validation") {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(OperatorTuple(2, {id}, Exponent(1.0)), std::invalid_argument);
    CHECK_THROWS_AS(OperatorTuple(2, {id}, Exponent::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(OperatorTuple(2, {}, Exponent(2.0)), EmptySequenceError);
    CHECK_THROWS_AS(OperatorTuple(3, {id}, Exponent(2.0)), DimensionMismatchError);
}

TEST_CASE("pair_sequence") {
    SECTION("identity against itself") {
        const auto t = fixtures::identity_pair();
        Rng rng(2);
        const Eigen::VectorXcd x = unit_sphere_vector(rng, 2);
        const ScalarSeq z = pair_sequence(t, x, x);
        CHECK(std::abs(z.entries[0] - cplx{1.0, 0.0}) < 1e-14);
        CHECK(std::abs(z.entries[1] - cplx{1.0, 0.0}) < 1e-14);
    }
    SECTION("shift picks the off-diagonal entry") {
        const auto t = fixtures::nilpotent_singleton();
        Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(2), e2 = Eigen::VectorXcd::Zero(2);
        e1[0] = 1.0;
        e2[1] = 1.0;
        const ScalarSeq z = pair_sequence(t, e2, e1); // <T e2, e1> = 1
        CHECK(z.entries[0] == cplx{1.0, 0.0});
    }
    SECTION("inputs are normalized; zero vectors rejected") {
        const auto t = fixtures::identity_pair();
        Eigen::VectorXcd big = Eigen::VectorXcd::Zero(2);
        big[0] = 10.0;
        const ScalarSeq z = pair_sequence(t, big, big);
        CHECK(std::abs(z.entries[0] - cplx{1.0, 0.0}) < 1e-14);
        CHECK_THROWS_AS(pair_sequence(t, Eigen::VectorXcd::Zero(2), big), ZeroVectorError);
    }
    SECTION("pairing identity against the combined operator") {
        Rng rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            const auto t = fixtures::random_tuple(rng, 3, 4, Exponent(2.0));
            const Eigen::VectorXcd x = unit_sphere_vector(rng, 3);
            const Eigen::VectorXcd y = unit_sphere_vector(rng, 3);
            const ScalarSeq beta = random_gaussian_seq(rng, 4);
            const cplx lhs = holder_pair(beta, pair_sequence(t, x, y));
            const cplx rhs = y.dot(t.combine(beta) * x);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("single_numerical_radius") {
    SECTION("Hermitian: the spectral radius") {
        Eigen::MatrixXcd m(2, 2);
        m << 1, 0, 0, -2;
        const auto res = single_numerical_radius(m);
        CHECK(res.w == Catch::Approx(2.0).margin(1e-10));
        CHECK(res.w == Catch::Approx(oracle::single_radius(m)).margin(1e-6));
    }
    SECTION("zero matrix") { CHECK(single_numerical_radius(Eigen::MatrixXcd::Zero(3, 3)).w == 0.0); }
    SECTION("nilpotent 2x2: exactly one half") {
        Eigen::MatrixXcd m(2, 2);
        m << 0, 1, 0, 0;
        const auto res = single_numerical_radius(m);
        CHECK(res.w == Catch::Approx(0.5).margin(1e-9));
        CHECK(res.w == Catch::Approx(oracle::single_radius(m)).margin(1e-6));
        // The witness attains the radius.
        CHECK(std::abs(res.witness.dot(m * res.witness)) == Catch::Approx(res.w).margin(1e-9));
    }
    SECTION("sandwich against the operator norm on random matrices") {
        Rng rng(9);
        MatrixSpace space(3);
        for (int t = 0; t < 20; ++t) {
            const Eigen::MatrixXcd m = gaussian_matrix(rng, 3, 3);
            const double w = single_numerical_radius(m).w;
            const double nrm = space.norm(m);
            CHECK(w >= 0.5 * nrm - 1e-9);
            CHECK(w <= nrm + 1e-9);
        }
    }
}

TEST_CASE("joint_numerical_radius") {
    const auto opt = test_options();

    SECTION("padding with zeros changes nothing") {
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
        const Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 2);
        for (const Exponent& p : {Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0)}) {
            OperatorTuple t(2, {id, z, z}, p);
            CHECK(joint_numerical_radius(t, opt).omega == Catch::Approx(1.0).margin(1e-10));
        }
    }
    SECTION("identity pair at p = 2") {
        CHECK(joint_numerical_radius(fixtures::identity_pair(), opt).omega ==
              Catch::Approx(std::sqrt(2.0)).margin(1e-10));
    }
    SECTION("shift pair at p = 2: 1/sqrt(2)") {
        const auto t = fixtures::shift_pair();
        const auto res = joint_numerical_radius(t, opt);
        CHECK(res.omega == Catch::Approx(M_SQRT1_2).margin(1e-9));
        CHECK(res.omega == Catch::Approx(oracle::joint_radius(t)).margin(1e-6));
    }
    SECTION("Hermitian singleton: radius equals norm equals spectral radius") {
        Rng rng(77);
        MatrixSpace space(4);
        for (int t = 0; t < 5; ++t) {
            Eigen::MatrixXcd g = gaussian_matrix(rng, 4, 4);
            Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
            OperatorTuple tup(4, {h}, Exponent(2.0));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
            const double rho = std::max(std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[3]));
            CHECK(joint_numerical_radius(tup, opt).omega == Catch::Approx(rho).epsilon(1e-6));
            CHECK(space.norm(h) == Catch::Approx(rho).epsilon(1e-10));
        }
    }
}

TEST_CASE("tuple_norm") {
    const auto opt = test_options();

    SECTION("singleton identity") {
        OperatorTuple t(2, {Eigen::MatrixXcd::Identity(2, 2)}, Exponent(2.0));
        CHECK(tuple_norm(t, opt).value == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("identity pair: sqrt(2) at y = x") {
        CHECK(tuple_norm(fixtures::identity_pair(), opt).value ==
              Catch::Approx(std::sqrt(2.0)).margin(1e-9));
    }
    SECTION("shift pair: norm one") {
        const auto t = fixtures::shift_pair();
        const auto res = tuple_norm(t, opt);
        CHECK(res.value == Catch::Approx(1.0).margin(1e-9));
        CHECK(res.value == Catch::Approx(oracle::tuple_norm(t)).margin(1e-6));
    }
    SECTION("agrees with the diagonal-operator dual route") {
        Rng rng(13);
        for (int trial = 0; trial < 6; ++trial) {
            const auto t = fixtures::random_tuple(rng, 2, 3, Exponent(2.0));
            const auto direct = tuple_norm(t, opt);

            MatrixSpace space(2);
            OperatorSeq<MatrixSpace> seq(space, t.ops, t.p);
            const auto via_shadow = triple_norm(seq, opt);
            CHECK(std::abs(direct.value - via_shadow.value) <= 2e-3 * std::max(1.0, direct.value));
        }
    }
}

TEST_CASE("polarization") {
    SECTION("zero vectors give zero residual") {
        const auto t = fixtures::identity_pair();
        CHECK(polarization_residual(t, Eigen::VectorXcd::Zero(2), Eigen::VectorXcd::Zero(2)) == 0.0);
    }
    SECTION("orthogonal vectors under the identity") {
        OperatorTuple t(2, {Eigen::MatrixXcd::Identity(2, 2)}, Exponent(2.0));
        Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(2), e2 = Eigen::VectorXcd::Zero(2);
        e1[0] = 1.0;
        e2[1] = 1.0;
        CHECK(polarization_residual(t, e1, e2) < 1e-15);
    }
    SECTION("random instances stay below the scaled tolerance") {
        Rng rng(4);
        for (int trial = 0; trial < 200; ++trial) {
            const auto t = fixtures::random_tuple(rng, 4, 5, Exponent(2.0));
            const Eigen::VectorXcd x = 2.0 * gaussian_vector(rng, 4);
            const Eigen::VectorXcd y = 2.0 * gaussian_vector(rng, 4);
            double max_norm = 0.0;
            for (const auto& op : t.ops) max_norm = std::max(max_norm, op.norm());
            const double scale = (x.norm() + y.norm()) * (x.norm() + y.norm()) * std::max(1.0, max_norm);
            CHECK(polarization_residual(t, x, y) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("radius_duality_check") {
    const auto opt = test_options();

    SECTION("identity singleton: both sides are one") {
        OperatorTuple t(2, {Eigen::MatrixXcd::Identity(2, 2)}, Exponent(2.0));
        const auto rep = radius_duality_check(t, opt);
        CHECK(rep.omega == Catch::Approx(1.0).margin(1e-10));
        CHECK(rep.sup_w_beta == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("identity pair: both sides sqrt(2), gap at machine level") {
        const auto rep = radius_duality_check(fixtures::identity_pair(), opt);
        CHECK(rep.omega == Catch::Approx(std::sqrt(2.0)).margin(1e-9));
        CHECK(std::abs(rep.omega - rep.sup_w_beta) <= 1e-9);
    }
    SECTION("shift pair: both sides 1/sqrt(2)") {
        const auto rep = radius_duality_check(fixtures::shift_pair(), opt);
        CHECK(rep.omega == Catch::Approx(M_SQRT1_2).margin(1e-3));
        CHECK(rep.sup_w_beta == Catch::Approx(M_SQRT1_2).margin(1e-3));
        CHECK(rep.gap_rel <= 2e-3);
    }
}

TEST_CASE("sandwich on random tuples") {
    const auto opt = test_options(99);
    Rng rng(21);
    const std::vector<Exponent> ps{Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0)};
    for (int trial = 0; trial < 12; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform() * 5);
        const int n = 1 + static_cast<int>(rng.uniform() * 8);
        const auto t = fixtures::random_tuple(rng, d, n, ps[static_cast<std::size_t>(trial) % ps.size()]);
        const auto joint = joint_numerical_radius(t, opt);
        const auto tn = tuple_norm(t, opt, {{joint.witness, joint.witness}});
        const double scale = std::max(1.0, tn.value);
        CHECK(joint.omega >= 0.5 * tn.value - 1e-3 * scale);
        CHECK(joint.omega <= tn.value + 1e-3 * scale);
    }
}

TEST_CASE("gradient matches central finite differences") {
    Rng rng(31);
    const std::vector<Exponent> ps{Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0)};
    int done = 0;
    while (done < 30) {
        const int d = 2 + static_cast<int>(rng.uniform() * 3);
        const auto t = fixtures::random_tuple(rng, d, 3, ps[static_cast<std::size_t>(done) % ps.size()]);
        const Eigen::VectorXcd x = unit_sphere_vector(rng, d);
        bool degenerate = false;
        for (const auto& op : t.ops)
            if (std::abs(x.dot(op * x)) < 1e-3) degenerate = true;
        if (degenerate) continue;

        const Eigen::VectorXcd grad = joint_radius_gradient(t, x);
        Eigen::VectorXcd w = gaussian_vector(rng, d);
        w -= x.dot(w).real() * x;
        w /= w.norm();
        const double h = 1e-6;
        const auto value_at = [&](double s) {
            Eigen::VectorXcd v = x + s * w;
            v /= v.norm();
            return joint_radius_objective(t, v);
        };
        const double fd = (value_at(h) - value_at(-h)) / (2.0 * h);
        const double an = grad.dot(w).real();
        CHECK(std::abs(fd - an) <= 1e-5 * std::max(1.0, std::abs(an)));
        ++done;
    }
}

TEST_CASE("numerical_range_sample") {
    const auto opt = test_options();

    SECTION("identity plus zero: every point is (1, 0)") {
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
        const Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 2);
        OperatorTuple t(2, {id, z}, Exponent(2.0));
        const auto sample = numerical_range_sample(t, 32, 5, opt);
        for (const auto& pt : sample.points) {
            CHECK(std::abs(pt.entries[0] - cplx{1.0, 0.0}) < 1e-12);
            CHECK(std::abs(pt.entries[1]) < 1e-12);
        }
    }
    SECTION("Hermitian singleton: diagonal pairings stay within the spectrum") {
        Rng rng(61);
        Eigen::MatrixXcd g = gaussian_matrix(rng, 3, 3);
        Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
        OperatorTuple t(3, {h}, Exponent(2.0));
        const auto sample = numerical_range_sample(t, 200, 8, opt);
        for (const auto& pt : sample.points) {
            CHECK(std::abs(pt.entries[0].imag()) < 1e-12);
            CHECK(pt.entries[0].real() >= es.eigenvalues()[0] - 1e-10);
            CHECK(pt.entries[0].real() <= es.eigenvalues()[2] + 1e-10);
        }
    }
    SECTION("nilpotent singleton: pairings bounded by the radius") {
        const auto t = fixtures::nilpotent_singleton();
        const auto sample = numerical_range_sample(t, 500, 3, opt);
        for (const auto& pt : sample.points) CHECK(std::abs(pt.entries[0]) <= 0.5 + 1e-12);
    }
    SECTION("every sampled point sits under the pooled radius estimate") {
        Rng rng(71);
        const auto t = fixtures::random_tuple(rng, 3, 4, Exponent(3.0));
        const auto sample = numerical_range_sample(t, 64, 11, opt);
        for (const auto& pt : sample.points)
            CHECK(p_norm(pt, t.p) <= sample.omega_with_pool + 1e-12);
        for (const auto& w : sample.witnesses) CHECK(std::abs(w.norm() - 1.0) <= 1e-12);
    }
}
