#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lpcompact/optimize.hpp"
#include "lpcompact/spaces.hpp"
#include "oracles.hpp"

using namespace lpc;

TEST_CASE("instance norms") {
    CnSpace cn(2, Exponent(2.0));
    Eigen::VectorXcd v(2);
    v << cplx(3, 0), cplx(4, 0);
    CHECK(cn.norm(v) == 5.0);

    GridFunctionSpace grid(3);
    Eigen::VectorXcd f(3);
    f << cplx(1, 0), cplx(-2, 0), cplx(0.5, 0);
    CHECK(grid.norm(f) == 2.0);

    MatrixSpace mat(2);
    Eigen::MatrixXcd t(2, 2);
    t << 0, 1, 0, 0;
    CHECK(mat.norm(t) == Catch::Approx(1.0).margin(1e-14));

    Eigen::VectorXcd wrong(3);
    wrong.setZero();
    CHECK_THROWS_AS(cn.norm(wrong), DimensionMismatchError);
}

TEST_CASE("dual_apply") {
    SECTION("point mass evaluates the function") {
        GridFunctionSpace grid(4);
        Eigen::VectorXcd f(4);
        f << cplx(1, 1), cplx(2, 0), cplx(-3, 0), cplx(0, 2);
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(4);
        w[2] = 1.0;
        CHECK(grid.dual_apply({w}, f) == f[2]);
    }
    SECTION("rank-one functional picks a matrix entry") {
        MatrixSpace mat(2);
        Eigen::MatrixXcd t(2, 2);
        t << 5, 0, 0, 7;
        Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(2);
        e1[0] = 1.0;
        CHECK(mat.dual_apply(MatrixSpace::RankOneFunctional{e1, e1}, t) == cplx{5.0, 0.0});
    }
    SECTION("orthogonality in C^2") {
        CnSpace cn(2, Exponent(2.0));
        Eigen::VectorXcd w(2);
        w << cplx(M_SQRT1_2, 0), cplx(M_SQRT1_2, 0);
        Eigen::VectorXcd a(2);
        a << cplx(1, 0), cplx(-1, 0);
        CHECK(std::abs(cn.dual_apply({w}, a)) < 1e-15);
    }
}

TEST_CASE("norming functionals attain the norm") {
    Rng rng(11);
    CnSpace cn(4, Exponent(3.0));
    GridFunctionSpace grid(5);
    MatrixSpace mat(3);
    for (int t = 0; t < 50; ++t) {
        const Eigen::VectorXcd a = gaussian_vector(rng, 4);
        const cplx va = cn.dual_apply(cn.norming_functional(a), a);
        CHECK(std::abs(va - cplx{cn.norm(a), 0.0}) < 1e-12 * std::max(1.0, cn.norm(a)));

        const Eigen::VectorXcd f = gaussian_vector(rng, 5);
        const cplx vf = grid.dual_apply(grid.norming_functional(f), f);
        CHECK(std::abs(vf - cplx{grid.norm(f), 0.0}) < 1e-12 * std::max(1.0, grid.norm(f)));

        const Eigen::MatrixXcd m = gaussian_matrix(rng, 3, 3);
        const cplx vm = mat.dual_apply(mat.norming_functional(m), m);
        CHECK(std::abs(vm - cplx{mat.norm(m), 0.0}) < 1e-10 * std::max(1.0, mat.norm(m)));
    }
}

TEST_CASE("sampled functionals stay inside the dual ball") {
    Rng rng(23);
    SECTION("cn") {
        CnSpace cn(5, Exponent(4.0 / 3.0));
        const auto functionals = sample_dual_ball(cn, 40, 7);
        for (int t = 0; t < 1000; ++t) {
            const Eigen::VectorXcd a = gaussian_vector(rng, 5);
            for (const auto& phi : functionals) CHECK(std::abs(cn.dual_apply(phi, a)) <= cn.norm(a) + 1e-10);
        }
    }
    SECTION("cgrid") {
        GridFunctionSpace grid(6);
        const auto functionals = sample_dual_ball(grid, 40, 7);
        for (int t = 0; t < 1000; ++t) {
            const Eigen::VectorXcd f = gaussian_vector(rng, 6);
            for (const auto& phi : functionals)
                CHECK(std::abs(grid.dual_apply(phi, f)) <= grid.norm(f) + 1e-10);
        }
    }
    SECTION("mat") {
        MatrixSpace mat(2);
        const auto functionals = sample_dual_ball(mat, 40, 7);
        for (int t = 0; t < 1000; ++t) {
            const Eigen::MatrixXcd m = gaussian_matrix(rng, 2, 2);
            const double nrm = mat.norm(m);
            for (const auto& phi : functionals) CHECK(std::abs(mat.dual_apply(phi, m)) <= nrm + 1e-10);
        }
    }
}

TEST_CASE("sample_dual_ball is deterministic and honors count") {
    CnSpace cn(3, Exponent(2.0));
    const auto one = sample_dual_ball(cn, 1, 99);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(p_norm(one[0].weights, Exponent(2.0)) - 1.0) < 1e-14);

    const auto a = sample_dual_ball(cn, 10, 123);
    const auto b = sample_dual_ball(cn, 10, 123);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].weights == b[i].weights);
}

TEST_CASE("dual_ball_maximize") {
    AscentOptions opt;
    opt.restarts = 12;
    opt.iters = 80;

    SECTION("zero objective") {
        CnSpace cn(3, Exponent(2.0));
        const auto res = dual_ball_maximize(cn, [](const CnSpace::Functional&) { return 0.0; }, opt);
        CHECK(res.value == 0.0);
    }
    SECTION("scalar instance recovers the unit functional") {
        CnSpace cn(1, Exponent(2.0));
        Eigen::VectorXcd one(1);
        one << cplx(1, 0);
        const auto res = dual_ball_maximize(
            cn, [&](const CnSpace::Functional& phi) { return std::abs(cn.dual_apply(phi, one)); }, opt);
        CHECK(res.value == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("matrix objective reaches the top singular value") {
        MatrixSpace mat(2);
        Eigen::MatrixXcd t(2, 2);
        t << 0, 1, 0, 0;
        const auto res = dual_ball_maximize(
            mat, [&](const MatrixSpace::Functional& phi) { return std::abs(mat.dual_apply(phi, t)); }, opt);
        CHECK(res.value == Catch::Approx(1.0).margin(1e-9));
        CHECK(res.value <= 1.0 + 1e-12);
    }
    SECTION("degenerate budget returns a zero bound instead of crashing") {
        AscentOptions zero = opt;
        zero.restarts = 0;
        CnSpace cn(2, Exponent(2.0));
        const auto res = dual_ball_maximize(cn, [](const CnSpace::Functional&) { return 3.0; }, zero);
        CHECK(res.value == 0.0);
    }
}

TEST_CASE("maximizer dominates fresh sample batches") {
    Rng rng(3);
    MatrixSpace mat(2);
    const Eigen::MatrixXcd t = gaussian_matrix(rng, 2, 2);
    AscentOptions opt;
    opt.restarts = 16;
    opt.iters = 100;
    const auto objective = [&](const MatrixSpace::Functional& phi) { return std::abs(mat.dual_apply(phi, t)); };
    const auto res = dual_ball_maximize(mat, objective, opt);
    for (const auto& phi : sample_dual_ball(mat, 200, 4242)) CHECK(objective(phi) <= res.value + 1e-9);
}

TEST_CASE("rank-one functionals reach the operator norm") {
    // The sup over rank-one functionals of |phi(T)| is the full norm; the
    // optimizer must land within tolerance of the singular value, and never
    // above it.
    Rng rng(17);
    MatrixSpace mat(2);
    AscentOptions opt;
    opt.restarts = 16;
    opt.iters = 120;
    for (int t = 0; t < 10; ++t) {
        const Eigen::MatrixXcd m = gaussian_matrix(rng, 2, 2);
        const double sigma = mat.norm(m);
        std::vector<MatrixSpace::Functional> hint{mat.norming_functional(m)};
        const auto res = dual_ball_maximize(
            mat, [&](const MatrixSpace::Functional& phi) { return std::abs(mat.dual_apply(phi, m)); }, opt,
            hint);
        CHECK(res.value == Catch::Approx(sigma).epsilon(1e-9));
        CHECK(res.value <= sigma + 1e-10);
    }
}
