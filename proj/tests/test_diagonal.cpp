#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lpcompact/diagonal_operator.hpp"
#include "lpcompact/fixtures.hpp"

using namespace lpc;

namespace {

AscentOptions test_options(std::uint64_t seed = 1) {
    AscentOptions opt;
    opt.restarts = 12;
    opt.iters = 100;
    opt.seed = seed;
    return opt;
}

OperatorSeq<CnSpace> scalar_seq(const std::vector<cplx>& values, Exponent p) {
    CnSpace space(1, Exponent(2.0));
    std::vector<Eigen::VectorXcd> terms;
    for (cplx v : values) {
        Eigen::VectorXcd e(1);
        e[0] = v;
        terms.push_back(e);
    }
    return {space, std::move(terms), p};
}

} // namespace

TEST_CASE("apply") {
    const auto seq = scalar_seq({{1, 0}, {0.5, 0}, {1.0 / 3.0, 0}}, Exponent(2.0));

    SECTION("basis vectors pick out the terms") {
        for (std::size_t j = 1; j <= 3; ++j)
            CHECK(apply(seq, ScalarSeq::basis(j))[0] == seq.terms[j - 1][0]);
    }
    SECTION("zero input maps to zero") { CHECK(apply(seq, ScalarSeq::zeros(3))[0] == cplx{0.0, 0.0}); }
    SECTION("all-ones input sums the terms") {
        const ScalarSeq ones(std::vector<cplx>(3, cplx{1.0, 0.0}));
        CHECK(std::abs(apply(seq, ones)[0] - cplx{11.0 / 6.0, 0.0}) < 1e-15);
    }
    SECTION("excess support is ignored") {
        ScalarSeq beta = ScalarSeq::zeros(7);
        beta.entries[0] = 1.0;
        beta.entries[6] = 500.0;
        CHECK(apply(seq, beta)[0] == seq.terms[0][0]);
    }
}

TEST_CASE("triple_norm") {
    const auto opt = test_options();

    SECTION("scalar target: the dual ball is the unit disc") {
        Rng rng(8);
        std::vector<cplx> values;
        for (int i = 0; i < 5; ++i) values.push_back(rng.complex_gaussian());
        for (const Exponent& p : {Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0)}) {
            const auto seq = scalar_seq(values, p);
            ScalarSeq flat(values);
            CHECK(triple_norm(seq, opt).value ==
                  Catch::Approx(p_norm(flat, p)).epsilon(1e-12));
        }
    }
    SECTION("inverse-sqrt basis sequence has dual-shadow sup exactly 1") {
        const auto seq = fixtures::inverse_sqrt_basis_seq(60);
        CHECK(triple_norm(seq, opt).value == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("basis sequence has dual-shadow sup exactly 1") {
        const auto seq = fixtures::basis_seq(12);
        CHECK(triple_norm(seq, opt).value == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("p = inf returns the max term norm exactly") {
        Rng rng(3);
        auto seq = fixtures::random_cn_seq(rng, 4, 6, Exponent(2.0), Exponent::infinity());
        double expected = 0.0;
        for (const auto& a : seq.terms) expected = std::max(expected, seq.space.norm(a));
        CHECK(triple_norm(seq, opt).value == expected);
    }
    SECTION("empty sequence throws") {
        CnSpace space(2, Exponent(2.0));
        OperatorSeq<CnSpace> empty(space, {}, Exponent(2.0));
        CHECK_THROWS_AS(triple_norm(empty, opt), EmptySequenceError);
    }
}

TEST_CASE("operator_norm") {
    const auto opt = test_options();

    SECTION("single term: the norm of that term") {
        Rng rng(4);
        for (const Exponent& p : {Exponent(2.0), Exponent(3.0), Exponent::infinity()}) {
            auto seq = fixtures::random_mat_seq(rng, 2, 1, p);
            const double expected = seq.space.norm(seq.terms[0]);
            CHECK(operator_norm(seq, opt).value == Catch::Approx(expected).epsilon(1e-10));
        }
    }
    SECTION("scalar (3,4) with p = 2 gives 5") {
        const auto seq = scalar_seq({{3, 0}, {4, 0}}, Exponent(2.0));
        CHECK(operator_norm(seq, opt).value == Catch::Approx(5.0).epsilon(1e-12));
    }
    SECTION("agrees with the dual route on random matrix sequences") {
        Rng rng(6);
        for (int t = 0; t < 5; ++t) {
            auto seq = fixtures::random_mat_seq(rng, 2, 3, Exponent(2.0));
            const auto tn = triple_norm(seq, opt);
            const auto on = operator_norm(seq, opt, std::optional<MatrixSpace::Functional>(tn.arg));
            CHECK(std::abs(on.value - tn.value) <= 1e-3 * std::max(1.0, tn.value));

            // Coarse beta-sampling oracle: a sampled lower bound the
            // optimizer must dominate and stay near.
            Rng orng(1000 + t);
            double sampled = 0.0;
            for (int s = 0; s < 20000; ++s) {
                const ScalarSeq beta = random_unit_seq(orng, 3, Exponent(2.0));
                sampled = std::max(sampled, seq.space.norm(apply(seq, beta)));
            }
            CHECK(on.value >= sampled - 1e-9);
            CHECK(on.value - sampled <= 0.05 * std::max(1.0, on.value));
        }
    }
}

TEST_CASE("dual_map and the dual-pair identity") {
    Rng rng(12);
    SECTION("zero functional maps to the zero sequence") {
        auto seq = fixtures::random_cgrid_seq(rng, 5, 4, Exponent(2.0));
        GridFunctionSpace::Functional zero{Eigen::VectorXcd::Zero(5)};
        CHECK(dual_map(seq, zero).is_zero());
    }
    SECTION("point masses give the value rows") {
        auto seq = fixtures::random_cgrid_seq(rng, 4, 3, Exponent(2.0));
        for (int s = 0; s < 4; ++s) {
            Eigen::VectorXcd w = Eigen::VectorXcd::Zero(4);
            w[s] = 1.0;
            const ScalarSeq row = dual_map(seq, {w});
            for (std::size_t i = 0; i < seq.size(); ++i) CHECK(row.entries[i] == seq.terms[i][s]);
        }
    }
    SECTION("the identity holds to 1e-12 on random instances") {
        for (int t = 0; t < 40; ++t) {
            auto seq = fixtures::random_mat_seq(rng, 2, 4, Exponent(2.0));
            const auto phis = sample_dual_ball(seq.space, 8, 77 + t);
            for (const auto& phi : phis) {
                const ScalarSeq beta = random_gaussian_seq(rng, seq.size());
                const cplx lhs = holder_pair(beta, dual_map(seq, phi));
                const cplx rhs = seq.space.dual_apply(phi, apply(seq, beta));
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("classify") {
    const auto opt = test_options(42);

    SECTION("basis sequence: tails pinned at 1, never compact below the horizon") {
        const auto rep = classify(fixtures::basis_seq(20), {0.5}, opt);
        CHECK_FALSE(rep.in_lpc);
        CHECK(rep.in_lpb);
        CHECK(rep.shadow_certificates[0].cutoff_m == 20);
        for (const auto& [m, tail] : rep.shadow_tail_profile) {
            if (m < 20) CHECK(tail == 1.0);
        }
    }
    SECTION("inverse-sqrt sequence: compact-type shadow, divergent strong sums") {
        const auto rep = classify(fixtures::inverse_sqrt_basis_seq(100), {0.5, 0.3, 0.2}, opt);
        CHECK(rep.in_lpc);
        CHECK_FALSE(rep.in_lp);
        CHECK(rep.triple_norm == Catch::Approx(1.0).margin(1e-6));
        CHECK(rep.strong_norm > 2.0); // sqrt(H_100) ~ 2.28
        CHECK(rep.shadow_certificates[2].cutoff_m == 25);
        CHECK(rep.norm_equality_gap <= 1e-3);
        CHECK(rep.proof_chain_ok);
    }
    SECTION("single-term sequences carry every membership flag") {
        Rng rng(9);
        auto seq = fixtures::random_cn_seq(rng, 3, 1, Exponent(2.0), Exponent(2.0));
        const auto rep = classify(seq, {0.5, 0.1}, opt);
        CHECK(rep.in_lp);
        CHECK(rep.in_lpb);
        CHECK(rep.in_lpc);
    }
    SECTION("triple norm never exceeds the strong norm") {
        Rng rng(14);
        for (int t = 0; t < 6; ++t) {
            auto seq = fixtures::random_mat_seq(rng, 2, 4, Exponent(2.0));
            const auto rep = classify(seq, {0.5}, opt);
            CHECK(rep.triple_norm <= rep.strong_norm + 1e-9);
        }
    }
    SECTION("p = inf uses component nets") {
        // Constant sequences compress to a single net point; the membership
        // flag holds even though the terms never decay.
        Rng rng(15);
        const Eigen::VectorXcd a = gaussian_vector(rng, 3);
        CnSpace space(3, Exponent(2.0));
        std::vector<Eigen::VectorXcd> terms(6, a);
        OperatorSeq<CnSpace> seq(space, terms, Exponent::infinity());
        const auto rep = classify(seq, {0.5, 0.1}, opt);
        CHECK(rep.in_lpc);
        for (const auto& [eps, size] : rep.inf_net_sizes) CHECK(size == 1);

        const auto basis = classify(fixtures::basis_seq(8, Exponent::infinity()), {0.5}, opt);
        CHECK_FALSE(basis.in_lpc); // unit vectors never compress
    }
    SECTION("matrix spaces report both dual-ball routes") {
        Rng rng(16);
        auto seq = fixtures::random_mat_seq(rng, 2, 3, Exponent(2.0));
        const auto rep = classify(seq, {0.5}, opt);
        CHECK(rep.rank_one_estimate > 0.0);
        CHECK(rep.general_estimate >= rep.rank_one_estimate - 1e-12);
        CHECK(std::abs(rep.general_estimate - rep.rank_one_estimate) <= 2e-3 * std::max(1.0, rep.general_estimate));
    }
}

TEST_CASE("truncation_convergence") {
    const auto opt = test_options(5);

    SECTION("inverse-sqrt sequence follows the analytic tail suprema") {
        const auto seq = fixtures::inverse_sqrt_basis_seq(50);
        const auto curve = truncation_convergence(seq, {0, 1, 5, 10, 50}, opt);
        for (const auto& [n, value] : curve) {
            if (n >= 50) {
                CHECK(value == 0.0);
            } else {
                CHECK(value == Catch::Approx(std::sqrt(1.0 / (n + 1.0))).margin(1e-9));
            }
        }
    }
    SECTION("basis sequence stays at 1 until the horizon") {
        const auto curve = truncation_convergence(fixtures::basis_seq(10), {0, 4, 9, 10}, opt);
        for (const auto& [n, value] : curve) {
            if (n < 10)
                CHECK(value == Catch::Approx(1.0).margin(1e-9));
            else
                CHECK(value == 0.0);
        }
    }
    SECTION("nonincreasing on random instances") {
        Rng rng(21);
        auto seq = fixtures::random_mat_seq(rng, 2, 6, Exponent(2.0));
        const auto curve = truncation_convergence(seq, {0, 1, 2, 3, 4, 5, 6}, opt);
        for (std::size_t i = 0; i + 1 < curve.size(); ++i)
            CHECK(curve[i].second >= curve[i + 1].second - 1e-9);
        CHECK(curve.back().second == 0.0);
    }
    SECTION("p = inf is rejected") {
        CHECK_THROWS_AS(truncation_convergence(fixtures::basis_seq(4, Exponent::infinity()), {0}, opt),
                        InfiniteExponentError);
    }
}

TEST_CASE("c0_decay_check") {
    Rng rng(33);
    const Eigen::VectorXcd a = gaussian_vector(rng, 3);
    CnSpace space(3, Exponent(2.0));
    const double norm_a = space.norm(a);

    SECTION("constant sequences never decay") {
        std::vector<Eigen::VectorXcd> terms(8, a);
        OperatorSeq<CnSpace> seq(space, terms, Exponent::infinity());
        const auto rep = c0_decay_check(seq, {0.5 * norm_a});
        CHECK_FALSE(rep.decays);
    }
    SECTION("unit basis vectors never decay") {
        const auto rep = c0_decay_check(fixtures::basis_seq(10), {0.5});
        CHECK_FALSE(rep.decays);
        for (double n : rep.term_norms) CHECK(n == 1.0);
    }
    SECTION("geometric decay crosses every tolerance") {
        std::vector<Eigen::VectorXcd> terms;
        for (int i = 1; i <= 20; ++i) terms.push_back(std::pow(2.0, -i) * a);
        OperatorSeq<CnSpace> seq(space, terms, Exponent(2.0));
        const auto rep = c0_decay_check(seq, {0.25 * norm_a, 0.01 * norm_a});
        CHECK(rep.decays);
        // Horizon grows like log2(norm / eps): first k with 2^{-(k+1)} < eps.
        CHECK(rep.grid[0].horizon == 2);
        CHECK(rep.grid[1].horizon == 6);
    }
}

TEST_CASE("norm equality and Holder domination across spaces") {
    const auto opt = test_options(77);
    Rng rng(55);
    const std::vector<Exponent> ps{Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0), Exponent::infinity()};

    for (int t = 0; t < 8; ++t) {
        const Exponent p = ps[static_cast<std::size_t>(t) % ps.size()];
        const Exponent q = p.conjugate();
        auto run = [&](auto seq) {
            const auto tn = triple_norm(seq, opt);
            using Sp = decltype(seq.space);
            const auto on = operator_norm(seq, opt, std::optional<typename Sp::Functional>(tn.arg));
            CHECK(std::abs(on.value - tn.value) <= 1e-3 * std::max(1.0, tn.value));
            CHECK(tn.value <= strong_norm(seq) + 1e-9);

            for (const auto& phi : sample_dual_ball(seq.space, 6, 31 + t)) {
                const ScalarSeq beta = random_gaussian_seq(rng, seq.size());
                const double lhs = std::abs(seq.space.dual_apply(phi, apply(seq, beta)));
                CHECK(lhs <= p_norm(dual_map(seq, phi), p) * p_norm(beta, q) + 1e-10);
            }
        };
        run(fixtures::random_cn_seq(rng, 3, 4, Exponent(2.0), p));
        run(fixtures::random_cgrid_seq(rng, 5, 4, p));
        run(fixtures::random_mat_seq(rng, 2, 4, p));
    }
}

TEST_CASE("p = 1 sequences act on finite-support c0 inputs") {
    // The q = inf domain: beta ranges over the sup-norm ball. The operator
    // norm equals the triple norm estimated over the dual ball.
    const auto opt = test_options(13);
    Rng rng(66);
    auto seq = fixtures::random_cn_seq(rng, 3, 5, Exponent(2.0), Exponent(1.0));
    const auto tn = triple_norm(seq, opt);
    const auto on = operator_norm(seq, opt, std::optional<CnSpace::Functional>(tn.arg));
    CHECK(std::abs(on.value - tn.value) <= 1e-3 * std::max(1.0, tn.value));

    const auto rep = classify(seq, {0.5}, opt);
    CHECK(rep.domain_label == "c0");
}
