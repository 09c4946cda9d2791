#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "spinlab/spin_model.hpp"

#include <random>

using namespace spinlab;

TEST_CASE("construction rejects bad matrices") {
    Mat asym(2, 2);
    asym << 1, 2, 3, 1;
    CHECK_THROWS_AS(SpinModel{asym}, ArgumentError);
    Mat neg = Mat::Ones(2, 2);
    neg(0, 1) = neg(1, 0) = -1;
    CHECK_THROWS_AS(SpinModel{neg}, ArgumentError);
    Mat reducible = Mat::Identity(2, 2);
    CHECK_THROWS_AS(SpinModel{reducible}, ArgumentError);
    Mat zero_row = Mat::Zero(2, 2);
    zero_row(1, 1) = 1;
    CHECK_THROWS_AS(SpinModel{zero_row}, ArgumentError);
}

TEST_CASE("signature of colorings and Potts") {
    auto c3 = classify_signature(SpinModel::colorings(3));
    CHECK(c3.signature == Signature::antiferromagnetic);
    REQUIRE(c3.eigenvalues.size() == 3);
    CHECK(c3.eigenvalues[0] == doctest::Approx(2.0));
    CHECK(c3.eigenvalues[1] == doctest::Approx(-1.0));
    CHECK(c3.eigenvalues[2] == doctest::Approx(-1.0));

    auto p3 = classify_signature(SpinModel::potts(3, 0.5));
    CHECK(p3.signature == Signature::antiferromagnetic);
    CHECK(p3.eigenvalues[0] == doctest::Approx(2.5));
    CHECK(p3.eigenvalues[2] == doctest::Approx(-0.5));
}

TEST_CASE("identity-like positive matrix is not antiferromagnetic") {
    Mat B(2, 2);
    B << 2, 1, 1, 2;  // eigenvalues 3, 1 (identity itself is reducible)
    CHECK(classify_signature(SpinModel{B}).signature == Signature::ferro_or_mixed);
    CHECK_THROWS_AS(perron_decompose(SpinModel{B}), DomainError);
}

TEST_CASE("singular matrix is rejected") {
    CHECK_THROWS_AS(classify_signature(SpinModel{Mat::Ones(2, 2)}), DomainError);
}

TEST_CASE("Potts grid is antiferromagnetic") {
    for (int q = 2; q <= 6; ++q)
        for (int k = 0; k <= 9; ++k) {
            const double B = 0.1 * k;
            auto rep = classify_signature(SpinModel::potts(q, B));
            CHECK(rep.signature == Signature::antiferromagnetic);
            for (std::size_t i = 1; i < rep.eigenvalues.size(); ++i)
                CHECK(rep.eigenvalues[i] == doctest::Approx(B - 1).epsilon(1e-10));
        }
}

TEST_CASE("ergodicity matches a two-colouring oracle") {
    CHECK(is_ergodic(SpinModel::colorings(3)));
    CHECK_FALSE(is_ergodic(SpinModel::colorings(2)));
    CHECK(is_ergodic(SpinModel::potts(2, 0.5)));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0, 1);
    for (int t = 0; t < 200; ++t) {
        const int q = 2 + t % 5;
        Mat B = Mat::Zero(q, q);
        for (int i = 0; i < q; ++i)
            for (int j = i; j < q; ++j)
                if (U(rng) < 0.45 || j == i + 1) B(i, j) = B(j, i) = 0.1 + U(rng);
        SpinModel m(B);
        CHECK(is_ergodic(m) == oracle::has_odd_closed_walk(B));
    }
}

TEST_CASE("Perron decomposition reconstructs B") {
    auto c2 = perron_decompose(SpinModel::colorings(2));
    // u = sqrt(lambda_1) * unit Perron vector; P from the eigenpair at -1.
    CHECK(c2.u(0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(c2.u(1) == doctest::Approx(std::sqrt(0.5)));
    Mat PtP = c2.P.transpose() * c2.P;
    Mat expect(2, 2);
    expect << 0.5, -0.5, -0.5, 0.5;
    CHECK((PtP - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((c2.u * c2.u.transpose() - PtP - SpinModel::colorings(2).B()).cwiseAbs().maxCoeff() < 1e-12);

    auto p3 = perron_decompose(SpinModel::potts(3, 0.5));
    for (int i = 0; i < 3; ++i) CHECK(p3.u(i) == doctest::Approx(std::sqrt(2.5 / 3)));
    Eigen::SelfAdjointEigenSolver<Mat> es(p3.P.transpose() * p3.P);
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.5));
    CHECK(es.eigenvalues()(2) == doctest::Approx(0.5));

    CHECK_THROWS_AS(perron_decompose(SpinModel{Mat::Constant(1, 1, 2.0)}), DomainError);
}

TEST_CASE("Perron reconstruction on random antiferromagnetic matrices") {
    // u u^T - M M^T with u > 0 is antiferromagnetic whenever it is
    // nonnegative and regular; sample until 100 such instances are found.
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.2, 1.0), V(-0.3, 0.3);
    int found = 0;
    for (int t = 0; t < 20000 && found < 100; ++t) {
        const int q = 2 + t % 4;
        Vec u(q);
        for (int i = 0; i < q; ++i) u(i) = U(rng);
        Mat M(q, q - 1);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q - 1; ++j) M(i, j) = V(rng);
        Mat B = u * u.transpose() - M * M.transpose();
        B = 0.5 * (B + B.transpose());
        if ((B.array() < 0).any()) continue;
        SpinModel m(B);
        SignatureReport sig;
        try {
            sig = classify_signature(m);
        } catch (const DomainError&) {
            continue;
        }
        if (sig.signature != Signature::antiferromagnetic) continue;
        ++found;
        auto pd = perron_decompose(m);
        CHECK((pd.u.array() > 0).all());
        Mat R = pd.u * pd.u.transpose() - pd.P.transpose() * pd.P;
        CHECK((R - B).cwiseAbs().maxCoeff() <= 1e-10 * B.cwiseAbs().maxCoeff());
    }
    CHECK(found == 100);
}
