#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/phase_diagram.hpp"
#include "spinlab/tree_recursion.hpp"

#include <random>

using namespace spinlab;

namespace {
Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}
Vec uniform(int q) { return Vec::Constant(q, 1.0 / q); }

Vec random_simplex(std::mt19937_64& rng, int q, double floor = 0.0) {
    std::exponential_distribution<double> E(1.0);
    Vec v(q);
    for (int i = 0; i < q; ++i) v(i) = E(rng) + floor;
    return v / v.sum();
}
}  // namespace

TEST_CASE("optimal_x examples") {
    auto x = optimal_x(SpinModel::colorings(2), uniform(2), uniform(2)).x;
    CHECK(x(0, 0) == doctest::Approx(0.0));
    CHECK(x(0, 1) == doctest::Approx(0.5));

    std::mt19937_64 rng(1);
    Vec a = random_simplex(rng, 3), b = random_simplex(rng, 3);
    auto xc = optimal_x(Mat::Ones(3, 3), a, b).x;
    CHECK((xc - a * b.transpose()).cwiseAbs().maxCoeff() < 1e-12);

    auto xp = optimal_x(SpinModel::potts(2, 0.5), uniform(2), uniform(2)).x;
    CHECK(xp(0, 0) == doctest::Approx(1.0 / 6));
    CHECK(xp(0, 1) == doctest::Approx(1.0 / 3));
}

TEST_CASE("optimal_x marginals and infeasibility") {
    std::mt19937_64 rng(5);
    const Mat B = oracle::potts(4, 0.3);
    for (int t = 0; t < 50; ++t) {
        Vec a = random_simplex(rng, 4), b = random_simplex(rng, 4);
        auto em = optimal_x(B, a, b);
        CHECK((em.x.rowwise().sum() - a).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((em.x.colwise().sum().transpose() - b).cwiseAbs().maxCoeff() < 1e-10);
    }
    Vec e1 = Vec::Zero(2);
    e1(0) = 1;
    CHECK_THROWS_AS(optimal_x(SpinModel::colorings(2), e1, e1), DomainError);
    CHECK_FALSE(psi1(SpinModel::colorings(2), 3, e1, e1).finite);
}

TEST_CASE("marginal feasibility agrees with Hall's condition") {
    std::mt19937_64 rng(8);
    const Mat B = Mat::Ones(4, 4) - Mat::Identity(4, 4);
    int infeasible = 0;
    for (int t = 0; t < 300; ++t) {
        Vec a = random_simplex(rng, 4), b = random_simplex(rng, 4);
        a(t % 4) += 2.0;
        a /= a.sum();
        b(t % 4) += 1.0 + (t % 3);
        b /= b.sum();
        const bool hall = oracle::hall_feasible(B, a, b);
        infeasible += !hall;
        CHECK(marginals_feasible(B, a, b) == hall);
    }
    CHECK(infeasible > 0);
}

TEST_CASE("psi1 closed forms") {
    CHECK(psi1(SpinModel::colorings(3), 3, uniform(3), uniform(3)).value ==
          doctest::Approx(3 * std::log(2.0) - std::log(3.0)).epsilon(1e-12));
    CHECK(psi1(SpinModel::colorings(2), 3, uniform(2), uniform(2)).value ==
          doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    std::mt19937_64 rng(2);
    const Mat B = oracle::potts(3, 0.4);
    for (int t = 0; t < 40; ++t) {
        Vec a = random_simplex(rng, 3), b = random_simplex(rng, 3);
        CHECK(psi1(B, 4, a, b).value == doctest::Approx(static_cast<double>(*oracle::psi1(B, 4, a, b))).epsilon(1e-10));
    }
}

TEST_CASE("phi examples") {
    auto c3 = SpinModel::colorings(3);
    const double val = phi(c3, 3, Vec::Ones(3), Vec::Ones(3));
    CHECK(val == doctest::Approx(3 * std::log(2.0) - std::log(3.0)).epsilon(1e-12));
    Vec R(3), C(3);
    R << 1, 2, 3;
    C << 0.5, 0.1, 2;
    CHECK(phi(c3, 4, 2 * R, 5 * C) == doctest::Approx(phi(c3, 4, R, C)).epsilon(1e-13));
    CHECK(phi(SpinModel{Mat::Constant(1, 1, 0.7)}, 5, Vec::Ones(1), Vec::Ones(1)) ==
          doctest::Approx(5 * std::log(0.7)));
    Vec e1 = v2(1, 0);
    CHECK_THROWS_AS(phi(SpinModel::colorings(2), 3, e1, e1), DomainError);
}

TEST_CASE("induced norm examples") {
    Mat swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(induced_norm(swap, 3).norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(induced_norm(Mat::Constant(1, 1, 2.5), 4).norm == doctest::Approx(2.5));
    CHECK(induced_norm(SpinModel::colorings(3).B(), 3).norm == doctest::Approx(2 * std::pow(3.0, -1.0 / 3)).epsilon(1e-9));
    auto tr = verify_tensor_identity(SpinModel{swap}, 3);
    CHECK(tr.tensor_norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("max_psi1 matches the half-half phase") {
    auto ref = oracle::half_half_phase(4, 5, 0.0);
    const double at_phase = static_cast<double>(*oracle::psi1(oracle::potts(4, 0.0), 5, ref.alpha, ref.beta));
    CHECK(max_psi1(SpinModel::colorings(4), 5) == doctest::Approx(at_phase).epsilon(1e-8));
}

TEST_CASE("max_psi1 bounds psi1 everywhere") {
    std::mt19937_64 rng(12);
    const Mat B = oracle::potts(3, 0.2);
    const double m = max_psi1(SpinModel{B}, 4);
    for (int t = 0; t < 200; ++t) {
        Vec a = random_simplex(rng, 3), b = random_simplex(rng, 3);
        CHECK(psi1(B, 4, a, b).value <= m + 1e-9);
    }
}

TEST_CASE("Phi equals Psi1 at critical points") {
    auto fps = dedupe_fixpoints(multistart_fixpoints(SpinModel::potts(3, 0.1), 4, 16, 3));
    for (const auto& fp : fps) {
        auto pp = fixpoint_to_phase(fp);
        CHECK(phi(SpinModel::potts(3, 0.1), 4, fp.R, fp.C) ==
              doctest::Approx(static_cast<double>(*oracle::psi1(oracle::potts(3, 0.1), 4, pp.alpha, pp.beta))).epsilon(1e-8));
    }
}

TEST_CASE("tensor additivity of Psi1 at product overlaps") {
    std::mt19937_64 rng(4);
    const Mat B = oracle::potts(3, 0.3);
    const Mat BB = kron(B, B);
    for (int t = 0; t < 20; ++t) {
        Vec a = random_simplex(rng, 3, 0.05), b = random_simplex(rng, 3, 0.05);
        auto ov = dominant_overlap(a, b);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) CHECK(ov.gamma(i * 3 + k) == doctest::Approx(a(i) * a(k)));
        CHECK(psi1(BB, 4, ov.gamma, ov.delta).value == doctest::Approx(2 * psi1(B, 4, a, b).value).epsilon(1e-9));
    }
}

TEST_CASE("psi2 at dominant phases") {
    auto r = psi2_at_dominant(SpinModel::colorings(3), 3, uniform(3), uniform(3));
    CHECK(std::abs(r.deviation) < 1e-8);
    auto ref = oracle::half_half_phase(4, 5, 0.0);
    CHECK(std::abs(psi2_at_dominant(SpinModel::colorings(4), 5, ref.alpha, ref.beta).deviation) < 1e-8);
    auto one = psi2_at_dominant(SpinModel{Mat::Constant(1, 1, 3.0)}, 4, Vec::Ones(1), Vec::Ones(1));
    CHECK(one.value.value == doctest::Approx(2 * 4 * std::log(3.0)));
}

TEST_CASE("g1 is concave on the transportation polytope") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> U(0, 1);
    const Mat B = oracle::potts(3, 0.6);
    for (int t = 0; t < 50; ++t) {
        Vec a = random_simplex(rng, 3, 0.1), b = random_simplex(rng, 3, 0.1);
        // Two plans with the same marginals: the product and the optimum.
        Mat x1 = a * b.transpose();
        Mat x2 = optimal_x(B, a, b).x;
        const double s = U(rng);
        CHECK(g1(B, s * x1 + (1 - s) * x2) >= s * g1(B, x1) + (1 - s) * g1(B, x2) - 1e-12);
    }
}

TEST_CASE("norm duality: power iteration against the two-sided form") {
    // max_{r,c} r^T B c / (|r|_p |c|_p) by coarse search + local ascent in
    // the test, compared with the library norm.
    const Mat B = oracle::potts(3, 0.4);
    const int d = 4;
    const double p = double(d) / (d - 1);
    auto ratio = [&](const Vec& r, const Vec& c) {
        return r.dot(B * c) / (std::pow(r.array().pow(p).sum(), 1 / p) * std::pow(c.array().pow(p).sum(), 1 / p));
    };
    std::mt19937_64 rng(9);
    double best = 0;
    for (int t = 0; t < 4000; ++t) {
        Vec r = random_simplex(rng, 3), c = random_simplex(rng, 3);
        // Coordinate-wise multiplicative hill climb.
        double cur = ratio(r, c);
        for (double step = 0.5; step > 1e-9; step *= 0.5)
            for (bool moved = true; moved;) {
                moved = false;
                for (int i = 0; i < 6; ++i)
                    for (double f : {1 + step, 1 / (1 + step)}) {
                        Vec r2 = r, c2 = c;
                        (i < 3 ? r2(i) : c2(i - 3)) *= f;
                        const double v = ratio(r2, c2);
                        if (v > cur) cur = v, r = r2, c = c2, moved = true;
                    }
            }
        best = std::max(best, cur);
        if (t > 50) break;
    }
    CHECK(induced_norm(B, d).norm == doctest::Approx(best).epsilon(1e-8));
}

TEST_CASE("Hessian of Psi1 in extended precision matches the test oracle") {
    auto ref = oracle::half_half_phase(4, 5, 0.0);
    const Mat B = oracle::potts(4, 0.0);
    Mat H = psi1_tangent_hessian(B, 5, ref.alpha, ref.beta);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (H + H.transpose()));
    auto ev = oracle::psi1_hessian_eigenvalues(B, 5, ref.alpha, ref.beta);
    REQUIRE(static_cast<int>(ev.size()) == es.eigenvalues().size());
    for (std::size_t i = 0; i < ev.size(); ++i)
        CHECK(es.eigenvalues()(i) == doctest::Approx(ev[i]).epsilon(1e-4));
}
