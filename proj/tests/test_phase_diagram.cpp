#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/phase_diagram.hpp"
#include "spinlab/tree_recursion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace spinlab;

TEST_CASE("threshold") {
    CHECK(potts_threshold(3, 6) == doctest::Approx(0.5));
    CHECK(potts_threshold(4, 5) == doctest::Approx(0.2));
    CHECK(potts_threshold(5, 5) == 0.0);
}

TEST_CASE("half-half root") {
    // Direct residual of 2x + x^5 - 2x^4 - 1 at the returned root.
    const double x = half_half_root(4, 5, 0.0);
    CHECK(x == doctest::Approx(1.7221).epsilon(1e-4));
    CHECK(std::abs(2 * x + std::pow(x, 5) - 2 * std::pow(x, 4) - 1) < 1e-10);
    CHECK(std::pow(x, 4) == doctest::Approx(oracle::half_half_ratio(4, 5, 0.0)).epsilon(1e-10));

    double prev = x;
    for (double B : {0.1, 0.19, 0.199, 0.1999}) {
        const double xb = half_half_root(4, 5, B);
        CHECK(xb > 1.0);
        CHECK(xb < prev);
        CHECK(std::pow(xb, 4) == doctest::Approx(oracle::half_half_ratio(4, 5, B)).epsilon(1e-9));
        prev = xb;
    }
    CHECK(prev < 1.05);
    CHECK_THROWS_AS(solve_half_half(4, 5, 0.25), DomainError);
    CHECK_THROWS_AS(solve_half_half(4, 5, 0.2), DomainError);
}

TEST_CASE("half-half fixpoint is a fixpoint of the recursions") {
    auto hh = solve_half_half(4, 5, 0.05);
    CHECK(hh.fixpoint.certified);
    CHECK(step_residual(SpinModel::potts(4, 0.05).B(), 5, hh.fixpoint.R, hh.fixpoint.C) < 1e-10);
}

TEST_CASE("dominant phases: colorings q=4, Delta=5") {
    auto d = dominant_phases(4, 5, 0.0);
    CHECK(d.regime == "semi_translation_nonuniqueness");
    REQUIRE(d.phases.size() == 6);
    CHECK(*d.a == doctest::Approx(0.4690).epsilon(1e-3));
    CHECK(*d.b == doctest::Approx(0.0310).epsilon(2e-3));

    auto ref = oracle::half_half_phase(4, 5, 0.0);
    // Every phase is a colour permutation (and possibly side swap) of the reference.
    std::set<std::vector<long>> keys;
    for (const auto& ph : d.phases) {
        std::vector<double> a(ph.alpha.data(), ph.alpha.data() + 4), ra(ref.alpha.data(), ref.alpha.data() + 4);
        std::sort(a.begin(), a.end());
        std::sort(ra.begin(), ra.end());
        for (int i = 0; i < 4; ++i) CHECK(a[i] == doctest::Approx(ra[i]).epsilon(1e-8));
        CHECK((ph.alpha - ph.beta).lpNorm<1>() > 1e-6);
        CHECK(ph.attractive);
        CHECK(ph.psi1 == doctest::Approx(d.phases[0].psi1).epsilon(1e-10));
        const double ps = static_cast<double>(*oracle::psi1(oracle::potts(4, 0.0), 5, ph.alpha, ph.beta));
        CHECK(ph.psi1 == doctest::Approx(ps).epsilon(1e-9));
        std::vector<long> k;
        for (int i = 0; i < 4; ++i) k.push_back(std::lround(ph.alpha(i) * 1e6));
        keys.insert(k);
    }
    CHECK(keys.size() == 6);

    // Closure: permuting colours of any phase lands in the set.
    std::vector<int> perm{0, 1, 2, 3};
    do {
        for (const auto& ph : d.phases) {
            std::vector<long> k;
            for (int i = 0; i < 4; ++i) k.push_back(std::lround(ph.alpha(perm[i]) * 1e6));
            CHECK(keys.count(k) == 1);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("dominant phases: q=4, Delta=6, B=0.1 all attractive") {
    auto d = dominant_phases(4, 6, 0.1);
    REQUIRE(d.phases.size() == 6);
    for (const auto& ph : d.phases) {
        CHECK(ph.attractive);
        auto sv = oracle::marginal_singular_values(oracle::potts(4, 0.1), ph.fixpoint.R, ph.fixpoint.C);
        CHECK(ph.restricted_radius == doctest::Approx(sv[1]).epsilon(1e-8));
    }
    CHECK_THROWS_AS(dominant_phases(4, 5, 0.3), DomainError);
    CHECK_THROWS(dominant_phases(3, 6, 0.1));
}

TEST_CASE("phase diagram in the uniqueness regime") {
    auto d = phase_diagram(3, 6, 0.6);
    CHECK(d.regime == "uniqueness");
    REQUIRE(d.phases.size() == 1);
    for (int i = 0; i < 3; ++i) CHECK(d.phases[0].alpha(i) == doctest::Approx(1.0 / 3));
}

TEST_CASE("lambda1 closed forms") {
    const double x = half_half_root(4, 5, 0.0);
    auto r = lambda1_half_half(4, 5, 0.0, x);
    CHECK(r.lambda1 == doctest::Approx(0.2094).epsilon(1e-3));
    REQUIRE(r.lambda1_colorings);
    CHECK(*r.lambda1_colorings == doctest::Approx(r.lambda1).epsilon(1e-9));
    CHECK(r.attractive);
    auto ref = oracle::half_half_phase(4, 5, 0.0);
    auto sv = oracle::marginal_singular_values(oracle::potts(4, 0.0), ref.R, ref.C);
    CHECK(r.lambda1 == doctest::Approx(sv[1]).epsilon(1e-9));
    // Uniform comparison point is repulsive.
    CHECK(4 * oracle::uniform_potts_radius(4, 0.0) > 1.0);

    double prev = 0;
    for (double B : {0.19, 0.199, 0.1999}) {
        const double ld = 4 * lambda1_half_half(4, 5, B, half_half_root(4, 5, B)).lambda1;
        CHECK(ld < 1.0);
        CHECK(ld > prev);
        prev = ld;
    }
    CHECK(prev > 0.999);
}

TEST_CASE("predicted spectrum matches the eigensolver") {
    for (double B : {0.0, 0.1}) {
        const double x = half_half_root(4, 6, B);
        auto r = lambda1_half_half(4, 6, B, x);
        auto rep = jacobian_report(SpinModel::potts(4, B), solve_half_half(4, 6, B).fixpoint, 6);
        REQUIRE(rep.spectrum.size() == r.predicted_spectrum.size());
        // Singular values of the marginal matrix are |spectrum| (each once per side).
        auto ref = oracle::half_half_phase(4, 6, B);
        auto sv = oracle::marginal_singular_values(oracle::potts(4, B), ref.R, ref.C);
        std::vector<double> pos;
        for (double v : r.predicted_spectrum)
            if (v > 0) pos.push_back(v);
        std::sort(pos.rbegin(), pos.rend());
        REQUIRE(pos.size() == sv.size());
        for (std::size_t i = 0; i < sv.size(); ++i) CHECK(pos[i] == doctest::Approx(sv[i]).epsilon(1e-8));
        for (std::size_t i = 0; i < rep.spectrum.size(); ++i)
            CHECK(rep.spectrum[i] == doctest::Approx(r.predicted_spectrum[i]).epsilon(1e-8));
    }
}

TEST_CASE("fixpoint types") {
    Fixpoint u;
    u.R = Vec::Ones(5);
    u.C = Vec::Ones(5);
    auto t = classify_fixpoint_type(u);
    CHECK(t.counts == std::array<int, 3>{5, 0, 0});
    CHECK(t.t == 1);

    auto hh = solve_half_half(4, 5, 0.0);
    auto th = classify_fixpoint_type(hh.fixpoint);
    CHECK(th.counts == std::array<int, 3>{2, 2, 0});

    Fixpoint bad;
    bad.R = Vec::LinSpaced(4, 1, 4);
    bad.C = Vec::LinSpaced(4, 1, 4);
    CHECK_THROWS(classify_fixpoint_type(bad));
}

TEST_CASE("relaxed objective") {
    auto un = phi_bar(Triple{4, 0, 0}, 5, 0.0);
    Vec uni = Vec::Constant(4, 0.25);
    CHECK(un.value == doctest::Approx(static_cast<double>(*oracle::psi1(oracle::potts(4, 0.0), 5, uni, uni))).epsilon(1e-8));

    auto hh = phi_bar(Triple{2, 2, 0}, 5, 0.0);
    auto ref = oracle::half_half_phase(4, 5, 0.0);
    const double ps = static_cast<double>(*oracle::psi1(oracle::potts(4, 0.0), 5, ref.alpha, ref.beta));
    CHECK(hh.value == doctest::Approx(ps).epsilon(1e-6));

    // Grid over the simplex at step 0.25: the maximum sits at a (2,2,0) permutation.
    double best = -1e300;
    Triple arg{};
    for (int i = 0; i <= 16; ++i)
        for (int j = 0; j <= 16 - i; ++j) {
            Triple t{i * 0.25, j * 0.25, 4 - (i + j) * 0.25};
            double v;
            try {
                v = phi_bar(t, 5, 0.0).value;
            } catch (const DomainError&) {
                continue;
            }
            if (v > best) best = v, arg = t;
        }
    std::sort(arg.begin(), arg.end());
    CHECK(arg == Triple{0, 2, 2});
    CHECK(best == doctest::Approx(ps).epsilon(1e-6));
}

TEST_CASE("relaxed objective derivatives by finite differences") {
    const Triple qt{1.5, 1.5, 1.0};
    auto r = phi_bar(qt, 5, 0.1);
    auto dq = phi_bar_dq(qt, r.R, r.C, 5, 0.1);
    const double h = 1e-6;
    for (int i = 0; i < 3; ++i) {
        Triple p = qt, m = qt;
        p[i] += h;
        m[i] -= h;
        const double fd = (phi_bar_s(p, r.R, r.C, 5, 0.1) - phi_bar_s(m, r.R, r.C, 5, 0.1)) / (2 * h);
        CHECK(dq[i] == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("above threshold only the uniform fixpoint is found") {
    for (double B : {0.3, 0.5}) {
        auto fps = multistart_fixpoints(SpinModel::potts(3, B), 4, 50, 11);
        for (const auto& fp : fps) {
            if (!fp.certified) continue;
            auto pp = fixpoint_to_phase(fp);
            CHECK((pp.alpha.array() - 1.0 / 3).abs().maxCoeff() < 1e-8);
        }
    }
    // Below threshold, a biased start reaches a half-half fixpoint.
    auto fps = dedupe_fixpoints(multistart_fixpoints(SpinModel::potts(4, 0.0), 5, 30, 2));
    bool nonuniform = false;
    for (const auto& fp : fps) {
        auto pp = fixpoint_to_phase(fp);
        if ((pp.alpha - pp.beta).lpNorm<1>() > 1e-3) nonuniform = true;
    }
    CHECK(nonuniform);
}

TEST_CASE("sweep rows") {
    auto rows = potts_sweep(4, 5, 0.0, 0.3, 6);
    REQUIRE(rows.size() == 7);
    for (const auto& r : rows) {
        if (r.B < 0.2 - 1e-12) {
            CHECK(r.regime == "semi_translation_nonuniqueness");
            CHECK(r.lambda_d < 1.0);
        } else {
            CHECK(r.regime == "uniqueness");
            CHECK(r.x == 1.0);
        }
    }
}
