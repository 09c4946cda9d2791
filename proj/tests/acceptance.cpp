// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Reference values come from the independent implementations in oracles.hpp.

#include "oracles.hpp"
#include "spinlab/enumeration.hpp"
#include "spinlab/graph.hpp"
#include "spinlab/moment_formulas.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/phase_diagram.hpp"
#include "spinlab/reduction.hpp"
#include "spinlab/ssc.hpp"
#include "spinlab/tree_recursion.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace spinlab;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// alpha_i ∝ R_i (B C)_i, beta_j ∝ C_j (B^T R)_j.
std::pair<Vec, Vec> phase_from(const Mat& B, const Vec& R, const Vec& C) {
    Vec a = (R.array() * (B * C).array()).matrix();
    Vec b = (C.array() * (B.transpose() * R).array()).matrix();
    return {a / a.sum(), b / b.sum()};
}

Fixpoint uniform_fixpoint(int q, int delta) {
    Fixpoint f;
    f.R = Vec::Ones(q);
    f.C = Vec::Ones(q);
    f.delta = delta;
    f.certified = true;
    return f;
}

Verdict tensor_identity() {
    std::vector<std::pair<std::string, SpinModel>> models{{"colorings q=3", SpinModel::colorings(3)},
                                                          {"colorings q=4", SpinModel::colorings(4)},
                                                          {"potts q=3 B=0.2", SpinModel::potts(3, 0.2)},
                                                          {"potts q=3 B=0.5", SpinModel::potts(3, 0.5)}};
    double worst = 0;
    std::string where;
    for (auto& [name, m] : models)
        for (int d : {3, 4, 5}) {
            auto r = verify_tensor_identity(m, d);
            const double dev = std::abs(r.tensor_norm - r.norm * r.norm) / (r.norm * r.norm);
            if (dev >= worst) worst = dev, where = name + fmt(" D=%d", d);
        }
    return {worst <= 1e-7, fmt("12 cases, worst relative deviation %.2e (%s)", worst, where.c_str())};
}

Verdict norm_moment_match() {
    // q = 3 covers both the colorings model and an antiferromagnetic Potts point.
    double worst = 0;
    std::string parts;
    for (double B : {0.0, 0.5})
        for (int d : {3, 4}) {
            const Mat M = oracle::potts(3, B);
            auto grid = oracle::psi1_grid_max_q3(M, d);
            const double lib = d * std::log(induced_norm(M, d).norm);
            const double dev = std::abs(grid.value - lib);
            worst = std::max(worst, dev);
            parts += fmt(" B=%.1f/D=%d:%.1e", B, d, dev);
        }
    return {worst <= 1e-5, "grid max vs D ln||B||:" + parts};
}

Verdict potts_dominant_phases() {
    auto d = dominant_phases(4, 5, 0.0);
    auto ref = oracle::half_half_phase(4, 5, 0.0);
    const double a_ref = ref.alpha.maxCoeff(), b_ref = ref.alpha.minCoeff();
    bool ok = d.phases.size() == 6;
    ok = ok && std::abs(*d.a - a_ref) <= 1e-4 && std::abs(*d.b - b_ref) <= 1e-4;
    ok = ok && std::abs(*d.a - 0.4690) <= 1e-4 && std::abs(*d.b - 0.0310) <= 1e-4;

    auto sv = oracle::marginal_singular_values(oracle::potts(4, 0.0), ref.R, ref.C);
    const double dl_ref = 4 * sv[1];
    double dl = 0;
    std::set<std::vector<long>> keys;
    for (const auto& ph : d.phases) {
        ok = ok && ph.attractive && (ph.alpha - ph.beta).lpNorm<1>() > 1e-6;
        dl = std::max(dl, 4 * ph.restricted_radius);
        ok = ok && std::abs(4 * ph.restricted_radius - dl_ref) <= 1e-8;
        std::vector<long> k;
        for (int i = 0; i < 4; ++i) k.push_back(std::lround(ph.alpha(i) * 1e7));
        for (int i = 0; i < 4; ++i) k.push_back(std::lround(ph.beta(i) * 1e7));
        keys.insert(k);
    }
    ok = ok && keys.size() == 6 && std::abs(dl - 0.8374) <= 1e-4 && dl < 1;
    std::vector<int> perm{0, 1, 2, 3};
    do {
        for (const auto& ph : d.phases) {
            std::vector<long> k;
            for (int i = 0; i < 4; ++i) k.push_back(std::lround(ph.alpha(perm[i]) * 1e7));
            for (int i = 0; i < 4; ++i) k.push_back(std::lround(ph.beta(perm[i]) * 1e7));
            ok = ok && keys.count(k);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {ok, fmt("%zu phases, a=%.6f b=%.6f (oracle %.6f/%.6f), (D-1)lambda1=%.6f", d.phases.size(), *d.a, *d.b,
                    a_ref, b_ref, dl)};
}

Verdict stability_boundary() {
    bool ok = true;
    double worst = 0;
    for (int i = 0; i <= 6; ++i) {
        const double B = 0.1 * i;
        auto rep = jacobian_report(SpinModel::potts(3, B), uniform_fixpoint(3, 6), 6);
        const double closed = oracle::uniform_potts_radius(3, B);
        const double sv = oracle::marginal_singular_values(oracle::potts(3, B), Vec::Ones(3), Vec::Ones(3))[1];
        worst = std::max({worst, std::abs(rep.restricted_radius - closed), std::abs(sv - closed)});
        const double s = 5 * rep.restricted_radius - 1;
        if (i < 5) ok = ok && s > 1e-10 && !rep.attractive;
        if (i == 5) ok = ok && std::abs(s) <= 1e-10;
        if (i > 5) ok = ok && s < -1e-10 && rep.attractive;
    }
    ok = ok && worst <= 1e-10;
    return {ok, fmt("max |radius - (1-B)/(B+2)| = %.1e; (D-1)radius = 1 at B=0.5", worst)};
}

Verdict exact_moments() {
    const SpinModel m = SpinModel::colorings(3);
    auto first = oracle::moments_by_graph_enumeration(oracle::rational_potts(3, 0), 3, 3);
    auto second = oracle::moments_by_graph_enumeration(oracle::rational_potts(3, 0), 3, 2);
    int rows = 0, bad = 0;
    for (const auto& a : compositions(3, 3))
        for (const auto& b : compositions(3, 3)) {
            auto it = first.first.find({a, b});
            const Rational e = it == first.first.end() ? Rational(0) : it->second;
            const Weight w = expected_Z_counts(m, 3, 3, a, b);
            ++rows;
            bad += !(w.exact && w.value == e);
        }
    for (const auto& a : compositions(2, 3))
        for (const auto& b : compositions(2, 3)) {
            auto it = second.second.find({a, b});
            const Rational e = it == second.second.end() ? Rational(0) : it->second;
            const Weight w = expected_Z2_counts(m, 3, 2, a, b);
            ++rows;
            bad += !(w.exact && w.value == e);
        }
    return {bad == 0 && first.graphs == 216,
            fmt("%d (alpha,beta) rows, %d mismatches; %lld + %lld graphs enumerated", rows, bad, first.graphs,
                second.graphs)};
}

Verdict connection() {
    struct Case {
        std::string name;
        Mat B;
        Fixpoint fp;
        int delta;
    };
    std::vector<Case> cases{
        {"potts3 B.5 D4 uniform", oracle::potts(3, 0.5), uniform_fixpoint(3, 4), 4},
        {"potts3 B.1 D4 uniform", oracle::potts(3, 0.1), uniform_fixpoint(3, 4), 4},
        {"potts3 B.3 D6 uniform", oracle::potts(3, 0.3), uniform_fixpoint(3, 6), 6},
        {"potts3 B.7 D6 uniform", oracle::potts(3, 0.7), uniform_fixpoint(3, 6), 6},
        {"col4 D5 uniform", oracle::potts(4, 0.0), uniform_fixpoint(4, 5), 5},
        {"col4 D5 half-half", oracle::potts(4, 0.0), solve_half_half(4, 5, 0.0).fixpoint, 5},
        {"potts4 B.1 D6 half-half", oracle::potts(4, 0.1), solve_half_half(4, 6, 0.1).fixpoint, 6},
        {"potts4 B.1 D6 uniform", oracle::potts(4, 0.1), uniform_fixpoint(4, 6), 6},
        {"potts4 B.6 D6 uniform", oracle::potts(4, 0.6), uniform_fixpoint(4, 6), 6},
        {"ising B.1 D3 uniform", oracle::potts(2, 0.1), uniform_fixpoint(2, 3), 3},
        {"potts5 B.2 D4 uniform", oracle::potts(5, 0.2), uniform_fixpoint(5, 4), 4},
        {"potts6 B.05 D8 half-half", oracle::potts(6, 0.05), solve_half_half(6, 8, 0.05).fixpoint, 8},
    };
    for (const auto& fp : multistart_fixpoints(SpinModel::potts(2, 0.1), 3, 16, 3)) {
        auto [a, b] = phase_from(oracle::potts(2, 0.1), fp.R, fp.C);
        if (fp.certified && (a - b).lpNorm<1>() > 1e-3) {
            cases.push_back({"ising B.1 D3 ordered", oracle::potts(2, 0.1), fp, 3});
            break;
        }
    }
    int agree = 0, attractive = 0;
    std::string disagreements;
    for (const auto& c : cases) {
        auto rep = jacobian_report(c.B, c.fp, c.delta);
        auto [a, b] = phase_from(c.B, c.fp.R, c.fp.C);
        auto ev = oracle::psi1_hessian_eigenvalues(c.B, c.delta, a, b, 1e-5);
        const bool negdef = ev.back() < -1e-6;
        attractive += rep.attractive;
        if (rep.attractive == negdef)
            ++agree;
        else
            disagreements += " " + c.name;
    }
    const int n = static_cast<int>(cases.size());
    const bool ok = agree == n && n >= 10 && attractive > 0 && attractive < n;
    return {ok, fmt("%d/%d fixpoints agree (%d attractive)", agree, n, attractive) + disagreements};
}

Verdict ssc_identity() {
    auto hh = solve_half_half(4, 5, 0.0);
    auto rep = ssc_constants(SpinModel::colorings(4), 5, hh.fixpoint, 400);
    auto ref = oracle::half_half_phase(4, 5, 0.0);
    auto sv = oracle::marginal_singular_values(oracle::potts(4, 0.0), ref.R, ref.C);
    const double logC = oracle::ssc_log_C({sv.begin() + 1, sv.end()}, 5);
    const double diff = std::abs(rep.partial_sum - logC);
    return {diff <= 1e-8, fmt("partial sum %.12f vs ln C %.12f, |diff| = %.1e", rep.partial_sum, logC, diff)};
}

Verdict gadget_witness() {
    const SpinModel ising = SpinModel::potts(2, 0.1);
    std::vector<PhasePoint> phases;
    std::vector<Fixpoint> fps;
    for (const auto& f : dedupe_fixpoints(multistart_fixpoints(ising, 3, 64, 1), 1e-8, false)) {
        auto [a, b] = phase_from(ising.B(), f.R, f.C);
        if ((a - b).norm() > 1e-6) phases.push_back({a, b}), fps.push_back(f);
    }
    if (phases.size() != 2) return {false, fmt("expected 2 Ising phases, found %zu", phases.size())};
    std::vector<double> mass, ratio;
    for (int n = 4; n <= 7; ++n) {
        std::vector<double> md, rd;
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto rep = gadget_check(sample_graph(n, 1, 3, s), ising, phases, fps);
            if (!rep.enumerated) return {false, "enumeration skipped: " + rep.note};
            md.push_back(rep.mass_deviation);
            rd.push_back(rep.ratio_deviation);
        }
        mass.push_back(oracle::median(md));
        ratio.push_back(oracle::median(rd));
    }
    bool ok = mass.back() <= 0.25;
    for (int i = 1; i < 4; ++i) ok = ok && mass[i] < mass[i - 1] && ratio[i] < ratio[i - 1];
    return {ok, fmt("median |mass-1/2| n=4..7: %.2e %.2e %.2e %.2e; median ratio dev: %.3g %.3g %.3g %.3g", mass[0],
                    mass[1], mass[2], mass[3], ratio[0], ratio[1], ratio[2], ratio[3])};
}

std::vector<oracle::Phase> oracle_phases(const PhaseSet& Q) {
    std::vector<oracle::Phase> out;
    for (const auto& p : Q.phases) out.push_back({p.x, p.y});
    return out;
}

std::vector<oracle::LabelEdge> oracle_edges(const std::vector<LabelEdge>& e) {
    std::vector<oracle::LabelEdge> out;
    for (const auto& x : e) out.push_back({x.u, x.v, x.kind == EdgeKind::symmetric});
    return out;
}

PhaseSet colorings_phases() {
    std::vector<PhasePoint> pts;
    for (const auto& ph : dominant_phases(4, 5, 0.0).phases) pts.push_back({ph.alpha, ph.beta});
    return PhaseSet::from_phase_points(pts);
}

// eps1 from the oracle's exhaustive table: best same-unordered pair minus best
// different pair; +inf when no different pair exists.
std::pair<double, long long> oracle_eps1(const GadgetJ1& j1, const PhaseSet& Q, const Mat& B) {
    long long count = 0;
    auto T = oracle::conditional_max(j1.vertices, oracle_edges(j1.edges), oracle_phases(Q), B, j1.u, j1.v, &count);
    double same = -INFINITY, diff = -INFINITY;
    for (int a = 0; a < Q.size(); ++a)
        for (int b = 0; b < Q.size(); ++b) (a / 2 == b / 2 ? same : diff) = std::max(a / 2 == b / 2 ? same : diff, T[a][b]);
    return {same - diff, count};
}

Verdict j1_certification() {
    auto C = colorings_phases();
    auto jc = build_J1(C, SpinModel::colorings(4));
    auto [ec, nc] = oracle_eps1(jc, C, SpinModel::colorings(4).B());
    const SpinModel ising = SpinModel::potts(2, 0.1);
    auto I = dominant_phase_set(ising, 3);
    auto ji = build_J1(I, ising);
    auto [ei, ni] = oracle_eps1(ji, I, ising.B());
    const bool ok = jc.certified && nc == 1296 && ec > 0 && std::abs(ec - jc.eps1) <= 1e-9 && ji.certified &&
                    ni == 4 && std::isinf(ei) && ji.eps1_infinite;
    return {ok, fmt("colorings: %lld labelings, eps1=%.6f (oracle %.6f); Ising: %lld labelings, eps1 %s", nc, jc.eps1,
                    ec, ni, ji.eps1_infinite ? "infinite" : "finite")};
}

Verdict reduction_formula() {
    CubicGraph K4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    CubicGraph K33{6, {}};
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) K33.edges.emplace_back(a, b);
    const SpinModel ising = SpinModel::potts(2, 0.1), col = SpinModel::colorings(4);
    std::vector<std::tuple<std::string, SpinModel, PhaseSet>> models{{"ising", ising, dominant_phase_set(ising, 3)},
                                                                     {"col4", col, colorings_phases()}};
    double worst = 0;
    bool ok = true;
    std::string detail;
    for (auto& [name, m, Q] : models) {
        auto j1 = build_J1(Q, m);
        auto j2 = build_J2(j1, Q, m);
        for (const auto& [hn, H] : {std::pair{"K4", K4}, std::pair{"K33", K33}}) {
            auto red = reduce_maxcut(H, j1, j2, Q, m);
            const int mc = oracle::maxcut_brute(H.vertices, H.edges);
            const double formula = (red.A1 - red.A2) * mc + red.A2 * double(H.edges.size()) + red.A1 * red.D3 * H.vertices;
            const double dp = maxlwt_dp(H, j2, red.D3);
            const double dev = std::abs(dp - formula);
            worst = std::max(worst, dev);
            ok = ok && red.maxcut == mc && dev <= 1e-8;
            detail += fmt(" %s/%s:%.1e", name.c_str(), hn, dev);
        }
    }
    return {ok, "|DP - formula|:" + detail};
}

Verdict final_graph() {
    const SpinModel ising = SpinModel::potts(2, 0.1);
    auto Q = dominant_phase_set(ising, 3);
    int good = 0;
    std::string err;
    for (std::uint64_t s = 0; s < 20; ++s) {
        std::mt19937_64 rng(s);
        PhaseLabelingInstance inst{10, {}, Q, ising.B()};
        for (auto [a, b] : oracle::random_cubic(10, 1000 + s))
            inst.edges.push_back({a, b, rng() % 2 ? EdgeKind::symmetric : EdgeKind::parallel});
        try {
            auto fg = build_HF(inst, 60, 1, 3, s);
            const auto& g = fg.graph;
            good += oracle::is_regular(g.vertices, g.edges, 3) && oracle::is_simple(g.vertices, g.edges) &&
                    oracle::is_triangle_free(g.vertices, g.edges);
        } catch (const std::exception& e) {
            err = e.what();
        }
    }
    return {good == 20, fmt("%d/20 outputs 3-regular, simple and triangle-free", good) + (err.empty() ? "" : "; " + err)};
}

Verdict uniqueness_side() {
    double worst_pair = 0, worst_uniform = 0;
    std::string parts;
    for (double B : {0.25, 0.3, 0.5}) {
        auto fps = multistart_fixpoints(SpinModel::potts(3, B), 4, 50, 12);
        std::vector<Vec> pts;
        for (const auto& f : fps) {
            auto [a, b] = phase_from(oracle::potts(3, B), f.R, f.C);
            Vec p(6);
            p << a, b;
            pts.push_back(p);
            worst_uniform = std::max(worst_uniform, (p.array() - 1.0 / 3).abs().maxCoeff());
        }
        double pair = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) pair = std::max(pair, (pts[i] - pts[j]).norm());
        worst_pair = std::max(worst_pair, pair);
        parts += fmt(" B=%.2f:%.1e", B, pair);
    }
    return {worst_pair <= 1e-8 && worst_uniform <= 1e-8,
            "max pairwise phase distance over 50 starts:" + parts + fmt("; max |x - 1/3| = %.1e", worst_uniform)};
}

}  // namespace

int main() {
    const std::vector<std::tuple<int, std::string, double, std::function<Verdict()>>> criteria{
        {1, "tensor-norm identity", 30, tensor_identity},
        {2, "norm-moment match", 120, norm_moment_match},
        {3, "Potts dominant phases", 5, potts_dominant_phases},
        {4, "stability boundary", 5, stability_boundary},
        {5, "exact moment formulas", 300, exact_moments},
        {6, "Jacobian/Hessian connection", 60, connection},
        {7, "SSC identity", 1, ssc_identity},
        {8, "gadget finite-n witness", 600, gadget_witness},
        {9, "J1 certification", 1, j1_certification},
        {10, "reduction formula", 120, reduction_formula},
        {11, "final graph structure", 60, final_graph},
        {12, "uniqueness-side corroboration", 10, uniqueness_side},
    };
    int failed = 0;
    for (const auto& [id, name, budget, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= budget;
        const bool pass = v.pass && in_time;
        failed += !pass;
        std::printf("%s  [%2d] %-30s %s (%.2fs / %.0fs budget%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                    v.detail.c_str(), secs, budget, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
