#include "spinlab/phase_diagram.hpp"

#include "spinlab/moments.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace spinlab {

double potts_threshold(int q, int delta) {
    if (q < 3 || delta < 3) throw ArgumentError("threshold defined for q >= 3 and delta >= 3");
    return static_cast<double>(delta - q) / delta;
}

namespace {

void check_even_regime(int q, int delta, double B) {
    if (q < 4 || q % 2 != 0) throw ArgumentError("half-half phases need even q >= 4");
    if (delta < 3) throw ArgumentError("delta must be at least 3");
    if (B < 0.0) throw ArgumentError("B must be nonnegative");
    if (B >= potts_threshold(q, delta))
        throw DomainError("regime error: B >= Bc, the uniform phase is the unique dominant phase");
}

std::vector<std::vector<int>> half_subsets(int q) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << q); ++mask) {
        if (__builtin_popcount(mask) != q / 2) continue;
        std::vector<int> T;
        for (int i = 0; i < q; ++i)
            if (mask & (1u << i)) T.push_back(i);
        out.push_back(T);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

double half_half_root(int q, int delta, double B) {
    check_even_regime(q, delta, B);
    const double qp = q / 2.0, d = delta - 1, k = B + qp - 1;
    auto F = [&](double x) {
        double xd = std::pow(x, d);
        return (k + qp * xd) / (qp + k * xd) - x;
    };
    double lo = 1.0 + 1e-9, hi = 10.0 + q + delta;
    if (!(F(lo) > 0.0) || !(F(hi) < 0.0)) throw DomainError("regime error: no root x > 1 bracketed");
    for (int it = 0; it < 400 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        (F(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Fixpoint half_half_fixpoint(int q, int delta, double x, const std::vector<int>& T) {
    const double xd = std::pow(x, delta - 1);
    Vec R = Vec::Ones(q), C = Vec::Constant(q, xd);
    for (int i : T) {
        R(i) = xd;
        C(i) = 1.0;
    }
    return {R, C, 0.0, delta, false, 0};
}

HalfHalf solve_half_half(int q, int delta, double B) {
    HalfHalf hh;
    hh.x = half_half_root(q, delta, B);
    std::vector<int> T;
    for (int i = 0; i < q / 2; ++i) T.push_back(i);
    const Mat Bm = SpinModel::potts(q, B).B();
    Fixpoint fp = half_half_fixpoint(q, delta, hh.x, T);
    std::tie(fp.R, fp.C) = canonical_scale(Bm, fp.R, fp.C);
    fp.residual = step_residual(Bm, delta, fp.R, fp.C);
    fp.certified = fp.residual <= 1e-12;
    hh.fixpoint = fp;
    return hh;
}

PottsPhaseDiagram dominant_phases(int q, int delta, double B) {
    check_even_regime(q, delta, B);
    const SpinModel model = SpinModel::potts(q, B);
    const Mat& Bm = model.B();
    PottsPhaseDiagram pd;
    pd.q = q;
    pd.delta = delta;
    pd.B = B;
    pd.Bc = potts_threshold(q, delta);
    pd.regime = "semi_translation_nonuniqueness";
    const double x = half_half_root(q, delta, B);
    pd.x = x;
    // Normalized fixpoint values a', b' with (q/2)(a'+b') = 1, then a, b.
    const double d = delta - 1, p = static_cast<double>(delta) / (delta - 1);
    const double xd = std::pow(x, d);
    const double ap = xd / ((q / 2.0) * (xd + 1.0)), bp = 1.0 / ((q / 2.0) * (xd + 1.0));
    const double S = (q / 2.0) * (std::pow(ap, p) + std::pow(bp, p));
    pd.a = std::pow(ap, p) / S;
    pd.b = std::pow(bp, p) / S;
    for (const auto& T : half_subsets(q)) {
        Fixpoint fp = half_half_fixpoint(q, delta, x, T);
        std::tie(fp.R, fp.C) = newton_polish(Bm, delta, fp.R, fp.C);
        fp.residual = step_residual(Bm, delta, fp.R, fp.C);
        fp.certified = fp.residual <= 1e-12;
        Phase ph;
        PhasePoint pp = fixpoint_to_phase(fp);
        ph.alpha = pp.alpha;
        ph.beta = pp.beta;
        ph.psi1 = psi1(Bm, delta, pp.alpha, pp.beta).value;
        JacobianReport jr = jacobian_report(Bm, fp, delta);
        ph.attractive = jr.attractive;
        ph.restricted_radius = jr.restricted_radius;
        ph.T = T;
        ph.fixpoint = fp;
        pd.phases.push_back(std::move(ph));
    }
    return pd;
}

PottsPhaseDiagram phase_diagram(int q, int delta, double B) {
    if (q < 3 || delta < 3) throw ArgumentError("phase diagram needs q >= 3 and delta >= 3");
    const double Bc = potts_threshold(q, delta);
    if (B < Bc) {
        if (q % 2 != 0)
            throw DomainError("dominant phases for odd q below the threshold are open (not implemented)");
        return dominant_phases(q, delta, B);
    }
    const SpinModel model = SpinModel::potts(q, B);
    PottsPhaseDiagram pd;
    pd.q = q;
    pd.delta = delta;
    pd.B = B;
    pd.Bc = Bc;
    pd.regime = "uniqueness";
    Fixpoint fp{Vec::Ones(q), Vec::Ones(q), 0.0, delta, true, 0};
    std::tie(fp.R, fp.C) = canonical_scale(model.B(), fp.R, fp.C);
    Phase ph;
    ph.alpha = Vec::Constant(q, 1.0 / q);
    ph.beta = ph.alpha;
    ph.psi1 = psi1(model, delta, ph.alpha, ph.beta).value;
    JacobianReport jr = jacobian_report(model, fp, delta);
    ph.attractive = jr.attractive;
    ph.restricted_radius = jr.restricted_radius;
    ph.fixpoint = fp;
    pd.phases.push_back(ph);
    return pd;
}

Lambda1Report lambda1_half_half(int q, int delta, double B, double x) {
    const double qp = q / 2.0, d = delta - 1, k = B + qp - 1;
    const double xd = std::pow(x, d);
    Lambda1Report rep;
    rep.lambda1 = (1.0 - B) * std::pow(x, d / 2.0) / std::sqrt((qp + k * xd) * (k + qp * xd));
    if (B == 0.0) rep.lambda1_colorings = std::pow(x, (d - 1.0) / 2.0) * (x - 1.0) / (xd - 1.0);
    rep.attractive = rep.lambda1 < 1.0 / d;
    // The isolated pair is (B+q-1) lambda1^2 / (1-B); the 1/(1-B) factor
    // is invisible at B = 0 but confirmed by the eigensolver for B > 0.
    const double l2 = (B + q - 1) * rep.lambda1 * rep.lambda1 / (1.0 - B);
    rep.predicted_spectrum = {1.0, -1.0, l2, -l2};
    for (int i = 0; i < q - 2; ++i) {
        rep.predicted_spectrum.push_back(rep.lambda1);
        rep.predicted_spectrum.push_back(-rep.lambda1);
    }
    std::sort(rep.predicted_spectrum.begin(), rep.predicted_spectrum.end());
    return rep;
}

namespace {

std::vector<int> cluster_counts(const Vec& v, double tol) {
    std::vector<double> s(v.data(), v.data() + v.size());
    std::sort(s.begin(), s.end(), std::greater<>());
    const double scale = std::max(s.front(), 1e-300);
    std::vector<int> counts{1};
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (std::abs(s[i] - s[i - 1]) <= tol * scale) ++counts.back();
        else counts.push_back(1);
    }
    std::sort(counts.begin(), counts.end(), std::greater<>());
    return counts;
}

}  // namespace

FixpointType classify_fixpoint_type(const Fixpoint& fp, double tol) {
    auto cr = cluster_counts(fp.R, tol), cc = cluster_counts(fp.C, tol);
    if (cr.size() != cc.size())
        throw DomainError("structure error: R and C take different numbers of distinct values");
    if (cr.size() > 3) throw DomainError("structure error: more than three distinct values (not a fixpoint)");
    FixpointType ft;
    ft.t = static_cast<int>(cr.size());
    for (std::size_t i = 0; i < cr.size(); ++i) ft.counts[i] = cr[i];
    return ft;
}

double phi_bar_s(const Triple& qt, const Triple& R, const Triple& C, int delta, double B) {
    const double d = delta - 1, p = (d + 1) / d;
    double sR = 0, sC = 0, sRC = 0, nR = 0, nC = 0;
    for (int i = 0; i < 3; ++i) {
        sR += qt[i] * R[i];
        sC += qt[i] * C[i];
        sRC += qt[i] * R[i] * C[i];
        nR += qt[i] * std::pow(R[i], p);
        nC += qt[i] * std::pow(C[i], p);
    }
    const double N = sR * sC + (B - 1) * sRC;
    if (!(N > 0) || !(nR > 0) || !(nC > 0)) throw DomainError("phi_bar outside the positivity region");
    return (d + 1) * std::log(N) - d * std::log(nR) - d * std::log(nC);
}

Triple phi_bar_dq(const Triple& qt, const Triple& R, const Triple& C, int delta, double B) {
    const double d = delta - 1;
    double sR = 0, sC = 0, sRC = 0;
    for (int i = 0; i < 3; ++i) {
        sR += qt[i] * R[i];
        sC += qt[i] * C[i];
        sRC += qt[i] * R[i] * C[i];
    }
    const double N = sR * sC + (B - 1) * sRC;
    Triple g{};
    for (int i = 0; i < 3; ++i) g[i] = (R[i] * sC + C[i] * sR + (d - 1) * (1 - B) * R[i] * C[i]) / N;
    return g;
}

PhiBarResult phi_bar(const Triple& qt, int delta, double B, int starts, std::uint64_t seed) {
    double tot = qt[0] + qt[1] + qt[2];
    for (double v : qt)
        if (v < 0) throw ArgumentError("type triple entries must be nonnegative");
    if (!(tot > 0)) throw ArgumentError("type triple must have positive total");
    const double d = delta - 1;
    // Block ascent: for fixed C the optimal R is R_i ∝ max(w_i, 0)^d (Hölder), w_i = sum q C + (B-1) C_i.
    auto best_response = [&](const Triple& other) {
        double s = 0;
        for (int i = 0; i < 3; ++i) s += qt[i] * other[i];
        Triple out{};
        double norm = 0;
        for (int i = 0; i < 3; ++i) {
            double w = s + (B - 1) * other[i];
            out[i] = qt[i] > 0 ? std::pow(std::max(w, 0.0), d) : 0.0;
            norm += out[i];
        }
        if (norm > 0)
            for (auto& v : out) v /= norm;
        return out;
    };
    std::vector<PhiBarResult> res(static_cast<std::size_t>(starts));
    std::vector<char> ok(res.size(), 0);
    parallel_for(res.size(), [&](std::size_t k) {
        auto rng = make_rng(seed, k);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        Triple R{}, C{};
        for (int i = 0; i < 3; ++i) R[i] = U(rng) + 1e-3;
        for (int i = 0; i < 3; ++i) C[i] = U(rng) + 1e-3;
        if (k % 4 == 1) R[(k / 4) % 3] = 0.0;  // boundary-seeded starts
        if (k % 4 == 2) C[(k / 4) % 3] = 0.0;
        double prev = -std::numeric_limits<double>::infinity(), val = prev;
        for (int it = 0; it < 20000; ++it) {
            Triple nR = best_response(C);
            Triple nC = best_response(nR);
            double v;
            try {
                v = phi_bar_s(qt, nR, nC, delta, B);
            } catch (const DomainError&) {
                break;
            }
            R = nR;
            C = nC;
            val = v;
            if (std::abs(v - prev) <= 1e-15 * std::max(1.0, std::abs(v))) break;
            prev = v;
        }
        if (std::isfinite(val)) {
            res[k].value = val;
            res[k].R = R;
            res[k].C = C;
            ok[k] = 1;
        }
    });
    std::size_t best = res.size();
    for (std::size_t k = 0; k < res.size(); ++k)
        if (ok[k] && (best == res.size() || res[k].value > res[best].value)) best = k;
    if (best == res.size()) throw DomainError("phi_bar: positivity constraint cannot be met");
    PhiBarResult out = res[best];
    for (int i = 0; i < 3; ++i)
        if (qt[i] > 0 && (out.R[i] <= 1e-12 || out.C[i] <= 1e-12)) out.good = false;
    return out;
}

std::vector<SweepRow> potts_sweep(int q, int delta, double B0, double B1, int steps) {
    if (steps < 1) throw ArgumentError("sweep needs at least one step");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<SweepRow> rows;
    const double Bc = potts_threshold(q, delta);
    for (int s = 0; s <= steps; ++s) {
        double B = B0 + (B1 - B0) * s / steps;
        if (std::abs(B - Bc) < 1e-12) B = Bc;  // grid rounding must not straddle the threshold
        SweepRow row;
        row.B = B;
        const SpinModel model = SpinModel::potts(q, B);
        if (B >= Bc) {
            row.regime = "uniqueness";
            row.x = 1.0;
            row.lambda_d = (delta - 1) * (1.0 - B) / (B + q - 1);
            Vec u = Vec::Constant(q, 1.0 / q);
            row.psi1_max = psi1(model, delta, u, u).value;
        } else {
            row.regime = "semi_translation_nonuniqueness";
            if (q % 2 == 0) {
                double x = half_half_root(q, delta, B);
                row.x = x;
                row.lambda_d = (delta - 1) * lambda1_half_half(q, delta, B, x).lambda1;
                HalfHalf hh = solve_half_half(q, delta, B);
                PhasePoint pp = fixpoint_to_phase(hh.fixpoint);
                row.psi1_max = psi1(model, delta, pp.alpha, pp.beta).value;
            } else {
                row.x = nan;
                row.lambda_d = nan;
                row.psi1_max = max_psi1(model, delta);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace spinlab
