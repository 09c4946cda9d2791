#include "spinlab/tree_recursion.hpp"

#include "spinlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spinlab {

namespace {

void check_start(const Vec& R, const Vec& C, int q) {
    if (R.size() != q || C.size() != q) throw ArgumentError("fixpoint vectors must have length q");
    if ((R.array() < 0).any() || (C.array() < 0).any() || !R.allFinite() || !C.allFinite())
        throw ArgumentError("fixpoint vectors must be finite and nonnegative");
    if (R.sum() <= 0 || C.sum() <= 0) throw ArgumentError("fixpoint vectors must not be all zero");
}

Vec powv(const Vec& s, double e) {
    Vec out(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) out(i) = std::pow(s(i), e);
    return out;
}

double rel_change(const Vec& a, const Vec& b) {
    double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    if (scale == 0.0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

// Sum-normalized image of the recursion map.
void simplex_map(const Mat& B, int delta, const Vec& r, const Vec& c, Vec& tr, Vec& tc) {
    const double d = delta - 1;
    tr = powv(B * c, d);
    tc = powv(B.transpose() * r, d);
    double sr = tr.sum(), sc = tc.sum();
    if (!(sr > 0) || !(sc > 0)) throw DomainError("tree recursion collapsed: all mass on hard constraints");
    tr /= sr;
    tc /= sc;
}

double defect(const Mat& B, int delta, const Vec& r, const Vec& c) {
    Vec tr, tc;
    simplex_map(B, delta, r, c, tr, tc);
    return std::max((tr - r).cwiseAbs().maxCoeff(), (tc - c).cwiseAbs().maxCoeff());
}

}  // namespace

std::pair<Vec, Vec> canonical_scale(const Mat& B, const Vec& R, const Vec& C) {
    Vec r = R / R.sum();
    Vec c = C / C.sum();
    double s = r.dot(B * c);
    if (!(s > 0)) throw DomainError("tree recursion collapsed: sum_ij B_ij R_i C_j = 0");
    double k = 1.0 / std::sqrt(s);
    return {r * k, c * k};
}

std::pair<Vec, Vec> bp_step(const Mat& B, int delta, const Vec& R, const Vec& C) {
    check_start(R, C, static_cast<int>(B.rows()));
    const double d = delta - 1;
    Vec Rh = powv(B * C, d);
    Vec Ch = powv(B.transpose() * R, d);
    if (!(Rh.sum() > 0) || !(Ch.sum() > 0))
        throw DomainError("tree recursion collapsed: all mass on hard constraints");
    return canonical_scale(B, Rh, Ch);
}

double step_residual(const Mat& B, int delta, const Vec& R, const Vec& C) {
    auto [r, c] = canonical_scale(B, R, C);
    auto [rh, ch] = bp_step(B, delta, r, c);
    return std::max(rel_change(rh, r), rel_change(ch, c));
}

std::pair<Vec, Vec> newton_polish(const Mat& B, int delta, const Vec& R, const Vec& C, int max_iter) {
    const int q = static_cast<int>(B.rows());
    const double d = delta - 1;
    Vec r = R / R.sum(), c = C / C.sum();
    double g = defect(B, delta, r, c);
    for (int it = 0; it < max_iter && g > 0.0; ++it) {
        Vec sr = B * c, sc = B.transpose() * r;
        Vec tr, tc;
        simplex_map(B, delta, r, c, tr, tc);
        // Jacobian of the normalized map: dT_i/dz_j = d s_i^{d-1} B_ij / S - T_i sum_k d s_k^{d-1} B_kj / S.
        auto block = [&](const Vec& s, const Vec& t, const Mat& M) {
            Vec sd1 = powv(s, d - 1.0);
            double S = powv(s, d).sum();
            Mat J(q, q);
            Vec colterm = M.transpose() * (d * sd1);
            for (int i = 0; i < q; ++i)
                for (int j = 0; j < q; ++j) J(i, j) = d * sd1(i) * M(i, j) / S - t(i) * colterm(j) / S;
            return J;
        };
        Mat A = Mat::Zero(2 * q + 2, 2 * q);
        A.block(0, q, q, q) = block(sr, tr, B);
        A.block(q, 0, q, q) = block(sc, tc, Mat(B.transpose()));
        A.block(0, 0, 2 * q, 2 * q) -= Mat::Identity(2 * q, 2 * q);
        A.block(2 * q, 0, 1, q).setOnes();
        A.block(2 * q + 1, q, 1, q).setOnes();
        Vec rhs = Vec::Zero(2 * q + 2);
        rhs.head(q) = -(tr - r);
        rhs.segment(q, q) = -(tc - c);
        Vec step = A.completeOrthogonalDecomposition().solve(rhs);
        if (!step.allFinite()) break;
        bool accepted = false;
        for (double lam = 1.0; lam > 1e-12; lam *= 0.5) {
            Vec nr = (r + lam * step.head(q)).cwiseMax(0.0);
            Vec nc = (c + lam * step.tail(q)).cwiseMax(0.0);
            if (!(nr.sum() > 0) || !(nc.sum() > 0)) continue;
            nr /= nr.sum();
            nc /= nc.sum();
            double ng;
            try {
                ng = defect(B, delta, nr, nc);
            } catch (const DomainError&) {
                continue;
            }
            if (ng < g) {
                double moved = std::max((nr - r).cwiseAbs().maxCoeff(), (nc - c).cwiseAbs().maxCoeff());
                r = nr;
                c = nc;
                g = ng;
                accepted = moved > 1e-17;
                break;
            }
        }
        if (!accepted) break;
    }
    return canonical_scale(B, r, c);
}

Fixpoint find_fixpoint(const Mat& B, int delta, const Vec& R0, const Vec& C0, const FixpointOptions& opt) {
    const int q = static_cast<int>(B.rows());
    check_start(R0, C0, q);
    if (delta < 1) throw ArgumentError("delta must be at least 1");
    if (opt.damping < 0.0 || opt.damping >= 1.0) throw ArgumentError("damping must lie in [0, 1)");
    auto [R, C] = canonical_scale(B, R0, C0);
    Fixpoint fp;
    fp.delta = delta;
    double res = 1.0;
    long it = 0;
    while (it < opt.max_iter) {
        ++it;
        auto [Rh, Ch] = bp_step(B, delta, R, C);
        res = std::max(rel_change(Rh, R), rel_change(Ch, C));
        if (res <= opt.tol) break;
        Vec Rn(q), Cn(q);
        const double w = opt.damping;
        for (int i = 0; i < q; ++i) {
            Rn(i) = (R(i) > 0 && Rh(i) > 0) ? std::exp(w * std::log(R(i)) + (1 - w) * std::log(Rh(i)))
                                            : w * R(i) + (1 - w) * Rh(i);
            Cn(i) = (C(i) > 0 && Ch(i) > 0) ? std::exp(w * std::log(C(i)) + (1 - w) * std::log(Ch(i)))
                                            : w * C(i) + (1 - w) * Ch(i);
        }
        std::tie(R, C) = canonical_scale(B, Rn, Cn);
    }
    if (opt.newton_polish && res > 0.0) {
        std::tie(R, C) = newton_polish(B, delta, R, C);
        res = step_residual(B, delta, R, C);
    }
    fp.R = R;
    fp.C = C;
    fp.residual = res;
    fp.iterations = it;
    fp.certified = res <= opt.tol;
    return fp;
}

std::pair<Vec, Vec> random_start(int q, std::uint64_t seed, std::uint64_t index) {
    auto rng = make_rng(seed, index);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Vec R(q), C(q);
    for (int i = 0; i < q; ++i) R(i) = U(rng) + 1e-3;
    for (int i = 0; i < q; ++i) C(i) = U(rng) + 1e-3;
    return {R, C};
}

std::vector<Fixpoint> multistart_fixpoints(const SpinModel& m, int delta, int starts, std::uint64_t seed,
                                           const FixpointOptions& opt) {
    std::vector<Fixpoint> out(static_cast<std::size_t>(starts));
    parallel_for(out.size(), [&](std::size_t k) {
        auto [R, C] = random_start(m.q(), seed, k);
        out[k] = find_fixpoint(m.B(), delta, R, C, opt);
    });
    return out;
}

std::vector<Fixpoint> dedupe_fixpoints(const std::vector<Fixpoint>& fps, double tol, bool swap_equivalent) {
    std::vector<Fixpoint> kept;
    auto dist = [](const Vec& r1, const Vec& c1, const Vec& r2, const Vec& c2) {
        return std::max((r1 / r1.sum() - r2 / r2.sum()).cwiseAbs().maxCoeff(),
                        (c1 / c1.sum() - c2 / c2.sum()).cwiseAbs().maxCoeff());
    };
    for (const auto& f : fps) {
        bool dup = false;
        for (const auto& k : kept) {
            if (dist(f.R, f.C, k.R, k.C) <= tol || (swap_equivalent && dist(f.R, f.C, k.C, k.R) <= tol)) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(f);
    }
    return kept;
}

PhasePoint fixpoint_to_phase(const Fixpoint& fp) {
    const double p = static_cast<double>(fp.delta) / (fp.delta - 1);
    PhasePoint ph;
    ph.alpha = powv(fp.R, p);
    ph.beta = powv(fp.C, p);
    ph.alpha /= ph.alpha.sum();
    ph.beta /= ph.beta.sum();
    return ph;
}

MarginalMatrix marginal_matrix(const Mat& B, const Vec& R, const Vec& C) {
    const int q = static_cast<int>(B.rows());
    const double Z = R.dot(B * C);
    if (!(Z > 0)) throw DomainError("marginal matrix undefined: R^T B C = 0");
    Vec a = R.cwiseProduct(B * C) / Z;
    Vec b = C.cwiseProduct(B.transpose() * R) / Z;
    MarginalMatrix mm;
    for (int i = 0; i < q; ++i) {
        if (a(i) > 0) mm.rows.push_back(i);
        if (b(i) > 0) mm.cols.push_back(i);
    }
    mm.alpha = a;
    mm.beta = b;
    mm.A.resize(static_cast<Eigen::Index>(mm.rows.size()), static_cast<Eigen::Index>(mm.cols.size()));
    for (std::size_t ii = 0; ii < mm.rows.size(); ++ii)
        for (std::size_t jj = 0; jj < mm.cols.size(); ++jj) {
            int i = mm.rows[ii], j = mm.cols[jj];
            mm.A(ii, jj) = B(i, j) * R(i) * C(j) / Z / std::sqrt(a(i) * b(j));
        }
    return mm;
}

JacobianReport jacobian_report(const Mat& B, const Fixpoint& fp, int delta) {
    MarginalMatrix mm = marginal_matrix(B, fp.R, fp.C);
    const Eigen::Index m = mm.A.rows(), n = mm.A.cols();
    Mat L = Mat::Zero(m + n, m + n);
    L.block(0, m, m, n) = mm.A;
    L.block(m, 0, n, m) = mm.A.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(L, Eigen::EigenvaluesOnly);
    JacobianReport rep;
    rep.spectrum.assign(es.eigenvalues().data(), es.eigenvalues().data() + (m + n));
    std::vector<double> rest = rep.spectrum;
    for (double target : {1.0, -1.0}) {
        auto it = std::min_element(rest.begin(), rest.end(),
                                   [&](double x, double y) { return std::abs(x - target) < std::abs(y - target); });
        if (it == rest.end() || std::abs(*it - target) > 1e-6)
            throw DomainError("Jacobian spectrum lacks the eigenvalue " + std::to_string(target) +
                              " (input is not a fixpoint)");
        rest.erase(it);
    }
    rep.restricted_radius = 0.0;
    for (double x : rest) rep.restricted_radius = std::max(rep.restricted_radius, std::abs(x));
    rep.attractive = (delta - 1) * rep.restricted_radius < 1.0;
    return rep;
}

}  // namespace spinlab
