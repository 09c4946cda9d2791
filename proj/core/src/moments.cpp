#include "spinlab/moments.hpp"

#include "spinlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

namespace spinlab {

namespace {

void check_simplex(const Vec& v, int q, const char* name) {
    if (v.size() != q) throw ArgumentError(std::string(name) + " must have length q");
    if ((v.array() < 0).any() || !v.allFinite()) throw ArgumentError(std::string(name) + " must be nonnegative");
    if (std::abs(v.sum() - 1.0) > 1e-9) throw ArgumentError(std::string(name) + " must sum to 1");
}

}  // namespace

bool marginals_feasible(const Mat& B, const Vec& alpha, const Vec& beta, double tol) {
    const int q = static_cast<int>(B.rows());
    const int N = 2 * q + 2, s = 0, t = 2 * q + 1;
    Mat cap = Mat::Zero(N, N);
    for (int i = 0; i < q; ++i) {
        cap(s, 1 + i) = alpha(i);
        cap(1 + q + i, t) = beta(i);
        for (int j = 0; j < q; ++j)
            if (B(i, j) > 0) cap(1 + i, 1 + q + j) = 4.0;
    }
    double flow = 0.0;
    for (;;) {
        std::vector<int> prev(N, -1);
        prev[s] = s;
        std::deque<int> dq{s};
        while (!dq.empty() && prev[t] < 0) {
            int u = dq.front();
            dq.pop_front();
            for (int v = 0; v < N; ++v)
                if (prev[v] < 0 && cap(u, v) > 1e-15) {
                    prev[v] = u;
                    dq.push_back(v);
                }
        }
        if (prev[t] < 0) break;
        double aug = 1e300;
        for (int v = t; v != s; v = prev[v]) aug = std::min(aug, cap(prev[v], v));
        for (int v = t; v != s; v = prev[v]) {
            cap(prev[v], v) -= aug;
            cap(v, prev[v]) += aug;
        }
        flow += aug;
    }
    return flow >= std::max(alpha.sum(), beta.sum()) - tol;
}

EdgeMarginal optimal_x(const Mat& B, const Vec& alpha, const Vec& beta, const ScalingOptions& opt) {
    const int q = static_cast<int>(B.rows());
    check_simplex(alpha, q, "alpha");
    check_simplex(beta, q, "beta");
    if (!marginals_feasible(B, alpha, beta)) throw DomainError("marginals infeasible on the support of B");
    EdgeMarginal em;
    Vec R = (alpha.array() > 0).cast<double>();
    Vec C = (beta.array() > 0).cast<double>();
    double res = 1.0;
    long it = 0;
    for (; it < opt.max_iter; ++it) {
        Vec s = B * C;
        for (int i = 0; i < q; ++i) {
            if (alpha(i) > 0) {
                if (!(s(i) > 0)) throw DomainError("marginals infeasible on the support of B");
                R(i) = alpha(i) / s(i);
            } else {
                R(i) = 0.0;
            }
        }
        Vec t = B.transpose() * R;
        for (int j = 0; j < q; ++j) {
            if (beta(j) > 0) {
                if (!(t(j) > 0)) throw DomainError("marginals infeasible on the support of B");
                C(j) = beta(j) / t(j);
            } else {
                C(j) = 0.0;
            }
        }
        res = (R.cwiseProduct(B * C) - alpha).cwiseAbs().maxCoeff();
        if (res <= opt.tol) {
            ++it;
            break;
        }
    }
    em.R = R;
    em.C = C;
    em.x = B.cwiseProduct(R * C.transpose());
    em.residual = res;
    em.iterations = it;
    return em;
}

double f1(const Vec& alpha, const Vec& beta) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < alpha.size(); ++i) s += xlogx(alpha(i));
    for (Eigen::Index i = 0; i < beta.size(); ++i) s += xlogx(beta(i));
    return s;
}

double g1(const Mat& B, const Mat& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            if (x(i, j) > 0) s += x(i, j) * (std::log(B(i, j)) - std::log(x(i, j)));
    return s;
}

ExtReal psi1(const Mat& B, int delta, const Vec& alpha, const Vec& beta) {
    const int q = static_cast<int>(B.rows());
    check_simplex(alpha, q, "alpha");
    check_simplex(beta, q, "beta");
    if (!marginals_feasible(B, alpha, beta)) return ExtReal::neg_inf();
    EdgeMarginal em = optimal_x(B, alpha, beta);
    // Dual form of g1: stationary in (R, C), so scaling error enters only at second order.
    double g = std::log(em.R.dot(B * em.C));
    for (int i = 0; i < q; ++i) {
        if (alpha(i) > 0) g -= alpha(i) * std::log(em.R(i));
        if (beta(i) > 0) g -= beta(i) * std::log(em.C(i));
    }
    return ExtReal::of((delta - 1) * f1(alpha, beta) + delta * g);
}

double lp_norm(const Vec& v, double p) {
    double m = v.cwiseAbs().maxCoeff();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)) / m, p);
    return m * std::pow(s, 1.0 / p);
}

double phi(const Mat& B, int delta, const Vec& R, const Vec& C) {
    const double p = static_cast<double>(delta) / (delta - 1);
    double z = R.dot(B * C);
    if (!(z > 0)) throw DomainError("Phi undefined: R^T B C = 0");
    return delta * (std::log(z) - std::log(lp_norm(R, p)) - std::log(lp_norm(C, p)));
}

namespace {

struct Candidate {
    double value = -1.0;
    Vec R, C;
};

double ratio_value(const Mat& B, double p, const Vec& r, const Vec& c) {
    return r.dot(B * c) / (lp_norm(r, p) * lp_norm(c, p));
}

Candidate ascend(const Mat& B, int delta, Vec c, long max_iter) {
    const double p = static_cast<double>(delta) / (delta - 1);
    const double d = delta - 1;
    Candidate best;
    Vec r;
    double prev = -1.0;
    int flat = 0;
    for (long it = 0; it < max_iter; ++it) {
        Vec cold = c;
        r = (B * c).array().pow(d).matrix();
        r /= r.sum();
        c = (B.transpose() * r).array().pow(d).matrix();
        c /= c.sum();
        double v = ratio_value(B, p, r, c);
        if (v > best.value) best = {v, r, c};
        double moved = (c - cold).cwiseAbs().maxCoeff();
        flat = (v <= prev * (1.0 + 4e-16)) ? flat + 1 : 0;
        prev = v;
        if (moved < 1e-14 || (flat >= 5 && moved < 1e-9) || flat >= 200) break;
    }
    try {
        auto [pr, pc] = newton_polish(B, delta, r, c);
        double v = ratio_value(B, p, pr, pc);
        if (v > best.value) best = {v, pr / pr.sum(), pc / pc.sum()};
    } catch (const DomainError&) {
    }
    return best;
}

bool lex_less(const Vec& a, const Vec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return false;
}

}  // namespace

NormResult induced_norm(const Mat& B, int delta, const NormOptions& opt) {
    if (delta < 2) throw ArgumentError("induced_norm requires delta >= 2");
    if (B.rows() != B.cols() || (B.array() < 0).any()) throw ArgumentError("matrix must be square and nonnegative");
    const int q = static_cast<int>(B.rows());
    if ((B.array() == 0).all()) return {0.0, Vec::Constant(q, 1.0 / q), Vec::Constant(q, 1.0 / q), 1};
    std::vector<Candidate> cands(static_cast<std::size_t>(opt.starts) + 1);
    parallel_for(cands.size(), [&](std::size_t k) {
        Vec c;
        if (k == 0) {
            c = Vec::Constant(q, 1.0 / q);
        } else {
            auto rng = make_rng(opt.seed, k);
            std::uniform_real_distribution<double> U(0.0, 1.0);
            c.resize(q);
            for (int i = 0; i < q; ++i) c(i) = U(rng) + 1e-3;
            c /= c.sum();
        }
        cands[k] = ascend(B, delta, c, opt.max_iter);
    });
    std::size_t best = 0;
    for (std::size_t k = 1; k < cands.size(); ++k) {
        const double a = cands[k].value, b = cands[best].value;
        if (a > b * (1 + 1e-14) || (a >= b * (1 - 1e-14) && lex_less(cands[k].C, cands[best].C))) best = k;
    }
    return {cands[best].value, cands[best].R, cands[best].C, opt.starts + 1};
}

double max_psi1(const SpinModel& m, int delta, const NormOptions& opt) {
    return delta * std::log(induced_norm(m.B(), delta, opt).norm);
}

Mat kron(const Mat& A, const Mat& B) {
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

TensorReport verify_tensor_identity(const SpinModel& m, int delta, const NormOptions& opt) {
    TensorReport rep;
    rep.norm = induced_norm(m.B(), delta, opt).norm;
    rep.tensor_norm = induced_norm(kron(m.B(), m.B()), delta, opt).norm;
    const double n2 = rep.norm * rep.norm;
    rep.ratio = std::abs(rep.tensor_norm - n2) / n2;
    return rep;
}

OverlapPoint dominant_overlap(const Vec& alpha, const Vec& beta) {
    const Eigen::Index q = alpha.size();
    OverlapPoint o;
    o.gamma.resize(q * q);
    o.delta.resize(q * q);
    for (Eigen::Index i = 0; i < q; ++i)
        for (Eigen::Index k = 0; k < q; ++k) {
            o.gamma(i * q + k) = alpha(i) * alpha(k);
            o.delta(i * q + k) = beta(i) * beta(k);
        }
    return o;
}

Psi2Report psi2_at_dominant(const SpinModel& m, int delta, const Vec& alpha, const Vec& beta) {
    OverlapPoint o = dominant_overlap(alpha, beta);
    Psi2Report rep;
    rep.value = psi1(kron(m.B(), m.B()), delta, o.gamma, o.delta);
    ExtReal one = psi1(m.B(), delta, alpha, beta);
    rep.deviation = (rep.value.finite && one.finite) ? rep.value.value - 2.0 * one.value : 0.0;
    return rep;
}

}  // namespace spinlab

namespace spinlab {

namespace {

using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Psi1 in long double: proportional scaling for x, then the primal form.
long double psi1_long(const LMat& B, int delta, const LVec& a, const LVec& b) {
    const int q = static_cast<int>(B.rows());
    LVec R = LVec::Ones(q), C = LVec::Ones(q);
    long double prev = std::numeric_limits<long double>::infinity();
    for (int it = 0; it < 100000; ++it) {
        LVec BC = B * C;
        for (int i = 0; i < q; ++i) R(i) = a(i) / BC(i);
        LVec BR = B.transpose() * R;
        long double err = 0;
        for (int j = 0; j < q; ++j) {
            const long double nc = b(j) / BR(j);
            err = std::max(err, std::abs(nc - C(j)) / std::max(nc, 1e-300L));
            C(j) = nc;
        }
        if (err < 1e-18L || (err >= prev && err < 1e-16L)) break;
        prev = err;
    }
    long double f = 0, g = 0;
    for (int i = 0; i < q; ++i) f += a(i) * std::log(a(i)) + b(i) * std::log(b(i));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            const long double x = B(i, j) * R(i) * C(j);
            if (x > 0) g += x * std::log(B(i, j)) - x * std::log(x);
        }
    return (delta - 1) * f + delta * g;
}

LMat tangent_basis(int q) {
    // Columns 2..q of the Householder Q of the all-ones vector.
    LMat ones = LMat::Ones(q, 1);
    Eigen::HouseholderQR<LMat> qr(ones);
    LMat Q = qr.householderQ() * LMat::Identity(q, q);
    return Q.rightCols(q - 1);
}

}  // namespace

Mat psi1_tangent_hessian(const Mat& B, int delta, const Vec& alpha, const Vec& beta, double step) {
    const int q = static_cast<int>(B.rows());
    if ((alpha.array() <= 0).any() || (beta.array() <= 0).any())
        throw DomainError("tangent Hessian needs strictly positive marginals");
    if (!marginals_feasible(B, alpha, beta)) throw DomainError("tangent Hessian: infeasible marginals");
    const LMat Bl = B.cast<long double>();
    const LMat T = tangent_basis(q);
    const int m = 2 * (q - 1);
    LMat E = LMat::Zero(2 * q, m);
    E.block(0, 0, q, q - 1) = T;
    E.block(q, q - 1, q, q - 1) = T;
    LVec x0(2 * q);
    x0 << alpha.cast<long double>(), beta.cast<long double>();
    const long double h = step;
    auto f = [&](const LVec& x) { return psi1_long(Bl, delta, x.head(q), x.tail(q)); };
    const long double f0 = f(x0);
    Mat H(m, m);
    for (int k = 0; k < m; ++k) {
        const LVec ek = E.col(k);
        H(k, k) = static_cast<double>((f(x0 + h * ek) - 2 * f0 + f(x0 - h * ek)) / (h * h));
        for (int l = k + 1; l < m; ++l) {
            const LVec el = E.col(l);
            const long double v = f(x0 + h * ek + h * el) - f(x0 + h * ek - h * el) - f(x0 - h * ek + h * el) +
                                  f(x0 - h * ek - h * el);
            H(k, l) = H(l, k) = static_cast<double>(v / (4 * h * h));
        }
    }
    return H;
}

ConnectionReport verify_connection(const Mat& B, const Fixpoint& fp, int delta, double step, double margin) {
    ConnectionReport rep;
    JacobianReport jr = jacobian_report(B, fp, delta);
    rep.attractive = jr.attractive;
    rep.restricted_radius = jr.restricted_radius;
    PhasePoint pp = fixpoint_to_phase(fp);
    Mat H = psi1_tangent_hessian(B, delta, pp.alpha, pp.beta, step);
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    rep.hessian_max_eigenvalue = es.eigenvalues().maxCoeff();
    rep.hessian_negative_definite = rep.hessian_max_eigenvalue < -margin;
    rep.agree = rep.attractive == rep.hessian_negative_definite;
    return rep;
}

}  // namespace spinlab
