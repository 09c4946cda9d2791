#pragma once

#include "spinlab/common.hpp"
#include "spinlab/spin_model.hpp"
#include "spinlab/tree_recursion.hpp"

#include <cstdint>

namespace spinlab {

// Optimal edge marginal x_ij = B_ij R_i C_j for fixed (alpha, beta).
struct EdgeMarginal {
    Mat x;
    Vec R;
    Vec C;
    double residual = 0.0;
    long iterations = 0;
};

struct ScalingOptions {
    double tol = 1e-12;
    long max_iter = 100000;
};

// Max-flow test: can the support of B carry the marginals (alpha, beta)?
bool marginals_feasible(const Mat& B, const Vec& alpha, const Vec& beta, double tol = 1e-12);

// Proportional scaling onto the transportation polytope restricted to supp(B).
// Throws DomainError if the marginals are infeasible.
EdgeMarginal optimal_x(const Mat& B, const Vec& alpha, const Vec& beta, const ScalingOptions& opt = {});
inline EdgeMarginal optimal_x(const SpinModel& m, const Vec& a, const Vec& b, const ScalingOptions& o = {}) {
    return optimal_x(m.B(), a, b, o);
}

// f1 = sum alpha ln alpha + sum beta ln beta.
double f1(const Vec& alpha, const Vec& beta);
// g1 = sum x ln B - sum x ln x over x > 0 (primal form).
double g1(const Mat& B, const Mat& x);

// Psi1 = (Delta-1) f1 + Delta g1(x*); -infinity when the marginals are infeasible.
ExtReal psi1(const Mat& B, int delta, const Vec& alpha, const Vec& beta);
inline ExtReal psi1(const SpinModel& m, int delta, const Vec& a, const Vec& b) { return psi1(m.B(), delta, a, b); }

// Phi = Delta [ln(R^T B C) - ln||R||_p - ln||C||_p], p = Delta/(Delta-1).
double phi(const Mat& B, int delta, const Vec& R, const Vec& C);
inline double phi(const SpinModel& m, int delta, const Vec& R, const Vec& C) { return phi(m.B(), delta, R, C); }

double lp_norm(const Vec& v, double p);

struct NormResult {
    double norm = 0.0;  // ||B||_{p -> Delta}
    Vec R;              // maximizing pair (sum-normalized)
    Vec C;
    int starts = 0;
};

struct NormOptions {
    int starts = 64;
    std::uint64_t seed = 0x5eed5eedULL;
    long max_iter = 20000;
};

// ||B||_{p->Delta} by multistart alternating power iteration (the tree
// recursions), uniform start always included. Heuristic global maximum.
NormResult induced_norm(const Mat& B, int delta, const NormOptions& opt = {});

double max_psi1(const SpinModel& m, int delta, const NormOptions& opt = {});

Mat kron(const Mat& A, const Mat& B);

struct TensorReport {
    double norm = 0.0;
    double tensor_norm = 0.0;
    double ratio = 0.0;  // |tensor_norm - norm^2| / norm^2
};

TensorReport verify_tensor_identity(const SpinModel& m, int delta, const NormOptions& opt = {});

struct OverlapPoint {
    Vec gamma;  // index i*q + k
    Vec delta;
};

OverlapPoint dominant_overlap(const Vec& alpha, const Vec& beta);

struct Psi2Report {
    ExtReal value;
    double deviation = 0.0;  // value - 2 psi1
};

Psi2Report psi2_at_dominant(const SpinModel& m, int delta, const Vec& alpha, const Vec& beta);

// Central-difference Hessian of Psi1 in an orthonormal basis of the tangent
// space {sum dalpha = 0, sum dbeta = 0} (dimension 2(q-1)). Evaluated in
// extended precision so that step 1e-5 resolves eigenvalues near 1e-6.
// Requires alpha, beta strictly positive.
Mat psi1_tangent_hessian(const Mat& B, int delta, const Vec& alpha, const Vec& beta, double step = 1e-5);

struct ConnectionReport {
    bool attractive = false;
    double restricted_radius = 0.0;
    double hessian_max_eigenvalue = 0.0;
    bool hessian_negative_definite = false;  // max eigenvalue < -margin
    bool agree = false;
};

ConnectionReport verify_connection(const Mat& B, const Fixpoint& fp, int delta, double step = 1e-5,
                                   double margin = 1e-6);

}  // namespace spinlab
