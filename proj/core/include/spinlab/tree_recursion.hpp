#pragma once

#include "spinlab/common.hpp"
#include "spinlab/spin_model.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace spinlab {

// (R, C) pair of the tree recursions, scaled so that sum_ij B_ij R_i C_j = 1
// and sum R = sum C.
struct Fixpoint {
    Vec R;
    Vec C;
    double residual = 0.0;  // max relative change of the last undamped step
    int delta = 0;
    bool certified = false;
    long iterations = 0;
};

// Spin frequencies on the two sides of the bipartite graph.
struct PhasePoint {
    Vec alpha;
    Vec beta;
};

struct FixpointOptions {
    double tol = 1e-12;
    long max_iter = 100000;
    double damping = 0.5;
    bool newton_polish = true;
};

// Rescale (R, C) to the canonical gauge: sum R = sum C and R^T B C = 1.
std::pair<Vec, Vec> canonical_scale(const Mat& B, const Vec& R, const Vec& C);

// One undamped application of the recursions, canonically rescaled.
std::pair<Vec, Vec> bp_step(const Mat& B, int delta, const Vec& R, const Vec& C);
inline std::pair<Vec, Vec> bp_step(const SpinModel& m, int delta, const Vec& R, const Vec& C) {
    return bp_step(m.B(), delta, R, C);
}

// Relative change produced by one undamped step from (R, C).
double step_residual(const Mat& B, int delta, const Vec& R, const Vec& C);

Fixpoint find_fixpoint(const Mat& B, int delta, const Vec& R0, const Vec& C0,
                       const FixpointOptions& opt = {});
inline Fixpoint find_fixpoint(const SpinModel& m, int delta, const Vec& R0, const Vec& C0,
                              const FixpointOptions& opt = {}) {
    return find_fixpoint(m.B(), delta, R0, C0, opt);
}

// Newton refinement of an approximate fixpoint on the product of simplices.
// Steps are accepted only when they reduce the fixed-point defect.
std::pair<Vec, Vec> newton_polish(const Mat& B, int delta, const Vec& R, const Vec& C,
                                  int max_iter = 200);

// Random positive start vectors for stream `index` of `seed`.
std::pair<Vec, Vec> random_start(int q, std::uint64_t seed, std::uint64_t index);

// Runs find_fixpoint from `starts` seeded random initial points (in parallel,
// deterministic per index).
std::vector<Fixpoint> multistart_fixpoints(const SpinModel& m, int delta, int starts,
                                           std::uint64_t seed, const FixpointOptions& opt = {});

// Deduplicates up to `tol` in max-norm after sum-normalization; with
// `swap_equivalent`, (R, C) and (C, R) count as the same fixpoint.
std::vector<Fixpoint> dedupe_fixpoints(const std::vector<Fixpoint>& fps, double tol = 1e-8,
                                       bool swap_equivalent = true);

PhasePoint fixpoint_to_phase(const Fixpoint& fp);

struct JacobianReport {
    std::vector<double> spectrum;  // ascending
    double restricted_radius = 0.0;
    bool attractive = false;
};

// Edge-marginal normalized matrix A_ij = B_ij R_i C_j / sqrt(alpha_i beta_j),
// restricted to spins with positive marginals. Also returns those marginals.
struct MarginalMatrix {
    Mat A;
    Vec alpha;
    Vec beta;
    std::vector<int> rows;
    std::vector<int> cols;
};
MarginalMatrix marginal_matrix(const Mat& B, const Vec& R, const Vec& C);

JacobianReport jacobian_report(const Mat& B, const Fixpoint& fp, int delta);
inline JacobianReport jacobian_report(const SpinModel& m, const Fixpoint& fp, int delta) {
    return jacobian_report(m.B(), fp, delta);
}

}  // namespace spinlab
