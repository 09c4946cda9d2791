#pragma once

#include "spinlab/common.hpp"
#include "spinlab/tree_recursion.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spinlab {

// Uniqueness threshold (Delta - q) / Delta of the antiferromagnetic Potts model.
double potts_threshold(int q, int delta);

struct HalfHalf {
    double x = 1.0;
    Fixpoint fixpoint;  // T = first q/2 colors
};

// Root x > 1 of x = (B+q'-1+q' x^d) / (q' + (B+q'-1) x^d), q' = q/2, d = Delta-1.
double half_half_root(int q, int delta, double B);
HalfHalf solve_half_half(int q, int delta, double B);

// Fixpoint of the half-half family supported on subset T (mask of size q).
Fixpoint half_half_fixpoint(int q, int delta, double x, const std::vector<int>& T);

struct Phase {
    Vec alpha;
    Vec beta;
    double psi1 = 0.0;
    bool attractive = false;
    double restricted_radius = 0.0;
    std::vector<int> T;  // colors carrying the larger alpha-mass; empty for uniform
    Fixpoint fixpoint;
};

struct PottsPhaseDiagram {
    int q = 0;
    int delta = 0;
    double B = 0.0;
    double Bc = 0.0;
    std::string regime;  // "uniqueness" or "semi_translation_nonuniqueness"
    std::optional<double> x;
    std::optional<double> a;
    std::optional<double> b;
    std::vector<Phase> phases;
};

// All C(q, q/2) dominant phases for even q and B < Bc.
PottsPhaseDiagram dominant_phases(int q, int delta, double B);

// Full diagram: uniform phase in the uniqueness regime, dominant_phases otherwise.
PottsPhaseDiagram phase_diagram(int q, int delta, double B);

struct Lambda1Report {
    double lambda1 = 0.0;
    std::optional<double> lambda1_colorings;  // alternative closed form at B = 0
    bool attractive = false;                  // lambda1 < 1/d
    std::vector<double> predicted_spectrum;   // ascending
};

Lambda1Report lambda1_half_half(int q, int delta, double B, double x);

struct FixpointType {
    std::array<int, 3> counts{0, 0, 0};
    int t = 0;
};

FixpointType classify_fixpoint_type(const Fixpoint& fp, double tol = 1e-8);

using Triple = std::array<double, 3>;

// Relaxed objective over a fractional type triple.
double phi_bar_s(const Triple& qt, const Triple& R, const Triple& C, int delta, double B);
// Derivative in q_i at a maximizer (valid for i with q_i > 0).
Triple phi_bar_dq(const Triple& qt, const Triple& R, const Triple& C, int delta, double B);

struct PhiBarResult {
    double value = 0.0;
    Triple R{};
    Triple C{};
    bool good = true;  // q_i > 0 implies R_i, C_i > 0 at the maximizer
};

PhiBarResult phi_bar(const Triple& qt, int delta, double B, int starts = 128, std::uint64_t seed = 7);

struct SweepRow {
    double B = 0.0;
    std::string regime;
    double x = 0.0;        // 1 in uniqueness (uniform); NaN for odd q
    double lambda_d = 0.0; // d * lambda1 (half-half) or d * uniform radius
    double psi1_max = 0.0;
};

std::vector<SweepRow> potts_sweep(int q, int delta, double B0, double B1, int steps);

}  // namespace spinlab
