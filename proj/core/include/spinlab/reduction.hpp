#pragma once

#include "spinlab/common.hpp"
#include "spinlab/graph.hpp"
#include "spinlab/spin_model.hpp"
#include "spinlab/tree_recursion.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace spinlab {

constexpr double kBruteForceBudget = 1e8;

struct OrderedPhase {
    Vec x;
    Vec y;
};

// Ordered phases closed under the flip (x, y) -> (y, x). Labels are indices
// into `phases`: label 2i is p_i^+, label 2i+1 its flip p_i^-.
struct PhaseSet {
    std::vector<OrderedPhase> phases;

    int size() const { return static_cast<int>(phases.size()); }
    int unordered_count() const { return size() / 2; }
    static int unordered(int label) { return label / 2; }
    static int flip(int label) { return label ^ 1; }

    // One representative (x, y) per unordered phase; throws ArgumentError if
    // x == y or a vector leaves the simplex.
    static PhaseSet from_representatives(const std::vector<OrderedPhase>& reps);
    // Pairs each phase with its flip partner in the list (duplicates removed).
    static PhaseSet from_phase_points(const std::vector<PhasePoint>& pts, double tol = 1e-8);
};

// Dominant phases of a model by multistart fixpoint search: fixpoints whose
// Psi1 is within 1e-9 of the best. Throws DomainError if some has alpha == beta.
PhaseSet dominant_phase_set(const SpinModel& model, int delta, int starts = 64, std::uint64_t seed = 1);

ExtReal weight_parallel(const OrderedPhase& p1, const OrderedPhase& p2, const Mat& B);
ExtReal weight_symmetric(const OrderedPhase& p1, const OrderedPhase& p2, const Mat& B);

enum class EdgeKind { parallel, symmetric };
std::string to_string(EdgeKind k);
EdgeKind edge_kind_from_string(const std::string& s);

struct LabelEdge {
    int u = 0;
    int v = 0;
    EdgeKind kind = EdgeKind::parallel;
};

struct PhaseLabelingInstance {
    int vertices = 0;
    std::vector<LabelEdge> edges;  // loops and multi-edges allowed
    PhaseSet Q;
    Mat B;

    // 2 d_s + d_p + 4 l_s + 2 l_p
    std::vector<int> degrees() const;
};

ExtReal lwt(const PhaseLabelingInstance& inst, const std::vector<int>& labeling);

struct LwtResult {
    ExtReal value;
    std::vector<int> labeling;
    bool all_neg_inf = false;
};

LwtResult max_lwt_bruteforce(const PhaseLabelingInstance& inst);

struct NegDefReport {
    std::vector<double> eigenvalues;  // ascending
    double max_eigenvalue = 0.0;
    bool passes = false;  // max eigenvalue < -1e-10
};

// A'_ij = ln(z_i^T B z_j) - ln(z_i^T u) - ln(z_j^T u). Throws ArgumentError on
// coincident vectors.
NegDefReport negdef_certificate(const std::vector<Vec>& z, const SpinModel& model);
// z = x_1..x_Q', y_1..y_Q' of the representatives.
NegDefReport negdef_certificate(const PhaseSet& Q, const SpinModel& model);

// Lower-triangular conditional table over ordered labels of (u, v).
using LabelTable = std::vector<std::vector<ExtReal>>;

struct GadgetJ1 {
    int z = 0;                        // b_1..b_{z-1}, u, v
    std::vector<double> x_star;       // simplex QP optimum
    std::vector<int> counts;          // z_i
    double lambda1 = 0.0, lambda2 = 0.0;
    double Z_bound = 0.0;             // (4 Q' lambda1/lambda2)^Q', as a double
    double approx_error = 0.0;        // max_i |z x*_i - z_i|
    bool proof_bound_met = false;     // approx_error <= Z^{-1/Q'}
    int vertices = 0;
    int u = 0, v = 0;
    std::vector<LabelEdge> edges;     // all symmetric
    bool certified = false;
    bool eps1_infinite = false;       // single unordered phase: no competing labelings
    double eps1 = 0.0;
    LabelTable table;                 // max Lwt given (label(u), label(v))
};

GadgetJ1 build_J1(const PhaseSet& Q, const SpinModel& model);

struct GadgetJ2 {
    int t = 0;
    LabelTable table;  // T(a, b) = w_p(a, b) + t T1(a, b)
    int preferred = 0;  // unordered phase p
    double A1 = 0.0, A2 = 0.0;
    std::vector<double> A1_by_phase, A2_by_phase;
    double eps2 = 0.0;  // min over p of w_p(p+,p-) - w_p(p+,p+)
    double eps3 = 0.0;
    bool certified = false;
    double range_wp = 0.0;
};

GadgetJ2 build_J2(const GadgetJ1& j1, const PhaseSet& Q, const SpinModel& model);

// Cubic simple graph as an edge list.
struct CubicGraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

CubicGraph read_edge_list(std::istream& is);
void check_cubic(const CubicGraph& H);
int maxcut_bruteforce(const CubicGraph& H);

struct Reduction {
    PhaseLabelingInstance instance;
    int D3 = 0;
    double A1 = 0.0, A2 = 0.0;
    int maxcut = 0;
    double predicted = 0.0;  // (A1-A2) MaxCut + A2 |E| + A1 D3 |V|
};

// Replaces each edge of H by J2 and hangs D3 pendant J2 gadgets on each
// vertex. The instance lists H's vertices first, then pendants, then
// gadget-internal vertices.
Reduction reduce_maxcut(const CubicGraph& H, const GadgetJ1& j1, const GadgetJ2& j2, const PhaseSet& Q,
                        const SpinModel& model);
int compute_D3(const GadgetJ2& j2);

// MaxLwt of the reduced instance via conditional tables: enumerate labels on
// V(H); each edge adds T(a, b), each vertex D3 max_b T(a, b).
double maxlwt_dp(const CubicGraph& H, const GadgetJ2& j2, int D3);

struct FinalGraph {
    SimpleGraph graph;
    std::vector<int> offsets;  // first global vertex of each instance vertex's gadget
    std::vector<BipartiteRegularGraph> gadgets;  // one per distinct degree, indexed by position in `degrees`
    std::vector<int> degrees;
};

// Replaces every instance vertex of degree d by a screened copy of G^{kd}_n
// and wires its W terminals according to the instance edges.
FinalGraph build_HF(const PhaseLabelingInstance& inst, int n, int k, int delta, std::uint64_t seed);

}  // namespace spinlab
