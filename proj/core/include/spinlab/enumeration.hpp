#pragma once

#include "spinlab/common.hpp"
#include "spinlab/graph.hpp"
#include "spinlab/spin_model.hpp"
#include "spinlab/tree_recursion.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spinlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact when the model has rational weights, otherwise a compensated double.
struct Weight {
    bool exact = true;
    Rational value = 0;
    double approx = 0.0;

    double to_double() const;
    std::string str() const;  // "p/q" in exact mode, %.17g otherwise
};

Weight operator+(const Weight& a, const Weight& b);
bool operator==(const Weight& a, const Weight& b);

// Largest denominator accepted when reading a double weight as a rational.
constexpr std::int64_t kMaxRationalDenominator = 1000000;

// Best rational with denominator <= kMaxRationalDenominator that reproduces
// x to double precision, if any.
std::optional<Rational> as_rational(double x);

// Exact entries of B (row-major), or nullopt if some entry is not rational.
std::optional<std::vector<Rational>> rational_weights(const Mat& B);

// Polynomial in the interaction weights: for each multiset of unordered spin
// pairs (exponent vector over pairs a <= b) the number of configurations.
class Monomials {
public:
    explicit Monomials(int q = 0);
    int q() const { return q_; }
    void add(const std::vector<int>& exponents, std::uint64_t count = 1);
    void merge(const Monomials& other);
    Weight evaluate(const Mat& B) const;
    const std::map<std::vector<int>, std::uint64_t>& terms() const { return terms_; }

private:
    int q_;
    std::map<std::vector<int>, std::uint64_t> terms_;
};

// Enumeration budget on q^(#vertices).
constexpr double kEnumerationBudget = 1e8;

Weight exact_partition(const BipartiteRegularGraph& g, const SpinModel& model);

// Spin counts on U+ and U- (integers; divide by n for the footprint).
struct FootprintKey {
    std::vector<int> alpha;
    std::vector<int> beta;
    auto operator<=>(const FootprintKey&) const = default;
};

std::map<FootprintKey, Weight> partition_by_footprint(const BipartiteRegularGraph& g, const SpinModel& model);

// Index of the phase closest (Euclidean) to the footprint; ties -> smallest.
int phase_of_configuration(const Vec& alpha_hat, const Vec& beta_hat, const std::vector<PhasePoint>& phases);

struct ConditionedPartition {
    Weight Z;
    std::vector<Weight> Zp;
    // Zp_eta[p][code]: code = sum_k spin(w_k) q^k over W+ then W-.
    std::vector<std::map<std::int64_t, Weight>> Zp_eta;
};

ConditionedPartition conditioned_partition(const BipartiteRegularGraph& g, const SpinModel& model,
                                           const std::vector<PhasePoint>& phases);

// Decodes an eta code into 2r spins (W+ first).
std::vector<int> decode_eta(std::int64_t code, int q, int r);

// prod_{W+} Rhat(eta) * prod_{W-} Chat(eta), R and C rescaled to sum 1.
double nu_product(const Fixpoint& fp, const std::vector<int>& eta, int r);

struct GadgetReport {
    StructuralReport structure;
    bool enumerated = false;
    std::string note;
    std::vector<double> phase_mass;
    double mass_deviation = 0.0;   // max_p |Z^p/Z - 1/|Q||
    double ratio_deviation = 0.0;  // max_{p,eta} |Z^p(eta)/Z^p / nu_p(eta) - 1|
};

// Gadget report: structure, phase balance and terminal marginals.
// `fixpoints[p]` must be the fixpoint of phase p.
GadgetReport gadget_check(const BipartiteRegularGraph& g, const SpinModel& model,
                          const std::vector<PhasePoint>& phases, const std::vector<Fixpoint>& fixpoints);

}  // namespace spinlab
