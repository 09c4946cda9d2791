#pragma once

#include "spinlab/common.hpp"
#include "spinlab/graph.hpp"
#include "spinlab/spin_model.hpp"
#include "spinlab/tree_recursion.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace spinlab {

// Number of simple cycles of each even length <= max_len (multigraph:
// a 2-cycle is an unordered pair of parallel edges; longer cycles are
// weighted by the product of edge multiplicities).
std::map<int, std::uint64_t> cycle_counts(const SimpleGraph& g, int max_len);
std::map<int, std::uint64_t> cycle_counts(const BipartiteRegularGraph& g, int max_len);

struct SSCReport {
    std::vector<double> lambdas;       // non-unit singular values of the marginal matrix
    std::map<int, double> mu;          // even cycle length -> mu
    std::map<int, double> delta;       // even cycle length -> delta
    std::vector<double> partial_sums;  // partial_sums[k] = sum over even i <= 2(k+1) of mu_i delta_i^2
    double partial_sum = 0.0;          // up to i_max
    double log_C = 0.0;
    double C = 0.0;
};

// mu_i = ((Delta-1)^i + (Delta-1)) / i for even i.
double ssc_mu(int delta, int i);

// Throws DomainError if (Delta-1) max lambda >= 1.
SSCReport ssc_constants(const SpinModel& model, int delta, const Fixpoint& fp, int i_max);

// prod over even lengths 2..2m of (1 + delta_i)^{X_i} exp(-mu_i delta_i).
double ssc_w(const std::map<int, std::uint64_t>& cycles, const SSCReport& rep, int m);

}  // namespace spinlab
