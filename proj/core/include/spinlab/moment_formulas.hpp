#pragma once

#include "spinlab/enumeration.hpp"
#include "spinlab/spin_model.hpp"

#include <vector>

namespace spinlab {

// Integer counts summing to n by largest-remainder rounding of n * v
// (ties to the smaller index). Throws DomainError if v is not a distribution.
std::vector<int> largest_remainder(const Vec& v, int n);

// E_G[Z^{alpha,beta}] over G = union of delta uniform perfect matchings on
// n + n vertices, for integer spin counts a (U+) and b (U-).
Weight expected_Z_counts(const SpinModel& model, int delta, int n, const std::vector<int>& a,
                         const std::vector<int>& b);
Weight expected_Z_formula(const SpinModel& model, int delta, int n, const Vec& alpha, const Vec& beta);

// E_G[(Z^{alpha,beta})^2] via pair-spin tables over q^2 x q^2 cells.
Weight expected_Z2_counts(const SpinModel& model, int delta, int n, const std::vector<int>& a,
                          const std::vector<int>& b);
Weight expected_Z2_formula(const SpinModel& model, int delta, int n, const Vec& alpha, const Vec& beta);

// All count vectors of length q summing to n, lexicographic order.
std::vector<std::vector<int>> compositions(int n, int q);

struct MomentCheckRow {
    std::vector<int> a;
    std::vector<int> b;
    Weight formula;
    Weight enumerated;
    bool match = false;
};

struct MomentCheck {
    int n = 0;
    int delta = 0;
    int order = 1;        // 1: E[Z^{a,b}], 2: E[(Z^{a,b})^2]
    long long graphs = 0; // (n!)^delta matching tuples enumerated
    std::vector<MomentCheckRow> rows;
    bool all_match = false;
};

// Compares the closed-form moment with the average over every tuple of delta
// perfect matchings, for every pair of count vectors.
MomentCheck check_moment(const SpinModel& model, int delta, int n, int order);

}  // namespace spinlab
