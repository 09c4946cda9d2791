#pragma once

#include "spinlab/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spinlab {

enum class ModelKind { generic, potts, colorings };

std::string to_string(ModelKind k);

// Symmetric nonnegative interaction matrix with an irreducible support.
// Immutable once constructed.
class SpinModel {
public:
    SpinModel(Mat B, ModelKind kind = ModelKind::generic, std::optional<double> param = std::nullopt);

    static SpinModel potts(int q, double B);
    static SpinModel colorings(int q);

    int q() const { return static_cast<int>(B_.rows()); }
    const Mat& B() const { return B_; }
    double B(int i, int j) const { return B_(i, j); }
    bool support(int i, int j) const { return B_(i, j) > 0.0; }
    ModelKind kind() const { return kind_; }
    std::optional<double> param() const { return param_; }

private:
    Mat B_;
    ModelKind kind_;
    std::optional<double> param_;
};

enum class Signature { antiferromagnetic, ferro_or_mixed };

struct SignatureReport {
    Signature signature;
    std::vector<double> eigenvalues;  // descending
};

constexpr double kZeroEigenvalueTol = 1e-12;

SignatureReport classify_signature(const SpinModel& model);

// True iff the support graph carries an odd closed walk.
bool is_ergodic(const SpinModel& model);

struct PerronDecomposition {
    Vec u;
    Mat P;  // rows are sqrt(-lambda_k) v_k^T over the negative eigenpairs
};

PerronDecomposition perron_decompose(const SpinModel& model);

}  // namespace spinlab
