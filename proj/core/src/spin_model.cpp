#include "spinlab/spin_model.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace spinlab {

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::potts: return "potts";
        case ModelKind::colorings: return "colorings";
        default: return "generic";
    }
}

namespace {

bool support_connected(const Mat& B) {
    const int q = static_cast<int>(B.rows());
    std::vector<char> seen(q, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < q; ++j)
            if (B(i, j) > 0.0 && !seen[j]) {
                seen[j] = 1;
                ++count;
                stack.push_back(j);
            }
    }
    return count == q;
}

}  // namespace

SpinModel::SpinModel(Mat B, ModelKind kind, std::optional<double> param)
    : B_(std::move(B)), kind_(kind), param_(param) {
    if (B_.rows() == 0 || B_.rows() != B_.cols())
        throw ArgumentError("interaction matrix must be square and nonempty");
    const int q = static_cast<int>(B_.rows());
    for (int i = 0; i < q; ++i) {
        bool any = false;
        for (int j = 0; j < q; ++j) {
            if (!std::isfinite(B_(i, j)) || B_(i, j) < 0.0)
                throw ArgumentError("interaction matrix entries must be finite and nonnegative");
            if (B_(i, j) != B_(j, i)) throw ArgumentError("interaction matrix must be symmetric");
            any = any || B_(i, j) > 0.0;
        }
        if (!any) throw ArgumentError("spin " + std::to_string(i) + " has an all-zero row");
    }
    if (!support_connected(B_))
        throw ArgumentError("interaction matrix is reducible (support graph disconnected)");
}

SpinModel SpinModel::potts(int q, double B) {
    if (q < 1) throw ArgumentError("q must be positive");
    Mat M = Mat::Ones(q, q);
    M.diagonal().setConstant(B);
    return SpinModel(M, B == 0.0 ? ModelKind::colorings : ModelKind::potts, B);
}

SpinModel SpinModel::colorings(int q) { return potts(q, 0.0); }

SignatureReport classify_signature(const SpinModel& model) {
    Eigen::SelfAdjointEigenSolver<Mat> es(model.B());
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + model.q());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    for (double e : ev)
        if (std::abs(e) < kZeroEigenvalueTol)
            throw DomainError("interaction matrix is numerically singular (eigenvalue below 1e-12)");
    bool af = ev.size() >= 2 && ev[0] > 0.0 && ev[1] < 0.0;
    return {af ? Signature::antiferromagnetic : Signature::ferro_or_mixed, ev};
}

bool is_ergodic(const SpinModel& model) {
    // Union-find on the bipartite double cover: the support is bipartite iff
    // no spin is connected to its own mirror image.
    const int q = model.q();
    std::vector<int> parent(2 * q);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            if (model.support(i, j)) parent[find(i)] = find(q + j);
    for (int i = 0; i < q; ++i)
        if (find(i) == find(q + i)) return true;
    return false;
}

PerronDecomposition perron_decompose(const SpinModel& model) {
    const int q = model.q();
    Eigen::SelfAdjointEigenSolver<Mat> es(model.B());
    const Vec& w = es.eigenvalues();  // ascending
    const Mat& V = es.eigenvectors();
    if (q < 2 || !(w(q - 1) > 0.0))
        throw DomainError("no negative eigenvalue: model is not antiferromagnetic");
    for (int k = 0; k < q - 1; ++k)
        if (!(w(k) < 0.0)) throw DomainError("non-Perron eigenvalue is nonnegative: not antiferromagnetic");
    Vec v1 = V.col(q - 1);
    if (v1.sum() < 0) v1 = -v1;
    PerronDecomposition d;
    d.u = std::sqrt(w(q - 1)) * v1;
    d.P.resize(q - 1, q);
    for (int k = 0; k < q - 1; ++k) d.P.row(k) = std::sqrt(-w(k)) * V.col(k).transpose();
    return d;
}

}  // namespace spinlab
