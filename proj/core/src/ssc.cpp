#include "spinlab/ssc.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <functional>

namespace spinlab {

std::map<int, std::uint64_t> cycle_counts(const SimpleGraph& g, int max_len) {
    if (max_len > 12) throw ArgumentError("cycle_counts: max_len must be <= 12");
    const int V = g.vertices;
    std::map<std::pair<int, int>, std::uint64_t> mult;
    for (auto [a, b] : g.edges)
        if (a != b) ++mult[std::minmax(a, b)];
    std::vector<std::vector<std::pair<int, std::uint64_t>>> adj(V);
    for (const auto& [e, m] : mult) {
        adj[e.first].emplace_back(e.second, m);
        adj[e.second].emplace_back(e.first, m);
    }
    std::map<int, std::uint64_t> out;
    for (int len = 2; len <= max_len; len += 2) out[len] = 0;
    if (max_len >= 2)
        for (const auto& [e, m] : mult) out[2] += m * (m - 1) / 2;
    // Cycles of length >= 3: DFS from the smallest vertex on the cycle; each
    // cycle is found once per direction.
    std::map<int, std::uint64_t> twice;
    std::vector<char> on_path(V, 0);
    for (int s = 0; s < V; ++s) {
        std::function<void(int, int, std::uint64_t)> dfs = [&](int v, int depth, std::uint64_t w) {
            for (auto [u, m] : adj[v]) {
                if (u == s && depth >= 3) twice[depth] += w * m;
                if (u <= s || on_path[u] || depth + 1 > max_len) continue;
                on_path[u] = 1;
                dfs(u, depth + 1, w * m);
                on_path[u] = 0;
            }
        };
        on_path[s] = 1;
        dfs(s, 1, 1);
        on_path[s] = 0;
    }
    for (auto [len, c] : twice)
        if (len % 2 == 0 && len <= max_len) out[len] += c / 2;
    return out;
}

std::map<int, std::uint64_t> cycle_counts(const BipartiteRegularGraph& g, int max_len) {
    return cycle_counts(to_simple_graph(g), max_len);
}

double ssc_mu(int delta, int i) {
    const double d = delta - 1;
    return (std::pow(d, i) + d) / i;
}

SSCReport ssc_constants(const SpinModel& model, int delta, const Fixpoint& fp, int i_max) {
    if (delta < 2) throw ArgumentError("ssc: delta must be at least 2");
    if (i_max < 2) throw ArgumentError("ssc: i_max must be at least 2");
    MarginalMatrix mm = marginal_matrix(model.B(), fp.R, fp.C);
    Eigen::JacobiSVD<Mat> svd(mm.A);
    std::vector<double> sv(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
    std::sort(sv.begin(), sv.end(), std::greater<>());
    if (sv.empty() || std::abs(sv[0] - 1.0) > 1e-6)
        throw DomainError("ssc: marginal matrix has no unit singular value (not a fixpoint)");
    SSCReport rep;
    rep.lambdas.assign(sv.begin() + 1, sv.end());
    const double d = delta - 1;
    const double lmax = rep.lambdas.empty() ? 0.0 : rep.lambdas.front();
    if (d * lmax >= 1.0) throw DomainError("ssc: fixpoint is not attractive, the constants diverge");
    // ln C = -1/2 sum ln(1 - d^2 x^2) - d/2 sum ln(1 - x^2), x = lambda_j lambda_k.
    double logC = 0.0;
    for (double a : rep.lambdas)
        for (double b : rep.lambdas) {
            const double x = a * b;
            logC += -0.5 * std::log1p(-d * d * x * x) - 0.5 * d * std::log1p(-x * x);
        }
    rep.log_C = logC;
    rep.C = std::exp(logC);
    double acc = 0.0;
    for (int i = 2; i <= i_max; i += 2) {
        double di = 0.0;
        for (double l : rep.lambdas) di += std::pow(l, i);
        rep.mu[i] = ssc_mu(delta, i);
        rep.delta[i] = di;
        // mu_i delta_i^2 expanded pairwise so that d^i never overflows.
        double term = 0.0;
        for (double a : rep.lambdas)
            for (double b : rep.lambdas) {
                const double x = a * b;
                term += (std::pow(d * x, i) + d * std::pow(x, i)) / i;
            }
        acc += term;
        rep.partial_sums.push_back(acc);
    }
    rep.partial_sum = acc;
    return rep;
}

double ssc_w(const std::map<int, std::uint64_t>& cycles, const SSCReport& rep, int m) {
    double logw = 0.0;
    for (int i = 2; i <= 2 * m; i += 2) {
        auto dt = rep.delta.find(i);
        if (dt == rep.delta.end()) throw ArgumentError("ssc_w: report does not cover cycle length " + std::to_string(i));
        auto xt = cycles.find(i);
        const double X = xt == cycles.end() ? 0.0 : static_cast<double>(xt->second);
        logw += X * std::log1p(dt->second) - rep.mu.at(i) * dt->second;
    }
    return std::exp(logw);
}

}  // namespace spinlab
