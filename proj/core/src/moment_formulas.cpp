#include "spinlab/moment_formulas.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace spinlab {

std::vector<int> largest_remainder(const Vec& v, int n) {
    if (n < 1) throw ArgumentError("n must be positive");
    if ((v.array() < -1e-12).any() || std::abs(v.sum() - 1.0) > 1e-9)
        throw DomainError("infeasible rounding: vector is not a probability distribution");
    const int q = static_cast<int>(v.size());
    std::vector<int> out(q);
    std::vector<std::pair<double, int>> rem;
    int used = 0;
    for (int i = 0; i < q; ++i) {
        double x = std::max(0.0, v(i)) * n;
        out[i] = static_cast<int>(std::floor(x + 1e-9));
        used += out[i];
        rem.emplace_back(x - out[i], i);
    }
    std::stable_sort(rem.begin(), rem.end(), [](auto& l, auto& r) { return l.first > r.first; });
    for (int k = 0; used < n && k < q; ++k, ++used) ++out[rem[k].second];
    if (used != n) throw DomainError("infeasible rounding");
    return out;
}

namespace {

// Enumerates nonnegative integer matrices with the given row and column sums.
void for_each_table(const std::vector<int>& rows, const std::vector<int>& cols,
                    const std::function<void(const std::vector<int>&)>& visit) {
    const int m = static_cast<int>(rows.size()), k = static_cast<int>(cols.size());
    std::vector<int> t(static_cast<std::size_t>(m) * k, 0), rrem = rows, crem = cols;
    std::function<void(int)> rec = [&](int cell) {
        if (cell == m * k) {
            visit(t);
            return;
        }
        const int i = cell / k, j = cell % k;
        if (j == k - 1) {
            // last column is forced by the row sum
            const int x = rrem[i];
            if (x > crem[j]) return;
            if (i == m - 1 && x != crem[j]) return;
            t[cell] = x;
            rrem[i] -= x;
            crem[j] -= x;
            rec(cell + 1);
            rrem[i] += x;
            crem[j] += x;
            return;
        }
        const int hi = std::min(rrem[i], crem[j]);
        for (int x = 0; x <= hi; ++x) {
            if (i == m - 1 && x != crem[j]) continue;
            t[cell] = x;
            rrem[i] -= x;
            crem[j] -= x;
            rec(cell + 1);
            rrem[i] += x;
            crem[j] += x;
        }
        t[cell] = 0;
    };
    if (std::accumulate(rows.begin(), rows.end(), 0) != std::accumulate(cols.begin(), cols.end(), 0)) return;
    rec(0);
}

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
    std::vector<Rational> w;
    static Rational from_int(const BigInt& x) { return Rational(x); }
    Rational weight(int idx) const { return w[idx]; }
    static Rational pow(const Rational& x, int e) {
        Rational r = 1;
        for (int i = 0; i < e; ++i) r *= x;
        return r;
    }
};

template <>
struct Arith<long double> {
    std::vector<long double> w;
    static long double from_int(const BigInt& x) { return x.convert_to<long double>(); }
    long double weight(int idx) const { return w[idx]; }
    static long double pow(long double x, int e) { return e == 0 ? 1.0L : std::pow(x, e); }
};

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt multinomial(int n, const std::vector<int>& parts) {
    BigInt r = factorial(n);
    for (int p : parts) r /= factorial(p);
    return r;
}

BigInt product_factorials(const std::vector<int>& v) {
    BigInt r = 1;
    for (int x : v) r *= factorial(x);
    return r;
}

// sum_X prod a! prod b! / (prod X! n!) prod w^X, with w given per cell.
template <class T, class WeightOf>
T matching_sum(const std::vector<int>& rows, const std::vector<int>& cols, int n, WeightOf weight_of) {
    T total = 0;
    const BigInt num = product_factorials(rows) * product_factorials(cols);
    const BigInt nf = factorial(n);
    for_each_table(rows, cols, [&](const std::vector<int>& X) {
        T t = 1;
        for (std::size_t c = 0; c < X.size(); ++c)
            if (X[c]) t *= Arith<T>::pow(weight_of(c), X[c]);
        if (t == T(0)) return;
        BigInt den = nf * product_factorials(X);
        total += t * Arith<T>::from_int(num) / Arith<T>::from_int(den);
    });
    return total;
}

template <class T>
T power(const T& x, int e) {
    T r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

void check_counts(const SpinModel& model, int delta, int n, const std::vector<int>& a, const std::vector<int>& b) {
    if (delta < 1 || n < 1) throw ArgumentError("need delta >= 1 and n >= 1");
    const std::size_t q = static_cast<std::size_t>(model.q());
    if (a.size() != q || b.size() != q) throw ArgumentError("count vectors must have q entries");
    for (int x : a)
        if (x < 0) throw ArgumentError("negative count");
    for (int x : b)
        if (x < 0) throw ArgumentError("negative count");
    if (std::accumulate(a.begin(), a.end(), 0) != n || std::accumulate(b.begin(), b.end(), 0) != n)
        throw DomainError("infeasible rounding: counts do not sum to n");
}

template <class T>
T first_moment(const Arith<T>& ar, int delta, int n, const std::vector<int>& a, const std::vector<int>& b) {
    T s = matching_sum<T>(a, b, n, [&](std::size_t c) { return ar.weight(static_cast<int>(c)); });
    return Arith<T>::from_int(multinomial(n, a) * multinomial(n, b)) * power(s, delta);
}

template <class T>
T second_moment(const Arith<T>& ar, int q, int delta, int n, const std::vector<int>& a, const std::vector<int>& b) {
    // Pair spin (i, k) has index i*q + k; cell (ik, jl) carries B_ij B_kl.
    const int q2 = q * q;
    std::vector<std::vector<int>> Gs, Ds;
    for_each_table(a, a, [&](const std::vector<int>& G) { Gs.push_back(G); });
    for_each_table(b, b, [&](const std::vector<int>& D) { Ds.push_back(D); });
    T total = 0;
    for (const auto& G : Gs)
        for (const auto& D : Ds) {
            T s = matching_sum<T>(G, D, n, [&](std::size_t c) {
                const int row = static_cast<int>(c) / q2, col = static_cast<int>(c) % q2;
                const int i = row / q, k = row % q, j = col / q, l = col % q;
                return ar.weight(i * q + j) * ar.weight(k * q + l);
            });
            if (s == T(0)) continue;
            total += Arith<T>::from_int(multinomial(n, G) * multinomial(n, D)) * power(s, delta);
        }
    return total;
}

template <template <class> class F>
Weight dispatch(const SpinModel& model, F<Rational> fr, F<long double> fd) {
    Weight w;
    if (auto rat = rational_weights(model.B())) {
        w.value = fr(Arith<Rational>{*rat});
        w.approx = w.value.convert_to<double>();
    } else {
        std::vector<long double> ws;
        for (int i = 0; i < model.q(); ++i)
            for (int j = 0; j < model.q(); ++j) ws.push_back(model.B(i, j));
        w.exact = false;
        w.approx = static_cast<double>(fd(Arith<long double>{ws}));
    }
    return w;
}

template <class T>
using Eval = std::function<T(const Arith<T>&)>;

}  // namespace

Weight expected_Z_counts(const SpinModel& model, int delta, int n, const std::vector<int>& a,
                         const std::vector<int>& b) {
    check_counts(model, delta, n, a, b);
    if (n > 12) throw BudgetError("first-moment formula limited to n <= 12");
    return dispatch<Eval>(
        model, Eval<Rational>([&](const Arith<Rational>& ar) { return first_moment(ar, delta, n, a, b); }),
        Eval<long double>([&](const Arith<long double>& ar) { return first_moment(ar, delta, n, a, b); }));
}

Weight expected_Z_formula(const SpinModel& model, int delta, int n, const Vec& alpha, const Vec& beta) {
    return expected_Z_counts(model, delta, n, largest_remainder(alpha, n), largest_remainder(beta, n));
}

Weight expected_Z2_counts(const SpinModel& model, int delta, int n, const std::vector<int>& a,
                          const std::vector<int>& b) {
    check_counts(model, delta, n, a, b);
    if (n > 6) throw BudgetError("second-moment formula limited to n <= 6");
    const int q = model.q();
    return dispatch<Eval>(
        model, Eval<Rational>([&](const Arith<Rational>& ar) { return second_moment(ar, q, delta, n, a, b); }),
        Eval<long double>([&](const Arith<long double>& ar) { return second_moment(ar, q, delta, n, a, b); }));
}

Weight expected_Z2_formula(const SpinModel& model, int delta, int n, const Vec& alpha, const Vec& beta) {
    return expected_Z2_counts(model, delta, n, largest_remainder(alpha, n), largest_remainder(beta, n));
}

}  // namespace spinlab

namespace spinlab {

std::vector<std::vector<int>> compositions(int n, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(q, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == q - 1) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            cur[i] = x;
            rec(i + 1, left - x);
        }
    };
    if (q > 0) rec(0, n);
    return out;
}

MomentCheck check_moment(const SpinModel& model, int delta, int n, int order) {
    if (order != 1 && order != 2) throw ArgumentError("moment order must be 1 or 2");
    if (delta < 1 || n < 1) throw ArgumentError("need delta >= 1 and n >= 1");
    double graphs = 1;
    for (int i = 0; i < delta; ++i) graphs *= std::tgamma(n + 1.0);
    if (graphs > 1e6) throw BudgetError("moment check: more than 1e6 matching tuples");
    const int q = model.q();
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));

    std::map<FootprintKey, Weight> sum;
    std::vector<std::size_t> idx(delta, 0);
    long long count = 0;
    while (true) {
        BipartiteRegularGraph g;
        g.n = n;
        g.r = 0;
        g.delta = delta;
        for (auto i : idx) g.matchings.push_back(perms[i]);
        for (auto& [k, w] : partition_by_footprint(g, model)) {
            Weight v = w;
            if (order == 2) {
                if (v.exact) v.value *= v.value;
                v.approx *= v.approx;
            }
            auto it = sum.find(k);
            sum[k] = it == sum.end() ? v : it->second + v;
        }
        ++count;
        std::size_t d = 0;
        while (d < idx.size() && ++idx[d] == perms.size()) idx[d++] = 0;
        if (d == idx.size()) break;
    }
    MomentCheck chk;
    chk.n = n;
    chk.delta = delta;
    chk.order = order;
    chk.graphs = count;
    chk.all_match = true;
    const auto comps = compositions(n, q);
    for (const auto& a : comps)
        for (const auto& b : comps) {
            MomentCheckRow row;
            row.a = a;
            row.b = b;
            row.formula = order == 1 ? expected_Z_counts(model, delta, n, a, b) : expected_Z2_counts(model, delta, n, a, b);
            auto it = sum.find(FootprintKey{a, b});
            Weight avg;
            avg.exact = row.formula.exact;
            if (it != sum.end()) {
                avg = it->second;
                if (avg.exact) avg.value /= count;
                avg.approx = avg.exact ? avg.value.convert_to<double>() : avg.approx / count;
            }
            row.enumerated = avg;
            if (row.formula.exact && avg.exact) row.match = row.formula.value == avg.value;
            else row.match = std::abs(row.formula.to_double() - avg.to_double()) <= 1e-9 * std::max(1.0, std::abs(avg.to_double()));
            chk.all_match = chk.all_match && row.match;
            chk.rows.push_back(std::move(row));
        }
    return chk;
}

}  // namespace spinlab
