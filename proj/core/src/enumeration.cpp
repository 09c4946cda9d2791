#include "spinlab/enumeration.hpp"

#include "spinlab/parallel.hpp"

#include <cmath>
#include <cstdio>

namespace spinlab {

double Weight::to_double() const { return exact ? value.convert_to<double>() : approx; }

std::string Weight::str() const {
    if (exact) return value.str();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", approx);
    return buf;
}

Weight operator+(const Weight& a, const Weight& b) {
    Weight out;
    if (a.exact && b.exact) {
        out.value = a.value + b.value;
        out.approx = out.value.convert_to<double>();
    } else {
        out.exact = false;
        out.approx = a.to_double() + b.to_double();
    }
    return out;
}

bool operator==(const Weight& a, const Weight& b) {
    if (a.exact && b.exact) return a.value == b.value;
    return a.to_double() == b.to_double();
}

std::optional<Rational> as_rational(double x) {
    if (!std::isfinite(x) || x < 0.0) return std::nullopt;
    // Continued-fraction convergents of x.
    long double rem = x;
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        long double a = std::floor(rem);
        if (a > 1e18L) break;
        BigInt ai = static_cast<long long>(a);
        BigInt p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > kMaxRationalDenominator) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Rational cand(p1, q1);
        if (cand.convert_to<double>() == x) return cand;
        long double frac = rem - a;
        if (frac <= 0.0L) break;
        rem = 1.0L / frac;
    }
    return std::nullopt;
}

std::optional<std::vector<Rational>> rational_weights(const Mat& B) {
    std::vector<Rational> out;
    for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            auto r = as_rational(B(i, j));
            if (!r) return std::nullopt;
            out.push_back(*r);
        }
    return out;
}

Monomials::Monomials(int q) : q_(q) {}

void Monomials::add(const std::vector<int>& exponents, std::uint64_t count) { terms_[exponents] += count; }

void Monomials::merge(const Monomials& other) {
    for (const auto& [k, c] : other.terms_) terms_[k] += c;
}

namespace {

std::vector<std::pair<int, int>> pair_list(int q) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < q; ++a)
        for (int b = a; b < q; ++b) out.emplace_back(a, b);
    return out;
}

Rational rational_pow(const Rational& x, int e) {
    if (e == 0) return 1;
    BigInt num = pow(boost::multiprecision::numerator(x), static_cast<unsigned>(e));
    BigInt den = pow(boost::multiprecision::denominator(x), static_cast<unsigned>(e));
    return Rational(num, den);
}

}  // namespace

Weight Monomials::evaluate(const Mat& B) const {
    const auto pairs = pair_list(q_);
    Weight w;
    if (auto rat = rational_weights(B)) {
        Rational sum = 0;
        for (const auto& [k, c] : terms_) {
            Rational t = Rational(BigInt(c));
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if (k[p]) t *= rational_pow((*rat)[pairs[p].first * q_ + pairs[p].second], k[p]);
            sum += t;
        }
        w.value = sum;
        w.approx = sum.convert_to<double>();
        return w;
    }
    // Neumaier summation.
    double s = 0.0, comp = 0.0;
    for (const auto& [k, c] : terms_) {
        double t = static_cast<double>(c);
        for (std::size_t p = 0; p < pairs.size(); ++p)
            if (k[p]) t *= std::pow(B(pairs[p].first, pairs[p].second), k[p]);
        double u = s + t;
        comp += std::abs(s) >= std::abs(t) ? (s - u) + t : (t - u) + s;
        s = u;
    }
    w.exact = false;
    w.approx = s + comp;
    return w;
}

namespace {

// Visits every configuration of g; key_fn(spins) selects the bucket. Chunks
// over the spins of the first vertices run in parallel and are merged in
// chunk order.
template <class Key, class KeyFn>
std::map<Key, Monomials> enumerate_buckets(const BipartiteRegularGraph& g, int q, KeyFn key_fn) {
    const int V = g.vertex_count();
    if (std::pow(static_cast<double>(q), V) > kEnumerationBudget)
        throw BudgetError("enumeration budget exceeded: q^" + std::to_string(V) + " > 1e8");
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : g.edges()) edges.emplace_back(a, g.side() + b);
    std::vector<int> pair_index(q * q);
    {
        int idx = 0;
        for (int a = 0; a < q; ++a)
            for (int b = a; b < q; ++b) pair_index[a * q + b] = pair_index[b * q + a] = idx++;
    }
    const int P = q * (q + 1) / 2;
    const int pre = std::min(V, 2);
    std::size_t chunks = 1;
    for (int i = 0; i < pre; ++i) chunks *= q;
    std::vector<std::map<Key, Monomials>> local(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        std::vector<int> spins(V, 0);
        std::size_t rest = c;
        for (int i = 0; i < pre; ++i) {
            spins[i] = static_cast<int>(rest % q);
            rest /= q;
        }
        std::vector<int> exps(P);
        auto& out = local[c];
        while (true) {
            std::fill(exps.begin(), exps.end(), 0);
            for (auto [a, b] : edges) ++exps[pair_index[spins[a] * q + spins[b]]];
            Key key = key_fn(spins);
            auto it = out.find(key);
            if (it == out.end()) it = out.emplace(std::move(key), Monomials(q)).first;
            it->second.add(exps);
            // little-endian mixed-radix increment over the free vertices
            int v = pre;
            while (v < V && ++spins[v] == q) spins[v++] = 0;
            if (v == V) break;
        }
    });
    std::map<Key, Monomials> merged;
    for (auto& m : local)
        for (auto& [k, mono] : m) {
            auto it = merged.find(k);
            if (it == merged.end()) merged.emplace(k, std::move(mono));
            else it->second.merge(mono);
        }
    return merged;
}

FootprintKey footprint_of(const std::vector<int>& spins, const BipartiteRegularGraph& g, int q) {
    FootprintKey k{std::vector<int>(q, 0), std::vector<int>(q, 0)};
    for (int i = 0; i < g.n; ++i) {
        ++k.alpha[spins[i]];
        ++k.beta[spins[g.side() + i]];
    }
    return k;
}

std::int64_t eta_code(const std::vector<int>& spins, const BipartiteRegularGraph& g, int q) {
    std::int64_t code = 0, mult = 1;
    for (int k = 0; k < g.r; ++k, mult *= q) code += spins[g.n + k] * mult;
    for (int k = 0; k < g.r; ++k, mult *= q) code += spins[g.side() + g.n + k] * mult;
    return code;
}

}  // namespace

Weight exact_partition(const BipartiteRegularGraph& g, const SpinModel& model) {
    validate(g);
    auto buckets = enumerate_buckets<int>(g, model.q(), [](const std::vector<int>&) { return 0; });
    return buckets.begin()->second.evaluate(model.B());
}

std::map<FootprintKey, Weight> partition_by_footprint(const BipartiteRegularGraph& g, const SpinModel& model) {
    validate(g);
    const int q = model.q();
    auto buckets = enumerate_buckets<FootprintKey>(g, q, [&](const std::vector<int>& s) { return footprint_of(s, g, q); });
    std::map<FootprintKey, Weight> out;
    for (const auto& [k, mono] : buckets) out[k] = mono.evaluate(model.B());
    return out;
}

int phase_of_configuration(const Vec& alpha_hat, const Vec& beta_hat, const std::vector<PhasePoint>& phases) {
    if (phases.empty()) throw ArgumentError("phase list is empty");
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < phases.size(); ++p) {
        double d = (phases[p].alpha - alpha_hat).squaredNorm() + (phases[p].beta - beta_hat).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(p);
        }
    }
    return best;
}

ConditionedPartition conditioned_partition(const BipartiteRegularGraph& g, const SpinModel& model,
                                           const std::vector<PhasePoint>& phases) {
    validate(g);
    if (phases.empty()) throw ArgumentError("phase list is empty");
    const int q = model.q();
    using Key = std::pair<FootprintKey, std::int64_t>;
    auto buckets = enumerate_buckets<Key>(g, q, [&](const std::vector<int>& s) {
        return Key{footprint_of(s, g, q), eta_code(s, g, q)};
    });
    const std::size_t P = phases.size();
    std::vector<std::map<std::int64_t, Monomials>> grouped(P);
    std::map<FootprintKey, int> phase_cache;
    for (auto& [key, mono] : buckets) {
        auto it = phase_cache.find(key.first);
        if (it == phase_cache.end()) {
            Vec a(q), b(q);
            for (int i = 0; i < q; ++i) {
                a(i) = static_cast<double>(key.first.alpha[i]) / g.n;
                b(i) = static_cast<double>(key.first.beta[i]) / g.n;
            }
            it = phase_cache.emplace(key.first, phase_of_configuration(a, b, phases)).first;
        }
        auto& slot = grouped[it->second];
        auto jt = slot.find(key.second);
        if (jt == slot.end()) slot.emplace(key.second, std::move(mono));
        else jt->second.merge(mono);
    }
    ConditionedPartition out;
    const bool exact = rational_weights(model.B()).has_value();
    Weight zero;
    zero.exact = exact;
    out.Z = zero;
    out.Zp.assign(P, zero);
    out.Zp_eta.resize(P);
    for (std::size_t p = 0; p < P; ++p) {
        for (const auto& [code, mono] : grouped[p]) {
            Weight w = mono.evaluate(model.B());
            out.Zp_eta[p][code] = w;
            out.Zp[p] = out.Zp[p] + w;
        }
        out.Z = out.Z + out.Zp[p];
    }
    return out;
}

std::vector<int> decode_eta(std::int64_t code, int q, int r) {
    std::vector<int> eta(2 * r);
    for (auto& s : eta) {
        s = static_cast<int>(code % q);
        code /= q;
    }
    return eta;
}

double nu_product(const Fixpoint& fp, const std::vector<int>& eta, int r) {
    if (static_cast<int>(eta.size()) != 2 * r) throw ArgumentError("nu_product: eta must have 2r entries");
    const double sR = fp.R.sum(), sC = fp.C.sum();
    double p = 1.0;
    for (int k = 0; k < r; ++k) p *= fp.R(eta[k]) / sR;
    for (int k = 0; k < r; ++k) p *= fp.C(eta[r + k]) / sC;
    return p;
}

GadgetReport gadget_check(const BipartiteRegularGraph& g, const SpinModel& model,
                          const std::vector<PhasePoint>& phases, const std::vector<Fixpoint>& fixpoints) {
    if (phases.size() != fixpoints.size()) throw ArgumentError("gadget_check: one fixpoint per phase required");
    GadgetReport rep;
    rep.structure = structural_check(g);
    if (g.r == 0) {
        rep.note = "r = 0: no terminals, enumerative items skipped";
        return rep;
    }
    ConditionedPartition cp;
    try {
        cp = conditioned_partition(g, model, phases);
    } catch (const BudgetError& e) {
        rep.note = std::string("enumerative items skipped: ") + e.what();
        return rep;
    }
    rep.enumerated = true;
    const double Z = cp.Z.to_double();
    const int q = model.q();
    std::int64_t codes = 1;
    for (int i = 0; i < 2 * g.r; ++i) codes *= q;
    for (std::size_t p = 0; p < phases.size(); ++p) {
        const double zp = cp.Zp[p].to_double();
        rep.phase_mass.push_back(zp / Z);
        rep.mass_deviation = std::max(rep.mass_deviation, std::abs(zp / Z - 1.0 / phases.size()));
        if (zp <= 0.0) continue;
        for (std::int64_t c = 0; c < codes; ++c) {
            auto it = cp.Zp_eta[p].find(c);
            const double z = it == cp.Zp_eta[p].end() ? 0.0 : it->second.to_double();
            const double nu = nu_product(fixpoints[p], decode_eta(c, q, g.r), g.r);
            if (nu <= 0.0) continue;
            rep.ratio_deviation = std::max(rep.ratio_deviation, std::abs(z / zp / nu - 1.0));
        }
    }
    return rep;
}

}  // namespace spinlab
