#include "spinlab/reduction.hpp"

#include "spinlab/moments.hpp"
#include "spinlab/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace spinlab {

namespace {

bool in_simplex(const Vec& v) {
    return (v.array() >= -1e-12).all() && std::abs(v.sum() - 1.0) <= 1e-9;
}

bool close(const Vec& a, const Vec& b, double tol) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

}  // namespace

PhaseSet PhaseSet::from_representatives(const std::vector<OrderedPhase>& reps) {
    if (reps.empty()) throw ArgumentError("phase set is empty");
    PhaseSet out;
    const auto q = reps.front().x.size();
    for (const auto& p : reps) {
        if (p.x.size() != q || p.y.size() != q) throw ArgumentError("phase vectors must share one dimension");
        if (!in_simplex(p.x) || !in_simplex(p.y)) throw ArgumentError("phase vectors must lie in the simplex");
        if (close(p.x, p.y, 1e-9)) throw ArgumentError("degenerate phase: x == y");
        out.phases.push_back(p);
        out.phases.push_back({p.y, p.x});
    }
    return out;
}

PhaseSet PhaseSet::from_phase_points(const std::vector<PhasePoint>& pts, double tol) {
    std::vector<OrderedPhase> reps;
    for (const auto& pt : pts) {
        bool seen = false;
        for (const auto& r : reps)
            if ((close(r.x, pt.alpha, tol) && close(r.y, pt.beta, tol)) ||
                (close(r.y, pt.alpha, tol) && close(r.x, pt.beta, tol)))
                seen = true;
        if (!seen) reps.push_back({pt.alpha, pt.beta});
    }
    return from_representatives(reps);
}

PhaseSet dominant_phase_set(const SpinModel& model, int delta, int starts, std::uint64_t seed) {
    auto fps = dedupe_fixpoints(multistart_fixpoints(model, delta, starts, seed), 1e-8, false);
    std::vector<std::pair<double, PhasePoint>> scored;
    for (const auto& fp : fps) {
        if (!fp.certified) continue;
        PhasePoint pp = fixpoint_to_phase(fp);
        ExtReal v = psi1(model, delta, pp.alpha, pp.beta);
        if (v.finite) scored.emplace_back(v.value, pp);
    }
    if (scored.empty()) throw DomainError("no certified fixpoint found");
    double best = scored.front().first;
    for (const auto& s : scored) best = std::max(best, s.first);
    std::vector<PhasePoint> dom;
    for (const auto& [v, pp] : scored)
        if (v >= best - 1e-9 * std::max(1.0, std::abs(best))) {
            if (close(pp.alpha, pp.beta, 1e-7))
                throw DomainError("dominant phase has alpha == beta (uniqueness regime): no phase labeling problem");
            dom.push_back(pp);
        }
    return PhaseSet::from_phase_points(dom, 1e-6);
}

ExtReal weight_parallel(const OrderedPhase& p1, const OrderedPhase& p2, const Mat& B) {
    return safe_log(p1.x.dot(B * p2.x)) + safe_log(p1.y.dot(B * p2.y));
}

ExtReal weight_symmetric(const OrderedPhase& p1, const OrderedPhase& p2, const Mat& B) {
    return weight_parallel(p1, p2, B) + weight_parallel(p1, {p2.y, p2.x}, B);
}

std::string to_string(EdgeKind k) { return k == EdgeKind::parallel ? "parallel" : "symmetric"; }

EdgeKind edge_kind_from_string(const std::string& s) {
    if (s == "parallel" || s == "p") return EdgeKind::parallel;
    if (s == "symmetric" || s == "s") return EdgeKind::symmetric;
    throw ArgumentError("unknown edge kind '" + s + "'");
}

std::vector<int> PhaseLabelingInstance::degrees() const {
    std::vector<int> deg(vertices, 0);
    for (const auto& e : edges) {
        const int w = e.kind == EdgeKind::symmetric ? 2 : 1;
        if (e.u == e.v) deg[e.u] += 2 * w;
        else {
            deg[e.u] += w;
            deg[e.v] += w;
        }
    }
    return deg;
}

namespace {

struct WeightTables {
    std::vector<std::vector<ExtReal>> wp, ws;
};

WeightTables weight_tables(const PhaseSet& Q, const Mat& B) {
    const int L = Q.size();
    WeightTables t;
    t.wp.assign(L, std::vector<ExtReal>(L));
    t.ws.assign(L, std::vector<ExtReal>(L));
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) {
            t.wp[a][b] = weight_parallel(Q.phases[a], Q.phases[b], B);
            t.ws[a][b] = weight_symmetric(Q.phases[a], Q.phases[b], B);
        }
    return t;
}

ExtReal lwt_with(const WeightTables& t, const std::vector<LabelEdge>& edges, const std::vector<int>& lab) {
    double s = 0.0;
    for (const auto& e : edges) {
        const ExtReal& w = e.kind == EdgeKind::parallel ? t.wp[lab[e.u]][lab[e.v]] : t.ws[lab[e.u]][lab[e.v]];
        if (!w.finite) return ExtReal::neg_inf();
        s += w.value;
    }
    return ExtReal::of(s);
}

bool increment(std::vector<int>& lab, int base, int from = 0) {
    int v = from;
    while (v < static_cast<int>(lab.size()) && ++lab[v] == base) lab[v++] = 0;
    return v < static_cast<int>(lab.size());
}

}  // namespace

ExtReal lwt(const PhaseLabelingInstance& inst, const std::vector<int>& labeling) {
    if (static_cast<int>(labeling.size()) != inst.vertices) throw ArgumentError("labeling size mismatch");
    for (int l : labeling)
        if (l < 0 || l >= inst.Q.size()) throw ArgumentError("label out of range");
    return lwt_with(weight_tables(inst.Q, inst.B), inst.edges, labeling);
}

LwtResult max_lwt_bruteforce(const PhaseLabelingInstance& inst) {
    const int L = inst.Q.size();
    if (std::pow(static_cast<double>(L), inst.vertices) > 1e8)
        throw BudgetError("max_lwt_bruteforce: |Q|^|V| exceeds 1e8");
    const auto t = weight_tables(inst.Q, inst.B);
    LwtResult res;
    res.value = ExtReal::neg_inf();
    res.labeling.assign(inst.vertices, 0);
    if (inst.vertices == 0) {
        res.value = ExtReal::of(0.0);
        return res;
    }
    // Chunk on the label of vertex 0; strict improvement keeps the first
    // optimum in enumeration order within a chunk, chunks merge in order.
    std::vector<LwtResult> local(static_cast<std::size_t>(L));
    parallel_for(local.size(), [&](std::size_t c) {
        std::vector<int> lab(inst.vertices, 0);
        lab[0] = static_cast<int>(c);
        LwtResult best;
        best.value = ExtReal::neg_inf();
        best.labeling = lab;
        bool any = false;
        do {
            ExtReal v = lwt_with(t, inst.edges, lab);
            if (v.finite && (!any || best.value < v)) {
                best.value = v;
                best.labeling = lab;
                any = true;
            }
        } while (increment(lab, L, 1));
        local[c] = best;
    });
    bool any = false;
    for (auto& l : local)
        if (l.value.finite && (!any || res.value < l.value)) {
            res = l;
            any = true;
        }
    res.all_neg_inf = !any;
    return res;
}

NegDefReport negdef_certificate(const std::vector<Vec>& z, const SpinModel& model) {
    const int m = static_cast<int>(z.size());
    if (m == 0) throw ArgumentError("negdef_certificate: no vectors");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (close(z[i], z[j], 1e-12)) throw ArgumentError("negdef_certificate: coincident vectors");
    const Vec u = perron_decompose(model).u;
    Vec la(m);
    for (int i = 0; i < m; ++i) {
        const double a = z[i].dot(u);
        if (!(a > 0)) throw DomainError("negdef_certificate: z^T u must be positive");
        la(i) = std::log(a);
    }
    Mat A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double v = z[i].dot(model.B() * z[j]);
            if (!(v > 0)) throw DomainError("negdef_certificate: z_i^T B z_j vanishes");
            A(i, j) = std::log(v) - la(i) - la(j);
        }
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()));
    NegDefReport rep;
    rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
    rep.max_eigenvalue = rep.eigenvalues.back();
    rep.passes = rep.max_eigenvalue < -1e-10;
    return rep;
}

NegDefReport negdef_certificate(const PhaseSet& Q, const SpinModel& model) {
    std::vector<Vec> z;
    for (int i = 0; i < Q.unordered_count(); ++i) z.push_back(Q.phases[2 * i].x);
    for (int i = 0; i < Q.unordered_count(); ++i) z.push_back(Q.phases[2 * i].y);
    return negdef_certificate(z, model);
}

namespace {

// Projected gradient ascent of x^T A x on the simplex for concave-on-simplex A.
Vec project_simplex(const Vec& v) {
    std::vector<double> s(v.data(), v.data() + v.size());
    std::sort(s.begin(), s.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        cum += s[i];
        const double t = (cum - 1.0) / static_cast<double>(i + 1);
        if (s[i] - t > 0) theta = t;
    }
    return (v.array() - theta).cwiseMax(0.0).matrix();
}

Vec simplex_qp(const Mat& A, double lipschitz) {
    const int m = static_cast<int>(A.rows());
    Vec x = Vec::Constant(m, 1.0 / m);
    const double step = 1.0 / std::max(lipschitz, 1e-12);
    for (long it = 0; it < 1000000; ++it) {
        Vec nx = project_simplex(x + step * 2.0 * (A * x));
        const double diff = (nx - x).cwiseAbs().maxCoeff();
        x = nx;
        if (diff <= 1e-15) break;
    }
    return x;
}

}  // namespace

GadgetJ1 build_J1(const PhaseSet& Q, const SpinModel& model) {
    const int Qp = Q.unordered_count();
    const int L = Q.size();
    const Mat& B = model.B();
    const Vec u = perron_decompose(model).u;
    Mat A(Qp, Qp);
    Vec ap(Qp);
    for (int i = 0; i < Qp; ++i) {
        const auto& pi = Q.phases[2 * i];
        ap(i) = 2.0 * std::log(pi.x.dot(u)) + 2.0 * std::log(pi.y.dot(u));
        for (int j = 0; j < Qp; ++j) {
            ExtReal w = weight_symmetric(pi, Q.phases[2 * j], B);
            if (!w.finite) throw DomainError("build_J1: symmetric weight is -infinity");
            A(i, j) = w.value;
        }
    }
    Mat Aprime = A - ap * Vec::Ones(Qp).transpose() - Vec::Ones(Qp) * ap.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(-0.5 * (Aprime + Aprime.transpose()));
    GadgetJ1 g;
    g.lambda1 = es.eigenvalues().maxCoeff();
    g.lambda2 = es.eigenvalues().minCoeff();
    if (!(g.lambda2 > 0)) throw DomainError("build_J1: folded matrix is not negative definite");

    // On the simplex x^T A x = 2 a'^T x + x^T A' x, so the gradient of the
    // strictly concave part has Lipschitz constant 2 lambda1.
    Vec xs = Qp == 1 ? Vec::Ones(1) : simplex_qp(A, 2.0 * g.lambda1);
    g.x_star.assign(xs.data(), xs.data() + Qp);

    // Smallest z meeting the Dirichlet-type bound, searched up to min(Z, 1e4).
    g.Z_bound = std::pow(4.0 * Qp * g.lambda1 / g.lambda2, Qp);
    const double thr = std::pow(g.Z_bound, -1.0 / Qp);
    const long zcap = static_cast<long>(std::min(std::ceil(g.Z_bound), 1e4));
    long best_z = -1;
    double best_err = std::numeric_limits<double>::infinity();
    std::vector<int> best_counts;
    for (long z = 1; z <= std::max(1L, zcap); ++z) {
        std::vector<int> c(Qp);
        long sum = 0;
        double err = 0.0;
        for (int i = 0; i < Qp; ++i) {
            c[i] = static_cast<int>(std::lround(z * xs(i)));
            sum += c[i];
            err = std::max(err, std::abs(z * xs(i) - c[i]));
        }
        if (sum != z) continue;
        if (err <= thr) {
            best_z = z;
            best_err = err;
            best_counts = c;
            g.proof_bound_met = true;
            break;
        }
        if (err < best_err) {
            best_z = z;
            best_err = err;
            best_counts = c;
        }
    }
    if (best_z < 0) throw DomainError("build_J1: no admissible Diophantine approximation");
    g.z = static_cast<int>(best_z);
    g.counts = best_counts;
    g.approx_error = best_err;

    // b_0..b_{z-2}, then u, v.
    const int nb = g.z - 1;
    g.u = nb;
    g.v = nb + 1;
    g.vertices = nb + 2;
    auto sym = [&](int a, int b, int mult) {
        for (int k = 0; k < mult; ++k) g.edges.push_back({a, b, EdgeKind::symmetric});
    };
    for (int i = 0; i < nb; ++i) {
        sym(i, i, 2);
        for (int j = i + 1; j < nb; ++j) sym(i, j, 4);
        sym(g.u, i, 2);
        sym(g.v, i, 2);
    }
    sym(g.u, g.u, 1);
    sym(g.v, g.v, 1);

    // Conditional table over (label(u), label(v)). The symmetric weights only
    // see unordered phases, so b-vertices range over unordered phases when the
    // ordered enumeration is over budget.
    const bool full = std::pow(static_cast<double>(L), g.vertices) <= kBruteForceBudget;
    const int base = full ? L : Qp;
    if (std::pow(static_cast<double>(base), nb) * L * L > kBruteForceBudget)
        throw BudgetError("build_J1: conditional table exceeds the enumeration budget");
    const auto t = weight_tables(Q, B);
    g.table.assign(L, std::vector<ExtReal>(L, ExtReal::neg_inf()));
    parallel_for(static_cast<std::size_t>(L * L), [&](std::size_t cell) {
        const int a = static_cast<int>(cell) / L, b = static_cast<int>(cell) % L;
        std::vector<int> lab(g.vertices, 0), digits(nb, 0);
        lab[g.u] = a;
        lab[g.v] = b;
        ExtReal best = ExtReal::neg_inf();
        do {
            for (int i = 0; i < nb; ++i) lab[i] = full ? digits[i] : 2 * digits[i];
            ExtReal v = lwt_with(t, g.edges, lab);
            if (best < v) best = v;
        } while (increment(digits, base));
        g.table[a][b] = best;
    });
    ExtReal same = ExtReal::neg_inf(), diff = ExtReal::neg_inf();
    bool any_diff = false;
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) {
            if (PhaseSet::unordered(a) == PhaseSet::unordered(b)) {
                if (same < g.table[a][b]) same = g.table[a][b];
            } else {
                any_diff = true;
                if (diff < g.table[a][b]) diff = g.table[a][b];
            }
        }
    if (!same.finite) throw DomainError("build_J1: every same-phase labeling has weight -infinity");
    if (!any_diff || !diff.finite) {
        g.eps1_infinite = true;
        g.eps1 = std::numeric_limits<double>::infinity();
    } else {
        g.eps1 = same.value - diff.value;
    }
    g.certified = full && g.eps1 > 0;
    return g;
}

GadgetJ2 build_J2(const GadgetJ1& j1, const PhaseSet& Q, const SpinModel& model) {
    const int L = Q.size(), Qp = Q.unordered_count();
    if (static_cast<int>(j1.table.size()) != L) throw ArgumentError("build_J2: J1 table does not match the phase set");
    if (!(j1.eps1 > 0)) throw DomainError("build_J2: J1 margin is not positive");
    const auto t = weight_tables(Q, model.B());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) {
            if (!t.wp[a][b].finite) throw DomainError("build_J2: parallel weight is -infinity, t is unbounded");
            lo = std::min(lo, t.wp[a][b].value);
            hi = std::max(hi, t.wp[a][b].value);
        }
    GadgetJ2 g;
    g.range_wp = hi - lo;
    const double ratio = j1.eps1_infinite ? 0.0 : std::ceil(g.range_wp / j1.eps1);
    g.t = 3 * static_cast<int>(std::max(1.0, ratio));
    g.table.assign(L, std::vector<ExtReal>(L));
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) {
            const ExtReal& t1 = j1.table[a][b];
            g.table[a][b] = t1.finite ? t.wp[a][b] + ExtReal::of(g.t * t1.value) : ExtReal::neg_inf();
        }
    g.eps2 = std::numeric_limits<double>::infinity();
    double maxT = std::numeric_limits<double>::lowest();
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) maxT = std::max(maxT, g.table[a][b].or_lowest());
    for (int p = 0; p < Qp; ++p) {
        g.A1_by_phase.push_back(g.table[2 * p][2 * p + 1].or_lowest());
        g.A2_by_phase.push_back(g.table[2 * p][2 * p].or_lowest());
        g.eps2 = std::min(g.eps2, t.wp[2 * p][2 * p + 1].value - t.wp[2 * p][2 * p].value);
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(maxT));
    int pref = -1;
    for (int p = 0; p < Qp; ++p) {
        if (g.A1_by_phase[p] < maxT - tol) continue;
        if (pref < 0 || g.A2_by_phase[p] > g.A2_by_phase[pref] + tol) pref = p;
    }
    if (pref < 0) throw DomainError("build_J2: no phase attains MaxLwt with opposite spins");
    g.preferred = pref;
    g.A1 = g.A1_by_phase[pref];
    g.A2 = g.A2_by_phase[pref];
    double diff = std::numeric_limits<double>::lowest();
    bool any_diff = false;
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b)
            if (PhaseSet::unordered(a) != PhaseSet::unordered(b)) {
                any_diff = true;
                diff = std::max(diff, g.table[a][b].or_lowest());
            }
    g.eps3 = g.A1 - g.A2;
    if (any_diff) g.eps3 = std::min(g.eps3, g.A2 - diff);
    g.certified = j1.certified && g.eps3 > 0;
    return g;
}

CubicGraph read_edge_list(std::istream& is) {
    CubicGraph H;
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int a, b;
        if (!(ls >> a)) continue;
        if (!(ls >> b) || a < 0 || b < 0) throw ArgumentError("edge list: expected 'u v' with nonnegative ids");
        H.edges.emplace_back(a, b);
        H.vertices = std::max({H.vertices, a + 1, b + 1});
    }
    return H;
}

void check_cubic(const CubicGraph& H) {
    std::vector<int> deg(H.vertices, 0);
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : H.edges) {
        if (a == b || !seen.insert(std::minmax(a, b)).second) throw ArgumentError("input graph is not simple");
        ++deg[a];
        ++deg[b];
    }
    if (H.vertices == 0 || std::any_of(deg.begin(), deg.end(), [](int d) { return d != 3; }))
        throw ArgumentError("input graph is not cubic");
}

int maxcut_bruteforce(const CubicGraph& H) {
    if (H.vertices > 30) throw BudgetError("maxcut_bruteforce: more than 30 vertices");
    int best = 0;
    const std::uint64_t total = std::uint64_t{1} << std::max(0, H.vertices - 1);  // fix vertex n-1 on side 0
    for (std::uint64_t m = 0; m < total; ++m) {
        int cut = 0;
        for (auto [a, b] : H.edges) cut += static_cast<int>(((m >> a) ^ (m >> b)) & 1u);
        best = std::max(best, cut);
    }
    return best;
}

int compute_D3(const GadgetJ2& j2) {
    const int p = j2.preferred;
    const double tol = 1e-9 * std::max(1.0, std::abs(j2.A1));
    double worst = -1.0;
    for (std::size_t r = 0; r < j2.A1_by_phase.size(); ++r) {
        if (static_cast<int>(r) == p) continue;
        const double l1 = j2.A2_by_phase[r] - j2.A2_by_phase[p];
        if (l1 <= tol) continue;
        const double l2 = j2.A1_by_phase[p] - j2.A1_by_phase[r];
        if (!(l2 > tol)) throw DomainError("compute_D3: preferred phase is not strictly better on A1");
        worst = std::max(worst, l1 / l2);
    }
    return worst < 0 ? 0 : 4 + 3 * static_cast<int>(std::ceil(worst));
}

Reduction reduce_maxcut(const CubicGraph& H, const GadgetJ1& j1, const GadgetJ2& j2, const PhaseSet& Q,
                        const SpinModel& model) {
    check_cubic(H);
    Reduction red;
    red.D3 = compute_D3(j2);
    red.A1 = j2.A1;
    red.A2 = j2.A2;
    auto& inst = red.instance;
    inst.Q = Q;
    inst.B = model.B();
    const int V = H.vertices;
    inst.vertices = V + V * red.D3;
    auto add_J2 = [&](int u, int v) {
        for (int c = 0; c < j2.t; ++c) {
            const int base = inst.vertices;
            inst.vertices += j1.z - 1;
            auto map = [&](int x) { return x == j1.u ? u : x == j1.v ? v : base + x; };
            for (const auto& e : j1.edges) inst.edges.push_back({map(e.u), map(e.v), e.kind});
        }
        inst.edges.push_back({u, v, EdgeKind::parallel});
    };
    for (auto [a, b] : H.edges) add_J2(a, b);
    for (int w = 0; w < V; ++w)
        for (int i = 0; i < red.D3; ++i) add_J2(w, V + w * red.D3 + i);
    red.maxcut = maxcut_bruteforce(H);
    red.predicted = (red.A1 - red.A2) * red.maxcut + red.A2 * static_cast<double>(H.edges.size()) +
                    red.A1 * red.D3 * static_cast<double>(V);
    return red;
}

double maxlwt_dp(const CubicGraph& H, const GadgetJ2& j2, int D3) {
    const int L = static_cast<int>(j2.table.size());
    const int V = H.vertices;
    if (std::pow(static_cast<double>(L), V) > kBruteForceBudget)
        throw BudgetError("maxlwt_dp: |Q|^|V(H)| exceeds the enumeration budget");
    std::vector<double> pendant(L, std::numeric_limits<double>::lowest());
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) pendant[a] = std::max(pendant[a], j2.table[a][b].or_lowest());
    std::vector<double> local(static_cast<std::size_t>(L), std::numeric_limits<double>::lowest());
    parallel_for(local.size(), [&](std::size_t c) {
        std::vector<int> lab(V, 0);
        lab[0] = static_cast<int>(c);
        do {
            double s = 0.0;
            for (auto [a, b] : H.edges) s += j2.table[lab[a]][lab[b]].or_lowest();
            for (int w = 0; w < V; ++w) s += D3 * pendant[lab[w]];
            local[c] = std::max(local[c], s);
        } while (increment(lab, L, 1));
    });
    return *std::max_element(local.begin(), local.end());
}

FinalGraph build_HF(const PhaseLabelingInstance& inst, int n, int k, int delta, std::uint64_t seed) {
    if (k < 1 || delta < 3) throw ArgumentError("build_HF: need k >= 1 and delta >= 3");
    FinalGraph out;
    const auto deg = inst.degrees();
    const int maxdeg = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    if (k * maxdeg >= n) throw DomainError("wiring capacity: k * max degree must be below n");
    std::set<int> distinct(deg.begin(), deg.end());
    out.degrees.assign(distinct.begin(), distinct.end());
    std::map<int, int> gadget_of;
    for (std::size_t i = 0; i < out.degrees.size(); ++i) {
        const int d = out.degrees[i];
        out.gadgets.push_back(sample_screened_gadget(n, k * d, delta, seed + 7919 * static_cast<std::uint64_t>(d)));
        gadget_of[d] = static_cast<int>(i);
    }
    auto& G = out.graph;
    std::vector<int> next_plus(inst.vertices), next_minus(inst.vertices), r_of(inst.vertices);
    for (int v = 0; v < inst.vertices; ++v) {
        const auto& gd = out.gadgets[gadget_of[deg[v]]];
        out.offsets.push_back(G.vertices);
        for (auto [a, b] : gd.edges()) G.edges.emplace_back(G.vertices + a, G.vertices + gd.side() + b);
        G.vertices += gd.vertex_count();
        next_plus[v] = next_minus[v] = 0;
        r_of[v] = gd.r;
    }
    // Terminal s = +1 (W+, left side) or -1 (W-, right side) of vertex v.
    auto take = [&](int v, int s) {
        int& next = s > 0 ? next_plus[v] : next_minus[v];
        if (next >= r_of[v]) throw DomainError("wiring capacity: W terminals exhausted at instance vertex " + std::to_string(v));
        const int side = n + r_of[v];
        const int local = s > 0 ? n + next : side + n + next;
        ++next;
        return out.offsets[v] + local;
    };
    for (const auto& e : inst.edges) {
        for (int rep = 0; rep < k; ++rep) {
            if (e.u != e.v) {
                for (int s : {+1, -1}) G.edges.emplace_back(take(e.u, s), take(e.v, s));
                if (e.kind == EdgeKind::symmetric)
                    for (int s : {+1, -1}) G.edges.emplace_back(take(e.u, s), take(e.v, -s));
            } else {
                for (int s : {+1, -1}) {
                    const int a = take(e.u, s);
                    G.edges.emplace_back(a, take(e.u, s));
                }
                if (e.kind == EdgeKind::symmetric)
                    for (int c = 0; c < 2; ++c) G.edges.emplace_back(take(e.u, +1), take(e.u, -1));
            }
        }
    }
    if (!is_regular(G, delta)) throw DomainError("structural assertion failed: output is not delta-regular");
    if (!is_simple(G)) throw DomainError("structural assertion failed: output is not simple");
    if (!is_triangle_free(G)) throw DomainError("structural assertion failed: output has a triangle");
    return out;
}

}  // namespace spinlab
