// spinlab: command-line front end for the spin-system toolkit.
//
// Exit status: 0 success, 1 a verification reported a mismatch, 2 domain or
// regime error, 3 enumeration budget exceeded, 64 usage error.

#include "spinlab/enumeration.hpp"
#include "spinlab/graph.hpp"
#include "spinlab/moment_formulas.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/phase_diagram.hpp"
#include "spinlab/reduction.hpp"
#include "spinlab/spin_model.hpp"
#include "spinlab/ssc.hpp"
#include "spinlab/tree_recursion.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using json = nlohmann::json;
using namespace spinlab;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitDomain = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;

struct ModelOpts {
    std::string kind = "potts";
    int q = 0;
    double B = 0.0;
    std::string file;
};

void add_model_options(CLI::App* cmd, ModelOpts& m) {
    cmd->add_option("--model", m.kind, "potts | colorings | ising | generic")
        ->check(CLI::IsMember({"potts", "colorings", "ising", "generic"}));
    cmd->add_option("--q", m.q, "number of spins");
    cmd->add_option("--B", m.B, "Potts/Ising interaction parameter");
    cmd->add_option("--model-file", m.file, "model JSON {q, B, kind, param}");
}

SpinModel make_model(const ModelOpts& m) {
    if (!m.file.empty()) {
        std::ifstream in(m.file);
        if (!in) throw ArgumentError("cannot open model file " + m.file);
        json j = json::parse(in);
        const auto rows = j.at("B").get<std::vector<std::vector<double>>>();
        const int q = j.value("q", static_cast<int>(rows.size()));
        if (static_cast<int>(rows.size()) != q) throw ArgumentError("model file: B must be q x q");
        Mat B(q, q);
        for (int i = 0; i < q; ++i) {
            if (static_cast<int>(rows[i].size()) != q) throw ArgumentError("model file: B must be q x q");
            for (int j2 = 0; j2 < q; ++j2) B(i, j2) = rows[i][j2];
        }
        const std::string kind = j.value("kind", std::string("generic"));
        ModelKind k = kind == "potts" ? ModelKind::potts : kind == "colorings" ? ModelKind::colorings : ModelKind::generic;
        std::optional<double> param;
        if (j.contains("param") && !j["param"].is_null()) param = j["param"].get<double>();
        return SpinModel(B, k, param);
    }
    if (m.kind == "ising") return SpinModel::potts(2, m.B);
    if (m.kind == "colorings") {
        if (m.q < 2) throw ArgumentError("--q is required for colorings");
        return SpinModel::colorings(m.q);
    }
    if (m.kind == "potts") {
        if (m.q < 2) throw ArgumentError("--q is required for potts");
        return SpinModel::potts(m.q, m.B);
    }
    throw ArgumentError("--model generic needs --model-file");
}

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json model_json(const SpinModel& m) {
    json rows = json::array();
    for (int i = 0; i < m.q(); ++i) rows.push_back(vec_json(m.B().row(i).transpose()));
    json j{{"q", m.q()}, {"B", rows}, {"kind", to_string(m.kind())}};
    j["param"] = m.param() ? json(*m.param()) : json(nullptr);
    return j;
}

json ext_json(const ExtReal& e) { return e.finite ? json(e.value) : json("-inf"); }

json weight_json(const Weight& w) {
    return json{{"exact", w.exact}, {"value", w.str()}, {"approx", w.to_double()}};
}

json fixpoint_json(const SpinModel& m, const Fixpoint& fp, int delta) {
    PhasePoint pp = fixpoint_to_phase(fp);
    json j{{"R", vec_json(fp.R)},         {"C", vec_json(fp.C)},         {"residual", fp.residual},
           {"certified", fp.certified}, {"alpha", vec_json(pp.alpha)}, {"beta", vec_json(pp.beta)}};
    j["psi1"] = ext_json(psi1(m, delta, pp.alpha, pp.beta));
    try {
        JacobianReport jr = jacobian_report(m, fp, delta);
        j["restricted_radius"] = jr.restricted_radius;
        j["attractive"] = jr.attractive;
    } catch (const DomainError& e) {
        j["jacobian_error"] = e.what();
    }
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw ArgumentError("cannot write " + out);
    f << text;
}

BipartiteRegularGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open graph file " + path);
    return read_graph(in);
}

// Dominant fixpoints: the semi-closed form for even-q Potts/colorings below
// the threshold, otherwise multistart search keeping the Psi1 maximizers.
std::vector<Fixpoint> dominant_fixpoints(const SpinModel& m, int delta, int starts, std::uint64_t seed) {
    const bool potts_like = m.kind() == ModelKind::potts || m.kind() == ModelKind::colorings;
    if (potts_like && m.q() >= 4 && m.q() % 2 == 0 && delta >= 3) {
        const double B = m.kind() == ModelKind::colorings ? 0.0 : m.param().value_or(m.B(0, 0));
        if (B < potts_threshold(m.q(), delta)) {
            std::vector<Fixpoint> out;
            for (const auto& ph : dominant_phases(m.q(), delta, B).phases) out.push_back(ph.fixpoint);
            return out;
        }
    }
    auto fps = dedupe_fixpoints(multistart_fixpoints(m, delta, starts, seed), 1e-8, false);
    std::vector<std::pair<double, Fixpoint>> scored;
    for (const auto& fp : fps) {
        if (!fp.certified) continue;
        PhasePoint pp = fixpoint_to_phase(fp);
        ExtReal v = psi1(m, delta, pp.alpha, pp.beta);
        if (v.finite) scored.emplace_back(v.value, fp);
    }
    if (scored.empty()) throw DomainError("no certified fixpoint found");
    double best = scored.front().first;
    for (const auto& s : scored) best = std::max(best, s.first);
    std::vector<Fixpoint> out;
    for (const auto& [v, fp] : scored)
        if (v >= best - 1e-9 * std::max(1.0, std::abs(best))) out.push_back(fp);
    return out;
}

std::vector<PhasePoint> phases_of(const std::vector<Fixpoint>& fps) {
    std::vector<PhasePoint> out;
    for (const auto& fp : fps) out.push_back(fixpoint_to_phase(fp));
    return out;
}

json moment_check_json(const MomentCheck& c) {
    json rows = json::array();
    for (const auto& r : c.rows)
        rows.push_back({{"a", r.a}, {"b", r.b}, {"formula", r.formula.str()}, {"enumerated", r.enumerated.str()},
                        {"match", r.match}});
    return json{{"n", c.n}, {"delta", c.delta}, {"order", c.order}, {"graphs", c.graphs},
                {"all_match", c.all_match}, {"rows", rows}};
}

PhaseSet phase_set_for(const SpinModel& m, int delta, int starts, std::uint64_t seed) {
    return PhaseSet::from_phase_points(phases_of(dominant_fixpoints(m, delta, starts, seed)), 1e-6);
}

json instance_json(const PhaseLabelingInstance& inst) {
    json edges = json::array();
    for (const auto& e : inst.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"kind", to_string(e.kind)}});
    return json{{"vertices", inst.vertices}, {"edges", edges}};
}

PhaseLabelingInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open instance file " + path);
    json j = json::parse(in);
    PhaseLabelingInstance inst;
    inst.vertices = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges")) {
        LabelEdge le{e.at("u").get<int>(), e.at("v").get<int>(), edge_kind_from_string(e.at("kind").get<std::string>())};
        if (le.u < 0 || le.v < 0 || le.u >= inst.vertices || le.v >= inst.vertices)
            throw ArgumentError("instance edge endpoint out of range");
        inst.edges.push_back(le);
    }
    return inst;
}

void write_final_graph(const FinalGraph& fg, const std::string& prefix) {
    std::ofstream e(prefix + ".edges");
    if (!e) throw ArgumentError("cannot write " + prefix + ".edges");
    e << fg.graph.vertices << ' ' << fg.graph.edges.size() << '\n';
    for (auto [a, b] : fg.graph.edges) e << a << ' ' << b << '\n';
    for (std::size_t i = 0; i < fg.gadgets.size(); ++i) {
        std::ofstream g(prefix + ".gadget-d" + std::to_string(fg.degrees[i]) + ".txt");
        write_graph(g, fg.gadgets[i]);
    }
}

json final_graph_json(const FinalGraph& fg, int delta) {
    return json{{"vertices", fg.graph.vertices},
                {"edges", fg.graph.edges.size()},
                {"regular", is_regular(fg.graph, delta)},
                {"simple", is_simple(fg.graph)},
                {"triangle_free", is_triangle_free(fg.graph)},
                {"gadget_degrees", fg.degrees}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinlab: antiferromagnetic spin systems on random regular bipartite graphs"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    int workers = 0;
    std::string out;
    app.add_option("--workers", workers, "worker threads (overrides SPINLAB_WORKERS)");
    app.add_option("--out", out, "write the report here instead of stdout");

    ModelOpts mo;
    int delta = 0, n = 0, r = 0, k = 1, starts = 64, imax = 400, m_len = 2, table = 20;
    std::uint64_t seed = 0;
    std::string sweep, graph_path, maxcut_path, instance_path, graph_out;
    bool footprints = false;

    auto* pd = app.add_subcommand("phase-diagram", "Potts/colorings dominant phases");
    add_model_options(pd, mo);
    pd->add_option("--delta", delta, "degree")->required();
    pd->add_option("--sweep", sweep, "B0:B1:steps, emits CSV");

    auto* fx = app.add_subcommand("fixpoint", "multistart tree-recursion fixpoints");
    add_model_options(fx, mo);
    fx->add_option("--delta", delta)->required();
    fx->add_option("--starts", starts);
    fx->add_option("--seed", seed)->required();

    auto* nm = app.add_subcommand("norms", "induced norm, max Psi1 and the tensor identity");
    add_model_options(nm, mo);
    nm->add_option("--delta", delta)->required();
    nm->add_option("--starts", starts);

    auto* vf = app.add_subcommand("verify", "cross-checks");
    vf->require_subcommand(1);
    auto* vm = vf->add_subcommand("moments", "closed-form moments vs exhaustive graph enumeration");
    int n2 = -1;
    ModelOpts mo_moments;
    mo_moments.kind = "colorings";
    add_model_options(vm, mo_moments);
    vm->add_option("--delta", delta)->required();
    vm->add_option("--n", n, "first-moment size")->required();
    vm->add_option("--n2", n2, "second-moment size (default min(n, 2))");
    auto* vt = vf->add_subcommand("tensor", "||B (x) B|| = ||B||^2");
    add_model_options(vt, mo);
    vt->add_option("--delta", delta)->required();
    auto* vc = vf->add_subcommand("connection", "Jacobian attractiveness vs Psi1 Hessian");
    add_model_options(vc, mo);
    vc->add_option("--delta", delta)->required();
    vc->add_option("--starts", starts);
    vc->add_option("--seed", seed)->required();

    auto* sm = app.add_subcommand("sample", "sample G^r_n");
    sm->add_option("--n", n)->required();
    sm->add_option("--r", r);
    sm->add_option("--delta", delta)->required();
    sm->add_option("--seed", seed)->required();

    auto* ex = app.add_subcommand("exact", "exact partition function of a graph file");
    add_model_options(ex, mo);
    ex->add_option("--graph", graph_path)->required();
    ex->add_flag("--footprints", footprints, "include the footprint table");

    auto* gc = app.add_subcommand("gadget-check", "gadget structure, phase balance and terminal marginals");
    add_model_options(gc, mo);
    auto* gc_graph = gc->add_option("--graph", graph_path);
    auto* gc_n = gc->add_option("--n", n);
    gc->add_option("--r", r);
    gc->add_option("--delta", delta);
    auto* gc_seed = gc->add_option("--seed", seed);
    gc->add_option("--starts", starts);
    gc_graph->excludes(gc_n);
    gc_n->needs(gc_seed);

    auto* ss = app.add_subcommand("ssc", "small subgraph conditioning constants");
    add_model_options(ss, mo);
    ss->add_option("--delta", delta)->required();
    ss->add_option("--imax", imax);
    ss->add_option("--graph", graph_path, "graph file for cycle counts and W");
    ss->add_option("--m", m_len, "W uses cycle lengths 2..2m");
    ss->add_option("--table", table, "largest cycle length listed in the mu/delta tables");
    ss->add_option("--starts", starts);

    auto* rd = app.add_subcommand("reduce", "Max-Cut -> phase labeling -> final graph");
    add_model_options(rd, mo);
    auto* rd_mc = rd->add_option("--maxcut", maxcut_path, "cubic graph edge list");
    auto* rd_inst = rd->add_option("--instance", instance_path, "phase-labeling instance JSON (wiring only)");
    rd->add_option("--delta", delta)->required();
    rd->add_option("--k", k);
    auto* rd_n = rd->add_option("--n", n, "gadget size; builds the final graph when given");
    auto* rd_seed = rd->add_option("--seed", seed);
    rd->add_option("--starts", starts);
    rd->add_option("--graph-out", graph_out, "prefix for the final graph files");
    rd_mc->excludes(rd_inst);
    rd_n->needs(rd_seed);
    rd_inst->needs(rd_n);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    if (workers > 0) set_worker_count(workers);

    try {
        if (*pd) {
            const SpinModel model = make_model(mo);
            const int q = model.q();
            const double B = model.kind() == ModelKind::colorings ? 0.0 : mo.B;
            if (!sweep.empty()) {
                double b0, b1;
                int steps;
                char c1, c2;
                std::istringstream ss2(sweep);
                if (!(ss2 >> b0 >> c1 >> b1 >> c2 >> steps) || c1 != ':' || c2 != ':')
                    throw ArgumentError("--sweep expects B0:B1:steps");
                std::ostringstream csv;
                csv << "B,regime,x,lambda_d,psi1_max\n";
                char buf[256];
                for (const auto& row : potts_sweep(q, delta, b0, b1, steps)) {
                    std::snprintf(buf, sizeof buf, "%.10g,%s,%.17g,%.17g,%.17g\n", row.B, row.regime.c_str(), row.x,
                                  row.lambda_d, row.psi1_max);
                    csv << buf;
                }
                emit(csv.str(), out);
                return 0;
            }
            auto diag = phase_diagram(q, delta, B);
            json phases = json::array();
            for (const auto& ph : diag.phases)
                phases.push_back({{"alpha", vec_json(ph.alpha)},
                                  {"beta", vec_json(ph.beta)},
                                  {"psi1", ph.psi1},
                                  {"attractive", ph.attractive},
                                  {"restricted_radius", ph.restricted_radius},
                                  {"T", ph.T}});
            json j{{"q", diag.q},   {"delta", diag.delta}, {"B", diag.B},
                   {"Bc", diag.Bc}, {"regime", diag.regime}, {"phases", phases}};
            j["x"] = diag.x ? json(*diag.x) : json(nullptr);
            j["a"] = diag.a ? json(*diag.a) : json(nullptr);
            j["b"] = diag.b ? json(*diag.b) : json(nullptr);
            if (diag.x) {
                auto lam = lambda1_half_half(q, delta, B, *diag.x);
                j["lambda1"] = lam.lambda1;
                j["lambda1_attractive"] = lam.attractive;
            }
            emit(dump(j), out);
        } else if (*fx) {
            const SpinModel model = make_model(mo);
            auto fps = dedupe_fixpoints(multistart_fixpoints(model, delta, starts, seed));
            json arr = json::array();
            for (const auto& fp : fps) arr.push_back(fixpoint_json(model, fp, delta));
            emit(dump(json{{"model", model_json(model)}, {"delta", delta}, {"starts", starts}, {"seed", seed},
                           {"fixpoints", arr}}),
                 out);
        } else if (*nm) {
            const SpinModel model = make_model(mo);
            NormOptions opt;
            opt.starts = starts;
            auto nr = induced_norm(model.B(), delta, opt);
            auto tr = verify_tensor_identity(model, delta, opt);
            emit(dump(json{{"norm", nr.norm},
                           {"max_psi1", delta * std::log(nr.norm)},
                           {"tensor_ratio_deviation", tr.ratio},
                           {"R", vec_json(nr.R)},
                           {"C", vec_json(nr.C)}}),
                 out);
        } else if (*vm) {
            const SpinModel model = make_model(mo_moments);
            if (n2 < 0) n2 = std::min(n, 2);
            auto c1 = check_moment(model, delta, n, 1);
            json j{{"model", model_json(model)}, {"first", moment_check_json(c1)}};
            bool ok = c1.all_match;
            if (n2 > 0) {
                auto c2 = check_moment(model, delta, n2, 2);
                j["second"] = moment_check_json(c2);
                ok = ok && c2.all_match;
            }
            j["all_match"] = ok;
            emit(dump(j), out);
            return ok ? 0 : kExitMismatch;
        } else if (*vt) {
            const SpinModel model = make_model(mo);
            auto tr = verify_tensor_identity(model, delta);
            const bool ok = tr.ratio <= 1e-7;
            emit(dump(json{{"norm", tr.norm}, {"tensor_norm", tr.tensor_norm}, {"ratio", tr.ratio}, {"pass", ok}}), out);
            return ok ? 0 : kExitMismatch;
        } else if (*vc) {
            const SpinModel model = make_model(mo);
            auto fps = dedupe_fixpoints(multistart_fixpoints(model, delta, starts, seed));
            json arr = json::array();
            bool ok = true;
            for (const auto& fp : fps) {
                if (!fp.certified) continue;
                PhasePoint pp = fixpoint_to_phase(fp);
                if ((pp.alpha.array() <= 0).any() || (pp.beta.array() <= 0).any()) continue;
                auto rep = verify_connection(model.B(), fp, delta);
                ok = ok && rep.agree;
                arr.push_back({{"alpha", vec_json(pp.alpha)},
                               {"beta", vec_json(pp.beta)},
                               {"attractive", rep.attractive},
                               {"restricted_radius", rep.restricted_radius},
                               {"hessian_max_eigenvalue", rep.hessian_max_eigenvalue},
                               {"hessian_negative_definite", rep.hessian_negative_definite},
                               {"agree", rep.agree}});
            }
            emit(dump(json{{"fixpoints", arr}, {"all_agree", ok}}), out);
            return ok ? 0 : kExitMismatch;
        } else if (*sm) {
            std::ostringstream os;
            write_graph(os, sample_graph(n, r, delta, seed));
            emit(os.str(), out);
        } else if (*ex) {
            const SpinModel model = make_model(mo);
            const auto g = load_graph(graph_path);
            json j{{"Z", weight_json(exact_partition(g, model))}};
            if (footprints) {
                json arr = json::array();
                for (const auto& [key, w] : partition_by_footprint(g, model))
                    arr.push_back({{"alpha_counts", key.alpha}, {"beta_counts", key.beta}, {"Z", w.str()}});
                j["footprints"] = arr;
            }
            emit(dump(j), out);
        } else if (*gc) {
            const SpinModel model = make_model(mo);
            BipartiteRegularGraph g;
            if (!graph_path.empty()) g = load_graph(graph_path);
            else if (n > 0) g = sample_graph(n, r, delta, seed);
            else throw ArgumentError("gadget-check needs --graph or --n/--r/--delta/--seed");
            auto fps = dominant_fixpoints(model, g.delta, starts, 1);
            auto rep = gadget_check(g, model, phases_of(fps), fps);
            emit(dump(json{{"n", g.n},
                           {"r", g.r},
                           {"delta", g.delta},
                           {"phases", fps.size()},
                           {"simple", rep.structure.simple},
                           {"no_w_cross_edge", rep.structure.no_w_cross_edge},
                           {"no_double_w_neighbor", rep.structure.no_double_w_neighbor},
                           {"enumerated", rep.enumerated},
                           {"note", rep.note},
                           {"phase_mass", rep.phase_mass},
                           {"mass_deviation", rep.mass_deviation},
                           {"ratio_deviation", rep.ratio_deviation}}),
                 out);
            // Report is still written; the exit code flags the skipped enumeration.
            if (g.r > 0 && !rep.enumerated) return 3;
        } else if (*ss) {
            const SpinModel model = make_model(mo);
            auto fps = dominant_fixpoints(model, delta, starts, 1);
            auto rep = ssc_constants(model, delta, fps.front(), imax);
            json mu = json::object(), dl = json::object();
            for (const auto& [i, v] : rep.mu)
                if (i <= table) mu[std::to_string(i)] = v;
            for (const auto& [i, v] : rep.delta)
                if (i <= table) dl[std::to_string(i)] = v;
            json j{{"lambdas", rep.lambdas}, {"mu", mu},           {"delta", dl},
                   {"i_max", imax},          {"partial_sum", rep.partial_sum}, {"log_C", rep.log_C},
                   {"C", rep.C},             {"difference", rep.partial_sum - rep.log_C}};
            if (!graph_path.empty()) {
                const auto g = load_graph(graph_path);
                auto cyc = cycle_counts(g, 2 * m_len);
                json cj = json::object();
                for (auto [len, c] : cyc) cj[std::to_string(len)] = c;
                j["cycles"] = cj;
                j["W"] = ssc_w(cyc, rep, m_len);
            }
            emit(dump(j), out);
        } else if (*rd) {
            const SpinModel model = make_model(mo);
            json j;
            if (!instance_path.empty()) {
                auto inst = read_instance(instance_path);
                auto fg = build_HF(inst, n, k, delta, seed);
                if (!graph_out.empty()) write_final_graph(fg, graph_out);
                j["final_graph"] = final_graph_json(fg, delta);
                emit(dump(j), out);
                return 0;
            }
            if (maxcut_path.empty()) throw ArgumentError("reduce needs --maxcut or --instance");
            std::ifstream hin(maxcut_path);
            if (!hin) throw ArgumentError("cannot open " + maxcut_path);
            const CubicGraph H = read_edge_list(hin);
            const PhaseSet Q = phase_set_for(model, delta, starts, 1);
            auto nd = negdef_certificate(Q, model);
            auto j1 = build_J1(Q, model);
            auto j2 = build_J2(j1, Q, model);
            auto red = reduce_maxcut(H, j1, j2, Q, model);
            j["phases"] = Q.size();
            j["negdef_max_eigenvalue"] = nd.max_eigenvalue;
            j["J1"] = {{"z", j1.z},
                       {"vertices", j1.vertices},
                       {"x_star", j1.x_star},
                       {"counts", j1.counts},
                       {"proof_bound_met", j1.proof_bound_met},
                       {"certified", j1.certified},
                       {"eps1", j1.eps1_infinite ? json("inf") : json(j1.eps1)}};
            j["J2"] = {{"t", j2.t},   {"A1", j2.A1},     {"A2", j2.A2},           {"eps2", j2.eps2},
                       {"eps3", j2.eps3}, {"preferred", j2.preferred}, {"certified", j2.certified}};
            j["D3"] = red.D3;
            j["maxcut"] = red.maxcut;
            j["predicted_maxlwt"] = red.predicted;
            j["dp_maxlwt"] = maxlwt_dp(H, j2, red.D3);
            j["instance"] = instance_json(red.instance);
            if (n > 0) {
                auto fg = build_HF(red.instance, n, k, delta, seed);
                if (!graph_out.empty()) write_final_graph(fg, graph_out);
                j["final_graph"] = final_graph_json(fg, delta);
            }
            emit(dump(j), out);
        }
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
