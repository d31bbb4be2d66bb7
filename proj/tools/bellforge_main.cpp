#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bellforge/geometry.hpp"
#include "bellforge/json_io.hpp"
#include "bellforge/quantum.hpp"
#include "bellforge/randomness.hpp"
#include "bellforge/selftest.hpp"
#include "bellforge/vertices.hpp"

namespace bf = bellforge;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

/// "1/4" and "3" are exact; "0.25" or "2.5e-1" select the float policy.
bool is_decimal(const std::string& s) {
    return s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
           s.find('E') != std::string::npos;
}

bool json_all_exact(const json& j) {
    if (j.is_array() || j.is_object()) {
        for (const auto& v : j)
            if (!json_all_exact(v)) return false;
        return true;
    }
    if (j.is_string()) return !is_decimal(j.get<std::string>());
    if (j.is_number_float()) return false;
    return true;
}

void warn_float_policy() {
    std::cerr << "warning: decimal parameters selected the float policy "
                 "(tolerance 1e-9); use p/q rationals for exact results\n";
}

void write_output(const std::string& out, const std::string& text) {
    if (out == "-" || out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + out + "'");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open behavior file '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

bf::BellScenario parse_scenario(const std::string& s) {
    bf::BellScenario sc;
    if (std::sscanf(s.c_str(), "%d,%d,%d,%d", &sc.nA, &sc.nB, &sc.nX, &sc.nY) != 4)
        throw std::invalid_argument("scenario must be nA,nB,nX,nY (e.g. 2,2,2,2)");
    sc.validate();
    return sc;
}

bf::Rat parse_rat(const std::string& s, const char* name) {
    if (auto r = bf::Rat::try_parse(s)) return *r;
    throw std::invalid_argument(std::string("cannot parse ") + name + " '" + s + "'");
}

int resolve_jobs(int jobs_flag) {
    if (jobs_flag > 0) return jobs_flag;
    if (const char* env = std::getenv("BELLFORGE_JOBS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

struct VerticesOpts {
    std::string kind = "conditional";
    std::string l = "1/4", h = "1/4", epsA = "0", epsB = "0";
    std::string scenario = "2,2,2,2";
    bool filter_extremal = false;
    std::string out = "-";
};

template <class T>
bf::VertexSet<T> enumerate_vertices(const VerticesOpts& o, const bf::BellScenario& sc,
                                    const bf::RelaxationParams<T>& params) {
    if (o.kind == "input") return bf::input_vertices(params, sc);
    if (o.kind == "conditional")
        return bf::pd_conditional_vertices(params.epsA, params.epsB, sc);
    if (o.kind == "joint") return bf::mdpdl_vertices(params, sc, o.filter_extremal);
    throw std::invalid_argument("unknown vertex kind '" + o.kind + "'");
}

int cmd_vertices(const VerticesOpts& o) {
    const bf::BellScenario sc = parse_scenario(o.scenario);
    const bool exact = !is_decimal(o.l) && !is_decimal(o.h) && !is_decimal(o.epsA) &&
                       !is_decimal(o.epsB);
    json arr;
    if (exact) {
        bf::RelaxationParams<bf::Rat> p;
        p.l = parse_rat(o.l, "--l");
        p.h = parse_rat(o.h, "--h");
        p.epsA = parse_rat(o.epsA, "--epsA");
        p.epsB = parse_rat(o.epsB, "--epsB");
        arr = bf::vertex_set_to_json(enumerate_vertices(o, sc, p));
    } else {
        warn_float_policy();
        bf::RelaxationParams<double> p;
        p.l = parse_rat(o.l, "--l").to_double();
        p.h = parse_rat(o.h, "--h").to_double();
        p.epsA = parse_rat(o.epsA, "--epsA").to_double();
        p.epsB = parse_rat(o.epsB, "--epsB").to_double();
        arr = bf::vertex_set_to_json(enumerate_vertices(o, sc, p));
    }
    write_output(o.out, arr.dump(2));
    return kExitOk;
}

struct CheckOpts {
    std::string ineq = "pd_facet";
    std::string l = "1/4", h = "1/4", epsA = "0", epsB = "0", kappa = "0";
    std::string behavior;
    std::string out = "-";
};

template <class T>
json run_check(const CheckOpts& o, const json& doc) {
    bf::RelaxationParams<T> p;
    p.l = T(bf::scalar_from_json<T>(json(o.l)));
    p.h = bf::scalar_from_json<T>(json(o.h));
    p.epsA = bf::scalar_from_json<T>(json(o.epsA));
    p.epsB = bf::scalar_from_json<T>(json(o.epsB));
    p.kappa = bf::scalar_from_json<T>(json(o.kappa));
    const auto b = bf::behavior_from_json<T>(doc);
    const auto f = bf::build_inequality(o.ineq, p, b.scenario);
    if (f.kind != b.kind)
        throw std::invalid_argument("behavior kind does not match the inequality");
    const T value = bf::evaluate(f, b.values);
    const T margin = value - f.bound;
    const bool violated = margin > bf::scalar_policy<T>::tolerance();
    return json{{"bound", bf::scalar_to_json(f.bound)},
                {"margin", bf::scalar_to_json(margin)},
                {"value", bf::scalar_to_json(value)},
                {"violated", violated}};
}

int cmd_check(const CheckOpts& o) {
    const json doc = load_json_file(o.behavior);
    const bool exact = !is_decimal(o.l) && !is_decimal(o.h) && !is_decimal(o.epsA) &&
                       !is_decimal(o.epsB) && !is_decimal(o.kappa) &&
                       json_all_exact(doc.value("values", json::array()));
    json res;
    if (exact) {
        res = run_check<bf::Rat>(o, doc);
    } else {
        warn_float_policy();
        res = run_check<double>(o, doc);
    }
    write_output(o.out, res.dump(2));
    return kExitOk;
}

int cmd_facet(const std::string& eps_s, const std::string& out, int jobs) {
    const bf::Rat eps = parse_rat(eps_s, "--eps");
    if (is_decimal(eps_s))
        std::cerr << "warning: decimal --eps converted to the exact rational "
                  << eps.str() << "\n";
    bf::BellScenario sc;
    bf::RelaxationParams<bf::Rat> params;
    params.epsA = params.epsB = eps;
    const auto V = bf::pd_conditional_vertices(eps, eps, sc);
    const auto f = bf::build_inequality("pd_facet", params, sc);
    const auto mx = bf::max_over_vertices(f, V, jobs);
    const auto fac = bf::is_facet(f, V);
    const auto sat = bf::saturating_vertices(f, V);
    std::array<int, 6> counts{};
    for (const auto& v : sat.vertices) ++counts[bf::saturating_class(v, eps)];
    json res{{"class_counts", {counts[1], counts[2], counts[3], counts[4], counts[5]}},
             {"det", bf::scalar_to_json(bf::det_exact(bf::facet_witness_matrix(eps)))},
             {"facet", fac.facet},
             {"max_value", bf::scalar_to_json(mx.value)},
             {"polytope_dim", fac.polytope_dimension},
             {"saturating_count", static_cast<int>(sat.vertices.size())},
             {"saturating_dim", fac.saturating_dim}};
    write_output(out, res.dump(2));
    return kExitOk;
}

struct DecomposeOpts {
    std::string behavior;
    std::string l = "1/4", h = "1/4", epsA = "0", epsB = "0";
    std::string out = "-";
};

template <class T>
json run_decompose(const DecomposeOpts& o, const json& doc) {
    const auto b = bf::behavior_from_json<T>(doc);
    bf::RelaxationParams<T> p;
    p.l = bf::scalar_from_json<T>(json(o.l));
    p.h = bf::scalar_from_json<T>(json(o.h));
    p.epsA = bf::scalar_from_json<T>(json(o.epsA));
    p.epsB = bf::scalar_from_json<T>(json(o.epsB));
    bf::VertexSet<T> V;
    if (b.kind == bf::VertexKind::Conditional)
        V = bf::pd_conditional_vertices(p.epsA, p.epsB, b.scenario);
    else if (b.kind == bf::VertexKind::Joint)
        V = bf::mdpdl_vertices(p, b.scenario);
    else
        throw std::invalid_argument("decompose expects a conditional or joint behavior");
    const auto mem = bf::membership(b.values, V);
    json res;
    if (mem.status == bf::MembershipStatus::Inside) {
        res["status"] = "inside";
        json ws = json::array();
        for (std::size_t i = 0; i < mem.weights.size(); ++i)
            if (!bf::scalar_policy<T>::is_zero(mem.weights[i]))
                ws.push_back({{"vertex", i}, {"weight", bf::scalar_to_json(mem.weights[i])}});
        res["weights"] = ws;
    } else {
        res["status"] = "outside";
        json coeffs = json::array();
        for (const T& c : mem.separating_coeffs) coeffs.push_back(bf::scalar_to_json(c));
        res["separating"] = {{"coeffs", coeffs},
                             {"offset", bf::scalar_to_json(mem.separating_offset)},
                             {"value_on_query", bf::scalar_to_json(mem.separating_value)}};
    }
    return res;
}

int cmd_decompose(const DecomposeOpts& o) {
    const json doc = load_json_file(o.behavior);
    const bool exact = !is_decimal(o.l) && !is_decimal(o.h) && !is_decimal(o.epsA) &&
                       !is_decimal(o.epsB) &&
                       json_all_exact(doc.value("values", json::array()));
    json res;
    if (exact) {
        res = run_decompose<bf::Rat>(o, doc);
    } else {
        warn_float_policy();
        res = run_decompose<double>(o, doc);
    }
    write_output(o.out, res.dump(2));
    return kExitOk;
}

int cmd_quantum(const std::string& strategy, const std::string& eps_s,
                const std::string& kappa_s, const std::string& out) {
    if (strategy != "tilted-hardy" && strategy != "chsh-leak")
        throw std::invalid_argument("--strategy must be tilted-hardy or chsh-leak");
    bf::ConditionalBehavior<double> cond =
        strategy == "tilted-hardy"
            ? bf::behavior_of(bf::tilted_hardy_strategy(parse_rat(eps_s, "--eps").to_double()))
            : bf::behavior_of(bf::chsh_leak_strategy(parse_rat(kappa_s, "--kappa").to_double()));
    const json res = bf::behavior_to_json(cond.scenario(), bf::VertexKind::Conditional,
                                          cond.values());
    write_output(out, res.dump(2));
    return kExitOk;
}

int cmd_pg(const std::string& kappa_s, const std::optional<std::string>& beta_s,
           int curve_n, const std::string& format, const std::string& out) {
    const double kappa = parse_rat(kappa_s, "--kappa").to_double();
    if (beta_s) {
        const double beta = parse_rat(*beta_s, "--beta").to_double();
        const double pg = bf::guessing_probability(beta, kappa);
        const double hmin = pg >= 1.0 ? 0.0 : -std::log2(pg);
        json res{{"beta", bf::scalar_to_json(beta)},
                 {"hmin", bf::scalar_to_json(hmin)},
                 {"kappa", bf::scalar_to_json(kappa)},
                 {"pg", bf::scalar_to_json(pg)}};
        write_output(out, res.dump(2));
        return kExitOk;
    }
    const auto pts = bf::curve(kappa, curve_n);
    if (format == "json") {
        json arr = json::array();
        for (const auto& pt : pts)
            arr.push_back({{"beta", bf::scalar_to_json(pt.beta_obs)},
                           {"hmin", bf::scalar_to_json(pt.hmin)},
                           {"kappa", bf::scalar_to_json(pt.kappa)},
                           {"pg", bf::scalar_to_json(pt.pg)}});
        write_output(out, arr.dump(2));
    } else {
        std::string csv = "beta,kappa,pg,hmin\n";
        for (const auto& pt : pts)
            csv += fmt12(pt.beta_obs) + "," + fmt12(pt.kappa) + "," + fmt12(pt.pg) +
                   "," + fmt12(pt.hmin) + "\n";
        write_output(out, csv);
    }
    return kExitOk;
}

int cmd_self_test(int jobs) {
    const auto results = bf::run_acceptance(jobs);
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": "
                  << r.name << " — " << r.detail << "\n";
    }
    std::cout << (all ? "all criteria passed\n" : "some criteria FAILED\n");
    return all ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bellforge: MDPDL Bell polytopes, membership certificates, and "
                 "device-independent guessing-probability curves"};
    app.require_subcommand(1);
    // Help stays on --help only: subcommands take "--h" for the input-box
    // upper bound, which would collide with a -h short flag.
    app.set_help_flag("--help", "print help and exit");

    VerticesOpts vo;
    auto* sub_v = app.add_subcommand("vertices", "enumerate polytope vertices");
    sub_v->add_option("--kind", vo.kind, "input | conditional | joint");
    sub_v->add_option("--l", vo.l, "input-box lower bound (p/q)");
    sub_v->add_option("--h", vo.h, "input-box upper bound (p/q)");
    sub_v->add_option("--epsA", vo.epsA, "Alice TV bound (p/q)");
    sub_v->add_option("--epsB", vo.epsB, "Bob TV bound (p/q)");
    sub_v->add_option("--scenario", vo.scenario, "nA,nB,nX,nY");
    sub_v->add_flag("--filter-extremal", vo.filter_extremal,
                    "LP-filter redundant joint points");
    sub_v->add_option("--out", vo.out, "output path or -");

    CheckOpts co;
    auto* sub_c = app.add_subcommand("check", "evaluate an inequality on a behavior");
    sub_c->add_option("--ineq", co.ineq, "mdl | pd_facet | mdpdl | chsh | chsh_leak");
    sub_c->add_option("--l", co.l);
    sub_c->add_option("--h", co.h);
    sub_c->add_option("--epsA", co.epsA);
    sub_c->add_option("--epsB", co.epsB);
    sub_c->add_option("--kappa", co.kappa);
    sub_c->add_option("--behavior", co.behavior, "behavior JSON file")->required();
    sub_c->add_option("--out", co.out);

    std::string facet_eps = "1/4", facet_out = "-";
    auto* sub_f = app.add_subcommand("facet", "verify the pd facet inequality");
    sub_f->add_option("--eps", facet_eps, "PD parameter (p/q)");
    sub_f->add_option("--out", facet_out);

    DecomposeOpts dopt;
    auto* sub_d = app.add_subcommand("decompose", "convex decomposition / membership");
    sub_d->add_option("--behavior", dopt.behavior, "behavior JSON file")->required();
    sub_d->add_option("--l", dopt.l);
    sub_d->add_option("--h", dopt.h);
    sub_d->add_option("--epsA", dopt.epsA);
    sub_d->add_option("--epsB", dopt.epsB);
    sub_d->add_option("--out", dopt.out);

    std::string q_strategy = "tilted-hardy", q_eps = "0", q_kappa = "0", q_out = "-";
    auto* sub_q = app.add_subcommand("quantum", "evaluate a two-qubit strategy");
    sub_q->add_option("--strategy", q_strategy, "tilted-hardy | chsh-leak");
    sub_q->add_option("--eps", q_eps);
    sub_q->add_option("--kappa", q_kappa);
    sub_q->add_option("--out", q_out);

    std::string pg_kappa = "0", pg_format = "csv", pg_out = "-";
    std::optional<std::string> pg_beta;
    int pg_curve = 0;
    auto* sub_p = app.add_subcommand("pg", "guessing probability / min-entropy");
    sub_p->add_option("--kappa", pg_kappa);
    sub_p->add_option("--beta", pg_beta, "single CHSH value");
    sub_p->add_option("--curve", pg_curve, "number of curve points");
    sub_p->add_option("--format", pg_format, "json | csv");
    sub_p->add_option("--out", pg_out);

    int jobs = 0;
    app.add_option("--jobs", jobs, "parallel evaluation threads (env BELLFORGE_JOBS)");

    auto* sub_t = app.add_subcommand("self-test", "run the acceptance suite");

    // Let global options like --jobs appear after the subcommand name.
    for (CLI::App* s : {sub_v, sub_c, sub_f, sub_d, sub_q, sub_p, sub_t})
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        const int j = resolve_jobs(jobs);
        if (sub_v->parsed()) return cmd_vertices(vo);
        if (sub_c->parsed()) return cmd_check(co);
        if (sub_f->parsed()) return cmd_facet(facet_eps, facet_out, j);
        if (sub_d->parsed()) return cmd_decompose(dopt);
        if (sub_q->parsed()) return cmd_quantum(q_strategy, q_eps, q_kappa, q_out);
        if (sub_p->parsed()) {
            if (!pg_beta && pg_curve < 2)
                throw std::invalid_argument("pg needs --beta or --curve N (N >= 2)");
            return cmd_pg(pg_kappa, pg_beta, pg_curve, pg_format, pg_out);
        }
        if (sub_t->parsed()) return cmd_self_test(j);
        throw std::invalid_argument("no subcommand given");
    } catch (const bf::lp_numeric_error& e) {
        std::cerr << "numeric breakdown: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
