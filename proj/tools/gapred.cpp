// gapred: command-line front end for the reductions, oracles and harness.
//
// Exit codes: 0 success (all verdicts pass), 1 some verdict failed,
// 2 bad input or parameters, 3 refusal (a budget or cap was hit).

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gapred/gapred.hpp"

namespace fs = std::filesystem;
using namespace gapred;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    std::uint64_t budget = std::uint64_t{1} << 24;
    int trials = 50;
    std::string out;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + path.string());
    out << text;
}

/// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const Json& j) {
    if (path.empty()) {
        std::cout << dump_canonical(j);
    } else {
        write_file(path, dump_canonical(j));
    }
}

Parsed load(const std::string& path) {
    Parsed p = deserialize(read_file(path));
    for (const auto& n : p.notes) std::cerr << "note: " << n << "\n";
    return p;
}

template <class T>
T load_as(const std::string& path) {
    std::vector<std::string> notes;
    T x = deserialize_as<T>(read_file(path), &notes);
    for (const auto& n : notes) std::cerr << "note: " << n << "\n";
    return x;
}

AnySetSystem load_set_system(const std::string& path) {
    Parsed p = load(path);
    if (auto* ss = std::get_if<SetSystem>(&p.instance)) return *ss;
    if (auto* cs = std::get_if<ColoredSetSystem>(&p.instance)) return *cs;
    throw ParseError("expected a set_system or colored_set_system", "/kind");
}

Json solve_json(const SolveResult& r) {
    return Json{{"value", r.value.str()}, {"witness", r.witness}, {"count", r.count}};
}

OracleOptions oracle_of(const Globals& g) {
    OracleOptions o;
    o.budget = g.budget;
    return o;
}

PlantedKind parse_kind(const std::string& s) {
    if (s == "yes" || s == "YES") return PlantedKind::yes;
    if (s == "no" || s == "NO") return PlantedKind::no;
    throw ParameterError("kind must be yes or no");
}

MetricShape parse_shape(const std::string& s) {
    if (s == "line") return MetricShape::line;
    if (s == "grid") return MetricShape::grid;
    if (s == "random") return MetricShape::random;
    throw ParameterError("shape must be line, grid or random");
}

RadiusMode parse_mode(const std::string& s) {
    if (s == "exact") return RadiusMode::exact;
    if (s == "geometric") return RadiusMode::geometric;
    throw ParameterError("radius mode must be exact or geometric");
}

/// Rational option stored as text so "P/Q" and integers both parse exactly.
Rational rat(const std::string& s) { return Rational::parse(s); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gap-preserving reductions between coverage, CSP and clustering problems"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed (base seed for trials)");
    app.add_option("--budget", g.budget, "Oracle enumeration budget");
    app.add_option("--trials", g.trials, "Number of seeded trials");
    app.add_option("--out", g.out, "Output file (stdout when omitted)");

    int exit_code = 0;

    // ---------------------------------------------------------------- solve
    auto* solve = app.add_subcommand("solve", "Exact or greedy oracles");
    solve->require_subcommand(1);
    std::string input;
    int k = 1;
    bool greedy = false;
    bool squared = false;

    auto* s_maxcov = solve->add_subcommand("maxcov", "k-MaxCoverage (plain or multicolored)");
    s_maxcov->add_option("--input", input)->required();
    s_maxcov->add_option("--k", k)->required();
    auto* exact_flag = s_maxcov->add_flag("--exact", "Exhaustive search (default)");
    s_maxcov->add_flag("--greedy", greedy, "Greedy baseline")->excludes(exact_flag);
    s_maxcov->callback([&] {
        AnySetSystem ss = load_set_system(input);
        emit(g.out, solve_json(greedy ? greedy_kmaxcov(ss, k) : opt_kmaxcov(ss, k, oracle_of(g))));
    });

    auto* s_csp = solve->add_subcommand("csp", "Weighted 2-CSP value");
    s_csp->add_option("--input", input)->required();
    s_csp->callback([&] { emit(g.out, solve_json(val_csp(load_as<WeightedTwoCsp>(input), oracle_of(g)))); });

    auto* s_vcsp = solve->add_subcommand("vcsp", "Valued 2-CSP value");
    s_vcsp->add_option("--input", input)->required();
    s_vcsp->callback([&] { emit(g.out, solve_json(val_vcsp(load_as<ValuedTwoCsp>(input), oracle_of(g)))); });

    auto* s_kmed = solve->add_subcommand("kmedian", "k-median / k-means optimum");
    s_kmed->add_option("--input", input)->required();
    s_kmed->add_option("--k", k)->required();
    s_kmed->add_flag("--squared", squared, "k-means (squared distances)");
    s_kmed->callback([&] {
        emit(g.out, solve_json(opt_kmedian(load_as<MetricInstance>(input), k, squared, oracle_of(g))));
    });

    auto* s_mc = solve->add_subcommand("maxcover", "MaxCover value");
    s_mc->add_option("--input", input)->required();
    s_mc->callback([&] { emit(g.out, solve_json(maxcover_value(load_as<MaxCoverInstance>(input), oracle_of(g)))); });

    // --------------------------------------------------------------- reduce
    auto* reduce = app.add_subcommand("reduce", "Run one reduction and write its instances");
    reduce->require_subcommand(1);
    std::string tau_s = "1", delta_s = "1/2", c_s, s_s, alpha_s = "1", out_dir = ".", codec_path;
    std::optional<std::int64_t> m_override;
    std::int64_t limit = 16;
    std::int64_t tau_int = 0;
    std::string radius_mode = "exact";
    int T = 1;

    auto* r_uni = reduce->add_subcommand("uni", "Randomized universe reduction");
    r_uni->add_option("--input", input)->required();
    r_uni->add_option("--k", k)->required();
    r_uni->add_option("--tau", tau_s)->required();
    r_uni->add_option("--delta", delta_s)->required();
    r_uni->add_option("--m-override", m_override);
    r_uni->add_option("--out-dir", out_dir);
    r_uni->callback([&] {
        AnySetSystem ss = load_set_system(input);
        UniverseReductionParams up{k, rat(tau_s), rat(delta_s), g.seed, m_override};
        auto r = universe_reduce(ss, up);
        write_file(fs::path(out_dir) / "reduced.json", dump_canonical(std::visit([](const auto& x) { return to_json(x); }, r.system)));
        Json rep{{"k", k},     {"tau", up.tau.str()}, {"delta", up.delta.str()}, {"seed", g.seed},
                 {"m", r.m},   {"p", r.p.str()},      {"m_override", m_override ? Json(*m_override) : Json(nullptr)},
                 {"n", plain(ss).sets.size()}};
        write_file(fs::path(out_dir) / "report.json", dump_canonical(rep));
    });

    auto* r_cov = reduce->add_subcommand("cov2vcsp", "k-MaxCoverage to valued 2-CSP");
    r_cov->add_option("--input", input)->required();
    r_cov->add_option("--k", k)->required();
    r_cov->add_option("--tau", tau_s)->required();
    r_cov->add_option("--out-dir", out_dir);
    r_cov->callback([&] {
        AnySetSystem ss = load_set_system(input);
        auto art = cov_to_vcsp(ss, k, rat(tau_s));
        write_file(fs::path(out_dir) / "vcsp.json", dump_canonical(to_json(art.vcsp)));
        Json blocks = Json::array();
        for (const auto& b : art.partition) blocks.push_back(b);
        Json rep{{"k", k}, {"tau", tau_s}, {"c", art.c.str()}, {"M", art.M}, {"ell", art.vcsp.edges.size()},
                 {"partition", blocks}};
        write_file(fs::path(out_dir) / "report.json", dump_canonical(rep));
    });

    auto* r_v2c = reduce->add_subcommand("vcsp2csp", "Valued 2-CSP to weighted 2-CSP instances");
    r_v2c->add_option("--input", input)->required();
    r_v2c->add_option("--c", c_s)->required();
    r_v2c->add_option("--s", s_s)->required();
    r_v2c->add_option("--out-dir", out_dir);
    r_v2c->add_option("--limit", limit, "Most instance files to write");
    r_v2c->callback([&] {
        ThetaOptions to;
        to.oracle = oracle_of(g);
        ThetaStream stream = vcsp_to_csp(load_as<ValuedTwoCsp>(input), rat(c_s), rat(s_s), to);
        const ThetaParams& tp = stream.params();
        Json files = Json::array();
        auto write_instance = [&](const ThetaInstance& inst) {
            std::string name = "csp_" + std::to_string(files.size()) + ".json";
            write_file(fs::path(out_dir) / name, dump_canonical(to_json(inst.csp)));
            files.push_back(Json{{"file", name}, {"theta", inst.theta}});
        };
        bool enumerated = stream.grid_size() <= to.grid_cap;
        if (enumerated) {
            stream.for_each([&](const ThetaInstance& inst) {
                write_instance(inst);
                return static_cast<std::int64_t>(files.size()) < limit;
            });
        } else if (auto sat = stream.find_satisfiable()) {
            write_instance(sat->first);
        }
        Json rep{{"c", tp.c.str()},
                 {"s", tp.s.str()},
                 {"epsilon", tp.epsilon.str()},
                 {"gamma", tp.gamma.str()},
                 {"B", tp.B},
                 {"ell", tp.ell},
                 {"filter_total", tp.filter_total.str()},
                 {"min_total", tp.min_total},
                 {"short_circuit", stream.short_circuit()},
                 {"grid_size", stream.grid_size().str()},
                 {"instance_count", stream.size().str()},
                 {"enumerated", enumerated},
                 {"files", files}};
        write_file(fs::path(out_dir) / "report.json", dump_canonical(rep));
    });

    auto* r_kmed = reduce->add_subcommand("kmed2cov", "k-median / k-means to multicolored coverage");
    r_kmed->add_option("--input", input)->required();
    r_kmed->add_option("--k", k)->required();
    r_kmed->add_option("--tau", tau_int)->required();
    r_kmed->add_option("--alpha", alpha_s)->required();
    r_kmed->add_option("--delta", delta_s)->required();
    r_kmed->add_flag("--squared", squared);
    r_kmed->add_option("--radius-mode", radius_mode);
    r_kmed->add_option("--out-dir", out_dir);
    r_kmed->add_option("--limit", limit, "Most instance files to write");
    r_kmed->callback([&] {
        ClusteringParams cp;
        cp.k = k;
        cp.tau = tau_int;
        cp.alpha = rat(alpha_s);
        cp.delta = rat(delta_s);
        cp.squared = squared;
        cp.mode = parse_mode(radius_mode);
        auto red = kmedian_to_multicov(load_as<MetricInstance>(input), cp);
        Json guesses = Json::array();
        std::int64_t written = 0;
        red.for_each([&](const GuessInstance& gi) {
            Json x{{"index", gi.index}, {"guess", guess_json(gi.guess)}, {"baseline", gi.baseline},
                   {"emitted", gi.emitted}, {"threshold", gi.threshold}};
            if (gi.emitted) {
                x["universe_size"] = gi.system.base.universe_size;
                if (written < limit) {
                    std::string name = "guess_" + std::to_string(gi.index) + ".json";
                    write_file(fs::path(out_dir) / name, dump_canonical(to_json(gi.system)));
                    x["file"] = name;
                    ++written;
                }
            }
            guesses.push_back(std::move(x));
            return true;
        });
        Json rep{{"k", k},
                 {"tau", tau_int},
                 {"alpha", cp.alpha.str()},
                 {"delta", cp.delta.str()},
                 {"squared", squared},
                 {"radius_mode", radius_mode},
                 {"baseline_bound", baseline_bound(cp).str()},
                 {"guess_count", red.space().size()},
                 {"guesses", guesses}};
        write_file(fs::path(out_dir) / "report.json", dump_canonical(rep));
    });

    auto* r_mc = reduce->add_subcommand("maxcover2cov", "MaxCover to k-MaxCoverage");
    r_mc->add_option("--input", input)->required();
    r_mc->add_option("--T", T)->required();
    r_mc->add_option("--emit-codec", codec_path, "Write element and set codecs");
    r_mc->callback([&] {
        auto art = maxcover_to_kmaxcov(load_as<MaxCoverInstance>(input), T);
        emit(g.out, to_json(art.ss));
        if (!codec_path.empty()) {
            Json elems = Json::array();
            for (int e = 0; e < art.ss.universe_size; ++e) {
                auto x = art.decode_element(e);
                elems.push_back(Json{{"t", x.t}, {"i", x.i}, {"f", x.f}});
            }
            Json sets = Json::array();
            for (int s = 0; s < static_cast<int>(art.ss.sets.size()); ++s) {
                auto x = art.decode_set(s);
                sets.push_back(Json{{"t", x.t}, {"j", x.j}, {"v", x.v}});
            }
            write_file(codec_path, dump_canonical(Json{{"T", art.T}, {"k", art.k}, {"elements", elems}, {"sets", sets}}));
        }
    });

    // ------------------------------------------------------------- pipeline
    auto* pipe = app.add_subcommand("pipeline", "Composed reduction k-MaxCoverage to weighted 2-CSP");
    pipe->add_option("--input", input)->required();
    pipe->add_option("--k", k)->required();
    pipe->add_option("--tau", tau_s)->required();
    pipe->add_option("--delta", delta_s)->required();
    pipe->add_option("--m-override", m_override);
    pipe->add_option("--out-dir", out_dir);
    pipe->callback([&] {
        AnySetSystem ss = load_set_system(input);
        PipelineParams pp;
        pp.k = k;
        pp.tau = rat(tau_s);
        pp.delta = rat(delta_s);
        pp.seed = g.seed;
        pp.m_override = m_override;
        pp.theta.oracle = oracle_of(g);
        PipelineResult r = pipeline(ss, pp);
        write_file(fs::path(out_dir) / "reduced.json",
                   dump_canonical(std::visit([](const auto& x) { return to_json(x); }, r.reduced)));
        write_file(fs::path(out_dir) / "vcsp.json", dump_canonical(to_json(r.vcsp.vcsp)));
        Json rep = pipeline_report(r, pp);
        if (auto sat = r.stream.find_satisfiable()) {
            write_file(fs::path(out_dir) / "csp_witness.json", dump_canonical(to_json(sat->first.csp)));
            rep["witness_theta"] = sat->first.theta;
        }
        write_file(fs::path(out_dir) / "report.json", dump_canonical(rep));
    });

    // ------------------------------------------------------------- generate
    auto* gen = app.add_subcommand("generate", "Instance generators");
    gen->require_subcommand(1);
    int n_sets = 4, universe = 6, n = 3, clients = 0, facilities = 0, ell = 2, left_size = 2, right_size = 2;
    std::string kind = "yes", shape = "line", density_s = "1/2", cert_path;
    bool colored = false, planted = false;
    std::int64_t d_max = 10;

    auto* g_pc = gen->add_subcommand("planted-cover", "Planted YES or oracle-certified NO k-MaxCoverage");
    g_pc->add_option("--n-sets", n_sets);
    g_pc->add_option("--universe", universe);
    g_pc->add_option("--k", k);
    g_pc->add_option("--tau", tau_s);
    g_pc->add_option("--delta", delta_s);
    g_pc->add_option("--kind", kind);
    g_pc->add_flag("--colored", colored);
    g_pc->add_option("--cert", cert_path, "Certificate output file");
    g_pc->callback([&] {
        PlantedCoverParams pp;
        pp.n_sets = n_sets;
        pp.universe_size = universe;
        pp.k = k;
        pp.tau = rat(tau_s);
        pp.delta = rat(delta_s);
        pp.seed = g.seed;
        pp.kind = parse_kind(kind);
        pp.colored = colored;
        pp.oracle = oracle_of(g);
        PlantedCover pc = gen_planted_cover(pp);
        emit(g.out, std::visit([](const auto& x) { return to_json(x); }, pc.system));
        Json cert = certificate_json(pc.certificate);
        if (cert_path.empty()) {
            std::cerr << cert.dump() << "\n";
        } else {
            write_file(cert_path, dump_canonical(cert));
        }
    });

    auto* g_metric = gen->add_subcommand("metric", "Integer metric");
    g_metric->add_option("--n", n);
    g_metric->add_option("--shape", shape);
    g_metric->add_option("--d-max", d_max);
    g_metric->add_option("--clients", clients, "Client count (all points when 0)");
    g_metric->add_option("--facilities", facilities, "Facility count (all points when 0)");
    g_metric->callback([&] {
        MetricParams mp;
        mp.n = n;
        mp.shape = parse_shape(shape);
        mp.d_max = d_max;
        mp.seed = g.seed;
        if (clients > 0) mp.clients = clients;
        if (facilities > 0) mp.facilities = facilities;
        emit(g.out, to_json(gen_metric(mp)));
    });

    auto* g_mc = gen->add_subcommand("maxcover", "MaxCover instance");
    g_mc->add_option("--k", k);
    g_mc->add_option("--ell", ell);
    g_mc->add_option("--left-size", left_size);
    g_mc->add_option("--right-size", right_size);
    g_mc->add_option("--density", density_s);
    g_mc->add_flag("--planted", planted);
    g_mc->callback([&] {
        MaxCoverParams mp{k, ell, left_size, right_size, rat(density_s), g.seed, planted};
        emit(g.out, to_json(gen_maxcover(mp)));
    });

    // -------------------------------------------------------------- certify
    auto* cert = app.add_subcommand("certify", "End-to-end gap certification against the oracles");
    cert->require_subcommand(1);
    bool deterministic = false;

    auto* c_pipe = cert->add_subcommand("pipeline", "Certify the composed k-MaxCoverage reduction");
    c_pipe->add_option("--input", input)->required();
    c_pipe->add_option("--cert", cert_path)->required();
    c_pipe->add_option("--m-override", m_override);
    c_pipe->add_flag("--deterministic", deterministic, "Skip the universe reduction");
    c_pipe->callback([&] {
        AnySetSystem ss = load_set_system(input);
        PlantedCertificate pc = certificate_from_json(Json::parse(read_file(cert_path)));
        if (!verify_certificate(ss, pc, oracle_of(g))) throw ParameterError("certificate does not match the input");
        CertifyPipelineParams cp;
        cp.k = pc.k;
        cp.tau = pc.tau;
        cp.delta = pc.delta;
        cp.base_seed = g.seed;
        cp.m_override = m_override;
        cp.trials = g.trials;
        cp.deterministic = deterministic;
        cp.oracle = oracle_of(g);
        PipelineGapReport rep = certify_pipeline(ss, pc, cp);
        emit(g.out, report_json(rep));
        if (!rep.verdict) exit_code = 1;
    });

    auto* c_kmed = cert->add_subcommand("kmedian", "Certify the clustering reduction");
    c_kmed->add_option("--input", input)->required();
    c_kmed->add_option("--k", k)->required();
    c_kmed->add_option("--tau", tau_int)->required();
    c_kmed->add_option("--alpha", alpha_s)->required();
    c_kmed->add_option("--delta", delta_s)->required();
    c_kmed->add_flag("--squared", squared);
    c_kmed->add_option("--radius-mode", radius_mode);
    c_kmed->callback([&] {
        ClusteringParams cp;
        cp.k = k;
        cp.tau = tau_int;
        cp.alpha = rat(alpha_s);
        cp.delta = rat(delta_s);
        cp.squared = squared;
        cp.mode = parse_mode(radius_mode);
        KMedianGapReport rep = certify_kmedian(load_as<MetricInstance>(input), cp, oracle_of(g));
        emit(g.out, report_json(rep));
        if (!rep.verdict) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.position() << ": " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
