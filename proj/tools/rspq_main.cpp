#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "rspq/automata/automata.hpp"
#include "rspq/bench.hpp"
#include "rspq/classify.hpp"
#include "rspq/engines.hpp"
#include "rspq/error.hpp"
#include "rspq/graph.hpp"
#include "rspq/records.hpp"

using namespace rspq;
using records::json;

namespace {

enum Exit { kYes = 0, kOk = 0, kNo = 1, kError = 2, kResource = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string quoted(const std::string& w) { return "\"" + w + "\""; }

/// Letters a regex mentions, as the default alphabet.
std::string letters_of(const std::string& regex) {
    std::string out;
    for (char c : regex)
        if (automata::is_symbol_char(c)) out += c;
    return automata::normalize_alphabet(out);
}

void add_caps(CLI::App* cmd, Limits& l) {
    cmd->add_option("--max-dfa-states", l.max_dfa_states, "Cap on determinization states")->capture_default_str();
    cmd->add_option("--max-monoid", l.max_monoid, "Cap on transition monoid size")->capture_default_str();
    cmd->add_option("--max-level", l.max_level, "Cap on decomposition level k")->capture_default_str();
    cmd->add_option("--max-words", l.max_words, "Cap on |alphabet|^k enumerations")->capture_default_str();
    cmd->add_option("--max-expansions", l.max_expansions, "Brute-force search node budget")->capture_default_str();
    cmd->add_option("--max-trials", l.max_trials, "Color-coding trial cap")->capture_default_str();
}

void check_caps(const Limits& l) {
    if (l.max_dfa_states == 0 || l.max_monoid == 0 || l.max_level < 0 || l.max_words == 0 || l.max_expansions == 0 ||
        l.max_trials == 0)
        throw UsageError("caps must be positive");
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    std::string regex, dfa_file, alphabet, model = "edge-labeled", format = "human";
    Limits limits;
};

void print_verdict_human(const classify::Verdict& v) {
    std::cout << "label: " << classify::to_string(v.label) << '\n' << "model: " << to_string(v.model) << '\n';
    for (const auto& c : v.caveats) std::cout << "caveat: " << c << '\n';
    if (const auto* dec = v.decomposition()) {
        std::cout << "level: " << dec->level << '\n' << "short words:";
        for (const auto& w : dec->short_words) std::cout << ' ' << quoted(w);
        std::cout << '\n' << "components: " << dec->components.size() << '\n';
        for (const auto& c : dec->components)
            std::cout << "  " << quoted(c.prefix) << " . M . " << quoted(c.suffix) << "  (M: " << c.middle.num_states()
                      << " states)\n";
    } else {
        const auto& w = *v.witness();
        std::cout << "witness: p=" << quoted(w.prefix) << " m=" << quoted(w.middle) << " m'=" << quoted(w.sub_middle)
                  << " s=" << quoted(w.suffix) << '\n';
    }
    std::cout << "diagnostics: subword_closed=" << (v.diagnostics.subword_closed ? "yes" : "no")
              << " aperiodic=" << automata::to_string(v.diagnostics.aperiodic)
              << " loop_deletion=" << automata::to_string(v.diagnostics.loop_deletion) << '\n';
}

int run_classify(const ClassifyArgs& a) {
    check_caps(a.limits);
    auto model = parse_label_mode(a.model);
    if (!model) throw UsageError("unknown model '" + a.model + "'");
    automata::Dfa d = !a.dfa_file.empty() ? automata::parse_dfa(read_file(a.dfa_file))
                                      : automata::compile_regex(a.regex, a.alphabet.empty() ? letters_of(a.regex) : a.alphabet,
                                                                a.limits);
    auto v = classify::classify(d, *model, a.limits);
    if (a.format == "machine") {
        json j = records::to_json(v);
        j["config"] = {{"caps", records::to_json(a.limits)}, {"alphabet", d.alphabet()}};
        std::cout << j.dump() << '\n';
    } else {
        print_verdict_human(v);
    }
    return kOk;
}

// ---------------------------------------------------------------- query

struct QueryArgs {
    std::string graph_file, regex, alphabet, engine = "auto", format = "human";
    int x = 0, y = 0;
    bool shortest = false;
    std::optional<std::size_t> max_edges;
    std::optional<double> delta;
    std::optional<std::uint64_t> seed;
    Limits limits;
};

int run_query(const QueryArgs& a) {
    check_caps(a.limits);
    if (a.engine != "auto" && a.engine != "brute" && a.engine != "tractable" && a.engine != "color-coding")
        throw UsageError("unknown engine '" + a.engine + "'");
    if ((a.delta || a.seed) && !a.max_edges) throw UsageError("--delta and --seed need the color-coding path (--max-edges)");
    if (a.max_edges && (a.engine == "brute" || a.engine == "tractable"))
        throw UsageError("--max-edges only applies to color-coding");
    if (a.engine == "color-coding" && !a.max_edges) throw UsageError("color-coding needs --max-edges");

    auto g = graph::parse_graph(read_file(a.graph_file));
    auto in_range = [&](int v) { return v >= 0 && static_cast<std::size_t>(v) < g.num_vertices(); };
    if (!in_range(a.x) || !in_range(a.y)) throw UsageError("query vertex out of range");
    auto d = automata::compile_regex(a.regex, a.alphabet.empty() ? letters_of(a.regex) : a.alphabet, a.limits);
    const engines::Want want = a.shortest ? engines::Want::shortest : engines::Want::exists;
    const double delta = a.delta.value_or(0.01);
    const std::uint64_t seed = a.seed.value_or(1);

    std::string engine = a.engine;
    std::optional<classify::Verdict> verdict;
    if (engine == "auto" || engine == "tractable") {
        verdict = classify::classify(d, g.mode(), a.limits);
        if (engine == "tractable" && !verdict->tractable())
            throw UsageError("language is " + classify::to_string(verdict->label) + "; no certificate for the tractable engine");
        if (engine == "auto") engine = verdict->tractable() ? "tractable" : a.max_edges ? "color-coding" : "brute";
    }

    engines::QueryResult r;
    if (engine == "tractable")
        r = engines::TractableEngine(d, *verdict->decomposition(), a.limits).query(g, a.x, a.y, want);
    else if (engine == "color-coding")
        r = engines::color_coding_query(g, d, a.x, a.y, {*a.max_edges, delta, seed}, want, a.limits);
    else
        r = engines::brute_query(g, d, a.x, a.y, want, a.limits);

    if (a.format == "machine") {
        json j = records::to_json(r);
        json config = {{"engine", a.engine}, {"shortest", a.shortest}, {"caps", records::to_json(a.limits)}};
        if (a.max_edges) config["max_edges"] = *a.max_edges, config["delta"] = delta, config["seed"] = seed;
        if (verdict) config["label"] = classify::to_string(verdict->label);
        j["config"] = std::move(config);
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "answer: " << (r.answer ? "yes" : "no") << '\n' << "engine: " << r.engine << '\n';
        if (r.witness) {
            std::cout << "length: " << r.witness->length() << '\n' << "word: " << quoted(r.witness->word) << '\n'
                      << "path:";
            for (int v : r.witness->vertices) std::cout << ' ' << v;
            std::cout << '\n';
        }
        std::cout << "stats: expansions=" << r.stats.expansions << " trials=" << r.stats.trials << '\n';
    }
    return r.answer ? kYes : kNo;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    std::size_t a = 0, b = 0;
    std::string alphabet = "ab", mode = "edge-labeled", labels = "constant", out;
    std::uint64_t seed = 0;
};

int run_gen(const GenArgs& a, bool grid) {
    auto mode = parse_label_mode(a.mode);
    if (!mode) throw UsageError("unknown mode '" + a.mode + "'");
    graph::LabeledGraph g;
    if (grid) {
        auto scheme = graph::parse_grid_labels(a.labels);
        if (!scheme) throw UsageError("unknown label scheme '" + a.labels + "'");
        g = graph::gen_grid(a.a, a.b, *scheme, a.alphabet, *mode, a.seed);
    } else {
        g = graph::gen_random(a.a, a.b, a.alphabet, *mode, a.seed);
    }
    const std::string text = graph::serialize_graph(g);
    if (a.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(a.out, std::ios::binary);
        if (!(f << text)) throw UsageError("cannot write '" + a.out + "'");
    }
    return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::string family = "chain", regex, alphabet = "ab", format = "human";
    std::vector<std::size_t> sizes;
    std::vector<std::string> engines{"brute", "tractable"};
    bool shortest = false;
    std::optional<std::size_t> max_edges;
    double delta = 0.01;
    std::uint64_t seed = 1;
    Limits limits;
};

int run_bench(BenchArgs a) {
    check_caps(a.limits);
    if (a.regex.empty()) a.regex = a.family == "chain" ? "a*b" : a.family == "diamond" ? "aaa*b"
                                     : a.family == "grid-trap" ? "a*ba*" : "(aa)*";
    if (a.sizes.empty()) {
        if (a.family == "chain") a.sizes = {16, 32, 64, 128, 256};
        else if (a.family == "diamond") a.sizes = {4, 8, 12, 16};
        else a.sizes = {3, 4, 5, 6};
    }
    auto d = automata::compile_regex(a.regex, a.alphabet, a.limits);
    bench::EngineConfig config{a.shortest ? engines::Want::shortest : engines::Want::exists, a.max_edges, a.delta, a.seed,
                               a.limits};
    if (a.format == "human")
        std::cout << std::left << std::setw(14) << "instance" << std::setw(8) << "n" << std::setw(8) << "m"
                  << std::setw(14) << "engine" << std::setw(12) << "answer" << std::setw(12) << "seconds"
                  << std::setw(12) << "expansions" << "agree\n";
    for (std::size_t size : a.sizes) {
        auto inst = bench::make_instance(a.family, size, a.seed);
        if (!inst) throw UsageError("unknown family '" + a.family + "'");
        std::vector<bench::Row> rows;
        for (const auto& e : a.engines) {
            if (e != "brute" && e != "tractable" && e != "color-coding") throw UsageError("unknown engine '" + e + "'");
            rows.push_back(bench::run(*inst, d, e, config));
        }
        // Engines that answered must agree with each other.
        std::optional<std::string> first;
        bool agree = true;
        for (const auto& r : rows)
            if (r.outcome == "yes" || r.outcome == "no") {
                if (first && *first != r.outcome) agree = false;
                if (!first) first = r.outcome;
            }
        for (const auto& r : rows) {
            if (a.format == "machine") {
                json j = {{"instance", r.instance}, {"n", r.vertices},          {"m", r.edges},
                          {"engine", r.engine},     {"answer", r.outcome},      {"seconds", r.seconds},
                          {"expansions", r.expansions}, {"trials", r.trials}, {"agree", agree},
                          {"length", r.length ? json(*r.length) : json(nullptr)}};
                std::cout << j.dump() << '\n';
            } else {
                std::ostringstream secs;
                secs << std::fixed << std::setprecision(6) << r.seconds;
                std::cout << std::left << std::setw(14) << r.instance << std::setw(8) << r.vertices << std::setw(8)
                          << r.edges << std::setw(14) << r.engine << std::setw(12) << r.outcome << std::setw(12)
                          << secs.str() << std::setw(12) << r.expansions << (agree ? "yes" : "NO") << '\n';
            }
        }
        if (!agree) return kError;
    }
    return kOk;
}

template <class F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kError;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kError;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regular simple path queries: classify languages, evaluate queries, generate and benchmark graphs"};
    app.require_subcommand(1);
    int status = kOk;

    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Classify the query complexity of a regular language");
    auto* regex_opt = classify_cmd->add_option("--regex", ca.regex, "Regular expression");
    auto* dfa_opt = classify_cmd->add_option("--dfa", ca.dfa_file, "DFA file")->check(CLI::ExistingFile);
    regex_opt->excludes(dfa_opt);
    classify_cmd->add_option("--alphabet", ca.alphabet, "Alphabet (default: letters of the regex)");
    classify_cmd->add_option("--model", ca.model, "edge-labeled | vertex-labeled | vertex-edge-labeled")->capture_default_str();
    classify_cmd->add_option("--format", ca.format, "human | machine")->check(CLI::IsMember({"human", "machine"}));
    add_caps(classify_cmd, ca.limits);
    classify_cmd->callback([&] {
        if (regex_opt->count() + dfa_opt->count() != 1) {
            std::cerr << "error: give exactly one of --regex or --dfa\n";
            status = kError;
            return;
        }
        status = guarded([&] { return run_classify(ca); });
    });

    QueryArgs qa;
    auto* query_cmd = app.add_subcommand("query", "Is there a simple x-to-y path spelling a word of the language?");
    query_cmd->add_option("--graph", qa.graph_file, "Graph file")->required()->check(CLI::ExistingFile);
    query_cmd->add_option("--regex", qa.regex, "Regular expression")->required();
    query_cmd->add_option("--alphabet", qa.alphabet, "Alphabet (default: letters of the regex)");
    query_cmd->add_option("x", qa.x, "Source vertex")->required();
    query_cmd->add_option("y", qa.y, "Target vertex")->required();
    query_cmd->add_option("--engine", qa.engine, "auto | brute | tractable | color-coding")->capture_default_str();
    query_cmd->add_flag("--shortest", qa.shortest, "Report a shortest path");
    query_cmd->add_option("--max-edges", qa.max_edges, "Path length bound for color-coding");
    query_cmd->add_option("--delta", qa.delta, "Color-coding failure probability (default 0.01)");
    query_cmd->add_option("--seed", qa.seed, "Color-coding seed (default 1)");
    query_cmd->add_option("--format", qa.format, "human | machine")->check(CLI::IsMember({"human", "machine"}));
    add_caps(query_cmd, qa.limits);
    query_cmd->callback([&] { status = guarded([&] { return run_query(qa); }); });

    GenArgs ga;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a graph file");
    gen_cmd->require_subcommand(1);
    auto* random_cmd = gen_cmd->add_subcommand("random", "Uniform random graph with N vertices and M edges");
    random_cmd->add_option("n", ga.a, "Vertices")->required();
    random_cmd->add_option("m", ga.b, "Edges")->required();
    auto* grid_cmd = gen_cmd->add_subcommand("grid", "W×H grid with right and down edges");
    grid_cmd->add_option("width", ga.a, "Width")->required();
    grid_cmd->add_option("height", ga.b, "Height")->required();
    grid_cmd->add_option("--labels", ga.labels, "constant | alternating | random")->capture_default_str();
    for (auto* cmd : {random_cmd, grid_cmd}) {
        cmd->add_option("--alphabet", ga.alphabet, "Label alphabet")->capture_default_str();
        cmd->add_option("--mode", ga.mode, "Labeling model")->capture_default_str();
        cmd->add_option("--seed", ga.seed, "Random seed")->capture_default_str();
        cmd->add_option("-o,--output", ga.out, "Output file (default: stdout)");
    }
    random_cmd->callback([&] { status = guarded([&] { return run_gen(ga, false); }); });
    grid_cmd->callback([&] { status = guarded([&] { return run_gen(ga, true); }); });

    BenchArgs ba;
    auto* bench_cmd = app.add_subcommand("bench", "Time engines over a graph family");
    bench_cmd->add_option("--family", ba.family, "chain | diamond | grid | grid-random | grid-trap")->capture_default_str();
    bench_cmd->add_option("--sizes", ba.sizes, "Instance sizes")->delimiter(',');
    bench_cmd->add_option("--engines", ba.engines, "Engines to run")->delimiter(',');
    bench_cmd->add_option("--regex", ba.regex, "Language (default depends on family)");
    bench_cmd->add_option("--alphabet", ba.alphabet, "Alphabet")->capture_default_str();
    bench_cmd->add_flag("--shortest", ba.shortest, "Shortest-path mode");
    bench_cmd->add_option("--max-edges", ba.max_edges, "Path bound for color-coding rows");
    bench_cmd->add_option("--delta", ba.delta, "Color-coding failure probability")->capture_default_str();
    bench_cmd->add_option("--seed", ba.seed, "Seed")->capture_default_str();
    bench_cmd->add_option("--format", ba.format, "human | machine")->check(CLI::IsMember({"human", "machine"}));
    add_caps(bench_cmd, ba.limits);
    bench_cmd->callback([&] { status = guarded([&] { return run_bench(ba); }); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }
    return status;
}
