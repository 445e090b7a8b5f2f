#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "rspq/automata/automata.hpp"
#include "rspq/bench.hpp"
#include "rspq/classify.hpp"
#include "rspq/graph.hpp"
#include "rspq/records.hpp"

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(RSPQ_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    int raw = pclose(p);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = std::string(RSPQ_TMP) + "/" + name;
    std::ofstream(path) << content;
    return path;
}

nlohmann::json only_line(const std::string& out) {
    REQUIRE(!out.empty());
    CHECK(out.find('\n') == out.size() - 1);
    return nlohmann::json::parse(out);
}

} // namespace

TEST_CASE("classify") {
    auto hard = run("classify --regex '(aa)*' --alphabet a --format machine");
    CHECK(hard.status == 0);
    auto j = only_line(hard.out);
    CHECK(j["label"] == "NP_HARD");
    for (const char* f : {"label", "model", "caveats", "certificate", "diagnostics"}) CHECK(j.contains(f));

    auto ab = run("classify --regex 'a*b' --alphabet ab --format machine");
    auto v = rspq::records::verdict_from_json(only_line(ab.out));
    CHECK(v.label == rspq::classify::Label::nl_tractable);
    CHECK(v.decomposition()->level == 1);
    CHECK(rspq::classify::verify_decomposition(rspq::automata::compile_regex("a*b", "ab"), *v.decomposition()));

    CHECK(only_line(run("classify --regex 'ab|ba' --alphabet ab --format machine").out)["label"] == "AC0_FINITE");
    auto vertex = only_line(run("classify --regex '(ab)*' --alphabet ab --model vertex-labeled --format machine").out);
    CHECK(vertex["caveats"] == nlohmann::json::array({"edge_model_only"}));

    CHECK(run("classify --regex 'a(|b' --alphabet ab").status == 2);
    CHECK(run("classify --regex 'a' --alphabet b").status == 2);
    CHECK(run("classify --regex '(a|b)*a(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)' --max-dfa-states 50").status == 3);
    CHECK(run("classify").status == 2);

    auto dfa = temp_file("ab.dfa", rspq::automata::serialize_dfa(rspq::automata::compile_regex("a*b", "ab")));
    CHECK(only_line(run("classify --dfa " + dfa + " --format machine").out)["label"] == "NL_TRACTABLE");

    // byte-identical reruns
    CHECK(run("classify --regex 'a*ba*' --alphabet ab --format machine").out ==
          run("classify --regex 'a*ba*' --alphabet ab --format machine").out);
}

TEST_CASE("query") {
    auto chain = temp_file("chain.g", "graph edge-labeled 3\nedge 0 1 a\nedge 1 2 b\n");
    auto yes = run("query --graph " + chain + " --regex 'a*ba*' 0 2 --format machine");
    CHECK(yes.status == 0);
    auto j = only_line(yes.out);
    CHECK(j["word"] == "ab");
    for (const char* f : {"answer", "witness", "word", "length", "engine", "stats"}) CHECK(j.contains(f));
    auto r = rspq::records::query_from_json(j);
    CHECK_FALSE(rspq::graph::witness_defect(rspq::graph::parse_graph("graph edge-labeled 3\nedge 0 1 a\nedge 1 2 b\n"),
                                            *r.witness, 0, 2));

    CHECK(run("query --graph " + chain + " --regex 'a*ba*' 2 0").status == 1);
    auto autoq = only_line(run("query --graph " + chain + " --regex 'a*b' 0 2 --format machine").out);
    CHECK(autoq["engine"] == "tractable");
    CHECK(only_line(run("query --graph " + chain + " --regex 'a*ba*' 0 2 --format machine").out)["engine"] == "brute");
    auto cc = only_line(
        run("query --graph " + chain + " --regex 'a*ba*' 0 2 --max-edges 3 --delta 0.05 --seed 4 --format machine").out);
    CHECK(cc["engine"] == "color-coding");
    CHECK(cc["answer"] == "yes");
    auto shortest = only_line(run("query --graph " + chain + " --regex 'a*ba*' 0 2 --engine brute --shortest --format machine").out);
    CHECK(shortest["length"] == 2);

    CHECK(run("query --graph " + chain + " --regex 'a*b' 0 2 --delta 0.1").status == 2);
    CHECK(run("query --graph " + chain + " --regex 'a*b' 0 2 --engine brute --max-edges 3").status == 2);
    CHECK(run("query --graph " + chain + " --regex 'a*b' 0 2 --engine color-coding").status == 2);
    CHECK(run("query --graph " + chain + " --regex '(aa)*' 0 2 --engine tractable").status == 2);
    CHECK(run("query --graph " + chain + " --regex 'a*b' 0 7").status == 2);
    auto bad = temp_file("bad.g", "graph edge-labeled 2\nedge 0 1\n");
    CHECK(run("query --graph " + bad + " --regex 'a' 0 1").status == 2);

    auto trap = temp_file("trap.g", rspq::graph::serialize_graph(
                                        rspq::graph::parse_graph("graph edge-labeled 2\nedge 0 1 a\nedge 1 0 a\n")));
    CHECK(run("query --graph " + trap + " --regex '(aa)*' 0 1 --max-expansions 1").status == 1);
    auto diamonds = temp_file("diamond.g", rspq::graph::serialize_graph(rspq::bench::diamond_instance(16).graph));
    CHECK(run("query --graph " + diamonds + " --regex 'aaa*b' 0 2 --engine brute --max-expansions 1000").status == 3);
    CHECK(run("query --graph " + diamonds + " --regex 'aaa*b' 0 2").status == 1);
}

TEST_CASE("gen and bench") {
    auto grid = run("gen grid 3 3 --labels alternating --seed 1");
    CHECK(grid.status == 0);
    auto g = rspq::graph::parse_graph(grid.out);
    CHECK(g.num_vertices() == 9);
    CHECK(rspq::graph::serialize_graph(g) == grid.out);

    auto a = run("gen random 10 20 --alphabet ab --seed 7");
    CHECK(a.status == 0);
    CHECK(a.out == run("gen random 10 20 --alphabet ab --seed 7").out);
    CHECK(rspq::graph::parse_graph(a.out).num_edges() == 20);
    CHECK(run("gen random 2 9 --alphabet ab").status == 2);

    auto b = run("bench --family chain --sizes 8,16,32 --engines brute,tractable --format machine");
    CHECK(b.status == 0);
    std::size_t rows = 0;
    std::size_t pos = 0;
    while (pos < b.out.size()) {
        auto end = b.out.find('\n', pos);
        auto row = nlohmann::json::parse(b.out.substr(pos, end - pos));
        CHECK(row["answer"] == "yes");
        CHECK(row["agree"] == true);
        pos = end + 1;
        ++rows;
    }
    CHECK(rows == 6);
}
