// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "rspq/automata/automata.hpp"
#include "rspq/bench.hpp"
#include "rspq/classify.hpp"
#include "rspq/engines.hpp"
#include "rspq/error.hpp"
#include "support/oracles.hpp"
#include "support/paths.hpp"

using namespace rspq;
using automata::compile_regex;
using automata::Dfa;
using classify::Label;
using engines::Want;
namespace t = rspq::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Dfa pipeline(const automata::Regex& r, const std::string& alphabet) {
    return automata::minimize(automata::nfa_to_dfa(automata::regex_to_nfa(r, alphabet)));
}

Dfa downward(const Dfa& d) {
    return automata::minimize(automata::nfa_to_dfa(automata::downward_closure(automata::dfa_to_nfa(d))));
}

std::string random_finite_regex(std::mt19937_64& rng) {
    std::string re;
    const int words = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < words; ++j) {
        if (j) re += "|";
        const int len = static_cast<int>(rng() % 6);
        if (len == 0) re += "()";
        for (int l = 0; l < len; ++l) re += "ab"[rng() % 2];
    }
    return re;
}

// ---------------------------------------------------------------------------

void ac1(Outcome& o) {
    const auto t0 = Clock::now();
    int mismatches = 0;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) ++mismatches;
        o.require(ok, what);
    };
    expect(classify::classify(compile_regex("(aa)*", "a")).label == Label::np_hard, "(aa)*");
    expect(classify::classify(compile_regex("a*ba*", "ab")).label == Label::np_hard, "a*ba*");
    auto ab = compile_regex("(ab)*", "ab");
    expect(classify::classify(ab, LabelMode::edge).label == Label::np_hard, "(ab)* edge");
    auto vertex = classify::classify(ab, LabelMode::vertex);
    expect(std::count(vertex.caveats.begin(), vertex.caveats.end(), classify::kEdgeModelOnly) == 1,
           "(ab)* vertex caveat");

    std::mt19937_64 rng(101);
    for (int i = 0; i < 50; ++i) {
        auto r = t::random_regex(rng, "ab", 2 + static_cast<int>(rng() % 8));
        expect(classify::classify(downward(pipeline(r, "ab"))).tractable(), "downward closure of " + automata::to_string(r));
    }
    for (int i = 0; i < 50; ++i) {
        auto re = random_finite_regex(rng);
        expect(classify::classify(compile_regex(re, "ab")).label == Label::ac0_finite, "finite " + re);
    }
    const double secs = since(t0);
    o.require(secs < 60.0, "runtime under one minute");
    o.detail << "canonical 4/4 checks, 50 downward closures, 50 finite languages; mismatches=" << mismatches
             << "; " << std::fixed << std::setprecision(2) << secs << "s";
}

/// 200 random languages over {a,b} and {a,b,c}.
std::vector<Dfa> random_corpus(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<Dfa> out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::string alphabet = i % 5 == 0 ? "abc" : "ab";
        out.push_back(pipeline(t::random_regex(rng, alphabet, 1 + static_cast<int>(rng() % 10)), alphabet));
    }
    return out;
}

void ac2(Outcome& o) {
    int tractable = 0, hard = 0, bad_cert = 0, bad_witness = 0;
    for (const auto& d : random_corpus(202, 200)) {
        auto v = classify::classify(d);
        if (v.tractable()) {
            ++tractable;
            if (!classify::verify_decomposition(d, *v.decomposition())) ++bad_cert;
        } else {
            ++hard;
            const auto& w = *v.witness();
            // plain simulation, independent of the witness checker
            bool sim = d.accepts(w.prefix + w.middle + w.suffix) && !d.accepts(w.prefix + w.sub_middle + w.suffix) &&
                       t::is_subsequence(w.sub_middle, w.middle);
            if (!sim || !classify::check_hardness_witness(d, w)) ++bad_witness;
        }
    }
    o.require(bad_cert == 0, "every decomposition verifies");
    o.require(bad_witness == 0, "every witness re-checks");
    o.require(tractable > 0 && hard > 0, "corpus has both outcomes");
    o.detail << tractable << " tractable (" << bad_cert << " unverified), " << hard << " NP_HARD (" << bad_witness
             << " bad witnesses)";
}

void ac3(Outcome& o) {
    std::vector<Dfa> pool;
    int aperiodic_failures = 0, checked = 0;
    for (const auto& d : random_corpus(303, 400)) {
        auto v = classify::classify(d);
        if (!v.tractable()) continue;
        pool.push_back(d);
        ++checked;
        if (automata::is_aperiodic(d) != automata::Tristate::yes) ++aperiodic_failures;
    }
    std::mt19937_64 rng(33);
    int pairs = 0, union_fail = 0, inter_fail = 0;
    while (pairs < 100 && pool.size() >= 2) {
        const auto& a = pool[rng() % pool.size()];
        const auto& b = pool[rng() % pool.size()];
        if (a.alphabet() != b.alphabet()) continue;
        ++pairs;
        auto u = classify::classify(automata::combine(a, b, automata::SetOp::union_));
        auto i = classify::classify(automata::combine(a, b, automata::SetOp::intersection));
        union_fail += u.tractable() ? 0 : 1;
        inter_fail += i.tractable() ? 0 : 1;
        for (const auto* v : {&u, &i}) {
            ++checked;
            if (v->tractable() && v->diagnostics.aperiodic != automata::Tristate::yes) ++aperiodic_failures;
        }
    }
    o.require(pairs == 100, "100 pairs");
    o.require(union_fail == 0 && inter_fail == 0, "closure under union and intersection");
    o.require(aperiodic_failures == 0, "tractable implies aperiodic");
    o.detail << pairs << " pairs: union failures=" << union_fail << ", intersection failures=" << inter_fail << "; "
             << checked << " tractable verdicts, non-aperiodic=" << aperiodic_failures;
}

struct Certified {
    std::string regex;
    Dfa dfa;
    std::unique_ptr<engines::TractableEngine> engine;
};

void ac4(Outcome& o) {
    std::vector<Certified> langs;
    auto add = [&](const std::string& re, const Dfa& d) {
        auto v = classify::classify(d);
        if (!v.tractable() || !classify::verify_decomposition(d, *v.decomposition())) return;
        langs.push_back({re, d, std::make_unique<engines::TractableEngine>(d, *v.decomposition())});
    };
    for (const char* re : {"a*b", "a*", "a*b*", "(a|b)*", "ab*", "a*ba", "ab|ba", "(a|b)*b", "a(a|b)*", "aa*b*",
                           "b(a|b)*a", "a*bb*", "aaa*b", "b*a*|a*b*", "abab|()", "a*b(a|b)*"})
        add(re, compile_regex(re, "ab"));
    std::mt19937_64 rng(404);
    while (langs.size() < 26) {
        auto r = t::random_regex(rng, "ab", 3 + static_cast<int>(rng() % 8));
        auto d = pipeline(r, "ab");
        if (!automata::is_finite(d)) add(automata::to_string(r), d);
    }

    std::size_t instances = 0, positives = 0, exist_mismatch = 0, length_mismatch = 0, bad_witness = 0;
    auto valid = [&](const graph::LabeledGraph& g, const Dfa& d, const engines::QueryResult& r, int x, int y) {
        if (r.answer != r.witness.has_value()) return false;
        if (!r.witness) return true;
        return !graph::witness_defect(g, *r.witness, x, y) && d.accepts(r.witness->word) && r.length == r.witness->length();
    };
    int graphs = 0;
    while (instances < 1200) {
        const std::size_t n = 2 + rng() % 9;
        const auto mode = static_cast<LabelMode>(graphs % 3);
        const std::size_t cap = n * (n - 1) * (mode == LabelMode::vertex ? 1 : 2);
        auto g = graph::gen_random(n, std::min<std::size_t>({cap, 25, rng() % 26}), "ab", mode, rng());
        const auto& lang = langs[static_cast<std::size_t>(graphs) % langs.size()];
        ++graphs;
        for (int x = 0; x < static_cast<int>(n); ++x)
            for (int y = 0; y < static_cast<int>(n); ++y) {
                ++instances;
                auto exact = engines::brute_query(g, lang.dfa, x, y, Want::shortest);
                auto fast = lang.engine->query(g, x, y, Want::shortest);
                auto fast_exists = lang.engine->query(g, x, y, Want::exists);
                if (exact.answer != fast.answer || exact.answer != fast_exists.answer) ++exist_mismatch;
                if (exact.answer && fast.answer) {
                    ++positives;
                    if (exact.length != fast.length) ++length_mismatch;
                }
                for (const auto* r : {&exact, &fast, &fast_exists})
                    if (!valid(g, lang.dfa, *r, x, y)) ++bad_witness;
            }
    }
    o.require(exist_mismatch == 0, "existence agreement");
    o.require(length_mismatch == 0, "minimal length agreement");
    o.require(bad_witness == 0, "witnesses re-validate");
    o.detail << instances << " instances over " << graphs << " graphs, " << langs.size() << " certified languages, "
             << positives << " jointly positive; existence mismatches=" << exist_mismatch
             << ", length mismatches=" << length_mismatch << ", invalid witnesses=" << bad_witness;
}

void ac5(Outcome& o) {
    const std::vector<std::string> languages{"(aa)*", "a*ba*", "(ab)*", "a*b", "(a|b)*a(a|b)*", "b(aa)*a", "a(a|b)*b", "(a|b)*"};
    std::vector<Dfa> dfas;
    for (const auto& re : languages) dfas.push_back(compile_regex(re, "ab"));
    std::mt19937_64 rng(505);
    std::size_t positives = 0, negatives = 0, false_neg = 0, false_pos = 0, neg_yes = 0;
    const auto t0 = Clock::now();
    while (positives < 600 || negatives < 300) {
        const std::size_t n = 4 + rng() % 9;
        const auto mode = static_cast<LabelMode>(rng() % 3);
        const std::size_t cap = n * (n - 1) * (mode == LabelMode::vertex ? 1 : 2);
        auto g = graph::gen_random(n, std::min<std::size_t>(cap, 8 + rng() % 18), "ab", mode, rng());
        const std::size_t li = rng() % dfas.size();
        const int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n);
        const std::size_t ell = 1 + rng() % 8;
        auto exact = engines::brute_query(g, dfas[li], x, y, Want::shortest);
        const bool positive = exact.answer && *exact.length <= ell;
        if (positive ? positives >= 600 : negatives >= 300) continue;
        auto cc = engines::color_coding_query(g, dfas[li], x, y, {ell, 0.01, rng()}, Want::exists);
        if (cc.answer) {
            bool ok = cc.witness && !graph::witness_defect(g, *cc.witness, x, y) && dfas[li].accepts(cc.witness->word) &&
                      cc.witness->length() <= ell && exact.answer;
            if (!ok) ++false_pos;
        }
        if (positive) {
            ++positives;
            if (!cc.answer) ++false_neg;
        } else {
            ++negatives;
            if (cc.answer) ++neg_yes;
        }
    }
    const double rate = static_cast<double>(false_neg) / static_cast<double>(positives);
    o.require(false_pos == 0, "no false positives");
    o.require(rate <= 0.02, "false-negative rate <= 0.02");
    o.require(neg_yes == 0, "negatives always answer no");
    o.detail << positives << " positive / " << negatives << " negative instances at delta=0.01, l<=8: false positives="
             << false_pos << ", false negatives=" << false_neg << " (rate " << std::setprecision(4) << rate
             << "), negative yes=" << neg_yes << "; " << std::fixed << std::setprecision(1) << since(t0) << "s";
}

/// Least-squares slope of log(time) against log(size).
double loglog_slope(const std::vector<double>& sizes, const std::vector<double>& times) {
    const double n = static_cast<double>(sizes.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double lx = std::log(sizes[i]), ly = std::log(std::max(times[i], 1e-9));
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void ac6(Outcome& o) {
    auto d = compile_regex("a*b", "ab");
    auto verdict = classify::classify(d);
    engines::TractableEngine engine(d, *verdict.decomposition());
    std::vector<double> sizes, times;
    bool answers_match = true;
    for (std::size_t n = 512; n <= 32768; n *= 2) {
        auto inst = bench::chain_instance(n);
        double best = 1e9;
        engines::QueryResult r;
        for (int rep = 0; rep < 5; ++rep) {
            const auto t0 = Clock::now();
            r = engine.query(inst.graph, inst.x, inst.y, Want::shortest);
            best = std::min(best, since(t0));
        }
        auto exact = engines::brute_query(inst.graph, d, inst.x, inst.y, Want::shortest);
        answers_match = answers_match && exact.answer == r.answer && exact.length == r.length;
        sizes.push_back(static_cast<double>(n));
        times.push_back(best);
    }
    const double slope = loglog_slope(sizes, times);
    o.require(answers_match, "chain answers match brute force");
    o.require(slope <= 2.5, "tractable chain time fits a low-degree polynomial");
    o.detail << "chains n=512..32768 for a*b: log-log slope " << std::fixed << std::setprecision(2) << slope
             << ", answers match=" << (answers_match ? "yes" : "no");

    // Diamonds: exponential for exhaustive search, tractable stays flat; answers must agree.
    auto hard_chain = compile_regex("aaa*b", "ab");
    auto hv = classify::classify(hard_chain);
    engines::TractableEngine diamond_engine(hard_chain, *hv.decomposition());
    o.detail << "; diamonds (aaa*b) brute expansions:";
    bool diamonds_agree = true;
    for (std::size_t k : {4, 8, 12, 16}) {
        auto inst = bench::diamond_instance(k);
        auto exact = engines::brute_query(inst.graph, hard_chain, inst.x, inst.y, Want::exists);
        auto fast = diamond_engine.query(inst.graph, inst.x, inst.y, Want::exists);
        diamonds_agree = diamonds_agree && exact.answer == fast.answer;
        o.detail << ' ' << exact.stats.expansions;
    }
    o.require(diamonds_agree, "diamond answers agree");

    // Grids with NP_HARD languages: growth is reported; only answers are checked.
    auto hard = compile_regex("a*ba*", "ab");
    Limits budget;
    budget.max_expansions = 3'000'000;
    o.detail << "; grid-trap (a*ba*) brute expansions:";
    bool grid_ok = true;
    for (std::size_t side = 2; side <= 7; ++side) {
        auto inst = bench::grid_trap_instance(side);
        try {
            auto r = engines::brute_query(inst.graph, hard, inst.x, inst.y, Want::exists, budget);
            grid_ok = grid_ok && !r.answer;
            o.detail << ' ' << r.stats.expansions;
        } catch (const ResourceError&) {
            o.detail << " budget";
        }
    }
    o.detail << "; directed random grids (a*ba*) brute expansions:";
    for (std::size_t side = 2; side <= 7; ++side) {
        auto inst = bench::grid_instance(side, graph::GridLabels::random, side);
        auto r = engines::brute_query(inst.graph, hard, inst.x, inst.y, Want::shortest);
        auto oracle = t::simple_path_oracle(inst.graph, [&](const std::string& w) { return hard.accepts(w); }, inst.x, inst.y);
        grid_ok = grid_ok && r.answer == oracle.exists && r.length == oracle.shortest;
        o.detail << ' ' << r.stats.expansions;
    }
    o.require(grid_ok, "grid answers agree where brute force completes");
}

void ac7(Outcome& o) {
    std::mt19937_64 rng(707);
    int disagreements = 0;
    for (int i = 0; i < 500; ++i) {
        const std::string alphabet = i % 4 == 0 ? "abc" : "ab";
        auto r = t::random_regex(rng, alphabet, 1 + static_cast<int>(rng() % 10));
        auto d = pipeline(r, alphabet);
        auto expected = t::regex_words(r, 6);
        auto got = automata::enumerate_words(d, 6);
        if (std::set<std::string>(got.begin(), got.end()) != expected) ++disagreements;
    }
    o.require(disagreements == 0, "pipeline matches recursive enumeration");
    const bool closure =
        automata::equivalent(downward(compile_regex("a*ba*", "ab")), compile_regex("a*|a*ba*", "ab"));
    o.require(closure, "downward closure of a*ba*");
    struct Count {
        const char* re;
        const char* alphabet;
        std::size_t states;
    };
    int wrong = 0;
    for (auto c : {Count{"a", "ab", 3}, Count{"a*b", "ab", 3}, Count{"(aa)*", "a", 2}, Count{"(aa)*", "ab", 3}})
        if (compile_regex(c.re, c.alphabet).num_states() != c.states) ++wrong;
    o.require(wrong == 0, "minimal state counts");
    o.detail << "500 regexes to length 6: disagreements=" << disagreements << "; downward closure "
             << (closure ? "ok" : "wrong") << "; state counts wrong=" << wrong;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"AC1 canonical classifications", ac1},
        {"AC2 certificate soundness", ac2},
        {"AC3 closure and aperiodicity", ac3},
        {"AC4 oracle equivalence", ac4},
        {"AC5 color-coding contract", ac5},
        {"AC6 scaling sanity", ac6},
        {"AC7 automata substrate", ac7},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            check(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << std::fixed << std::setprecision(1) << since(t0)
                  << "s): " << o.detail.str() << std::endl;
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
