#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "constructions.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "harness.hpp"
#include "machines.hpp"
#include "semantics.hpp"

using namespace cfa;

TEST_CASE("hand-checked path counts") {
    // start branches on '1'; REND splits into accept and reject
    Nfa m;
    m.num_states = 3;
    m.alphabet = "01";
    m.accept = {1};
    m.reject = {2};
    m.add_edge(0, LEND, 0);
    m.add_edge(0, '0', 0);
    m.add_edge(0, '1', 0);
    m.add_edge(0, '1', 1);  // accepting mid-input: frozen until REND
    m.add_edge(0, REND, 1);
    m.add_edge(0, REND, 2);

    PathCounts c = count_paths(m, "11");
    // paths: one frozen accept per '1' + the surviving lane splitting at REND
    CHECK(c.accepting == 3);
    CHECK(c.rejecting == 1);
    CHECK(c.improper == 0);
    CHECK(gap_value(m, "11") == 2);

    c = count_paths(m, "0");
    CHECK(c.accepting == 1);
    CHECK(c.rejecting == 1);
}

TEST_CASE("paths entering a halting state freeze instead of stepping") {
    Nfa m;
    m.num_states = 2;
    m.alphabet = "0";
    m.accept = {1};
    m.add_edge(0, LEND, 1);
    // accepting right after LEND; remaining input must not matter
    for (const char* x : {"", "0", "000"}) {
        PathCounts c = count_paths(m, x);
        CHECK(c.accepting == 1);
        CHECK(c.total() == 1);
    }
}

TEST_CASE("dead branches and live-at-end paths are improper") {
    Nfa m;
    m.num_states = 1;
    m.alphabet = "0";
    m.add_edge(0, LEND, 0);
    m.add_edge(0, '0', 0);  // no REND move: alive after the endmarker
    CHECK(count_paths(m, "00").improper == 1);

    Nfa dead;
    dead.num_states = 1;
    dead.alphabet = "0";
    dead.add_edge(0, LEND, 0);  // no move on '0': branch dies
    CHECK(count_paths(dead, "0").improper == 1);
}

TEST_CASE("table walk agrees with explicit path enumeration") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        Nfa m = random_nfa(rng, 6, i % 2 ? "01" : "012");
        std::string x = random_input(rng, m.alphabet, 5);
        try {
            auto paths = enumerate_paths(m, x, 100'000);
            CHECK(count_paths(m, x) == tally(paths));
            ++checked;
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::CapExceeded);
        }
    }
    CHECK(checked > 250);
}

TEST_CASE("enumerated paths start at the start state and end per label") {
    std::mt19937_64 rng(7);
    Nfa m = random_nfa(rng, 5, "01");
    for (const auto& p : enumerate_paths(m, "010")) {
        REQUIRE(!p.states.empty());
        CHECK(p.states.front() == m.start);
        if (p.label == PathLabel::Accepting) CHECK(m.accept.count(p.states.back()));
        if (p.label == PathLabel::Rejecting) CHECK(m.reject.count(p.states.back()));
    }
}

TEST_CASE("alphabet is enforced") {
    std::mt19937_64 rng(7);
    Nfa m = random_nfa(rng, 4, "01");
    CHECK_THROWS_AS(count_paths(m, "2"), Error);
}

TEST_CASE("pfa probability mass is conserved") {
    Pfa p = nfa_to_pfa(branching_normal_form(build_machine("Lsp", 2).nfa()));
    for (const char* x : {"#", "0#0", "00#0", "1#111"}) {
        PfaResult r = pfa_probabilities(p, x);
        CHECK(r.accept + r.reject + r.other == 1);
        CHECK(r.other == 0);  // normal-form machines halt on every path
    }
}

TEST_CASE("transducer runs and undefined transitions") {
    Dft t;
    t.num_states = 1;
    t.alphabet = "01";
    t.output_alphabet = "01";
    t.delta[{0, LEND}] = {0, ""};
    t.delta[{0, REND}] = {0, ""};
    t.delta[{0, '0'}] = {0, "00"};
    t.delta[{0, '1'}] = {0, "1"};
    CHECK(transduce(t, "101") == "1001");
    t.delta.erase({0, '0'});
    CHECK(!transduce(t, "0"));
}

TEST_CASE("pushdown run outcome on the dot-product family") {
    Dpda d = build_machine("Ldot", 2).dpda();
    const PromiseFamily& fam = family("Ldot");
    for (const auto& x : fam.enumerate(2, 0)) {
        DpdaOutcome out = dpda_run(d, x);
        CHECK(out.turns == 1);
        bool accepted = out.verdict == DpdaOutcome::Verdict::Accept;
        CHECK(accepted == (fam.classify(2, x) == Verdict3::Positive));
    }
}
