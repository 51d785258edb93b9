#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "constructions.hpp"
#include "encodings.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "semantics.hpp"

using namespace cfa;

namespace {

struct Pair {
    Nfa m, n;
    std::string x;
    PathCounts cm, cn;
};

std::vector<Pair> random_pairs(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Pair> out;
    while ((int)out.size() < count) {
        Pair p;
        p.m = random_nfa(rng, 6, "01");
        p.n = random_nfa(rng, 6, "01");
        p.x = random_input(rng, "01", 5);
        p.cm = count_paths(p.m, p.x);
        p.cn = count_paths(p.n, p.x);
        out.push_back(std::move(p));
    }
    return out;
}

Dft identity_transducer() {
    Dft t;
    t.num_states = 1;
    t.alphabet = "01";
    t.output_alphabet = "01";
    t.delta[{0, LEND}] = {0, ""};
    t.delta[{0, REND}] = {0, ""};
    t.delta[{0, '0'}] = {0, "0"};
    t.delta[{0, '1'}] = {0, "1"};
    return t;
}

}  // namespace

TEST_CASE("complete_paths preserves accepting and eliminates improper") {
    for (const auto& p : random_pairs(200, 11)) {
        Nfa c = complete_paths(p.m);
        PathCounts cc = count_paths(c, p.x);
        CHECK(cc.accepting == p.cm.accepting);
        CHECK(cc.rejecting == p.cm.rejecting + p.cm.improper);
        CHECK(cc.improper == 0);
    }
}

TEST_CASE("branching normal form") {
    for (const auto& p : random_pairs(200, 12)) {
        NormalFormResult nf = branching_normal_form(p.m);
        PathCounts c = count_paths(nf.machine, p.x);
        Int pw = 1;
        for (std::size_t j = 0; j < p.x.size() + 2; ++j) pw *= nf.degree;
        CHECK(c.accepting == p.cm.accepting);
        CHECK(c.accepting + c.rejecting == pw);
        CHECK(c.improper == 0);
        CHECK(Int(nf.machine.num_states) <= 3 * Int(p.m.num_states) + nf.degree + 2);
    }
}

TEST_CASE("flip swaps the verdict counts") {
    for (const auto& p : random_pairs(100, 13)) {
        PathCounts c = count_paths(flip(p.m), p.x);
        CHECK(c.accepting == p.cm.rejecting);
        CHECK(c.rejecting == p.cm.accepting);
        CHECK(c.improper == p.cm.improper);
    }
}

TEST_CASE("split_rejecting turns accepting count into a gap") {
    for (const auto& p : random_pairs(200, 14)) {
        PathCounts c = count_paths(split_rejecting(p.m), p.x);
        CHECK(c.accepting == p.cm.accepting + p.cm.rejecting);
        CHECK(c.rejecting == p.cm.rejecting);
        CHECK(c.improper == p.cm.improper);
        CHECK(gap_value(split_rejecting(p.m), p.x) == p.cm.accepting);
    }
}

TEST_CASE("disjoint_sum adds all three counts") {
    for (const auto& p : random_pairs(200, 15)) {
        PathCounts c = count_paths(disjoint_sum(p.m, p.n), p.x);
        CHECK(c.accepting == p.cm.accepting + p.cn.accepting);
        CHECK(c.rejecting == p.cm.rejecting + p.cn.rejecting);
        CHECK(c.improper == p.cm.improper + p.cn.improper);
    }
}

TEST_CASE("sync_product multiplies accepting counts") {
    for (const auto& p : random_pairs(200, 16)) {
        PathCounts c = count_paths(sync_product(p.m, p.n), p.x);
        CHECK(c.accepting == p.cm.accepting * p.cn.accepting);
        CHECK(c.improper == 0);
    }
}

TEST_CASE("square_gap squares the gap and respects the size bound") {
    for (const auto& p : random_pairs(200, 17)) {
        Nfa sq = square_gap(p.m);
        Int g = p.cm.accepting - p.cm.rejecting;
        CHECK(gap_value(sq, p.x) == g * g);
        CHECK(Int(sq.num_states) <= Int(p.m.num_states) * p.m.num_states + 2);
    }
}

TEST_CASE("meet_cequal count formulas") {
    // worked example: counts (2,1) x (3,2) give 13 accepting, 9 rejecting
    Nfa a, b;
    for (Nfa* m : {&a, &b}) {
        m->alphabet = "0";
        m->add_edge(0, LEND, 1);
    }
    // a: REND fans into 2 accepts + 1 reject; b: 3 accepts + 2 rejects
    a.num_states = 6;
    a.accept = {2, 3};
    a.reject = {4};
    a.add_edge(1, '0', 1);
    for (State t : {2, 3, 4}) a.add_edge(1, REND, t);
    b.num_states = 8;
    b.accept = {2, 3, 4};
    b.reject = {5, 6};
    b.add_edge(1, '0', 1);
    for (State t : {2, 3, 4, 5, 6}) b.add_edge(1, REND, t);

    PathCounts c = count_paths(meet_cequal(a, b), "0");
    CHECK(c.accepting == 13);
    CHECK(c.rejecting == 9);

    for (const auto& p : random_pairs(200, 18)) {
        Int rm = p.cm.rejecting + p.cm.improper, rn = p.cn.rejecting + p.cn.improper;
        Int mix = p.cm.accepting * rn + rm * p.cn.accepting;
        PathCounts cc = count_paths(meet_cequal(p.m, p.n), p.x);
        CHECK(cc.accepting == p.cm.accepting * p.cn.accepting + mix);
        CHECK(cc.rejecting == rm * rn + mix);
    }
}

TEST_CASE("gap ring operations") {
    for (const auto& p : random_pairs(200, 19)) {
        Int g = p.cm.accepting - p.cm.rejecting, h = p.cn.accepting - p.cn.rejecting;
        CHECK(gap_value(gap_sum(p.m, p.n), p.x) == g + h);
        CHECK(gap_value(gap_product(p.m, p.n), p.x) == g * h);
        CHECK(gap_value(gap_of_difference(p.m, p.n), p.x) == p.cm.accepting - p.cn.accepting);
        CHECK(gap_value(complement_gapwise(p.m), p.x) == 1 - g);
    }
}

TEST_CASE("complement count identity") {
    for (const auto& p : random_pairs(100, 20)) {
        PathCounts c = count_paths(complement_gapwise(p.m), p.x);
        CHECK(c.accepting == p.cm.rejecting + 1);
        CHECK(c.rejecting == p.cm.accepting);
    }
}

TEST_CASE("transducer counter decodes its own output") {
    Dft t = identity_transducer();
    Nfa counter = counter_from_transducer(t);
    Nfa gapper = gap_from_transducer(t);
    CHECK(count_paths(counter, "").accepting == 0);  // empty output rejects everywhere
    CHECK(gap_value(gapper, "") == 0);
    for (int v = 0; v <= 40; ++v) {
        std::string pos = "1" + enc::bin(v), neg = "0" + enc::bin(v);
        CHECK(count_paths(counter, pos).accepting == v);
        CHECK(gap_value(gapper, pos) == v);
        CHECK(gap_value(gapper, neg) == -v);
    }
}

TEST_CASE("transducers must emit bits") {
    Dft t = identity_transducer();
    t.alphabet = "012";
    t.output_alphabet = "012";
    t.delta[{0, '2'}] = {0, "2"};
    CHECK_THROWS_AS(counter_from_transducer(t), Error);
}

TEST_CASE("homomorphic image and inverse") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        Nfa over_img = random_nfa(rng, 5, "01");
        Nfa over_dom = random_nfa(rng, 5, "ab");
        std::map<char, std::string> h{{'a', "0" + random_input(rng, "01", 2)},
                                      {'b', "1" + random_input(rng, "01", 2)}};
        std::string x = random_input(rng, "ab", 3), hx;
        for (char c : x) hx += h.at(c);
        CHECK(count_paths(hom_image(over_img, h), x).accepting == count_paths(over_img, hx).accepting);
        CHECK(count_paths(hom_inverse(over_dom, h), hx).accepting == count_paths(over_dom, x).accepting);
    }
}

TEST_CASE("worked example: h = {a -> 10, b -> 11}") {
    std::mt19937_64 rng(22);
    Nfa m = random_nfa(rng, 5, "ab");
    std::map<char, std::string> h{{'a', "10"}, {'b', "11"}};
    Nfa inv = hom_inverse(m, h);
    CHECK(count_paths(inv, "1011").accepting == count_paths(m, "ab").accepting);
    // off the image: every path is improper
    PathCounts off = count_paths(inv, "0");
    CHECK(off.accepting == 0);
    CHECK(off.rejecting == 0);
    int total_states = inv.num_states;
    CHECK(total_states <= m.num_states * 4);  // sc(M) * sum of image lengths
}

TEST_CASE("inverse homomorphism preconditions") {
    std::mt19937_64 rng(23);
    Nfa m = random_nfa(rng, 4, "ab");
    CHECK_THROWS_AS(hom_inverse(m, {{'a', ""}, {'b', "1"}}), Error);    // erasing
    CHECK_THROWS_AS(hom_inverse(m, {{'a', "1"}, {'b', "10"}}), Error);  // not prefix-free
    CHECK_THROWS_AS(hom_inverse(m, {{'a', "1"}}), Error);               // 'b' has no image
}

TEST_CASE("pfa conversion demands normal form") {
    std::mt19937_64 rng(24);
    Nfa m = random_nfa(rng, 5, "01");
    CHECK_THROWS_AS(nfa_to_pfa({m, 2}), Error);
    NormalFormResult nf = branching_normal_form(m);
    Pfa p = nfa_to_pfa(nf);
    for (const char* x : {"", "0", "0110"}) {
        Int pw = 1;
        for (std::size_t j = 0; j < std::string(x).size() + 2; ++j) pw *= nf.degree;
        CHECK(pfa_probabilities(p, x).accept == Rat(count_paths(nf.machine, x).accepting, pw));
    }
}

TEST_CASE("balanced bridge centers the gap on one half") {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 50; ++i) {
        Nfa m = random_nfa(rng, 5, "01");
        int degree = branching_normal_form(m).degree;
        Pfa p = gap_balanced_pfa(m);
        std::string x = random_input(rng, "01", 4);
        Int pw = 1;
        for (std::size_t j = 0; j < x.size() + 2; ++j) pw *= degree;
        CHECK(pfa_probabilities(p, x).accept == Rat(1, 2) + Rat(gap_value(m, x), 2 * pw));
    }
}
