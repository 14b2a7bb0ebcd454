#include <doctest.h>

#include <cmath>

#include "wardseq/error.hpp"
#include "wardseq/gallery.hpp"
#include "wardseq/methods.hpp"

using namespace wardseq;

namespace {

// Greedy block choice for k_r = r^2, written out directly.
std::vector<int> thm1_poly2_oracle(int j_max) {
    auto k = [](long long r) { return r * r; };
    std::vector<int> out;
    long long prev = 0;
    for (int j = 1; j <= j_max; ++j) {
        long long r = j == 1 ? 2 : prev + 2;
        while (!(j * k(r) < (j + 1) * k(r - 1) && (j == 1 || k(r - 1) > j * k(prev)))) ++r;
        out.push_back(static_cast<int>(r));
        prev = r;
    }
    return out;
}

std::vector<int> thm2_fact_oracle(int j_max) {
    std::vector<long long> k{0, 1};
    for (long long r = 2; r <= 20; ++r) k.push_back(k.back() * r);
    std::vector<int> out;
    long long prev = 0;
    for (int j = 1; j <= j_max; ++j) {
        long long r = j == 1 ? 2 : prev + 1;
        while (!(k[r] > j * k[r - 1] && k[r] > j + 3)) ++r;
        out.push_back(static_cast<int>(r));
        prev = r;
    }
    return out;
}

constexpr Index kH = Index{1} << 20;

}  // namespace

TEST_CASE("harmonic numbers") {
    long double acc = 0.0L;
    for (Index n = 1; n <= 200000; ++n) {
        acc += 1.0L / static_cast<long double>(n);
        if (n < 100 || n % 997 == 0) {
            CHECK(std::abs(harmonic(n) - static_cast<double>(acc)) <= 2e-15 * static_cast<double>(acc));
        }
    }
}

TEST_CASE("nested harmonic average") {
    const RealSeq s = builtin("nested_harmonic_avg").seq;
    // sum_{k <= n} H_k / k = (H_n^2 + H_n^(2)) / 2
    long double h = 0.0L, inner = 0.0L;
    for (Index n = 1; n <= 3000; ++n) {
        h += 1.0L / static_cast<long double>(n);
        inner += h / static_cast<long double>(n);
        if (n % 7 == 0 || n < 80) CHECK(std::abs(s(n) - static_cast<double>(inner)) <= 1e-12 * static_cast<double>(inner));
    }
}

TEST_CASE("zoo values") {
    CHECK(builtin("sqrt_n").seq(49) == 7.0);
    CHECK(builtin("identity").seq(12) == 12.0);
    CHECK(builtin("log10_n").seq(1000) == 3.0);
    CHECK(builtin("ln_n").seq(1) == 0.0);
    CHECK(builtin("alternating").seq(3) == -1.0);
    CHECK(builtin("alternating").seq(4) == 1.0);
    CHECK(std::abs(builtin("cos_pi_sqrt").seq(9) + 1.0) <= 1e-12);
    CHECK(builtin("cos_6log").seq(5) == std::cos(6.0 * std::log(6.0)));
    const RealSeq sq = builtin("square_indicator").seq;
    for (Index n = 1; n <= 400; ++n) {
        const auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
        CHECK(sq(n) == (r * r == n ? 1.0 : 0.0));
    }
    const RealSeq il = builtin("interleave(sqrt_n,ln_n)").seq;
    CHECK(il(1) == 1.0);
    CHECK(il(2) == 0.0);
    CHECK(il(7) == 2.0);
    CHECK_THROWS_AS(builtin("nope"), ConfigError);
    CHECK_THROWS_AS(builtin("random_spikes:x"), ConfigError);
    CHECK(builtin_names().size() == 10);
}

TEST_CASE("expectations are consistent") {
    for (const auto& name : builtin_names()) CHECK_MESSAGE(expectation_conflicts(builtin(name).expected).empty(), name);
    CHECK(expectation_conflicts(builtin("random_spikes:4").expected).empty());
    const Expectations bad{{"quasi_cauchy", Expect::Member}, {"stat_qc", Expect::NonMember}};
    CHECK_FALSE(expectation_conflicts(bad).empty());
    const Expectations bad2{{"cauchy", Expect::Member}, {"bounded", Expect::NonMember}};
    CHECK_FALSE(expectation_conflicts(bad2).empty());
}

TEST_CASE("random spikes") {
    const RealSeq a = random_spikes(3);
    const RealSeq b = random_spikes(3);
    const RealSeq c = random_spikes(4);
    Index count = 0, differ = 0;
    const Index n = 1 << 20;
    for (Index k = 1; k <= n; ++k) {
        CHECK_FALSE(a(k) != b(k));
        count += a(k) != 0.0;
        differ += a(k) != c(k);
    }
    // expected count is sum min(1, 0.5/sqrt(k)) ~ sqrt(n)
    double expect = 0.0;
    for (Index k = 1; k <= n; ++k) expect += std::min(1.0, 0.5 / std::sqrt(static_cast<double>(k)));
    CHECK(std::abs(static_cast<double>(count) - expect) <= 5.0 * std::sqrt(expect));
    CHECK(differ > 0);
}

TEST_CASE("thm1 construction on poly:2") {
    const auto poly = make_lacunary_covering(SchemeSpec::parse("poly:2"), kH);
    const auto con = thm1_counterexample(poly, 1.0, 6);
    CHECK(con.selection.r_js == thm1_poly2_oracle(6));
    CHECK(con.selection.r_js == std::vector<int>{4, 7, 14, 30, 69, 171});
    CHECK(recheck_constraints(con.selection, con.theta));

    // first block: 1 * 16 < 2 * 9 is the first success
    CHECK(con.selection.constraints_log.front().lhs == 16);
    CHECK(con.selection.constraints_log.front().rhs == 18);

    std::vector<char> in_block(static_cast<std::size_t>(con.theta.k(171)) + 2, 0);
    for (int r : con.selection.r_js) {
        const auto I = con.theta.interval(r);
        for (Index k = I.first; k <= I.last; ++k) {
            in_block[static_cast<std::size_t>(k)] = 1;
            CHECK(con.seq(k) == (k % 2 == 0 ? 2.0 : 1.0));
        }
        const auto bd = block_density(delta(con.seq), con.theta, 0.0, 0.5, r);
        CHECK(bd.density >= 0.9);
    }
    for (Index k = 1; k <= con.theta.k(171) + 1; ++k) {
        if (!in_block[static_cast<std::size_t>(k)]) CHECK(con.seq(k) == 0.0);
    }
    for (std::size_t j = 1; j < con.selection.r_js.size(); ++j) {
        CHECK(con.selection.r_js[j] >= con.selection.r_js[j - 1] + 2);
    }
}

TEST_CASE("thm1 construction scales with c") {
    const auto poly = make_lacunary_covering(SchemeSpec::parse("poly:2"), 100000);
    const auto con = thm1_counterexample(poly, 0.25, 4);
    const auto I = con.theta.interval(con.selection.r_js.back());
    for (Index k = I.first; k < I.last; ++k) CHECK(std::abs(con.seq(k + 1) - con.seq(k)) == 0.25);
    CHECK_THROWS_AS(thm1_counterexample(poly, 0.0, 4), ConfigError);
    CHECK_THROWS_AS(thm1_counterexample(poly, 1.0, 0), ConfigError);
}

TEST_CASE("thm1 construction refuses ratio-bounded-away schemes") {
    CHECK_THROWS_AS(thm1_counterexample(make_lacunary("geo:2", 20), 1.0, 4), ConfigError);
}

TEST_CASE("thm1 selection exhaustion") {
    const auto poly = make_lacunary_covering(SchemeSpec::parse("poly:2"), 100000);
    CHECK_THROWS_AS(thm1_counterexample(poly, 1.0, 7, 100000), SelectionError);
}

TEST_CASE("tampered constraint logs are caught") {
    const auto poly = make_lacunary_covering(SchemeSpec::parse("poly:2"), kH);
    auto con = thm1_counterexample(poly, 1.0, 5);
    auto sel = con.selection;
    sel.constraints_log[2].lhs += 1;
    CHECK_FALSE(recheck_constraints(sel, con.theta));
    sel = con.selection;
    sel.constraints_log.back().r += 1;
    CHECK_FALSE(recheck_constraints(sel, con.theta));
}

TEST_CASE("thm2 construction on fact") {
    const auto fact = make_lacunary_covering(SchemeSpec::parse("fact"), kH);
    const auto con = thm2_counterexample(fact, 1.0, 8);
    CHECK(con.selection.r_js == thm2_fact_oracle(8));
    CHECK(con.selection.r_js == std::vector<int>{3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(recheck_constraints(con.selection, con.theta));
    for (std::size_t j = 0; j < con.selection.r_js.size(); ++j) {
        const int r = con.selection.r_js[j];
        CHECK(con.theta.q(r) > static_cast<double>(j + 1));
        CHECK(2 * con.theta.k(r - 1) <= con.theta.k(r));
    }
    // support is (k_{r_j - 1}, 2 k_{r_j - 1}] for each j
    for (Index k = 1; k <= 2 * con.theta.k(9) + 5; ++k) {
        bool inside = false;
        for (int r : con.selection.r_js) inside = inside || (k > con.theta.k(r - 1) && k <= 2 * con.theta.k(r - 1));
        if (!inside) CHECK(con.seq(k) == 0.0);
        else CHECK(con.seq(k) == (k % 2 == 0 ? 2.0 : 1.0));
    }
    CHECK(con.selection.notes.empty());
    CHECK_THROWS_AS(thm2_counterexample(make_lacunary("geo:2", 20), 1.0, 4), ConfigError);
}

TEST_CASE("gallery entries and corpus") {
    const auto poly = make_lacunary_covering(SchemeSpec::parse("poly:2"), 1 << 16);
    const auto e = gallery_entry("thm1", poly, 1.0, 4);
    CHECK(e.id == "thm1");
    CHECK(e.expected.at("stat_qc") == Expect::Member);
    CHECK(gallery_entry("sqrt_n", poly).seq(16) == 4.0);
    const auto corpus = standard_corpus();
    CHECK(corpus.size() == 20);
    for (const auto& c : corpus) CHECK(expectation_conflicts(c.expected).empty());
}
