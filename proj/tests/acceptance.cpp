// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "wardseq/cli.hpp"
#include "wardseq/gallery.hpp"
#include "wardseq/methods.hpp"
#include "wardseq/probe.hpp"
#include "wardseq/scenarios.hpp"
#include "wardseq/wardclass.hpp"

using namespace wardseq;

namespace {

constexpr Index kH = Index{1} << 20;
constexpr double kMaxSeconds = 30.0;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d: %s  %s  [%s]\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// |{k <= n : |seq(k+1) - seq(k)| >= eps}| by pointwise evaluation
Index naive_jump_count(const RealSeq& s, double eps, Index lo, Index hi) {
    Index c = 0;
    double prev = s(lo);
    for (Index k = lo; k <= hi; ++k) {
        const double next = s(k + 1);
        c += std::abs(next - prev) >= eps ? 1 : 0;
        prev = next;
    }
    return c;
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig cfg;
    cfg.theta = "poly:2";
    cfg.j_max = 6;
    cfg.horizon = kH;
    const auto res = verify_thm1(cfg);
    const double secs = seconds_since(t0);

    // independent recount on the construction
    const auto poly = make_lacunary_covering(SchemeSpec::parse("poly:2"), kH);
    const auto con = thm1_counterexample(poly, 1.0, 6);
    bool falling = true;
    Index prev_c = -1, prev_m = 1, last_c = 0;
    for (Index m : default_checkpoints(kH)) {
        const Index c = naive_jump_count(con.seq, 1.0, 1, m);
        if (prev_c >= 0 && static_cast<__int128>(c) * prev_m > static_cast<__int128>(prev_c) * m) falling = false;
        prev_c = c;
        prev_m = m;
        last_c = c;
    }
    const bool sparse = last_c * 20 < kH;
    bool dense = true;
    std::ostringstream blocks;
    for (int r : con.selection.r_js) {
        const auto I = con.theta.interval(r);
        const Index c = naive_jump_count(con.seq, 0.5, I.first, I.last);
        dense = dense && c * 10 >= I.size() * 9;
        blocks << (blocks.tellp() ? "," : "") << c << "/" << I.size();
    }
    std::ostringstream d;
    d << "global " << last_c << "/" << kH << ", blocks " << blocks.str() << ", scenario "
      << (res.passed() ? "PASS" : "FAIL") << ", " << secs << " s";
    report(1, res.passed() && sparse && falling && dense && secs < kMaxSeconds,
           "thm1 poly:2: global density < 0.05 and falling, selected block densities >= 0.9", d.str());
}

void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig cfg;
    cfg.theta = "fact";
    cfg.horizon = kH;
    const auto res = verify_thm2(cfg);
    const double secs = seconds_since(t0);

    const auto fact = make_lacunary_covering(SchemeSpec::parse("fact"), kH);
    const auto con = thm2_counterexample(fact, 1.0, kDefaultJMax);
    bool bounds = true, halves = true;
    std::ostringstream d;
    for (int j = 2; j <= 6; ++j) {
        const int r = con.selection.r_js[static_cast<std::size_t>(j - 1)];
        const Index h = con.theta.h(r);
        const Index upto = naive_jump_count(con.seq, 1.0, 1, con.theta.k(r));
        bounds = bounds && upto * (j - 1) < h;
        const Index K2 = 2 * con.theta.k(r - 1);
        const Index half = naive_jump_count(con.seq, 1.0, 1, K2);
        halves = halves && half * 100 >= 45 * K2;
        d << "j=" << j << ": " << upto << "/" << h << ", " << half << "/" << K2 << "; ";
    }
    d << "scenario " << (res.passed() ? "PASS" : "FAIL") << ", " << secs << " s";
    report(2, res.passed() && bounds && halves && secs < kMaxSeconds,
           "thm2 fact: count/h_{r_j} < 1/(j-1) exactly, density at 2k_{r_j-1} >= 0.45", d.str());
}

void criteria3and4() {
    const auto geo = make_lacunary_covering(SchemeSpec::parse("geo:2"), kH);
    DetectorParams p;
    p.horizon = kH;
    const auto corpus = standard_corpus();
    int holds = 0, violations = 0, disagreements = 0;
    for (const auto& e : corpus) {
        const Verdict s = is_stat_quasi_cauchy(e.seq, p);
        const Verdict l = is_lac_stat_quasi_cauchy(e.seq, geo, p);
        if (s.status == Status::Holds) {
            ++holds;
            if (l.status == Status::Fails) ++violations;
        }
        const bool opposite = (s.status == Status::Holds && l.status == Status::Fails) ||
                              (s.status == Status::Fails && l.status == Status::Holds);
        if (opposite) ++disagreements;
    }
    const bool margin = satisfies_liminf_margin(geo);
    std::ostringstream d3, d4;
    d3 << corpus.size() << " sequences, " << holds << " stat_qc Holds, " << violations << " Holds->Fails";
    d4 << disagreements << " Holds/Fails disagreements, tail inf q_r > 1.05: " << (margin ? "yes" : "no");
    report(3, corpus.size() == 20 && holds > 0 && violations == 0,
           "geo:2 corpus: stat_qc Holds never meets lac_stat_qc Fails", d3.str());
    report(4, margin && disagreements == 0, "geo:2 corpus: stat_qc and lac_stat_qc agree up to Inconclusive",
           d4.str());
}

double evidence(const Verdict& v, const std::string& label, double at) {
    for (const auto& e : v.evidence) {
        if (e.label == label && e.at == at) return e.value;
    }
    return std::nan("");
}

void criterion5() {
    std::ostringstream d;
    const auto sq = is_quasi_cauchy(builtin("sqrt_n").seq, kH, 1e-2);
    const double tail = sq.evidence.back().value;
    const double bound = 1.0 / (2.0 * std::sqrt(static_cast<double>(kH / 2)));
    const bool a = sq.status == Status::Holds && tail <= bound;
    d << "sqrt_n qc " << to_string(sq.status) << " tail " << tail << " <= " << bound;

    const auto alt = is_quasi_cauchy(builtin("alternating").seq, kH, 1e-2);
    const bool b = alt.status == Status::Fails;
    d << "; alternating qc " << to_string(alt.status);

    const RealSeq cps = builtin("cos_pi_sqrt").seq;
    const auto cq = is_quasi_cauchy(cps, kH, 1e-2);
    const auto cs = is_slowly_oscillating(cps, {1.01, 1.05, 1.1, 1.5}, kH, 0.1);
    bool c = cq.status == Status::Holds && cs.status == Status::Fails && cs.witnesses.size() == 2;
    if (c) {
        const Index n = cs.witnesses[0], k = cs.witnesses[1];
        const double gap = std::abs(cps(k) - cps(n));
        c = n < k && k <= static_cast<Index>(std::floor(1.01 * static_cast<double>(n))) && gap >= 1.0;
        d << "; cos_pi_sqrt qc Holds, so Fails at (n, k) = (" << n << ", " << k << ") gap " << gap;
    }

    const auto lg = is_slowly_oscillating(builtin("log10_n").seq, {1.01}, kH, 0.1);
    const double M = evidence(lg, "tail_sup_M", 1.01);
    const bool e = lg.status == Status::Holds && M <= std::log10(1.01) + 1e-9;
    d << "; log10_n so " << to_string(lg.status) << " M " << M;
    report(5, a && b && c && e, "zoo verdicts", d.str());
}

void criterion6() {
    const auto alt = abel_limit(RealSeq::parse("(-1)^n", 0), {0.9, 0.99, 0.999});
    const double x = 0.999;
    const double closed = (1.0 - x) / (1.0 + x);
    const double err = std::abs(alt.estimates.back().value - closed);
    const auto seven = abel_limit(RealSeq::constant(7.0, 0), {0.9, 0.99, 0.999});
    double worst = 0.0;
    for (const auto& est : seven.estimates) worst = std::max(worst, std::abs(est.value - 7.0));
    std::ostringstream d;
    d << "(-1)^n at 0.999: " << alt.estimates.back().value << " vs " << closed << " (err " << err
      << "); constant 7 max err " << worst;
    report(6, err <= 1e-6 && worst <= 1e-9, "Abel means", d.str());
}

void criterion7() {
    const auto geo = make_lacunary_covering(SchemeSpec::parse("geo:2"), kH);
    DetectorParams p;
    p.horizon = kH;
    const auto sq = preservation_report(FuncSpec::parse("x^2"), {builtin("sqrt_n")}, geo, p);
    const auto lin = preservation_report(FuncSpec::parse("2*x + 1"), standard_corpus(), geo, p);
    bool breaks = false;
    for (const auto& s : sq.summary) {
        if (s.type == "delta_s_theta") breaks = s.outcome == Outcome::Fails;
    }
    bool keeps = false;
    std::string other;
    for (const auto& s : lin.summary) {
        if (s.type == "delta_s_theta") keeps = s.outcome == Outcome::Supports;
        else other += " " + s.type + "=" + to_string(s.outcome);
    }
    std::ostringstream d;
    d << "x^2 on sqrt_n (delta s_theta) " << (breaks ? "Fails" : "Supports") << "; 2x+1 on "
      << lin.witnesses.size() << " witnesses (delta s_theta) " << (keeps ? "Supports" : "Fails") << ";" << other
      << "; " << lin.consistency_issues.size() << " consistency issues";
    report(7, breaks && keeps && lin.consistency_issues.empty(), "lacunary statistical ward continuity probe", d.str());
}

void criterion8() {
    const auto sq = ward_compactness_probe(RealSeq::parse("sqrt(n)"), 1, 100000, 1.0);
    const auto sn = ward_compactness_probe(RealSeq::parse("sin(n)"), 1, 100000, 1.0);
    std::ostringstream d;
    d << "sqrt(n) " << to_string(sq.status) << " with " << sq.witnesses.size() << " escape witnesses; sin(n) "
      << to_string(sn.status);
    report(8, sq.status == Status::Fails && sq.witnesses.size() == 8 && sn.status == Status::Holds,
           "boundedness probe", d.str());
}

void criterion9() {
    auto once = [] {
        std::ostringstream out, err;
        const int code = run_cli({"verify", "thm1", "--theta", "poly:2", "--format", "json"}, out, err);
        return std::make_pair(code, out.str());
    };
    const auto a = once();
    const auto b = once();
    std::ostringstream d;
    d << a.second.size() << " bytes, exit codes " << a.first << "/" << b.first;
    report(9, a.first == 0 && b.first == 0 && a.second == b.second && !a.second.empty(),
           "verify thm1 JSON is byte-identical across runs", d.str());
}

void criterion10() {
    std::mt19937_64 rng(0xACCE97);
    std::vector<RealSeq> pool;
    for (const char* t : {"sin(n)", "1/sqrt(n)", "(-1)^n/ln(n+1)", "floor(sqrt(n)) - sqrt(n)", "cos(6*ln(n+1))",
                          "n/1000", "(1 + (-1)^n)/2"}) {
        pool.push_back(RealSeq::parse(t));
    }
    for (const auto& name : builtin_names()) pool.push_back(builtin(name).seq);
    for (std::uint64_t s = 1; s <= 3; ++s) pool.push_back(random_spikes(s));

    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<Index> pick_n(1, 10000);
    std::uniform_real_distribution<double> pick_eps(1e-3, 2.0);
    std::uniform_real_distribution<double> pick_ell(-1.0, 1.0);
    int mismatches = 0;
    for (int t = 0; t < 100; ++t) {
        const RealSeq& s = pool[pick(rng)];
        const Index n = pick_n(rng);
        const double eps = pick_eps(rng);
        const double ell = pick_ell(rng);
        Index naive = 0;
        for (Index k = 1; k <= n; ++k) {
            if (std::abs(s(k) - ell) >= eps) ++naive;
        }
        const auto got = counting_density(s, ell, eps, n);
        if (got.count != naive || got.density != static_cast<double>(naive) / static_cast<double>(n)) ++mismatches;
    }
    report(10, mismatches == 0, "counting_density matches a naive recount on 100 random triples",
           std::to_string(mismatches) + " mismatches");
}

}  // namespace

int main() {
    const std::function<void()> steps[] = {criterion1, criterion2, criteria3and4, criterion5,
                                           criterion6, criterion7, criterion8,     criterion9, criterion10};
    for (const auto& step : steps) {
        try {
            step();
        } catch (const std::exception& e) {
            std::printf("error: %s\n", e.what());
            ++failures;
        }
    }
    std::printf("%s: %d failing\n", failures == 0 ? "all criteria PASS" : "acceptance FAILED", failures);
    return failures == 0 ? 0 : 1;
}
