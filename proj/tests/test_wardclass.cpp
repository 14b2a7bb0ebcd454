#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "wardseq/error.hpp"
#include "wardseq/gallery.hpp"
#include "wardseq/wardclass.hpp"

using namespace wardseq;

namespace {

constexpr Index kH = Index{1} << 20;

const char* kCosPiSqrt = "cos(3.14159265358979*sqrt(n))";

double evidence(const Verdict& v, const std::string& label, double at) {
    for (const auto& e : v.evidence) {
        if (e.label == label && e.at == at) return e.value;
    }
    return std::nan("");
}

}  // namespace

TEST_CASE("quasi-Cauchy detector") {
    const auto sq = is_quasi_cauchy(RealSeq::parse("sqrt(n)"), 1000000, 1e-2);
    CHECK(sq.status == Status::Holds);
    // tail max of delta sqrt over [N/2, N] sits at N/2
    const double tail = sq.evidence.back().value;
    CHECK(std::abs(tail - (std::sqrt(500001.0) - std::sqrt(500000.0))) <= 1e-15);

    CHECK(is_quasi_cauchy(RealSeq::parse("n"), kH, 1e-2).status == Status::Fails);
    CHECK(is_quasi_cauchy(RealSeq::parse("(-1)^n"), kH, 1e-2).status == Status::Fails);
    CHECK(is_quasi_cauchy(RealSeq::parse(kCosPiSqrt), 1000000, 5e-2).status == Status::Holds);
    CHECK(is_quasi_cauchy(RealSeq::constant(4.0), kH, 1e-2).status == Status::Holds);
    const auto f = is_quasi_cauchy(RealSeq::parse("n"), kH, 1e-2);
    CHECK(f.witnesses.size() == 3);
}

TEST_CASE("statistical quasi-Cauchy detector") {
    DetectorParams p;
    CHECK(is_stat_quasi_cauchy(RealSeq::parse("sqrt(n)"), p).status == Status::Holds);
    CHECK(is_stat_quasi_cauchy(RealSeq::parse("n"), p).status == Status::Fails);
    CHECK(is_stat_quasi_cauchy(RealSeq::parse("(-1)^n"), p).status == Status::Fails);
    // jumps only at the squares: not quasi-Cauchy, yet statistically so
    const RealSeq sq = builtin("square_indicator").seq;
    CHECK(is_quasi_cauchy(sq, kH, 1e-2).status == Status::Fails);
    CHECK(is_stat_quasi_cauchy(sq, p).status == Status::Holds);
}

TEST_CASE("lacunary statistical quasi-Cauchy detector") {
    DetectorParams p;
    const auto geo = make_lacunary_covering(SchemeSpec::parse("geo:2"), kH);
    CHECK(is_lac_stat_quasi_cauchy(RealSeq::parse("sqrt(n)"), geo, p).status == Status::Holds);
    CHECK(is_lac_stat_quasi_cauchy(RealSeq::constant(1.0), geo, p).status == Status::Holds);
    CHECK(is_lac_stat_quasi_cauchy(RealSeq::parse("(-1)^n"), geo, p).status == Status::Fails);
    CHECK(is_lac_stat_quasi_cauchy(builtin("square_indicator").seq, geo, p).status == Status::Holds);

    const auto poly = make_lacunary_covering(SchemeSpec::parse("poly:2"), kH);
    const auto con = thm1_counterexample(poly, 1.0, 6);
    DetectorParams q;
    q.r_checkpoints = con.selection.r_js;
    q.eps_grid = {0.5};
    CHECK(is_lac_stat_quasi_cauchy(con.seq, con.theta, q).status == Status::Fails);
}

TEST_CASE("slow oscillation detector") {
    const auto lg = is_slowly_oscillating(RealSeq::parse("log10(n)"), {1.01, 1.1}, kH, 0.1);
    CHECK(lg.status == Status::Holds);
    // M(lambda, n) = log10(floor(lambda n) / n) <= log10(lambda)
    CHECK(evidence(lg, "tail_sup_M", 1.01) <= std::log10(1.01) + 1e-9);
    CHECK(evidence(lg, "tail_sup_M", 1.1) <= std::log10(1.1) + 1e-9);
    CHECK(evidence(lg, "tail_sup_M", 1.1) >= std::log10(1.1) - 1e-5);

    const auto c = is_slowly_oscillating(RealSeq::constant(2.0), {1.01, 1.5}, kH, 0.1);
    CHECK(c.status == Status::Holds);
    CHECK(evidence(c, "tail_sup_M", 1.5) == 0.0);

    const RealSeq cps = RealSeq::parse(kCosPiSqrt);
    const auto w = is_slowly_oscillating(cps, {1.01, 1.05, 1.1, 1.5}, kH, 0.1);
    CHECK(w.status == Status::Fails);
    REQUIRE(w.witnesses.size() == 2);
    const Index n = w.witnesses[0], k = w.witnesses[1];
    CHECK(k > n);
    CHECK(k <= static_cast<Index>(std::floor(1.01 * static_cast<double>(n))));
    CHECK(std::abs(cps(k) - cps(n)) >= 1.0);

    // (sqrt(lambda) - 1) sqrt(n) grows without bound
    const auto sq = is_slowly_oscillating(RealSeq::parse("sqrt(n)"), {1.01, 1.05, 1.1, 1.5}, kH, 0.1);
    CHECK(sq.status == Status::Fails);
    CHECK(evidence(sq, "tail_sup_M", 1.01) >= (std::sqrt(1.01) - 1.0) * std::sqrt(kH / 2.0) * 0.99);
}

TEST_CASE("delta quasi-Cauchy detector") {
    DetectorParams p;
    CHECK(is_delta_quasi_cauchy(RealSeq::parse("n"), p).status == Status::Holds);
    CHECK(is_delta_quasi_cauchy(RealSeq::parse("sqrt(n)"), p).status == Status::Holds);
    CHECK(is_delta_quasi_cauchy(RealSeq::parse("(-1)^n"), p).status == Status::Fails);
    CHECK(is_delta_quasi_cauchy(RealSeq::parse("n^2"), p).status == Status::Fails);
}

TEST_CASE("convergence detector") {
    const auto v = is_convergent(RealSeq::parse("3 + 1/n"), kH, 1e-3);
    CHECK(v.status == Status::Holds);
    CHECK(std::abs(evidence(v, "limit", static_cast<double>(kH)) - 3.0) <= 1e-5);
    CHECK(is_convergent(RealSeq::parse("(-1)^n"), kH, 1e-3).status == Status::Fails);
}

TEST_CASE("classify") {
    const auto geo = make_lacunary_covering(SchemeSpec::parse("geo:2"), kH);
    const auto sq = classify(RealSeq::parse("sqrt(n)"), geo);
    CHECK(sq.quasi_cauchy.status == Status::Holds);
    CHECK(sq.stat_qc.status == Status::Holds);
    CHECK(sq.lac_stat_qc.status == Status::Holds);
    CHECK(sq.slowly_oscillating.status == Status::Fails);
    CHECK(sq.delta_qc.status == Status::Holds);
    CHECK(sq.theta_margin_ok);
    CHECK(report_consistent(sq));

    const auto lin = classify(RealSeq::parse("n"), geo);
    CHECK(lin.quasi_cauchy.status == Status::Fails);
    CHECK(lin.stat_qc.status == Status::Fails);
    CHECK(lin.lac_stat_qc.status == Status::Fails);
    CHECK(lin.slowly_oscillating.status == Status::Fails);
    CHECK(lin.delta_qc.status == Status::Holds);

    const auto poly = make_lacunary_covering(SchemeSpec::parse("poly:2"), kH);
    CHECK_FALSE(classify(RealSeq::constant(0.0), poly).theta_margin_ok);
}

TEST_CASE("classify on the thm1 construction on its selected blocks") {
    const auto poly = make_lacunary_covering(SchemeSpec::parse("poly:2"), kH);
    const auto con = thm1_counterexample(poly, 1.0, 6);
    DetectorParams p;
    p.r_checkpoints = con.selection.r_js;
    const auto rep = classify(con.seq, con.theta, p);
    CHECK(rep.stat_qc.status == Status::Holds);
    CHECK(rep.lac_stat_qc.status == Status::Fails);
    CHECK_FALSE(rep.theta_margin_ok);
    CHECK(report_consistent(rep));
}

TEST_CASE("implication violations are repaired or downgraded") {
    // an eps far below the tail differences makes stat_qc Fail while quasi_cauchy Holds
    DetectorParams p;
    p.horizon = Index{1} << 18;
    p.horizon_cap = Index{1} << 20;
    p.eps_grid = {1e-4};
    const auto geo = make_lacunary_covering(SchemeSpec::parse("geo:2"), p.horizon);
    const auto rep = classify(RealSeq::parse("sqrt(n)"), geo, p);
    CHECK(rep.quasi_cauchy.status == Status::Inconclusive);
    CHECK(rep.stat_qc.status == Status::Inconclusive);
    CHECK(report_consistent(rep));
    bool rerun = false;
    for (const auto& n : rep.notes) rerun = rerun || n.find("rerun at horizon 1048576") != std::string::npos;
    CHECK(rerun);
}

TEST_CASE("implication chain holds at verdict level on the corpus") {
    DetectorParams p;
    p.horizon = Index{1} << 18;
    const auto geo = make_lacunary_covering(SchemeSpec::parse("geo:2"), p.horizon);
    for (const auto& e : standard_corpus()) {
        const auto rep = classify(e.seq, geo, p);
        CHECK_MESSAGE(report_consistent(rep), e.id);
        if (rep.slowly_oscillating.status == Status::Holds) CHECK(rep.quasi_cauchy.status != Status::Fails);
        if (rep.quasi_cauchy.status == Status::Holds) CHECK(rep.stat_qc.status != Status::Fails);
        if (rep.stat_qc.status == Status::Holds) CHECK(rep.lac_stat_qc.status != Status::Fails);
    }
}

TEST_CASE("horizon cap") {
    DetectorParams p;
    p.horizon = kHorizonCap * 2;
    const auto geo = make_lacunary("geo:2", 10);
    CHECK_THROWS_AS(classify(RealSeq::parse("n"), geo, p), ConfigError);
    CHECK(effective_horizon_cap() <= kHorizonCap);
}
