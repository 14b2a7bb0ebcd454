#include <doctest.h>

#include <cmath>
#include <random>

#include "wardseq/error.hpp"
#include "wardseq/kernels.hpp"

using namespace wardseq;
using namespace wardseq::kernels;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng) * u(rng);
    return v;
}

}  // namespace

TEST_CASE("sampling: serial and parallel agree bit for bit") {
    const RealSeq s = RealSeq::parse("cos(3.14159265358979*sqrt(n)) + ln(n)/n");
    const Index hi = 3 * static_cast<Index>(kChunk) + 17;
    const auto a = sample(s, 1, hi, Exec::Serial);
    const auto b = sample(s, 1, hi, Exec::Parallel);
    CHECK(a == b);
    for (Index n : {Index{1}, Index{16384}, Index{16385}, hi}) CHECK(a[static_cast<std::size_t>(n - 1)] == s(n));
}

TEST_CASE("sampling reports the lowest failing index") {
    const RealSeq s = RealSeq::parse("ln(n - 40000)");
    for (Exec e : {Exec::Serial, Exec::Parallel}) {
        try {
            sample(s, 1, 100000, e);
            FAIL("expected EvalError");
        } catch (const EvalError& err) {
            CHECK(err.index() == 1);
        }
    }
    const RealSeq t = RealSeq::parse("1 / (n - 50000)");
    try {
        sample(t, 1, 100000);
        FAIL("expected EvalError");
    } catch (const EvalError& err) {
        CHECK(err.index() == 50000);
    }
}

TEST_CASE("deviation counts match a plain loop") {
    for (std::size_t n : {std::size_t{1}, std::size_t{1000}, kChunk, kChunk + 1, 5 * kChunk + 3}) {
        const auto v = noise(n, n);
        for (double eps : {0.01, 0.1, 0.5}) {
            Index naive = 0;
            for (double x : v) naive += std::abs(x - 0.1) >= eps ? 1 : 0;
            CHECK(count_deviations(v, 0.1, eps, Exec::Serial) == naive);
            CHECK(count_deviations(v, 0.1, eps, Exec::Parallel) == naive);
        }
    }
}

TEST_CASE("window peak density matches a plain loop") {
    const auto v = noise(4 * kChunk + 999, 99);
    const std::vector<Index> cps{16, 100, 5000, 20000, 65535, static_cast<Index>(v.size())};
    for (double eps : {0.05, 0.3, 0.9}) {
        const auto s = window_peak_density(v, 0.0, eps, cps, Exec::Serial);
        const auto p = window_peak_density(v, 0.0, eps, cps, Exec::Parallel);
        REQUIRE(s.size() == cps.size());
        for (std::size_t i = 0; i < cps.size(); ++i) {
            CHECK(s[i].at == p[i].at);
            CHECK(s[i].count == p[i].count);
        }
        // running count, best ratio over each window by exact cross-multiplication
        Index run = 0;
        std::size_t w = 0;
        Index best_at = 0, best_count = 0;
        for (Index m = 1; m <= static_cast<Index>(v.size()) && w < cps.size(); ++m) {
            run += std::abs(v[static_cast<std::size_t>(m - 1)]) >= eps ? 1 : 0;
            const Index lo = w == 0 ? cps[0] : cps[w - 1] + 1;
            if (m < lo) continue;
            if (best_at == 0 || static_cast<__int128>(run) * best_at > static_cast<__int128>(best_count) * m) {
                best_at = m;
                best_count = run;
            }
            if (m == cps[w]) {
                CHECK(s[w].at == best_at);
                CHECK(s[w].count == best_count);
                best_at = 0;
                ++w;
            }
        }
        CHECK(w == cps.size());
    }
    CHECK_THROWS_AS(window_peak_density(v, 0.0, 0.1, std::vector<Index>{10, 5}), ConfigError);
}

TEST_CASE("block counts match a plain loop") {
    const auto th = make_lacunary("poly:2", 400);
    const auto v = noise(static_cast<std::size_t>(th.k(400)), 5);
    const auto s = block_counts(v, th, 2, 400, 0.0, 0.25, Exec::Serial);
    const auto p = block_counts(v, th, 2, 400, 0.0, 0.25, Exec::Parallel);
    CHECK(s == p);
    for (int r = 2; r <= 400; ++r) {
        Index naive = 0;
        for (Index k = th.k(r - 1) + 1; k <= th.k(r); ++k) naive += std::abs(v[static_cast<std::size_t>(k - 1)]) >= 0.25;
        CHECK(s[static_cast<std::size_t>(r - 2)] == naive);
    }
}

TEST_CASE("window absolute maximum") {
    const auto v = noise(3 * kChunk, 11);
    const Index first = 10;
    const Index lo = 500, hi = 40000;
    const auto s = window_abs_max(v, first, lo, hi, Exec::Serial);
    const auto p = window_abs_max(v, first, lo, hi, Exec::Parallel);
    CHECK(s.at == p.at);
    CHECK(s.value == p.value);
    double best = -1.0;
    Index at = 0;
    for (Index n = lo; n <= hi; ++n) {
        const double a = std::abs(v[static_cast<std::size_t>(n - first)]);
        if (a > best) {
            best = a;
            at = n;
        }
    }
    CHECK(s.value == best);
    CHECK(s.at == at);
}
