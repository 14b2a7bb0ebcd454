#include "wardseq/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "wardseq/error.hpp"
#include "wardseq/wardclass.hpp"

namespace wardseq {

std::string to_string(Expect e) {
    switch (e) {
        case Expect::Member: return "member";
        case Expect::NonMember: return "non-member";
        case Expect::Unspecified: return "unspecified";
    }
    return "?";
}

std::vector<std::string> expectation_conflicts(const Expectations& e) {
    static const std::pair<const char*, const char*> chain[] = {
        {"cauchy", "slowly_oscillating"},
        {"slowly_oscillating", "quasi_cauchy"},
        {"quasi_cauchy", "stat_qc"},
        {"quasi_cauchy", "delta_qc"},
        {"cauchy", "bounded"},
    };
    auto get = [&](const char* k) {
        auto it = e.find(k);
        return it == e.end() ? Expect::Unspecified : it->second;
    };
    std::vector<std::string> out;
    for (auto [a, b] : chain) {
        if (get(a) == Expect::Member && get(b) == Expect::NonMember) {
            out.push_back(std::string(a) + " member but " + b + " non-member");
        }
    }
    return out;
}

double harmonic(Index n) {
    if (n < 1) return 0.0;
    if (n < 64) {
        double s = 0.0;
        for (Index k = 1; k <= n; ++k) s += 1.0 / static_cast<double>(k);
        return s;
    }
    const double x = static_cast<double>(n);
    const double x2 = x * x;
    return std::log(x) + std::numbers::egamma + 1.0 / (2.0 * x) - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x2 * x2) -
           1.0 / (252.0 * x2 * x2 * x2);
}

namespace {

// sum_{k <= n} 1/k^2
double harmonic2(Index n) {
    if (n < 64) {
        double s = 0.0;
        for (Index k = 1; k <= n; ++k) s += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
        return s;
    }
    const double x = static_cast<double>(n);
    const double x2 = x * x;
    const double tail = 1.0 / x - 1.0 / (2.0 * x2) + 1.0 / (6.0 * x2 * x) - 1.0 / (30.0 * x2 * x2 * x) +
                        1.0 / (42.0 * x2 * x2 * x2 * x);
    return std::numbers::pi * std::numbers::pi / 6.0 - tail;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Index isqrt(Index n) {
    auto r = static_cast<Index>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr Expect M = Expect::Member;
constexpr Expect N = Expect::NonMember;

GalleryEntry make(std::string id, RealSeq seq, Expectations e, std::string provenance) {
    if (auto c = expectation_conflicts(e); !c.empty()) throw ConfigError("inconsistent expectations for " + id + ": " + c[0]);
    return {std::move(id), std::move(seq), std::move(e), std::move(provenance)};
}

// Splits "a,b" at the top-level comma.
std::pair<std::string_view, std::string_view> split_pair(std::string_view s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
    }
    throw ConfigError("interleave needs two arguments");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

}  // namespace

RealSeq random_spikes(std::uint64_t seed, double c, double rate) {
    std::ostringstream name;
    name << "random_spikes(seed=" << seed << ",c=" << c << ",rate=" << rate << ")";
    const std::uint64_t key = splitmix64(seed);
    return RealSeq::from_function(name.str(), [key, c, rate](Index n) {
        const double u = static_cast<double>(splitmix64(key ^ static_cast<std::uint64_t>(n)) >> 11) * 0x1.0p-53;
        return u < rate / std::sqrt(static_cast<double>(n)) ? c : 0.0;
    });
}

std::vector<std::string> builtin_names() {
    return {"sqrt_n",      "identity",  "log10_n",    "ln_n",      "harmonic_partial", "nested_harmonic_avg",
            "cos_pi_sqrt", "cos_6log",  "alternating", "square_indicator"};
}

GalleryEntry builtin(std::string_view name) {
    name = trim(name);
    using std::numbers::pi;
    if (name == "sqrt_n") {
        // quasi-Cauchy but not Cauchy; M(lambda, n) = (sqrt(lambda) - 1) sqrt(n) grows
        return make("sqrt_n", RealSeq::from_function("sqrt_n", [](Index n) { return std::sqrt(static_cast<double>(n)); }),
                    {{"cauchy", N}, {"slowly_oscillating", N}, {"quasi_cauchy", M}, {"stat_qc", M}, {"lac_stat_qc", M},
                     {"delta_qc", M}, {"bounded", N}},
                    "quasi-Cauchy, not Cauchy; subsequence at n^2 is (n)");
    }
    if (name == "identity") {
        return make("identity", RealSeq::from_function("identity", [](Index n) { return static_cast<double>(n); }),
                    {{"cauchy", N}, {"slowly_oscillating", N}, {"quasi_cauchy", N}, {"stat_qc", N}, {"lac_stat_qc", N},
                     {"delta_qc", M}, {"bounded", N}},
                    "image of sqrt_n under x^2");
    }
    if (name == "log10_n" || name == "ln_n") {
        const bool ten = name == "log10_n";
        auto seq = RealSeq::from_function(std::string(name), [ten](Index n) {
            return ten ? std::log10(static_cast<double>(n)) : std::log(static_cast<double>(n));
        });
        return make(std::string(name), seq,
                    {{"cauchy", N}, {"slowly_oscillating", M}, {"quasi_cauchy", M}, {"stat_qc", M}, {"lac_stat_qc", M},
                     {"delta_qc", M}, {"bounded", N}},
                    ten ? "slowly oscillating, not Cauchy; subsequence at 10^j is (j)"
                        : "slowly oscillating, not Cauchy");
    }
    if (name == "harmonic_partial") {
        return make("harmonic_partial", RealSeq::from_function("harmonic_partial", [](Index n) { return harmonic(n); }),
                    {{"cauchy", N}, {"slowly_oscillating", M}, {"quasi_cauchy", M}, {"stat_qc", M}, {"lac_stat_qc", M},
                     {"delta_qc", M}, {"bounded", N}},
                    "partial sums of the harmonic series: slowly oscillating, not Cauchy");
    }
    if (name == "nested_harmonic_avg") {
        // sum_{k<=n} H_k / k = (H_n^2 + H_n^(2)) / 2
        return make("nested_harmonic_avg", RealSeq::from_function("nested_harmonic_avg", [](Index n) {
                        const double h = harmonic(n);
                        return 0.5 * (h * h + harmonic2(n));
                    }),
                    {{"cauchy", N}, {"slowly_oscillating", N}, {"quasi_cauchy", M}, {"stat_qc", M}, {"lac_stat_qc", M},
                     {"delta_qc", M}, {"bounded", N}},
                    "sum of H_k / k: quasi-Cauchy, not slowly oscillating");
    }
    if (name == "cos_pi_sqrt") {
        return make("cos_pi_sqrt",
                    RealSeq::from_function("cos_pi_sqrt", [](Index n) { return std::cos(pi * std::sqrt(static_cast<double>(n))); }),
                    {{"cauchy", N}, {"slowly_oscillating", N}, {"quasi_cauchy", M}, {"stat_qc", M}, {"lac_stat_qc", M},
                     {"delta_qc", M}, {"bounded", M}},
                    "quasi-Cauchy, not slowly oscillating");
    }
    if (name == "cos_6log") {
        return make("cos_6log",
                    RealSeq::from_function("cos_6log", [](Index n) { return std::cos(6.0 * std::log(static_cast<double>(n) + 1.0)); }),
                    {{"cauchy", N}, {"slowly_oscillating", M}, {"quasi_cauchy", M}, {"stat_qc", M}, {"lac_stat_qc", M},
                     {"delta_qc", M}, {"bounded", M}},
                    "cos(6 ln(n+1)): bounded, slowly oscillating, not Cauchy");
    }
    if (name == "alternating") {
        return make("alternating", RealSeq::from_function("alternating", [](Index n) { return n % 2 == 0 ? 1.0 : -1.0; }),
                    {{"cauchy", N}, {"slowly_oscillating", N}, {"quasi_cauchy", N}, {"stat_qc", N}, {"lac_stat_qc", N},
                     {"delta_qc", N}, {"bounded", M}},
                    "(-1)^n: Abel limit 0, not convergent");
    }
    if (name == "square_indicator") {
        return make("square_indicator", RealSeq::from_function("square_indicator", [](Index n) {
                        const Index r = isqrt(n);
                        return r * r == n ? 1.0 : 0.0;
                    }),
                    {{"cauchy", N}, {"slowly_oscillating", N}, {"quasi_cauchy", N}, {"stat_qc", M},
                     {"lac_stat_qc", Expect::Unspecified}, {"delta_qc", N}, {"bounded", M}},
                    "1 on perfect squares: statistically but not ordinarily quasi-Cauchy");
    }
    if (name.starts_with("interleave(") && name.ends_with(")")) {
        const auto inner = name.substr(11, name.size() - 12);
        const auto [a, b] = split_pair(inner);
        const auto ea = builtin(a);
        const auto eb = builtin(b);
        const std::string id = "interleave(" + ea.id + "," + eb.id + ")";
        return make(id, interleave(ea.seq, eb.seq), {}, "odd terms from " + ea.id + ", even terms from " + eb.id);
    }
    if (name.starts_with("random_spikes:")) {
        const std::string digits(name.substr(14));
        std::uint64_t seed = 0;
        try {
            std::size_t used = 0;
            seed = std::stoull(digits, &used);
            if (used != digits.size()) throw ConfigError("bad seed");
        } catch (const std::exception&) {
            throw ConfigError("random_spikes needs an integer seed: " + std::string(name));
        }
        return make(std::string(name), random_spikes(seed),
                    {{"cauchy", N}, {"quasi_cauchy", N}, {"stat_qc", M}, {"delta_qc", N}, {"bounded", M}},
                    "spikes of height 1 at index density ~ n^(-1/2)");
    }
    throw ConfigError("unknown gallery sequence: " + std::string(name));
}

namespace {

Index resolve_cap(Index index_cap) {
    const Index cap = effective_horizon_cap();
    return index_cap > 0 ? std::min(index_cap, cap) : cap;
}

// Makes r materialized, extending the scheme while its last k stays within cap.
void ensure_block(LacunaryScheme& th, int r, Index cap, const char* what) {
    while (r > th.horizon()) {
        const Index last = th.k(th.horizon());
        if (last >= cap || th.spec().kind == SchemeSpec::Kind::Explicit) {
            throw SelectionError(std::string(what) + " selection exhausted the scheme below index cap " +
                                 std::to_string(cap));
        }
        auto next = make_lacunary_covering(th.spec(), std::min(cap, std::max<Index>(2 * last, last + 1)));
        if (next.horizon() <= th.horizon()) throw SelectionError(std::string(what) + " selection: scheme stopped growing");
        th = std::move(next);
    }
}

Index as_index(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX)) throw SelectionError("constraint arithmetic overflow");
    return static_cast<Index>(v);
}

Constraint compare(int j, int r, int r_prev, std::string relation, __int128 lhs, const char* op, __int128 rhs) {
    Constraint c;
    c.j = j;
    c.r = r;
    c.r_prev = r_prev;
    c.relation = std::move(relation);
    c.lhs = as_index(lhs);
    c.rhs = as_index(rhs);
    c.op = op;
    c.holds = std::string_view(op) == "<" ? lhs < rhs : std::string_view(op) == ">" ? lhs > rhs : lhs <= rhs;
    return c;
}

std::vector<Constraint> thm1_checks(const LacunaryScheme& th, int j, int r, int r_prev) {
    std::vector<Constraint> out;
    const __int128 J = j;
    out.push_back(compare(j, r, r_prev, "j*k_r < (j+1)*k_{r-1}", J * th.k(r), "<", (J + 1) * th.k(r - 1)));
    if (j >= 2) {
        out.push_back(compare(j, r, r_prev, "k_{r-1} > j*k_{r_prev}", th.k(r - 1), ">", J * th.k(r_prev)));
        out.push_back(compare(j, r, r_prev, "r_prev + 2 <= r", r_prev + 2, "<=", r));
    }
    return out;
}

std::vector<Constraint> thm2_checks(const LacunaryScheme& th, int j, int r, int r_prev) {
    const __int128 J = j;
    std::vector<Constraint> out;
    out.push_back(compare(j, r, r_prev, "k_r > j*k_{r-1}", th.k(r), ">", J * th.k(r - 1)));
    out.push_back(compare(j, r, r_prev, "k_r > j+3", th.k(r), ">", J + 3));
    if (j >= 2) out.push_back(compare(j, r, r_prev, "r_prev < r", r_prev, "<", r));
    return out;
}

bool all_hold(const std::vector<Constraint>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const Constraint& c) { return c.holds; });
}

struct Support {
    Index lo;
    Index hi;
};

RealSeq parity_blocks(std::string name, std::vector<Support> blocks, double c) {
    return RealSeq::from_function(std::move(name), [blocks = std::move(blocks), c](Index n) {
        auto it = std::upper_bound(blocks.begin(), blocks.end(), n, [](Index v, const Support& s) { return v < s.lo; });
        if (it == blocks.begin()) return 0.0;
        --it;
        if (n > it->hi) return 0.0;
        return n % 2 == 0 ? 2.0 * c : c;
    });
}

std::string selection_name(const char* tag, const LacunaryScheme& th, double c, const std::vector<int>& rs) {
    std::ostringstream os;
    os << tag << "[" << th.descriptor() << ",c=" << c << ",r=";
    for (std::size_t i = 0; i < rs.size(); ++i) os << (i ? "," : "") << rs[i];
    os << "]";
    return os.str();
}

void check_common(double c, int j_max) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("construction needs c > 0");
    if (j_max < 1) throw ConfigError("j_max must be at least 1");
}

}  // namespace

Construction thm1_counterexample(const LacunaryScheme& theta, double c, int j_max, Index index_cap) {
    check_common(c, j_max);
    const Index cap = resolve_cap(index_cap);
    LacunaryScheme th = theta;
    if (th.horizon() < 4) ensure_block(th, 4, cap, "thm1");
    const auto stats = ratio_stats(th);
    if (stats.inf_estimate > 1.05) {
        throw ConfigError("thm1 construction needs q_r -> 1 on the tail; tail inf q_r = " + std::to_string(stats.inf_estimate));
    }

    Construction out;
    out.c = c;
    int r_prev = 0;
    for (int j = 1; j <= j_max; ++j) {
        int r = j == 1 ? 2 : r_prev + 2;
        for (;; ++r) {
            ensure_block(th, r, cap, "thm1");
            if (th.k(r) > cap) throw SelectionError("thm1 selection exhausted index cap " + std::to_string(cap));
            auto checks = thm1_checks(th, j, r, r_prev);
            if (all_hold(checks)) {
                for (auto& ch : checks) out.selection.constraints_log.push_back(std::move(ch));
                break;
            }
        }
        out.selection.r_js.push_back(r);
        r_prev = r;
    }

    std::vector<Support> blocks;
    for (int r : out.selection.r_js) blocks.push_back({th.k(r - 1) + 1, th.k(r)});
    out.seq = parity_blocks(selection_name("thm1", th, c, out.selection.r_js), std::move(blocks), c);
    out.theta = std::move(th);
    return out;
}

Construction thm2_counterexample(const LacunaryScheme& theta, double c, int j_max, Index index_cap) {
    check_common(c, j_max);
    const Index cap = resolve_cap(index_cap);
    LacunaryScheme th = theta;
    if (th.horizon() < 6) ensure_block(th, 6, cap, "thm2");
    const int R = th.horizon();
    const double head = ratio_stats(th, {2, R / 2}).sup_estimate;
    const double tail = ratio_stats(th).sup_estimate;
    if (!(tail > 1.05 * head)) {
        throw ConfigError("thm2 construction needs growing q_r; tail sup " + std::to_string(tail) + " vs head sup " +
                          std::to_string(head));
    }

    Construction out;
    out.c = c;
    int r_prev = 0;
    for (int j = 1; j <= j_max; ++j) {
        int r = j == 1 ? 2 : r_prev + 1;
        for (;; ++r) {
            ensure_block(th, r, cap, "thm2");
            if (th.k(r) > cap) throw SelectionError("thm2 selection exhausted index cap " + std::to_string(cap));
            auto checks = thm2_checks(th, j, r, r_prev);
            if (all_hold(checks)) {
                for (auto& ch : checks) out.selection.constraints_log.push_back(std::move(ch));
                break;
            }
        }
        if (2 * th.k(r - 1) > th.k(r)) {
            out.selection.notes.push_back("j=" + std::to_string(j) + ": support (k_{r-1}, 2k_{r-1}] = (" +
                                          std::to_string(th.k(r - 1)) + ", " + std::to_string(2 * th.k(r - 1)) +
                                          "] extends past k_r = " + std::to_string(th.k(r)));
        }
        out.selection.r_js.push_back(r);
        r_prev = r;
    }

    std::vector<Support> blocks;
    for (int r : out.selection.r_js) blocks.push_back({th.k(r - 1) + 1, 2 * th.k(r - 1)});
    // supports may touch when q_r is small; keep them disjoint and ordered
    for (std::size_t i = 1; i < blocks.size(); ++i) blocks[i].lo = std::max(blocks[i].lo, blocks[i - 1].hi + 1);
    out.seq = parity_blocks(selection_name("thm2", th, c, out.selection.r_js), std::move(blocks), c);
    out.theta = std::move(th);
    return out;
}

bool recheck_constraints(const BlockSelection& sel, const LacunaryScheme& theta) {
    for (const auto& c : sel.constraints_log) {
        if (c.r > theta.horizon() || c.r_prev > theta.horizon()) return false;
        std::vector<Constraint> again;
        if (c.relation.starts_with("k_r > j") || c.relation == "r_prev < r") {
            again = thm2_checks(theta, c.j, c.r, c.r_prev);
        } else {
            again = thm1_checks(theta, c.j, c.r, c.r_prev);
        }
        auto it = std::find_if(again.begin(), again.end(), [&](const Constraint& a) { return a.relation == c.relation; });
        if (it == again.end() || !it->holds || it->lhs != c.lhs || it->rhs != c.rhs) return false;
    }
    return true;
}

GalleryEntry gallery_entry(std::string_view id, const LacunaryScheme& theta, double c, int j_max) {
    if (id == "thm1") {
        auto con = thm1_counterexample(theta, c, j_max);
        return make("thm1", con.seq,
                    {{"quasi_cauchy", N}, {"stat_qc", M}, {"lac_stat_qc", N}, {"bounded", M}},
                    "jumps of size c filling sparse blocks I_{r_j} with q_{r_j} -> 1");
    }
    if (id == "thm2") {
        auto con = thm2_counterexample(theta, c, j_max);
        return make("thm2", con.seq,
                    {{"quasi_cauchy", N}, {"stat_qc", N}, {"lac_stat_qc", M}, {"bounded", M}},
                    "jumps of size c on (k_{r_j - 1}, 2k_{r_j - 1}] with q_{r_j} > j");
    }
    return builtin(id);
}

std::vector<GalleryEntry> standard_corpus() {
    std::vector<GalleryEntry> out;
    for (const auto& n : builtin_names()) out.push_back(builtin(n));
    out.push_back(builtin("interleave(sqrt_n,ln_n)"));
    for (int s = 1; s <= 9; ++s) out.push_back(builtin("random_spikes:" + std::to_string(s)));
    return out;
}

}  // namespace wardseq
