#include "wardseq/lacunary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "wardseq/error.hpp"

namespace wardseq {

namespace {

double parse_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("bad " + std::string(what) + " '" + std::string(s) + "'");
    }
    return v;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

Index checked_mul(Index a, Index b) {
    Index out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw ConfigError("lacunary sequence overflows 64-bit integers");
    return out;
}

Index ceil_to_index(double v) {
    const double c = std::ceil(v);
    if (!(c < 9.0e18)) throw ConfigError("lacunary sequence overflows 64-bit integers");
    return static_cast<Index>(c);
}

Index int_pow(Index base, double p) {
    if (p == std::floor(p)) {
        Index out = 1;
        for (int i = 0; i < static_cast<int>(p); ++i) out = checked_mul(out, base);
        return out;
    }
    return ceil_to_index(std::pow(static_cast<double>(base), p));
}

// Next k_r given k_{r-1}; returns false when the generator has nothing more.
bool next_k(const SchemeSpec& spec, int r, Index prev, Index& out) {
    switch (spec.kind) {
        case SchemeSpec::Kind::Geometric: {
            const Index cand = r == 1 ? ceil_to_index(spec.param) : ceil_to_index(spec.param * static_cast<double>(prev));
            out = std::max(cand, prev + 1);
            return true;
        }
        case SchemeSpec::Kind::Polynomial:
            out = int_pow(r, spec.param);
            return true;
        case SchemeSpec::Kind::Factorial:
            out = r == 1 ? 1 : checked_mul(r, prev);
            return true;
        case SchemeSpec::Kind::Explicit:
            if (static_cast<std::size_t>(r) >= spec.table.size()) return false;
            out = spec.table[static_cast<std::size_t>(r)];
            return true;
    }
    return false;
}

std::vector<Index> generate(const SchemeSpec& spec, int horizon_r, Index max_index) {
    if (spec.kind == SchemeSpec::Kind::Explicit) {
        if (spec.table.empty() || spec.table[0] != 0) throw ConfigError("lacunary sequence must start with k_0 = 0");
    }
    std::vector<Index> k{0};
    for (int r = 1; r <= horizon_r; ++r) {
        Index next = 0;
        if (!next_k(spec, r, k.back(), next)) break;
        k.push_back(next);
        if (max_index > 0 && next >= max_index && r >= 2) break;
    }
    return k;
}

}  // namespace

SchemeSpec SchemeSpec::parse(std::string_view d) {
    SchemeSpec s;
    auto rest = [&](std::string_view prefix) { return d.substr(prefix.size()); };
    if (d.starts_with("geo:")) {
        s.kind = Kind::Geometric;
        s.param = parse_double(rest("geo:"), "geometric ratio");
        if (!(s.param > 1.0)) throw ConfigError("geometric ratio must exceed 1");
    } else if (d.starts_with("poly:")) {
        s.kind = Kind::Polynomial;
        s.param = parse_double(rest("poly:"), "polynomial degree");
        if (!(s.param >= 2.0)) throw ConfigError("polynomial degree must be at least 2");
    } else if (d == "fact") {
        s.kind = Kind::Factorial;
    } else if (d.starts_with("explicit:")) {
        s.kind = Kind::Explicit;
        std::string_view body = rest("explicit:");
        while (!body.empty()) {
            const auto comma = body.find(',');
            const std::string_view item = body.substr(0, comma);
            if (item == "..." || item.empty()) break;
            Index v = 0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc() || ptr != item.data() + item.size()) {
                throw ConfigError("bad explicit entry '" + std::string(item) + "'");
            }
            s.table.push_back(v);
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
        if (s.table.size() < 3) throw ConfigError("explicit scheme needs k_0, k_1, k_2 at least");
    } else {
        throw ConfigError("unknown lacunary descriptor '" + std::string(d) + "'");
    }
    return s;
}

std::string SchemeSpec::descriptor() const {
    switch (kind) {
        case Kind::Geometric: return "geo:" + format_double(param);
        case Kind::Polynomial: return "poly:" + format_double(param);
        case Kind::Factorial: return "fact";
        case Kind::Explicit: {
            std::string out = "explicit:";
            for (std::size_t i = 0; i < table.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(table[i]);
            }
            return out;
        }
    }
    return "?";
}

LacunaryScheme::LacunaryScheme(SchemeSpec spec, std::vector<Index> k) : spec_(std::move(spec)), k_(std::move(k)) {
    validate();
}

void LacunaryScheme::validate() {
    if (k_.empty() || k_[0] != 0) throw ConfigError("lacunary sequence must start with k_0 = 0");
    if (k_.size() < 3) throw ConfigError("lacunary scheme needs horizon >= 2");
    for (std::size_t r = 1; r < k_.size(); ++r) {
        if (k_[r] <= k_[r - 1]) {
            throw ConfigError("lacunary sequence not strictly increasing at r=" + std::to_string(r));
        }
    }
    const int R = horizon();
    for (int r = std::max(2, R / 2) + 1; r <= R; ++r) {
        if (h(r) < h(r - 1)) {
            warnings_.push_back("h_r decreases on the tail at r=" + std::to_string(r));
            break;
        }
    }
    if (h(R) < 64) warnings_.push_back("h_R = " + std::to_string(h(R)) + " < 64 at the horizon");
}

double LacunaryScheme::q(int r) const {
    if (r < 2) throw ConfigError("q_r needs r >= 2 (k_0 = 0)");
    return static_cast<double>(k(r)) / static_cast<double>(k(r - 1));
}

IndexRange LacunaryScheme::interval(int r) const {
    if (r < 1 || r > horizon()) {
        throw ConfigError("block r=" + std::to_string(r) + " outside materialized range 1.." + std::to_string(horizon()));
    }
    return {k(r - 1) + 1, k(r)};
}

int LacunaryScheme::block_of(Index n) const {
    if (n < 1 || n > k_.back()) return 0;
    auto it = std::lower_bound(k_.begin(), k_.end(), n);
    return static_cast<int>(it - k_.begin());
}

int LacunaryScheme::last_block_within(Index n) const {
    auto it = std::upper_bound(k_.begin(), k_.end(), n);
    return static_cast<int>(it - k_.begin()) - 1;
}

LacunaryScheme make_lacunary(const SchemeSpec& spec, int horizon_r) {
    if (horizon_r < 2) throw ConfigError("lacunary horizon must be at least 2");
    auto k = generate(spec, horizon_r, 0);
    if (static_cast<int>(k.size()) - 1 < horizon_r) {
        throw ConfigError("explicit scheme shorter than requested horizon " + std::to_string(horizon_r));
    }
    return LacunaryScheme(spec, std::move(k));
}

LacunaryScheme make_lacunary(std::string_view descriptor, int horizon_r) {
    return make_lacunary(SchemeSpec::parse(descriptor), horizon_r);
}

LacunaryScheme make_lacunary_covering(const SchemeSpec& spec, Index max_index) {
    auto k = generate(spec, std::numeric_limits<int>::max(), std::max<Index>(max_index, 1));
    return LacunaryScheme(spec, std::move(k));
}

RatioStats ratio_stats(const LacunaryScheme& theta, std::pair<int, int> window) {
    auto [lo, hi] = window;
    if (lo > hi) throw ConfigError("empty ratio window");
    if (lo < 2 || hi > theta.horizon()) {
        throw ConfigError("ratio window must lie in 2.." + std::to_string(theta.horizon()));
    }
    RatioStats out;
    out.window = window;
    out.inf_estimate = std::numeric_limits<double>::infinity();
    out.sup_estimate = 0.0;
    for (int r = lo; r <= hi; ++r) {
        const double q = theta.q(r);
        out.window_qr.push_back(q);
        out.inf_estimate = std::min(out.inf_estimate, q);
        out.sup_estimate = std::max(out.sup_estimate, q);
    }
    return out;
}

RatioStats ratio_stats(const LacunaryScheme& theta) {
    const int R = theta.horizon();
    return ratio_stats(theta, {std::max(2, R / 2), R});
}

bool satisfies_liminf_margin(const LacunaryScheme& theta, double margin) {
    return ratio_stats(theta).inf_estimate > 1.0 + margin;
}

}  // namespace wardseq
