#include "wardseq/sequence.hpp"

#include <cmath>
#include <cstdio>

#include "wardseq/error.hpp"

namespace wardseq {

void SeqNode::fill(Index lo, std::span<double> out) const {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = value(lo + static_cast<Index>(i));
}

namespace {

class ExprSeq final : public SeqNode {
public:
    explicit ExprSeq(Expr e) : expr_(std::move(e)) {}
    double value(Index n) const override { return expr_(static_cast<double>(n)); }
    std::string describe() const override { return expr_.to_string(); }

private:
    Expr expr_;
};

class DataSeq final : public SeqNode {
public:
    DataSeq(std::vector<double> data, std::string name) : data_(std::move(data)), name_(std::move(name)) {}
    double value(Index n) const override {
        if (n < domain_start || n > *domain_end) throw EvalError("index outside finite data", n);
        return data_[static_cast<std::size_t>(n - domain_start)];
    }
    std::string describe() const override { return name_; }

private:
    std::vector<double> data_;
    std::string name_;
};

class FnSeq final : public SeqNode {
public:
    FnSeq(std::string name, std::function<double(Index)> fn) : name_(std::move(name)), fn_(std::move(fn)) {}
    double value(Index n) const override { return fn_(n); }
    std::string describe() const override { return name_; }

private:
    std::string name_;
    std::function<double(Index)> fn_;
};

class DeltaSeq final : public SeqNode {
public:
    DeltaSeq(RealSeq base, int order) : base_(std::move(base)), order_(order) {}

    double value(Index n) const override {
        const SeqNode& b = base_.node();
        if (order_ == 1) return b.value(n + 1) - b.value(n);
        return b.value(n + 2) - 2.0 * b.value(n + 1) + b.value(n);
    }

    // Same arithmetic as value(), one base evaluation per index.
    void fill(Index lo, std::span<double> out) const override {
        std::vector<double> raw(out.size() + static_cast<std::size_t>(order_));
        base_.node().fill(lo, raw);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = order_ == 1 ? raw[i + 1] - raw[i] : raw[i + 2] - 2.0 * raw[i + 1] + raw[i];
        }
    }

    std::string describe() const override {
        return (order_ == 1 ? "delta(" : "delta2(") + base_.describe() + ")";
    }

private:
    RealSeq base_;
    int order_;
};

class SubSeq final : public SeqNode {
public:
    SubSeq(RealSeq base, IndexMap idx) : base_(std::move(base)), idx_(std::move(idx)) {}
    double value(Index j) const override {
        const Index n = idx_(j);
        if (n < base_.domain_start()) throw EvalError("subsequence index below base domain", n);
        if (auto end = base_.domain_end(); end && n > *end) throw EvalError("subsequence index past base data", n);
        return base_.node().value(n);
    }
    std::string describe() const override { return "subseq(" + base_.describe() + ", " + idx_.name() + ")"; }

private:
    RealSeq base_;
    IndexMap idx_;
};

class InterleaveSeq final : public SeqNode {
public:
    InterleaveSeq(RealSeq a, RealSeq b) : a_(std::move(a)), b_(std::move(b)) {}
    double value(Index n) const override {
        const Index m = (n + 1) / 2;
        return (n % 2 == 1) ? a_(m + a_.domain_start() - 1) : b_(m + b_.domain_start() - 1);
    }
    std::string describe() const override {
        return "interleave(" + a_.describe() + ", " + b_.describe() + ")";
    }

private:
    RealSeq a_;
    RealSeq b_;
};

template <class Node, class... Args>
RealSeq make_seq(Index domain_start, Args&&... args) {
    auto node = std::make_shared<Node>(std::forward<Args>(args)...);
    node->domain_start = domain_start;
    return RealSeq(std::move(node));
}

}  // namespace

RealSeq RealSeq::from_expr(Expr expr, Index domain_start) {
    if (domain_start < 0) throw ConfigError("domain_start must be non-negative");
    return make_seq<ExprSeq>(domain_start, std::move(expr));
}

RealSeq RealSeq::parse(std::string_view text, Index domain_start, const Bindings& bindings) {
    return from_expr(parse_expr(text, "n", bindings), domain_start);
}

RealSeq RealSeq::constant(double c, Index domain_start) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", c);
    return from_function(buf, [c](Index) { return c; }, domain_start);
}

RealSeq RealSeq::from_data(std::vector<double> data, Index domain_start, std::string name) {
    if (data.empty()) throw ConfigError("finite data sequence must be non-empty");
    const auto size = static_cast<Index>(data.size());
    auto node = std::make_shared<DataSeq>(std::move(data), std::move(name));
    node->domain_start = domain_start;
    node->domain_end = domain_start + size - 1;
    return RealSeq(std::move(node));
}

RealSeq RealSeq::from_function(std::string name, std::function<double(Index)> fn, Index domain_start) {
    return make_seq<FnSeq>(domain_start, std::move(name), std::move(fn));
}

void RealSeq::check_range(Index lo, Index hi) const {
    if (lo < domain_start()) throw EvalError("index below domain start " + std::to_string(domain_start()), lo);
    if (hi > kMaxIndex) throw EvalError("index beyond 2^53", hi);
    if (auto end = domain_end(); end && hi > *end) throw EvalError("index past end of finite data", *end + 1);
}

double RealSeq::operator()(Index n) const {
    check_range(n, n);
    const double v = node_->value(n);
    if (!std::isfinite(v)) throw EvalError("evaluation produced non-finite value", n);
    return v;
}

void RealSeq::sample(Index lo, std::span<double> out) const {
    if (out.empty()) return;
    check_range(lo, lo + static_cast<Index>(out.size()) - 1);
    node_->fill(lo, out);
    require_finite(out, lo);
}

std::vector<double> RealSeq::sample(Index lo, Index hi) const {
    std::vector<double> out(static_cast<std::size_t>(std::max<Index>(0, hi - lo + 1)));
    sample(lo, out);
    return out;
}

void require_finite(std::span<const double> values, Index lo) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw EvalError("evaluation produced non-finite value", lo + static_cast<Index>(i));
        }
    }
}

IndexMap IndexMap::identity() {
    IndexMap m;
    m.fn_ = [](Index j) { return j; };
    m.name_ = "j";
    return m;
}

IndexMap IndexMap::from_function(std::string name, std::function<Index(Index)> fn, Index check_prefix) {
    Index prev = 0;
    for (Index j = 1; j <= check_prefix; ++j) {
        const Index n = fn(j);
        if (n < 1) throw ConfigError("index map value must be positive at j=" + std::to_string(j));
        if (n <= prev) throw ConfigError("index map not strictly increasing at j=" + std::to_string(j));
        prev = n;
    }
    IndexMap m;
    m.fn_ = std::move(fn);
    m.name_ = std::move(name);
    return m;
}

IndexMap IndexMap::from_expr(const Expr& expr, Index check_prefix) {
    auto fn = [expr](Index j) -> Index {
        const double v = expr(static_cast<double>(j));
        if (!std::isfinite(v) || v != std::floor(v) || v > static_cast<double>(kMaxIndex)) {
            throw EvalError("index map value is not an exact integer", j);
        }
        return static_cast<Index>(v);
    };
    // stop the monotonicity check before the closed form leaves the exact range
    Index prefix = 0;
    for (Index j = 1; j <= check_prefix; ++j) {
        const double v = expr(static_cast<double>(j));
        if (!std::isfinite(v) || v > static_cast<double>(kMaxIndex)) break;
        prefix = j;
    }
    return from_function("j->" + expr.to_string(), std::move(fn), prefix);
}

IndexMap IndexMap::from_table(std::vector<Index> table) {
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] < 1) throw ConfigError("index table entries must be positive");
        if (i > 0 && table[i] <= table[i - 1]) {
            throw ConfigError("index table not strictly increasing at position " + std::to_string(i + 1));
        }
    }
    IndexMap m;
    m.size_ = static_cast<Index>(table.size());
    m.fn_ = [t = std::move(table)](Index j) -> Index {
        if (j < 1 || j > static_cast<Index>(t.size())) throw EvalError("index table exhausted", j);
        return t[static_cast<std::size_t>(j - 1)];
    };
    m.name_ = "table";
    return m;
}

Index IndexMap::operator()(Index j) const { return fn_(j); }

RealSeq delta(const RealSeq& seq) {
    auto node = std::make_shared<DeltaSeq>(seq, 1);
    node->domain_start = seq.domain_start();
    if (auto end = seq.domain_end()) node->domain_end = *end - 1;
    return RealSeq(std::move(node));
}

RealSeq delta2(const RealSeq& seq) {
    auto node = std::make_shared<DeltaSeq>(seq, 2);
    node->domain_start = seq.domain_start();
    if (auto end = seq.domain_end()) node->domain_end = *end - 2;
    return RealSeq(std::move(node));
}

RealSeq subsequence(const RealSeq& seq, const IndexMap& idx) {
    auto node = std::make_shared<SubSeq>(seq, idx);
    node->domain_start = 1;
    node->domain_end = idx.size();
    return RealSeq(std::move(node));
}

RealSeq interleave(const RealSeq& a, const RealSeq& b) {
    auto node = std::make_shared<InterleaveSeq>(a, b);
    node->domain_start = 1;
    return RealSeq(std::move(node));
}

}  // namespace wardseq
