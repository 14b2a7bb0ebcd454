#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wardseq/expr.hpp"

namespace wardseq {

using Index = std::int64_t;

/// Indices above this lose exactness when converted to double.
inline constexpr Index kMaxIndex = Index{1} << 53;

/// Node behind a RealSeq. `value` returns the raw IEEE result and may throw
/// EvalError for domain problems; finiteness is checked by RealSeq.
class SeqNode {
public:
    virtual ~SeqNode() = default;

    virtual double value(Index n) const = 0;
    virtual std::string describe() const = 0;

    /// out[i] = value(lo + i). Overridden where a bulk pass is cheaper.
    virtual void fill(Index lo, std::span<double> out) const;

    Index domain_start = 1;
    std::optional<Index> domain_end;  // inclusive; finite data only
};

/// Immutable real sequence over integer indices n >= domain_start.
/// Copies share the underlying node.
class RealSeq {
public:
    RealSeq() = default;
    explicit RealSeq(std::shared_ptr<const SeqNode> node) : node_(std::move(node)) {}

    static RealSeq from_expr(Expr expr, Index domain_start = 1);
    static RealSeq parse(std::string_view text, Index domain_start = 1, const Bindings& bindings = {});
    static RealSeq constant(double c, Index domain_start = 1);
    /// data[0] is the term at index domain_start; evaluation past the end is an error.
    static RealSeq from_data(std::vector<double> data, Index domain_start = 1, std::string name = "data");
    static RealSeq from_function(std::string name, std::function<double(Index)> fn, Index domain_start = 1);

    /// Checked evaluation: throws EvalError outside the domain or on NaN/inf.
    double operator()(Index n) const;

    /// Checked bulk evaluation of indices lo .. lo + out.size() - 1, single-threaded.
    void sample(Index lo, std::span<double> out) const;
    std::vector<double> sample(Index lo, Index hi) const;

    /// Throws EvalError unless [lo, hi] lies in the domain.
    void check_range(Index lo, Index hi) const;

    Index domain_start() const { return node_->domain_start; }
    std::optional<Index> domain_end() const { return node_->domain_end; }
    std::string describe() const { return node_->describe(); }
    const SeqNode& node() const { return *node_; }
    bool valid() const { return node_ != nullptr; }

private:
    std::shared_ptr<const SeqNode> node_;
};

/// Reports the first non-finite entry of `values` (taken to start at index lo).
void require_finite(std::span<const double> values, Index lo);

/// Strictly increasing map j -> n_j over j >= 1.
class IndexMap {
public:
    static IndexMap identity();
    /// Closed form in variable `j`; the first `check_prefix` values are verified monotone.
    static IndexMap from_expr(const Expr& expr, Index check_prefix = 10000);
    static IndexMap from_function(std::string name, std::function<Index(Index)> fn, Index check_prefix = 10000);
    /// table[0] is n_1.
    static IndexMap from_table(std::vector<Index> table);

    Index operator()(Index j) const;
    std::optional<Index> size() const { return size_; }
    const std::string& name() const { return name_; }

private:
    std::function<Index(Index)> fn_;
    std::optional<Index> size_;
    std::string name_;
};

/// n -> seq(n+1) - seq(n)
RealSeq delta(const RealSeq& seq);
/// n -> seq(n+2) - 2 seq(n+1) + seq(n)
RealSeq delta2(const RealSeq& seq);
/// j -> seq(idx(j)), j >= 1
RealSeq subsequence(const RealSeq& seq, const IndexMap& idx);
/// (a_1, b_1, a_2, b_2, ...): odd positions from a, even from b.
RealSeq interleave(const RealSeq& a, const RealSeq& b);

}  // namespace wardseq
