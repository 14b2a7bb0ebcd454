#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wardseq/gallery.hpp"
#include "wardseq/methods.hpp"
#include "wardseq/probe.hpp"
#include "wardseq/wardclass.hpp"

namespace wardseq {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ScenarioConfig {
    std::string theta;     // empty: scenario default
    double c = 1.0;
    std::optional<int> j_max;  // empty: 6 for thm1, 8 for thm2
    Index horizon = Index{1} << 20;
    Exec exec = Exec::Parallel;
};

struct ScenarioResult {
    std::string id;
    std::string theta;
    std::vector<Check> checks;
    std::optional<BlockSelection> selection;
    std::vector<std::pair<std::string, Verdict>> verdicts;
    std::vector<Evidence> audits;

    bool passed() const;
};

/// Counterexample to lim inf q_r > 1 being unnecessary: statistically but not
/// lacunarily statistically quasi-Cauchy. Default theta poly:2.
ScenarioResult verify_thm1(const ScenarioConfig& cfg);
/// Exact audits of the block-density and global-density bounds. Default theta fact.
ScenarioResult verify_thm2(const ScenarioConfig& cfg);
/// Inclusion and agreement of stat_qc / lac_stat_qc on the standard corpus. Default theta geo:2.
ScenarioResult verify_cor3(const ScenarioConfig& cfg);
/// Boundedness probe on sqrt(n) and sin(n).
ScenarioResult verify_thm6(const ScenarioConfig& cfg);
/// x^2 breaks lacunary statistical ward continuity on sqrt_n; 2x+1 keeps it on the corpus.
ScenarioResult verify_thm9(const ScenarioConfig& cfg);

/// Dispatch by id: thm1, thm2, cor3, thm6, thm9. Throws ConfigError otherwise.
ScenarioResult run_scenario(const std::string& id, const ScenarioConfig& cfg);

}  // namespace wardseq
