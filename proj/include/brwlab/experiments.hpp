#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace brwlab {

// One item of the built-in verification suite (also wired to `brwlab all`).
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // human-readable numbers backing the verdict
};

struct SuiteOptions {
    std::uint64_t master_seed = 7;
    int threads = 1;
};

CriterionResult criterion_spectral_oracle(const SuiteOptions& opt);
CriterionResult criterion_recurrence_transition(const SuiteOptions& opt);
CriterionResult criterion_trace_transience(const SuiteOptions& opt);
CriterionResult criterion_percolation(const SuiteOptions& opt);
CriterionResult criterion_exponential_growth(const SuiteOptions& opt);
CriterionResult criterion_cutpoints(const SuiteOptions& opt);
CriterionResult criterion_line_segments(const SuiteOptions& opt);
CriterionResult criterion_trace_strong_recurrence(const SuiteOptions& opt);
CriterionResult criterion_unimodularity(const SuiteOptions& opt);
CriterionResult criterion_electrical_exactness(const SuiteOptions& opt);
CriterionResult criterion_determinism(const SuiteOptions& opt);

using CriterionFn = CriterionResult (*)(const SuiteOptions&);

// All criteria in order, so callers can stream results as they finish.
const std::vector<CriterionFn>& acceptance_criteria();

std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& opt);

} // namespace brwlab
