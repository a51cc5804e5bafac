#pragma once

#include <functional>
#include <string>

#include "polyq/arith.hpp"

namespace polyq {

struct SuiteResult {
    std::string suite;
    u64 checks = 0;
    bool passed = true;
    std::string witness;  // first failing tuple, empty when passed
};

/// Parameter ranges for the identity suites. The defaults reproduce the
/// exhaustive desk-scale grids the suites are specified over.
struct IdentityGrid {
    u64 two_path_max_prime = 31;
    u64 homomorphism_max_prime = 50;
    u64 homomorphism_pairs = 10000;
    u64 addition_law_max_prime = 31;
    u64 binomial_max_prime = 101;
    u64 lemma1_max_prime = 199;
    u64 theorem3_max_prime = 101;
    u64 waring_max_prime = 101;
    u64 waring_remark_max_prime = 199;
    std::vector<u64> charsum_primes{5, 101, 257, 509};
    bool funcfield = true;
};

struct SuiteOptions {
    /// Test hook: replaces every polynomial-quotient evaluation made by the
    /// suites. Used as a corrupted-evaluator negative control.
    std::function<u64(const PrimeContext&, u64 w, u64 u)> quotient_override;
};

/// Run identity suites. `which` is a suite name (two-path, reduction,
/// homomorphism, addition-law, lemma1, theorem3, waring, charsum, funcfield)
/// or "all". Failures are results, not exceptions.
std::vector<SuiteResult> run_identity_suite(const IdentityGrid& grid = {},
                                            const SuiteOptions& options = {},
                                            const std::string& which = "all");

struct SweepRow {
    int theorem = 0;
    u64 p = 0;
    u64 w = 0;
    u64 n = 0;
    std::string stat;
    double exact = 0.0;
    double bound = 0.0;
    double ratio = 0.0;  // exact/bound when bound > 0, else 0 with a flag
    std::string flag;
};

struct SweepGrid {
    std::vector<u64> primes{101, 257, 509};
    std::vector<std::string> w_tokens{"1", "2", "(p-1)/2", "p-1", "p-2"};
    std::vector<std::string> n_tokens{"p/2", "p"};
    std::vector<std::vector<u64>> poly_family{{0, 1}, {1, 0, 1}};  // theorem 1 only
    std::vector<u64> s_values{3, 4, 5};                            // theorem 5 only
};

struct SweepReport {
    int theorem = 0;
    std::string grid_desc;
    std::string timestamp;  // metadata only, never serialized
    std::vector<SweepRow> rows;
    bool limit_hit = false;  // some grid points exceeded a cap; report is partial

    std::string to_csv() const;
    std::string to_json() const;
};

/// Exact statistics against the bound shapes of theorems 1-6, constants set
/// to 1 and epsilon to 0. Ratios are reported, never asserted; the exact
/// proof-chain inequalities are asserted and throw std::logic_error if an
/// arithmetic bug ever violates one.
SweepReport run_bound_sweep(int theorem, const SweepGrid& grid = {});

u64 resolve_w_token(const std::string& token, u64 p);
u64 resolve_n_token(const std::string& token, u64 p);

}  // namespace polyq
