#ifndef PCCLONE_VERIFY_HPP_INCLUDED
#define PCCLONE_VERIFY_HPP_INCLUDED

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcclone/symspace.hpp"
#include "pcclone/types.hpp"

namespace pcc {

/// Counter-based uniform doubles in [0,1): the same (seed, counter) pair gives
/// the same value on every platform, so verification reports are reproducible
/// byte for byte.
std::uint64_t splitmix64(std::uint64_t x);
double counter_uniform(std::uint64_t seed, std::uint64_t counter);
/// Uniform angle in [0, 2pi).
double counter_angle(std::uint64_t seed, std::uint64_t counter);

/// Brute-force one-body marginal: expand into the full d^M tensor space and
/// trace out sites 1..M-1 by direct index summation. Independent of the
/// occupation-algebra path in the fidelity module.
CMat oracle_partial_trace(const SymVector& v, std::size_t cap = kDefaultOracleCap);

/// Pseudo-random normalized symmetric state, deterministic in (seed, counter).
SymVector random_sym_vector(int n, int d, std::uint64_t seed, std::uint64_t counter);

struct VerifyGrid {
    int max_d = 3;
    int max_n = 2;
    int max_k = 2;
    int phase_draws = 20;
    std::size_t oracle_cap = kDefaultOracleCap;
    std::optional<double> tol_override; // replaces every check tolerance when set
};

struct CheckParams {
    int d = 0;
    int n_in = 0;
    int k = 0;
    std::vector<double> phases;
    std::uint64_t seed = 0;
};

struct VerificationResult {
    std::string check_name;
    CheckParams parameters;
    double max_deviation;
    double tolerance;
    bool passed;  // always max_deviation <= tolerance
    bool skipped; // resource-capped configuration; never counted as passed
    std::string reason;
};

/// Runs every configured check over the grid. Deterministic given the seed;
/// results come back sorted by check name, then (d, n_in, k, draw).
/// Resource-capped configurations are reported as skipped with a reason and a
/// sentinel deviation, never as passed.
std::vector<VerificationResult> run_suite(const VerifyGrid& grid, std::uint64_t seed);

/// One VerificationResult as a single JSON line (no trailing newline).
std::string to_json_line(const VerificationResult& result);

} // namespace pcc

#endif // PCCLONE_VERIFY_HPP_INCLUDED
