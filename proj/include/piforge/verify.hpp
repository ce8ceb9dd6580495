#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "piforge/engine.hpp"
#include "piforge/families.hpp"
#include "piforge/mdp.hpp"

namespace piforge {

struct ClaimReport {
    std::string claim;
    std::string params;
    std::string expected;
    std::string observed;
    bool pass = false;
    std::string witness;  // first violating step/policy/pair; empty iff pass

    std::string to_json() const;
    std::string to_line() const;  // human-readable one-liner
};

// Re-derives every step of a recorded trajectory independently: each
// transition is a valid improvement, values strictly dominate step over
// step, no policy repeats, the final improvement set is empty, and (when
// k^n fits the budget) the final value function equals the brute-force
// optimum exactly.
ClaimReport certify_trajectory(const Mdp& m, const Trajectory& traj,
                               std::uint64_t budget = 10'000'000ULL);

// 2k/(k-1) * (k^m - 1) - 2m + 1, exactly.
unsigned long long f_count(int m, int k);

// Runs the cyclic-switching variant on the counter family from the all-zero
// policy and checks: trajectory length equals f_count, the balanced (x.x)
// subsequence enumerates [x] = 0..k^m-1 ascending, and the final policy is
// all-(k-1).  When fixture_path is non-empty the full rendered trajectory
// must match the fixture file line for line.
ClaimReport check_F(int m, int k, const std::string& fixture_path = "");

// Min-index action selection on the chain family: Howard / Simple /
// RandomSubset produce identical trajectories of exactly n(k-1)+1 policies
// in the canonical order (increment the last non-saturated state's action).
ClaimReport check_G_index(int n, int k);

// Expected trajectory length under uniform-random action selection:
// n*H(k-1)+1 with H the harmonic number; verified internally against the
// direct recurrence t_{k-2} = 1, t_j = 1 + (1/(k-j-1)) sum_{j'>j} t_{j'}.
Rat expected_G_random(int n, int k);

// Monte-Carlo check of expected_G_random: empirical mean over seeded trials
// within 3 standard errors of the exact expectation.
ClaimReport check_G_random(int n, int k, int trials, std::uint64_t seed);

// Runs largest-index PI on the partner-chain family at k and at 2 and
// checks (a) the {0, k-1}^n subsequence of the k-run equals the 1 -> k-1
// image of the 2-run position by position, and (b) the k-run's iteration
// count is at least (k-1) times the number of 0 -> 1 switches of the 2-run.
ClaimReport check_H_embedding(int n, int k, ActionSelect as,
                              std::uint64_t seed = 0);

// Regression check of observed largest-index PI iteration counts on the
// partner-chain family against a frozen table (n <= 8, k <= 5).
ClaimReport check_H_counts(int n, int k);

// Doubling check: count(n+1, 2) / count(n, 2) within [1.8, 2.2] for every
// n in [n_lo, n_hi].
ClaimReport check_H_growth(int n_lo = 6, int n_hi = 11);

// Computes the discount threshold for the described instance, reruns its
// designated variant at gamma = (1+gamma0)/2, and checks the policy
// sequence is identical to the undiscounted run (same seed).
ClaimReport check_discount_transfer(const std::string& descriptor,
                                    std::uint64_t seed = 0);

// For every i, j the single-improvable-state policy 0^(i-1) j (k-1)^(n-i)
// has improvement set ({s_i}, {j+1..k-1}) and the exact value table
// (-2^u below i, -2^i * p_j at i, 0 above).
ClaimReport check_G_sets(int n, int k);

// All ordered pairs of balanced policies on the counter family:
// [y] > [x] implies strict dominance of y.y over x.x.
ClaimReport check_F_order(int m, int k);

// For every x short of all-max, reconstructs the increment chain
// x.x -> x.p_1 -> ... -> x.y -> q_1.y -> ... -> y.y from first principles,
// certifies every link as a valid single-switch improvement, and checks the
// actual cyclic-variant run traverses exactly this chain.
ClaimReport check_F_segments(int m, int k);

// The full acceptance battery (ten criteria).  fixture_dir must contain
// f33_trajectory.txt.  Several criteria aggregate many checker calls; each
// report's claim field carries the criterion number.
std::vector<ClaimReport> acceptance_criteria(const std::string& fixture_dir);

}  // namespace piforge
