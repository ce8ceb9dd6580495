#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "piforge/rational.hpp"

namespace piforge {

// Finite tabular MDP <S, A, T, R, gamma>.  States 0..n_nonterminal-1 are
// non-terminal; terminal states follow and have no outgoing transitions
// (value 0 under every policy).  Rewards that the source formulation pays
// on *entering* a terminal state are folded into R(s,a) at construction
// time, so R is the only reward channel.
struct Mdp {
    int n_nonterminal = 0;
    int n_terminal = 0;
    int n_actions = 0;     // k
    Rat discount = Rat(1); // 1 = total reward; otherwise in (0,1)

    // transitions[s][a]: sparse distribution over successor states
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> transitions;
    // rewards[s][a]
    std::vector<std::vector<Rat>> rewards;

    int n_states() const { return n_nonterminal + n_terminal; }
    bool is_terminal(int s) const { return s >= n_nonterminal; }
};

using Policy = std::vector<int>;  // length n_nonterminal, entries in [0,k)

struct ValueFn {
    std::vector<Rat> values;  // per non-terminal state
    bool operator==(const ValueFn&) const = default;
};

struct QFn {
    std::vector<std::vector<Rat>> q;  // [state][action]
};

enum class Dominance { Equal, WeaklyDominates, StrictlyDominates, Incomparable };

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Structural validation: distribution mass exactly 1, probability and
// action ranges, terminal states untouched, and (for discount 1) acyclicity
// of the all-actions transition graph restricted to non-terminal states,
// which guarantees every policy is proper.
ValidationReport validate(const Mdp& m);

// Exact policy evaluation.  Uses back-substitution along a topological
// order of the policy's transition graph when that graph is acyclic, and
// exact Gaussian elimination on (I - gamma * P_pi) V = R_pi otherwise.
// A cyclic policy graph under discount 1 is an improper-policy error.
ValueFn evaluate(const Mdp& m, const Policy& pi);

// Gaussian-elimination evaluation, exposed separately so tests can check
// that both solvers agree exactly on the same inputs.
ValueFn evaluate_gauss(const Mdp& m, const Policy& pi);

QFn q_values(const Mdp& m, const Policy& pi, const ValueFn& v);

Dominance compare(const ValueFn& a, const ValueFn& b);

// Enumerates every policy (k^n of them), returns one whose value function
// weakly dominates all others.  Throws if k^n exceeds the budget.
std::pair<Policy, ValueFn> brute_force_optimal(const Mdp& m,
                                               std::uint64_t budget = 10'000'000ULL);

// L = longest path (in transitions) to termination; Rmax = max |R(s,a)|.
std::pair<int, Rat> horizon_and_reward_bound(const Mdp& m);

// Stable content hash of the MDP (FNV-1a over a canonical rendering);
// recorded in trajectory logs to tie a log to its instance.
std::string mdp_hash(const Mdp& m);

// Enumeration budget: the PIFORGE_BUDGET environment variable when set,
// otherwise the fallback (used by brute-force search and the Delta sweep).
std::uint64_t default_budget(std::uint64_t fallback = 10'000'000ULL);

}  // namespace piforge
