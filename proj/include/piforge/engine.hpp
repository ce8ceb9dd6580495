#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "piforge/codec.hpp"
#include "piforge/mdp.hpp"
#include "piforge/rng.hpp"

namespace piforge {

// Raised when the Peculiar rule reaches a configuration it is not defined
// for (d < 0, target state not improvable, or the cyclic successor action
// not improving).  Deliberately an error, never a silent fallback.
struct OffTrajectoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by run() when a step fails the strict-dominance certificate.
struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// IS(pi) and IA(pi, s): the states where pi is not greedy with respect to
// its own Q-values, and the strictly better actions at each of them.
struct ImprovementSet {
    std::vector<int> improvable;                      // ascending state order
    std::vector<std::vector<int>> improving_actions;  // parallel to improvable

    bool empty() const { return improvable.empty(); }
    // nullptr when s is not improvable
    const std::vector<int>* actions_for(int s) const;
};

ImprovementSet improvement_set(const Mdp& m, const Policy& pi);

// True iff next differs from pi only on improvable states, each switched to
// an improving action, with at least one difference.
bool is_improvement(const Mdp& m, const Policy& pi, const Policy& next);

enum class StateSelect { Howard, Simple, RandomSubset, Peculiar };
enum class ActionSelect { IndexMin, RandomUniform, MaxQ, PeculiarCyclic };

std::string to_string(StateSelect s);
std::string to_string(ActionSelect a);
StateSelect state_select_from_string(const std::string& s);
ActionSelect action_select_from_string(const std::string& s);

struct StateSelector {
    StateSelect kind = StateSelect::Howard;
    // Simple: index_order[s] is the priority of state s; the improvable
    // state with the largest priority is switched.  Empty = identity
    // (state-creation order).
    std::vector<int> index_order;
    // Peculiar: counter/partner split of the state space (states 0..m-1
    // are counters, m..2m-1 partners) and digit base.
    std::size_t m = 0;
    int k = 0;

    static StateSelector howard() { return {StateSelect::Howard, {}, 0, 0}; }
    static StateSelector simple(std::vector<int> order = {}) {
        return {StateSelect::Simple, std::move(order), 0, 0};
    }
    static StateSelector random_subset() { return {StateSelect::RandomSubset, {}, 0, 0}; }
    static StateSelector peculiar(std::size_t m, int k) {
        return {StateSelect::Peculiar, {}, m, k};
    }
};

// The memoryless switch-target rule for the counter family: given the
// current split policy x.y, returns the flat index of the single state to
// switch, or nullopt when the configuration cannot arise on-trajectory
// (d = [y] - [x] < 0).
std::optional<int> peculiar_target(const SplitPolicy& sp);

struct Switch {
    int state;
    int from;
    int to;
    bool operator==(const Switch&) const = default;
};

// One improvement step.  Converged (next empty) iff IS(pi) is empty.
struct StepResult {
    bool converged = false;
    Policy next;
    std::vector<Switch> switches;
};

StepResult step(const Mdp& m, const Policy& pi, const StateSelector& ss,
                ActionSelect as, Rng& rng);

struct StepRecord {
    int t = 0;
    Policy policy;
    ValueFn values;
    ImprovementSet improvable;
    std::vector<Switch> switched;  // switches that produced this policy (empty at t=0)
};

struct Trajectory {
    // run metadata
    std::string mdp_hash;
    std::string state_select;
    std::string action_select;
    std::uint64_t seed = 0;
    std::string generator;  // PRNG algorithm name
    // F-style rendering hint: when > 0, policies render as x.y split at m
    std::size_t split_m = 0;

    std::vector<StepRecord> steps;
    bool converged = false;

    const Policy& final_policy() const { return steps.back().policy; }
    std::string policy_string(std::size_t t, int k) const;
};

// Iterates step() from pi0 until convergence or max_iters, recording every
// policy including pi0 and the final one.  After each step asserts that the
// new value function strictly dominates the old (aborts with
// CertificationError otherwise).
Trajectory run(const Mdp& m, const Policy& pi0, const StateSelector& ss,
               ActionSelect as, std::uint64_t seed, int max_iters = 1000000);

}  // namespace piforge
