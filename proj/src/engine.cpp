#include "piforge/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace piforge {

const std::vector<int>* ImprovementSet::actions_for(int s) const {
    auto it = std::lower_bound(improvable.begin(), improvable.end(), s);
    if (it == improvable.end() || *it != s) return nullptr;
    return &improving_actions[static_cast<std::size_t>(it - improvable.begin())];
}

namespace {

ImprovementSet improvement_set_from_q(const QFn& q, const Policy& pi) {
    ImprovementSet is;
    for (std::size_t s = 0; s < q.q.size(); ++s) {
        const Rat& current = q.q[s][static_cast<std::size_t>(pi[s])];
        std::vector<int> ia;
        for (std::size_t a = 0; a < q.q[s].size(); ++a)
            if (q.q[s][a] > current) ia.push_back(static_cast<int>(a));
        if (!ia.empty()) {
            is.improvable.push_back(static_cast<int>(s));
            is.improving_actions.push_back(std::move(ia));
        }
    }
    return is;
}

int select_action(const QFn& q, const Policy& pi, int s, const std::vector<int>& ia,
                  ActionSelect as, int k, Rng& rng) {
    switch (as) {
        case ActionSelect::IndexMin:
            return ia.front();
        case ActionSelect::RandomUniform:
            return ia[rng.below(ia.size())];
        case ActionSelect::MaxQ: {
            const auto& row = q.q[static_cast<std::size_t>(s)];
            int best = 0;
            for (int a = 1; a < k; ++a)
                if (row[static_cast<std::size_t>(a)] > row[static_cast<std::size_t>(best)])
                    best = a;  // strict >, so ties keep the smallest index
            return best;
        }
        case ActionSelect::PeculiarCyclic: {
            int next = (pi[static_cast<std::size_t>(s)] + 1) % k;
            if (std::find(ia.begin(), ia.end(), next) == ia.end())
                throw OffTrajectoryError("cyclic successor action is not improving at state " +
                                         std::to_string(s));
            return next;
        }
    }
    throw std::logic_error("unknown action selector");
}

std::vector<int> select_states(const Policy& pi, const ImprovementSet& is,
                               const StateSelector& ss, Rng& rng) {
    switch (ss.kind) {
        case StateSelect::Howard:
            return is.improvable;
        case StateSelect::Simple: {
            auto priority = [&ss](int s) {
                return ss.index_order.empty() ? s : ss.index_order[static_cast<std::size_t>(s)];
            };
            int best = is.improvable.front();
            for (int s : is.improvable)
                if (priority(s) > priority(best)) best = s;
            return {best};
        }
        case StateSelect::RandomSubset: {
            if (is.improvable.size() > 62)
                throw std::runtime_error("improvable set too large for subset sampling");
            // uniform over the 2^|IS|-1 non-empty subsets via an integer mask
            std::uint64_t mask = 1 + rng.below((1ULL << is.improvable.size()) - 1);
            std::vector<int> chosen;
            for (std::size_t i = 0; i < is.improvable.size(); ++i)
                if (mask & (1ULL << i)) chosen.push_back(is.improvable[i]);
            return chosen;
        }
        case StateSelect::Peculiar: {
            auto target = peculiar_target(split(pi, ss.m, ss.k));
            if (!target)
                throw OffTrajectoryError("peculiar rule undefined: [y] < [x]");
            if (!is.actions_for(*target))
                throw OffTrajectoryError("peculiar target state " + std::to_string(*target) +
                                         " is not improvable");
            return {*target};
        }
    }
    throw std::logic_error("unknown state selector");
}

StepResult step_from_q(const Mdp& m, const Policy& pi, const QFn& q,
                       const ImprovementSet& is, const StateSelector& ss, ActionSelect as,
                       Rng& rng) {
    StepResult res;
    if (is.empty()) {
        res.converged = true;
        return res;
    }
    res.next = pi;
    for (int s : select_states(pi, is, ss, rng)) {
        const std::vector<int>& ia = *is.actions_for(s);
        int a = select_action(q, pi, s, ia, as, m.n_actions, rng);
        res.switches.push_back({s, pi[static_cast<std::size_t>(s)], a});
        res.next[static_cast<std::size_t>(s)] = a;
    }
    return res;
}

}  // namespace

ImprovementSet improvement_set(const Mdp& m, const Policy& pi) {
    ValueFn v = evaluate(m, pi);
    return improvement_set_from_q(q_values(m, pi, v), pi);
}

bool is_improvement(const Mdp& m, const Policy& pi, const Policy& next) {
    if (pi.size() != next.size()) return false;
    ImprovementSet is = improvement_set(m, pi);
    bool any = false;
    for (std::size_t s = 0; s < pi.size(); ++s) {
        if (pi[s] == next[s]) continue;
        const std::vector<int>* ia = is.actions_for(static_cast<int>(s));
        if (!ia || std::find(ia->begin(), ia->end(), next[s]) == ia->end()) return false;
        any = true;
    }
    return any;
}

std::optional<int> peculiar_target(const SplitPolicy& sp) {
    const auto m = sp.x.size();
    const int k = sp.x.base;
    const std::uint64_t nx = numeral(sp.x);
    const std::uint64_t ny = numeral(sp.y);
    if (ny < nx) return std::nullopt;
    if (ny == nx)
        return static_cast<int>(m + last_non_max_index(sp.x) - 1);  // s'_{I(x)}
    const std::uint64_t d = ny - nx;
    if (d == 1) return static_cast<int>(m - 1);  // s_m
    // b = floor(log_k d)
    std::size_t b = 0;
    for (std::uint64_t pow = static_cast<std::uint64_t>(k); pow <= d;
         pow *= static_cast<std::uint64_t>(k)) {
        ++b;
        if (pow > d / static_cast<std::uint64_t>(k)) break;  // pow*k would exceed d
    }
    if (sp.y.digits[m - 1] == k - 1)
        return static_cast<int>(2 * m - b);  // s'_{m-b+1}
    return static_cast<int>(m - b - 1);      // s_{m-b}
}

std::string to_string(StateSelect s) {
    switch (s) {
        case StateSelect::Howard: return "howard";
        case StateSelect::Simple: return "simple";
        case StateSelect::RandomSubset: return "random";
        case StateSelect::Peculiar: return "peculiar";
    }
    return "?";
}

std::string to_string(ActionSelect a) {
    switch (a) {
        case ActionSelect::IndexMin: return "index";
        case ActionSelect::RandomUniform: return "random";
        case ActionSelect::MaxQ: return "maxq";
        case ActionSelect::PeculiarCyclic: return "cyclic";
    }
    return "?";
}

StateSelect state_select_from_string(const std::string& s) {
    if (s == "howard") return StateSelect::Howard;
    if (s == "simple") return StateSelect::Simple;
    if (s == "random") return StateSelect::RandomSubset;
    if (s == "peculiar") return StateSelect::Peculiar;
    throw std::invalid_argument("unknown state selector: " + s);
}

ActionSelect action_select_from_string(const std::string& s) {
    if (s == "index") return ActionSelect::IndexMin;
    if (s == "random") return ActionSelect::RandomUniform;
    if (s == "maxq") return ActionSelect::MaxQ;
    if (s == "cyclic") return ActionSelect::PeculiarCyclic;
    throw std::invalid_argument("unknown action selector: " + s);
}

StepResult step(const Mdp& m, const Policy& pi, const StateSelector& ss, ActionSelect as,
                Rng& rng) {
    ValueFn v = evaluate(m, pi);
    QFn q = q_values(m, pi, v);
    return step_from_q(m, pi, q, improvement_set_from_q(q, pi), ss, as, rng);
}

std::string Trajectory::policy_string(std::size_t t, int k) const {
    const Policy& pi = steps[t].policy;
    if (split_m > 0) return render(split(pi, split_m, k));
    return render_flat(pi, k);
}

Trajectory run(const Mdp& m, const Policy& pi0, const StateSelector& ss, ActionSelect as,
               std::uint64_t seed, int max_iters) {
    auto bad = validate(m);
    if (!bad.ok()) throw std::invalid_argument("invalid MDP: " + bad.violations.front());

    Trajectory traj;
    traj.mdp_hash = mdp_hash(m);
    traj.state_select = to_string(ss.kind);
    traj.action_select = to_string(as);
    traj.seed = seed;
    traj.generator = Rng::kName;
    if (ss.kind == StateSelect::Peculiar) traj.split_m = ss.m;

    Rng rng(seed);
    Policy pi = pi0;
    ValueFn v = evaluate(m, pi);
    QFn q = q_values(m, pi, v);
    ImprovementSet is = improvement_set_from_q(q, pi);
    traj.steps.push_back({0, pi, v, is, {}});

    for (int t = 1; t <= max_iters; ++t) {
        StepResult sr = step_from_q(m, pi, q, is, ss, as, rng);
        if (sr.converged) {
            traj.converged = true;
            return traj;
        }
        ValueFn v_next = evaluate(m, sr.next);
        if (compare(v_next, v) != Dominance::StrictlyDominates)
            throw CertificationError("improvement step failed strict dominance at t=" +
                                     std::to_string(t));
        pi = std::move(sr.next);
        v = std::move(v_next);
        q = q_values(m, pi, v);
        is = improvement_set_from_q(q, pi);
        traj.steps.push_back({t, pi, v, is, std::move(sr.switches)});
    }
    throw std::runtime_error("policy iteration did not converge within max_iters");
}

}  // namespace piforge
