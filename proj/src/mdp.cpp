#include "piforge/mdp.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace piforge {

namespace {

// Reverse post-order of the given successor relation over non-terminal
// states; empty result signals a cycle.
std::vector<int> topo_order(int nn, const auto& successors_of) {
    std::vector<int> color(static_cast<std::size_t>(nn), 0);  // 0 new, 1 active, 2 done
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(nn));
    // iterative DFS; frame second = next successor position
    std::vector<std::pair<int, std::size_t>> stack;
    for (int root = 0; root < nn; ++root) {
        if (color[root] != 0) continue;
        stack.emplace_back(root, 0);
        color[root] = 1;
        while (!stack.empty()) {
            auto& [s, pos] = stack.back();
            const auto& succ = successors_of(s);
            if (pos < succ.size()) {
                int t = succ[pos++];
                if (t >= nn) continue;
                if (color[t] == 1) return {};  // back edge
                if (color[t] == 0) {
                    color[t] = 1;
                    stack.emplace_back(t, 0);
                }
            } else {
                color[s] = 2;
                order.push_back(s);
                stack.pop_back();
            }
        }
    }
    return order;  // successors precede their predecessors
}

std::vector<int> policy_successors(const Mdp& m, const Policy& pi, int s) {
    std::vector<int> out;
    for (const auto& [t, p] : m.transitions[static_cast<std::size_t>(s)]
                                            [static_cast<std::size_t>(pi[static_cast<std::size_t>(s)])])
        out.push_back(t);
    return out;
}

void check_policy(const Mdp& m, const Policy& pi) {
    if (static_cast<int>(pi.size()) != m.n_nonterminal)
        throw std::invalid_argument("policy length != n_nonterminal");
    for (int a : pi)
        if (a < 0 || a >= m.n_actions)
            throw std::invalid_argument("policy action out of range");
}

}  // namespace

ValidationReport validate(const Mdp& m) {
    ValidationReport rep;
    auto complain = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

    if (m.n_nonterminal < 0 || m.n_terminal < 0 || m.n_actions < 1)
        complain("bad state/action counts");
    if (m.discount <= 0 || m.discount > 1) complain("discount outside (0,1]");
    if (static_cast<int>(m.transitions.size()) != m.n_nonterminal ||
        static_cast<int>(m.rewards.size()) != m.n_nonterminal) {
        complain("transition/reward tables not sized to non-terminal states");
        return rep;
    }
    for (int s = 0; s < m.n_nonterminal; ++s) {
        const auto& ts = m.transitions[static_cast<std::size_t>(s)];
        const auto& rs = m.rewards[static_cast<std::size_t>(s)];
        if (static_cast<int>(ts.size()) != m.n_actions ||
            static_cast<int>(rs.size()) != m.n_actions) {
            complain("state " + std::to_string(s) + ": action table not sized to k");
            continue;
        }
        for (int a = 0; a < m.n_actions; ++a) {
            Rat mass(0);
            for (const auto& [t, p] : ts[static_cast<std::size_t>(a)]) {
                if (t < 0 || t >= m.n_states())
                    complain("state " + std::to_string(s) + " action " + std::to_string(a) +
                             ": successor out of range");
                if (p < 0 || p > 1)
                    complain("state " + std::to_string(s) + " action " + std::to_string(a) +
                             ": probability outside [0,1]");
                mass += p;
            }
            if (mass != 1)
                complain("state " + std::to_string(s) + " action " + std::to_string(a) +
                         ": distribution mass != 1");
        }
    }
    if (!rep.ok()) return rep;

    if (m.discount == 1) {
        // all-actions graph must be acyclic among non-terminals, so every
        // policy is proper
        auto all_succ = [&m](int s) {
            std::vector<int> out;
            for (const auto& acts : m.transitions[static_cast<std::size_t>(s)])
                for (const auto& [t, p] : acts) out.push_back(t);
            return out;
        };
        if (m.n_nonterminal > 0 && topo_order(m.n_nonterminal, all_succ).empty())
            complain("total-reward MDP has a cycle among non-terminal states");
    }
    return rep;
}

ValueFn evaluate(const Mdp& m, const Policy& pi) {
    check_policy(m, pi);
    auto succ = [&m, &pi](int s) { return policy_successors(m, pi, s); };
    std::vector<int> order =
        m.n_nonterminal > 0 ? topo_order(m.n_nonterminal, succ) : std::vector<int>{};
    if (m.n_nonterminal > 0 && order.empty()) {
        if (m.discount == 1)
            throw std::domain_error("improper policy: cycle under total reward");
        return evaluate_gauss(m, pi);
    }
    ValueFn v;
    v.values.assign(static_cast<std::size_t>(m.n_nonterminal), Rat(0));
    for (int s : order) {  // successors already solved
        int a = pi[static_cast<std::size_t>(s)];
        Rat acc = m.rewards[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
        for (const auto& [t, p] :
             m.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)])
            if (t < m.n_nonterminal)
                acc += m.discount * p * v.values[static_cast<std::size_t>(t)];
        v.values[static_cast<std::size_t>(s)] = acc;
    }
    return v;
}

ValueFn evaluate_gauss(const Mdp& m, const Policy& pi) {
    check_policy(m, pi);
    const auto n = static_cast<std::size_t>(m.n_nonterminal);
    // (I - gamma * P_pi) V = R_pi
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1, Rat(0)));
    for (std::size_t s = 0; s < n; ++s) {
        a[s][s] = Rat(1);
        const auto act = static_cast<std::size_t>(pi[s]);
        for (const auto& [t, p] : m.transitions[s][act])
            if (t < m.n_nonterminal)
                a[s][static_cast<std::size_t>(t)] -= m.discount * p;
        a[s][n] = m.rewards[s][act];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular policy system");
        std::swap(a[piv], a[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    ValueFn v;
    v.values.resize(n);
    for (std::size_t s = 0; s < n; ++s) v.values[s] = a[s][n] / a[s][s];
    return v;
}

QFn q_values(const Mdp& m, const Policy& pi, const ValueFn& v) {
    check_policy(m, pi);
    QFn q;
    q.q.assign(static_cast<std::size_t>(m.n_nonterminal),
               std::vector<Rat>(static_cast<std::size_t>(m.n_actions), Rat(0)));
    for (std::size_t s = 0; s < static_cast<std::size_t>(m.n_nonterminal); ++s)
        for (std::size_t a = 0; a < static_cast<std::size_t>(m.n_actions); ++a) {
            Rat acc = m.rewards[s][a];
            for (const auto& [t, p] : m.transitions[s][a])
                if (t < m.n_nonterminal)
                    acc += m.discount * p * v.values[static_cast<std::size_t>(t)];
            q.q[s][a] = acc;
        }
    return q;
}

Dominance compare(const ValueFn& a, const ValueFn& b) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("value functions over different state spaces");
    bool some_gt = false, some_lt = false;
    for (std::size_t s = 0; s < a.values.size(); ++s) {
        if (a.values[s] > b.values[s]) some_gt = true;
        if (a.values[s] < b.values[s]) some_lt = true;
    }
    if (some_gt && some_lt) return Dominance::Incomparable;
    if (some_gt) return Dominance::StrictlyDominates;
    if (some_lt) return Dominance::Incomparable;  // b dominates a
    return Dominance::Equal;
}

std::pair<Policy, ValueFn> brute_force_optimal(const Mdp& m, std::uint64_t budget) {
    auto bad = validate(m);
    if (!bad.ok()) throw std::invalid_argument("invalid MDP: " + bad.violations.front());
    std::uint64_t count = 1;
    for (int s = 0; s < m.n_nonterminal; ++s) {
        if (count > budget / static_cast<std::uint64_t>(m.n_actions) + 1)
            throw std::runtime_error("enumeration budget exceeded");
        count *= static_cast<std::uint64_t>(m.n_actions);
    }
    if (count > budget) throw std::runtime_error("enumeration budget exceeded");

    Policy pi(static_cast<std::size_t>(m.n_nonterminal), 0);
    Policy best = pi;
    ValueFn best_v = evaluate(m, pi);
    auto advance = [&m](Policy& p) {
        for (auto& a : p) {
            if (++a < m.n_actions) return true;
            a = 0;
        }
        return false;
    };
    while (advance(pi)) {
        ValueFn v = evaluate(m, pi);
        // the true optimum weakly dominates every policy, so it always
        // displaces the incumbent when reached
        Dominance d = compare(v, best_v);
        if (d == Dominance::StrictlyDominates) {
            best = pi;
            best_v = v;
        }
    }
    // the winner must be greedy with respect to itself
    QFn q = q_values(m, best, best_v);
    for (std::size_t s = 0; s < best_v.values.size(); ++s)
        for (const Rat& qa : q.q[s])
            if (qa > best_v.values[s])
                throw std::logic_error("enumeration winner is improvable");
    return {best, best_v};
}

std::pair<int, Rat> horizon_and_reward_bound(const Mdp& m) {
    auto all_succ = [&m](int s) {
        std::vector<int> out;
        for (const auto& acts : m.transitions[static_cast<std::size_t>(s)])
            for (const auto& [t, p] : acts) out.push_back(t);
        return out;
    };
    std::vector<int> order =
        m.n_nonterminal > 0 ? topo_order(m.n_nonterminal, all_succ) : std::vector<int>{};
    if (m.n_nonterminal > 0 && order.empty())
        throw std::domain_error("transition graph has a cycle; horizon undefined");
    std::vector<int> depth(static_cast<std::size_t>(m.n_nonterminal), 0);
    int longest = 0;
    Rat rmax(0);
    for (int s : order) {
        int d = 0;
        for (std::size_t a = 0; a < static_cast<std::size_t>(m.n_actions); ++a) {
            for (const auto& [t, p] : m.transitions[static_cast<std::size_t>(s)][a])
                d = std::max(d, t < m.n_nonterminal ? depth[static_cast<std::size_t>(t)] : 0);
            Rat r = abs(m.rewards[static_cast<std::size_t>(s)][a]);
            if (r > rmax) rmax = r;
        }
        depth[static_cast<std::size_t>(s)] = d + 1;
        longest = std::max(longest, d + 1);
    }
    return {longest, rmax};
}

std::string mdp_hash(const Mdp& m) {
    std::ostringstream canon;
    canon << m.n_nonterminal << ';' << m.n_terminal << ';' << m.n_actions << ';'
          << rat_to_string(m.discount) << ';';
    for (int s = 0; s < m.n_nonterminal; ++s)
        for (int a = 0; a < m.n_actions; ++a) {
            canon << s << ',' << a << ','
                  << rat_to_string(m.rewards[static_cast<std::size_t>(s)]
                                            [static_cast<std::size_t>(a)]);
            for (const auto& [t, p] :
                 m.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)])
                canon << ':' << t << '@' << rat_to_string(p);
            canon << ';';
        }
    const std::string text = canon.str();
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::uint64_t default_budget(std::uint64_t fallback) {
    if (const char* env = std::getenv("PIFORGE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw std::invalid_argument("PIFORGE_BUDGET is not a positive integer");
    }
    return fallback;
}

}  // namespace piforge
