#include "piforge/families.hpp"

#include <sstream>
#include <stdexcept>

namespace piforge {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

Rat pow_int(int base, int e) {
    Rat r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

void add_state(Mdp& m) {
    m.transitions.emplace_back(static_cast<std::size_t>(m.n_actions));
    m.rewards.emplace_back(static_cast<std::size_t>(m.n_actions), Rat(0));
}

}  // namespace

std::string to_string(FamilyTag t) {
    switch (t) {
        case FamilyTag::F: return "F";
        case FamilyTag::G: return "G";
        case FamilyTag::H: return "H";
    }
    return "?";
}

std::pair<Mdp, FamilyLayout> build_F(int m, int k) {
    require(m >= 1 && k >= 2, "F(m,k) needs m >= 1, k >= 2");
    Mdp mdp;
    mdp.n_nonterminal = 2 * m;
    mdp.n_terminal = 1;
    mdp.n_actions = k;
    const int terminal = 2 * m;

    FamilyLayout layout{FamilyTag::F, m, k, {}, static_cast<std::size_t>(m)};
    for (int i = 1; i <= m; ++i) layout.state_names.push_back("s" + std::to_string(i));
    for (int i = 1; i <= m; ++i) layout.state_names.push_back("s'" + std::to_string(i));
    layout.state_names.push_back("T");

    // counter s_i sits at index i-1, partner s'_i at m+i-1; the two have
    // identical action rows at every level
    mdp.transitions.resize(static_cast<std::size_t>(2 * m));
    mdp.rewards.resize(static_cast<std::size_t>(2 * m));
    for (int i = 1; i <= m; ++i) {
        std::vector<std::vector<std::pair<int, Rat>>> trans(static_cast<std::size_t>(k));
        std::vector<Rat> rew(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
            int next = i == 1 ? terminal : (j == 0 ? m + i - 2 : i - 2);
            trans[static_cast<std::size_t>(j)] = {{next, Rat(1)}};
            rew[static_cast<std::size_t>(j)] = j * pow_int(k, m - i);
        }
        mdp.transitions[static_cast<std::size_t>(i - 1)] = trans;
        mdp.rewards[static_cast<std::size_t>(i - 1)] = rew;
        mdp.transitions[static_cast<std::size_t>(m + i - 1)] = std::move(trans);
        mdp.rewards[static_cast<std::size_t>(m + i - 1)] = std::move(rew);
    }
    return {mdp, layout};
}

std::pair<Mdp, FamilyLayout> build_G(int n, int k) {
    require(n >= 1 && k >= 2, "G(n,k) needs n >= 1, k >= 2");
    Mdp mdp;
    mdp.n_nonterminal = n;
    mdp.n_terminal = n + 1;  // one per state plus the final one
    mdp.n_actions = k;

    FamilyLayout layout{FamilyTag::G, n, k, {}, 0};
    for (int i = 1; i <= n; ++i) layout.state_names.push_back("s" + std::to_string(i));
    for (int i = 1; i <= n; ++i) layout.state_names.push_back("T" + std::to_string(i));
    layout.state_names.push_back("Tend");

    for (int i = 1; i <= n; ++i) {
        add_state(mdp);
        auto& trans = mdp.transitions.back();
        auto& rew = mdp.rewards.back();
        const int own = n + i - 1;                   // this state's terminal
        const int next = i < n ? i : 2 * n;          // s_{i+1} or the final terminal
        const Rat cost = -pow_int(2, i);             // -2^i, folded from terminal entry
        trans[0] = {{own, Rat(1)}};
        rew[0] = cost;
        trans[static_cast<std::size_t>(k - 1)] = {{next, Rat(1)}};
        rew[static_cast<std::size_t>(k - 1)] = Rat(0);
        for (int j = 1; j <= k - 2; ++j) {
            Rat pj(2 * k - j, 2 * k);  // 1/2 + (k-j)/2k
            pj.canonicalize();
            trans[static_cast<std::size_t>(j)] = {{own, pj}, {next, 1 - pj}};
            rew[static_cast<std::size_t>(j)] = cost * pj;
        }
    }
    return {mdp, layout};
}

std::pair<Mdp, FamilyLayout> build_H(int n, int k) {
    require(n >= 1 && k >= 2, "H(n,k) needs n >= 1, k >= 2");
    Mdp mdp;
    mdp.n_nonterminal = 2 * n;
    mdp.n_terminal = 2;
    mdp.n_actions = k;
    const int t0 = 2 * n, t1 = 2 * n + 1;
    const Rat eps = Rat(1) / pow_int(2, n);

    FamilyLayout layout{FamilyTag::H, n, k, {}, static_cast<std::size_t>(n)};
    for (int i = 1; i <= n; ++i) layout.state_names.push_back("s" + std::to_string(i));
    for (int i = 1; i <= n; ++i) layout.state_names.push_back("s'" + std::to_string(i));
    layout.state_names.push_back("T0");
    layout.state_names.push_back("T1");

    // entering T1 costs 1; fold that into the reward of every edge into it
    auto fold = [t1](const std::vector<std::pair<int, Rat>>& succ, Rat base) {
        for (const auto& [t, p] : succ)
            if (t == t1) base -= p;
        return base;
    };

    mdp.transitions.resize(static_cast<std::size_t>(2 * n));
    mdp.rewards.resize(static_cast<std::size_t>(2 * n));
    for (int i = 1; i <= n; ++i) {
        const int sd = i - 1, sp = n + i - 1;
        auto& dt = mdp.transitions[static_cast<std::size_t>(sd)];
        auto& dr = mdp.rewards[static_cast<std::size_t>(sd)];
        dt.resize(static_cast<std::size_t>(k));
        dr.resize(static_cast<std::size_t>(k));
        dt[0] = {{i == 1 ? t1 : sd - 1, Rat(1)}};
        dr[0] = fold(dt[0], Rat(0));
        for (int j = 1; j < k; ++j) {
            dt[static_cast<std::size_t>(j)] = {{sp, Rat(1)}};
            dr[static_cast<std::size_t>(j)] = eps / pow_int(2, k - 1 - j);
        }
        // partner: two equiprobable outcomes, identical for every action
        std::vector<std::pair<int, Rat>> succ;
        if (i == 1)
            succ = {{t0, Rat(1, 2)}, {t1, Rat(1, 2)}};
        else if (i == 2)
            succ = {{t1, Rat(1, 2)}, {n, Rat(1, 2)}};  // n = index of s'_1
        else
            succ = {{i - 3, Rat(1, 2)}, {n + i - 2, Rat(1, 2)}};  // s_{i-2}, s'_{i-1}
        Rat r = fold(succ, Rat(0));
        auto& pt = mdp.transitions[static_cast<std::size_t>(sp)];
        auto& pr = mdp.rewards[static_cast<std::size_t>(sp)];
        pt.assign(static_cast<std::size_t>(k), succ);
        pr.assign(static_cast<std::size_t>(k), r);
    }
    return {mdp, layout};
}

std::pair<Mdp, FamilyLayout> build_family(const std::string& descriptor) {
    std::string tag;
    int a = 0, b = 0;
    char colon = 0, comma = 0;
    std::istringstream in(descriptor);
    char t = 0;
    if (!(in >> t >> colon >> a >> comma >> b) || colon != ':' || comma != ',' ||
        !(in >> std::ws).eof())
        throw std::invalid_argument("bad family descriptor (want F:m,k / G:n,k / H:n,k): " +
                                    descriptor);
    switch (t) {
        case 'F': return build_F(a, b);
        case 'G': return build_G(a, b);
        case 'H': return build_H(a, b);
        default: throw std::invalid_argument("unknown family tag in: " + descriptor);
    }
}

DiscountCertificate gamma_threshold(const Mdp& m, std::uint64_t budget) {
    auto bad = validate(m);
    if (!bad.ok()) throw std::invalid_argument("invalid MDP: " + bad.violations.front());

    std::uint64_t count = 1;
    for (int s = 0; s < m.n_nonterminal; ++s) {
        count *= static_cast<std::uint64_t>(m.n_actions);
        if (count > budget) throw std::runtime_error("enumeration budget exceeded");
    }

    // sweep Delta over every policy, state, and pair of actions with
    // distinct (transition row, reward); identical rows have identical
    // Q-values under every policy and carry no ordering information
    bool found = false;
    Rat delta(0);
    Policy pi(static_cast<std::size_t>(m.n_nonterminal), 0);
    while (true) {
        ValueFn v = evaluate(m, pi);
        QFn q = q_values(m, pi, v);
        for (std::size_t s = 0; s < static_cast<std::size_t>(m.n_nonterminal); ++s)
            for (std::size_t a = 0; a + 1 < static_cast<std::size_t>(m.n_actions); ++a)
                for (std::size_t a2 = a + 1; a2 < static_cast<std::size_t>(m.n_actions); ++a2) {
                    if (m.transitions[s][a] == m.transitions[s][a2] &&
                        m.rewards[s][a] == m.rewards[s][a2])
                        continue;
                    Rat d = abs(q.q[s][a] - q.q[s][a2]);
                    if (!found || d < delta) {
                        delta = d;
                        found = true;
                    }
                }
        bool carried = false;
        for (auto& act : pi) {
            if (++act < m.n_actions) {
                carried = true;
                break;
            }
            act = 0;
        }
        if (!carried) break;
    }
    if (!found) throw std::domain_error("no distinct action pairs; Delta undefined");
    if (delta == 0) throw std::domain_error("Delta = 0: some distinct action pair is Q-tied");

    auto [L, rmax] = horizon_and_reward_bound(m);
    DiscountCertificate cert{delta, L, rmax, Rat(0)};
    if (L <= 1) return cert;  // no future rewards: every discount works

    Rat base = 1 - delta / (2 * (L - 1) * rmax);
    if (base <= 0) return cert;
    const auto e = static_cast<unsigned long>(L - 1);
    if (e == 1) {
        cert.gamma0 = base;
        return cert;
    }
    // smallest multiple of 10^-6 whose e-th power reaches base: a certified
    // rational upper bound on the irrational root, strictly below 1
    const long den = 1000000;
    long lo = 0, hi = den;  // (hi/den)^e >= base, (lo/den)^e < base
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        Rat g(mid, den);
        g.canonicalize();
        if (rat_pow(g, e) >= base)
            hi = mid;
        else
            lo = mid;
    }
    if (hi == den)
        throw std::domain_error("gamma0 not representable below 1 with denominator 10^6");
    cert.gamma0 = Rat(hi, den);
    cert.gamma0.canonicalize();
    return cert;
}

Mdp with_discount(const Mdp& m, const Rat& gamma) {
    if (gamma <= 0 || gamma > 1) throw std::invalid_argument("discount outside (0,1]");
    Mdp out = m;
    out.discount = gamma;
    return out;
}

}  // namespace piforge
