#include "piforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "piforge/io.hpp"
#include "piforge/rng.hpp"

namespace piforge {

namespace {

Policy zeros(int n) { return Policy(static_cast<std::size_t>(n), 0); }

std::string fmt_params(std::initializer_list<std::pair<const char*, std::string>> kv) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, val] : kv) {
        if (!first) os << ", ";
        os << key << "=" << val;
        first = false;
    }
    return os.str();
}

ClaimReport make_pass(std::string claim, std::string params, std::string expected,
                      std::string observed) {
    return {std::move(claim), std::move(params), std::move(expected), std::move(observed),
            true, ""};
}

ClaimReport make_fail(std::string claim, std::string params, std::string expected,
                      std::string observed, std::string witness) {
    return {std::move(claim), std::move(params), std::move(expected), std::move(observed),
            false, std::move(witness)};
}

// policy text for witnesses: x.y split when the layout has one
std::string policy_text(const Policy& pi, int k, std::size_t split_m) {
    if (split_m > 0 && pi.size() == 2 * split_m) return render(split(pi, split_m, k));
    return render_flat(pi, k);
}

std::uint64_t policy_space(const Mdp& m) {
    std::uint64_t count = 1;
    for (int s = 0; s < m.n_nonterminal; ++s) {
        if (count > (~0ULL) / static_cast<std::uint64_t>(m.n_actions)) return ~0ULL;
        count *= static_cast<std::uint64_t>(m.n_actions);
    }
    return count;
}

mpz_class pow_z(int base, int e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return z;
}

// the frozen largest-index-PI iteration counts on H(n,k), observed by
// running this implementation and pinned as a regression table
constexpr int kHCountTable[8][4] = {
    // k = 2,  3,   4,   5
    {2, 3, 4, 5},           // n = 1
    {4, 6, 8, 10},          // n = 2
    {8, 12, 16, 20},        // n = 3
    {16, 24, 32, 40},       // n = 4
    {32, 48, 64, 79},       // n = 5
    {64, 96, 128, 158},     // n = 6
    {128, 192, 256, 316},   // n = 7
    {256, 384, 512, 632},   // n = 8
};

}  // namespace

std::string ClaimReport::to_json() const {
    nlohmann::json j;
    j["claim"] = claim;
    j["params"] = params;
    j["expected"] = expected;
    j["observed"] = observed;
    j["pass"] = pass;
    j["witness"] = witness;
    return j.dump();
}

std::string ClaimReport::to_line() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << "  " << claim;
    if (!params.empty()) os << " [" << params << "]";
    os << "  expected: " << expected << "  observed: " << observed;
    if (!pass) os << "  witness: " << witness;
    return os.str();
}

ClaimReport certify_trajectory(const Mdp& m, const Trajectory& traj, std::uint64_t budget) {
    const std::string claim = "certify-trajectory";
    const std::string params = fmt_params({{"mdp", traj.mdp_hash},
                                           {"state_select", traj.state_select},
                                           {"action_select", traj.action_select},
                                           {"steps", std::to_string(traj.steps.size())}});
    auto fail = [&](const std::string& what, const std::string& witness) {
        return make_fail(claim, params, "valid improvement trajectory", what, witness);
    };
    if (traj.steps.empty()) return fail("empty trajectory", "no steps recorded");
    if (!traj.converged) return fail("run did not converge", "trajectory truncated");

    std::set<Policy> seen;
    ValueFn prev_v;
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
        const Policy& pi = traj.steps[t].policy;
        if (!seen.insert(pi).second)
            return fail("policy revisited",
                        "t=" + std::to_string(t) + " policy " +
                            policy_text(pi, m.n_actions, traj.split_m));
        ValueFn v = evaluate(m, pi);
        if (!(v == traj.steps[t].values))
            return fail("recorded values diverge from re-evaluation",
                        "t=" + std::to_string(t));
        if (t > 0) {
            if (!is_improvement(m, traj.steps[t - 1].policy, pi))
                return fail("step outside the improvement set of its predecessor",
                            "t=" + std::to_string(t) + " policy " +
                                policy_text(pi, m.n_actions, traj.split_m));
            if (compare(v, prev_v) != Dominance::StrictlyDominates)
                return fail("step not strictly dominating", "t=" + std::to_string(t));
        }
        prev_v = std::move(v);
    }
    if (!improvement_set(m, traj.final_policy()).empty())
        return fail("final policy still improvable",
                    policy_text(traj.final_policy(), m.n_actions, traj.split_m));
    if (policy_space(m) <= budget) {
        auto [opt_pi, opt_v] = brute_force_optimal(m, budget);
        if (!(evaluate(m, traj.final_policy()) == opt_v))
            return fail("final values differ from enumeration optimum",
                        "optimal " + policy_text(opt_pi, m.n_actions, traj.split_m));
    }
    return make_pass(claim, params, "valid improvement trajectory",
                     std::to_string(traj.steps.size()) + " certified steps");
}

unsigned long long f_count(int m, int k) {
    if (m < 1 || k < 2) throw std::invalid_argument("f_count needs m >= 1, k >= 2");
    mpz_class km = pow_z(k, m);
    mpz_class fc = 2 * k * (km - 1) / (k - 1) - 2 * m + 1;
    if (!fc.fits_ulong_p()) throw std::overflow_error("count exceeds machine range");
    return fc.get_ui();
}

ClaimReport check_F(int m, int k, const std::string& fixture_path) {
    const std::string claim = "counter-family-trajectory";
    const std::string params =
        fmt_params({{"m", std::to_string(m)}, {"k", std::to_string(k)}});
    auto [mdp, layout] = build_F(m, k);
    Trajectory traj = run(mdp, zeros(2 * m), StateSelector::peculiar(layout.split_m, k),
                          ActionSelect::PeculiarCyclic, 0);

    const unsigned long long want = f_count(m, k);
    const std::string expected = std::to_string(want) + " policies, balanced ascending";
    if (traj.steps.size() != want)
        return make_fail(claim, params, expected,
                         std::to_string(traj.steps.size()) + " policies",
                         "length mismatch");
    // balanced subsequence must enumerate [x] = 0 .. k^m - 1 in order
    std::uint64_t next_numeral = 0;
    for (const auto& step : traj.steps) {
        SplitPolicy sp = split(step.policy, layout.split_m, k);
        if (sp.x == sp.y) {
            if (numeral(sp.x) != next_numeral)
                return make_fail(claim, params, expected,
                                 "balanced policy out of order",
                                 "t=" + std::to_string(step.t) + " " + render(sp));
            ++next_numeral;
        }
    }
    if (next_numeral != static_cast<std::uint64_t>(pow_z(k, m).get_ui()))
        return make_fail(claim, params, expected, "missing balanced policies",
                         std::to_string(next_numeral) + " seen");
    const Policy all_max(static_cast<std::size_t>(2 * m), k - 1);
    if (traj.final_policy() != all_max)
        return make_fail(claim, params, expected, "wrong final policy",
                         policy_text(traj.final_policy(), k, layout.split_m));

    if (!fixture_path.empty()) {
        std::ifstream fix(fixture_path);
        if (!fix)
            return make_fail(claim, params, expected, "fixture unreadable", fixture_path);
        std::string line;
        std::size_t t = 0;
        while (std::getline(fix, line)) {
            if (t >= traj.steps.size())
                return make_fail(claim, params, expected, "trajectory shorter than fixture",
                                 "fixture line " + std::to_string(t + 1));
            std::string got = traj.policy_string(t, k);
            if (got != line)
                return make_fail(claim, params, expected, "fixture mismatch",
                                 "t=" + std::to_string(t) + " got " + got + " want " + line);
            ++t;
        }
        if (t != traj.steps.size())
            return make_fail(claim, params, expected, "trajectory longer than fixture",
                             std::to_string(traj.steps.size()) + " vs " + std::to_string(t));
    }
    return make_pass(claim, params, expected,
                     std::to_string(traj.steps.size()) + " policies, all checks hold");
}

ClaimReport check_G_index(int n, int k) {
    const std::string claim = "chain-family-min-index";
    const std::string params =
        fmt_params({{"n", std::to_string(n)}, {"k", std::to_string(k)}});
    const std::string expected = std::to_string(n * (k - 1) + 1) +
                                 " identical policies under all three state selectors";
    auto [mdp, layout] = build_G(n, k);
    Trajectory howard =
        run(mdp, zeros(n), StateSelector::howard(), ActionSelect::IndexMin, 0);
    Trajectory simple =
        run(mdp, zeros(n), StateSelector::simple(), ActionSelect::IndexMin, 0);
    Trajectory random =
        run(mdp, zeros(n), StateSelector::random_subset(), ActionSelect::IndexMin, 42);

    auto policies = [](const Trajectory& t) {
        std::vector<Policy> ps;
        for (const auto& s : t.steps) ps.push_back(s.policy);
        return ps;
    };
    auto hp = policies(howard), sp = policies(simple), rp = policies(random);
    if (hp != sp || hp != rp)
        return make_fail(claim, params, expected, "selectors disagree",
                         "lengths " + std::to_string(hp.size()) + "/" +
                             std::to_string(sp.size()) + "/" + std::to_string(rp.size()));

    // canonical visiting order: the last non-saturated state steps through
    // actions 1..k-1, from state n down to state 1
    std::vector<Policy> want{zeros(n)};
    for (int i = n; i >= 1; --i)
        for (int j = 1; j <= k - 1; ++j) {
            Policy p(static_cast<std::size_t>(n), 0);
            p[static_cast<std::size_t>(i - 1)] = j;
            for (int u = i + 1; u <= n; ++u) p[static_cast<std::size_t>(u - 1)] = k - 1;
            want.push_back(p);
        }
    if (hp != want) {
        std::size_t t = 0;
        while (t < std::min(hp.size(), want.size()) && hp[t] == want[t]) ++t;
        return make_fail(claim, params, expected, "visiting order differs",
                         "t=" + std::to_string(t));
    }
    // single improvable state at every step, under every selector
    for (const auto& step : howard.steps)
        if (!step.improvable.empty() && step.improvable.improvable.size() != 1)
            return make_fail(claim, params, expected, "more than one improvable state",
                             "t=" + std::to_string(step.t));
    return make_pass(claim, params, expected, std::to_string(hp.size()) + " policies");
}

Rat expected_G_random(int n, int k) {
    if (k < 2) throw std::invalid_argument("k >= 2 required");
    // t_j = expected switches to drive one state from action j to k-1
    std::vector<Rat> t(static_cast<std::size_t>(k - 1));
    Rat tail(0);  // sum of t_{j'} for j' > j
    for (int j = k - 2; j >= 0; --j) {
        t[static_cast<std::size_t>(j)] =
            j == k - 2 ? Rat(1) : 1 + tail / (k - j - 1);
        tail += t[static_cast<std::size_t>(j)];
    }
    Rat harmonic(0);
    for (int r = 1; r <= k - 1; ++r) harmonic += Rat(1, r);
    if (t[0] != harmonic)
        throw std::logic_error("recurrence disagrees with the harmonic closed form");
    return n * t[0] + 1;
}

ClaimReport check_G_random(int n, int k, int trials, std::uint64_t seed) {
    const std::string claim = "chain-family-random-action";
    const std::string params = fmt_params({{"n", std::to_string(n)},
                                           {"k", std::to_string(k)},
                                           {"trials", std::to_string(trials)},
                                           {"seed", std::to_string(seed)}});
    const Rat target = expected_G_random(n, k);
    auto [mdp, layout] = build_G(n, k);
    double sum = 0, sumsq = 0;
    for (int i = 0; i < trials; ++i) {
        Trajectory t = run(mdp, zeros(n), StateSelector::simple(),
                           ActionSelect::RandomUniform, derive_seed(seed, static_cast<std::uint64_t>(i)));
        auto len = static_cast<double>(t.steps.size());
        sum += len;
        sumsq += len * len;
    }
    const double mean = sum / trials;
    const double var = (sumsq - sum * sum / trials) / (trials - 1);
    const double se = std::sqrt(var / trials);
    const double want = mpq_get_d(target.get_mpq_t());
    const double z = se > 0 ? (mean - want) / se : 0.0;
    std::ostringstream exp_s, obs_s;
    exp_s << "mean within 3 SE of " << want;
    obs_s << "mean " << mean << " (z = " << z << ")";
    if (std::abs(mean - want) <= 3 * se || se == 0)
        return make_pass(claim, params, exp_s.str(), obs_s.str());
    return make_fail(claim, params, exp_s.str(), obs_s.str(), "outside the 3-SE band");
}

namespace {

std::vector<Policy> decision_parts(const Trajectory& t, int n) {
    std::vector<Policy> out;
    for (const auto& s : t.steps)
        out.emplace_back(s.policy.begin(), s.policy.begin() + n);
    return out;
}

int zero_to_one_switches(const Trajectory& t) {
    int count = 0;
    for (const auto& s : t.steps)
        for (const auto& sw : s.switched)
            if (sw.from == 0 && sw.to == 1) ++count;
    return count;
}

}  // namespace

ClaimReport check_H_embedding(int n, int k, ActionSelect as, std::uint64_t seed) {
    const std::string claim = "partner-chain-embedding";
    const std::string params = fmt_params({{"n", std::to_string(n)},
                                           {"k", std::to_string(k)},
                                           {"action_select", to_string(as)},
                                           {"seed", std::to_string(seed)}});
    const std::string expected =
        "{0,k-1}^n subsequence equals the mapped k=2 trajectory; count >= (k-1) x "
        "0->1 switches";
    auto [m2, l2] = build_H(n, 2);
    auto [mk, lk] = build_H(n, k);
    Trajectory t2 = run(m2, zeros(2 * n), StateSelector::simple(), as, seed);
    Trajectory tk = run(mk, zeros(2 * n), StateSelector::simple(), as, seed);

    const int sw01 = zero_to_one_switches(t2);
    if (static_cast<long long>(tk.steps.size()) <
        static_cast<long long>(k - 1) * sw01)
        return make_fail(claim, params, expected, "count too small",
                         std::to_string(tk.steps.size()) + " < (k-1)*" +
                             std::to_string(sw01));

    std::vector<Policy> image;
    for (const Policy& p : decision_parts(t2, n)) {
        Policy q = p;
        for (int& a : q)
            if (a == 1) a = k - 1;
        image.push_back(q);
    }
    std::vector<Policy> sub;
    for (const Policy& p : decision_parts(tk, n))
        if (std::all_of(p.begin(), p.end(), [k](int a) { return a == 0 || a == k - 1; }))
            sub.push_back(p);

    for (std::size_t i = 0; i < std::max(sub.size(), image.size()); ++i) {
        auto txt = [k](const std::vector<Policy>& v, std::size_t i) {
            return i < v.size() ? render_flat(v[i], k) : std::string("<none>");
        };
        if (i >= sub.size() || i >= image.size() || sub[i] != image[i])
            return make_fail(claim, params, expected, "embedding mismatch",
                             "position " + std::to_string(i) + ": subsequence " +
                                 txt(sub, i) + " vs image " + txt(image, i));
    }
    return make_pass(claim, params, expected,
                     std::to_string(tk.steps.size()) + " policies, subsequence of " +
                         std::to_string(sub.size()) + " matches");
}

ClaimReport check_H_counts(int n, int k) {
    const std::string claim = "partner-chain-count-regression";
    const std::string params =
        fmt_params({{"n", std::to_string(n)}, {"k", std::to_string(k)}});
    if (n < 1 || n > 8 || k < 2 || k > 5)
        throw std::invalid_argument("regression table covers n <= 8, k <= 5");
    const int want = kHCountTable[n - 1][k - 2];
    auto [mdp, layout] = build_H(n, k);
    Trajectory t = run(mdp, zeros(2 * n), StateSelector::simple(), ActionSelect::IndexMin, 0);
    if (static_cast<int>(t.steps.size()) != want)
        return make_fail(claim, params, std::to_string(want),
                         std::to_string(t.steps.size()), "count drifted from the frozen table");
    return make_pass(claim, params, std::to_string(want), std::to_string(t.steps.size()));
}

ClaimReport check_H_growth(int n_lo, int n_hi) {
    const std::string claim = "partner-chain-doubling";
    const std::string params =
        fmt_params({{"n", std::to_string(n_lo) + ".." + std::to_string(n_hi)}});
    const std::string expected = "count(n+1,2)/count(n,2) within [1.8, 2.2]";
    std::vector<std::size_t> counts;
    for (int n = n_lo; n <= n_hi + 1; ++n) {
        auto [mdp, layout] = build_H(n, 2);
        counts.push_back(
            run(mdp, zeros(2 * n), StateSelector::simple(), ActionSelect::IndexMin, 0)
                .steps.size());
    }
    for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
        // exact rational band check: 1.8 <= c1/c0 <= 2.2
        const auto c0 = counts[i], c1 = counts[i + 1];
        if (10 * c1 < 18 * c0 || 10 * c1 > 22 * c0) {
            std::ostringstream w;
            w << "n=" << (n_lo + static_cast<int>(i)) << ": " << c1 << "/" << c0;
            return make_fail(claim, params, expected, "ratio outside band", w.str());
        }
    }
    std::ostringstream obs;
    for (std::size_t i = 0; i < counts.size(); ++i)
        obs << (i ? "," : "") << counts[i];
    return make_pass(claim, params, expected, "counts " + obs.str());
}

ClaimReport check_discount_transfer(const std::string& descriptor, std::uint64_t seed) {
    const std::string claim = "discount-transfer";
    auto [mdp, layout] = build_family(descriptor);
    StateSelector ss;
    ActionSelect as = ActionSelect::IndexMin;
    switch (layout.tag) {
        case FamilyTag::F:
            ss = StateSelector::peculiar(layout.split_m, layout.k);
            as = ActionSelect::PeculiarCyclic;
            break;
        case FamilyTag::G:
            ss = StateSelector::howard();
            break;
        case FamilyTag::H:
            ss = StateSelector::simple();
            break;
    }
    DiscountCertificate cert = gamma_threshold(mdp, default_budget(100000));
    const Rat gamma = (1 + cert.gamma0) / 2;
    const std::string params = fmt_params({{"family", descriptor},
                                           {"gamma0", rat_to_string(cert.gamma0)},
                                           {"gamma", rat_to_string(gamma)},
                                           {"seed", std::to_string(seed)}});
    Trajectory total = run(mdp, zeros(mdp.n_nonterminal), ss, as, seed);
    Trajectory disc = run(with_discount(mdp, gamma), zeros(mdp.n_nonterminal), ss, as, seed);
    const std::string expected = "identical policy sequences at gamma and at 1";
    if (total.steps.size() != disc.steps.size())
        return make_fail(claim, params, expected, "lengths differ",
                         std::to_string(total.steps.size()) + " vs " +
                             std::to_string(disc.steps.size()));
    for (std::size_t t = 0; t < total.steps.size(); ++t)
        if (total.steps[t].policy != disc.steps[t].policy)
            return make_fail(claim, params, expected, "policies diverge",
                             "t=" + std::to_string(t));
    return make_pass(claim, params, expected,
                     std::to_string(total.steps.size()) + " identical policies");
}

ClaimReport check_G_sets(int n, int k) {
    const std::string claim = "chain-family-improvement-sets";
    const std::string params =
        fmt_params({{"n", std::to_string(n)}, {"k", std::to_string(k)}});
    const std::string expected =
        "IS = {s_i}, IA = {j+1..k-1}, values (-2^u, -2^i p_j, 0) for every i, j";
    auto [mdp, layout] = build_G(n, k);
    int checked = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= k - 2; ++j) {
            Policy pi(static_cast<std::size_t>(n), 0);
            pi[static_cast<std::size_t>(i - 1)] = j;
            for (int u = i + 1; u <= n; ++u) pi[static_cast<std::size_t>(u - 1)] = k - 1;
            const std::string which =
                "i=" + std::to_string(i) + " j=" + std::to_string(j);

            ImprovementSet is = improvement_set(mdp, pi);
            std::vector<int> want_ia;
            for (int a = j + 1; a <= k - 1; ++a) want_ia.push_back(a);
            if (is.improvable != std::vector<int>{i - 1} ||
                is.improving_actions != std::vector<std::vector<int>>{want_ia})
                return make_fail(claim, params, expected, "improvement set differs", which);

            ValueFn v = evaluate(mdp, pi);
            Rat pj(2 * k - j, 2 * k);  // 1/2 + (k-j)/2k
            pj.canonicalize();
            for (int u = 1; u <= n; ++u) {
                Rat want = u < i   ? Rat(-pow_z(2, u).get_si())
                           : u == i ? -pow_z(2, i).get_si() * pj
                                    : Rat(0);
                if (v.values[static_cast<std::size_t>(u - 1)] != want)
                    return make_fail(claim, params, expected, "value table differs",
                                     which + " u=" + std::to_string(u));
            }
            ++checked;
        }
    return make_pass(claim, params, expected, std::to_string(checked) + " policies checked");
}

ClaimReport check_F_order(int m, int k) {
    const std::string claim = "balanced-policy-order";
    const std::string params =
        fmt_params({{"m", std::to_string(m)}, {"k", std::to_string(k)}});
    const std::string expected = "[y] > [x] implies strict dominance, all pairs";
    auto [mdp, layout] = build_F(m, k);
    const auto total = static_cast<std::size_t>(pow_z(k, m).get_ui());

    std::vector<ValueFn> values(total);
    std::vector<Policy> balanced(total);
    KaryString x{std::vector<int>(static_cast<std::size_t>(m), 0), k};
    for (std::size_t num = 0; num < total; ++num) {
        balanced[num] = join({x, x});
        values[num] = evaluate(mdp, balanced[num]);
        for (int u = m - 1; u >= 0; --u) {  // increment x
            if (++x.digits[static_cast<std::size_t>(u)] < k) break;
            x.digits[static_cast<std::size_t>(u)] = 0;
        }
    }
    std::size_t pairs = 0;
    for (std::size_t lo = 0; lo < total; ++lo)
        for (std::size_t hi = lo + 1; hi < total; ++hi, ++pairs)
            if (compare(values[hi], values[lo]) != Dominance::StrictlyDominates)
                return make_fail(claim, params, expected, "dominance violated",
                                 policy_text(balanced[hi], k, layout.split_m) + " vs " +
                                     policy_text(balanced[lo], k, layout.split_m));
    return make_pass(claim, params, expected, std::to_string(pairs) + " ordered pairs hold");
}

ClaimReport check_F_segments(int m, int k) {
    const std::string claim = "increment-segment-chains";
    const std::string params =
        fmt_params({{"m", std::to_string(m)}, {"k", std::to_string(k)}});
    const std::string expected =
        "reconstructed chain certified and equal to the actual run's segment";
    auto [mdp, layout] = build_F(m, k);
    Trajectory traj = run(mdp, zeros(2 * m), StateSelector::peculiar(layout.split_m, k),
                          ActionSelect::PeculiarCyclic, 0);

    // positions of the balanced policies inside the run
    std::vector<std::size_t> balanced_at;
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
        SplitPolicy sp = split(traj.steps[t].policy, layout.split_m, k);
        if (sp.x == sp.y) balanced_at.push_back(t);
    }

    KaryString x{std::vector<int>(static_cast<std::size_t>(m), 0), k};
    const auto total = static_cast<std::size_t>(pow_z(k, m).get_ui());
    if (balanced_at.size() != total)
        return make_fail(claim, params, expected, "balanced policy count differs",
                         std::to_string(balanced_at.size()) + " of " +
                             std::to_string(total));
    for (std::size_t num = 0; num + 1 < total; ++num) {
        const std::size_t big_i = last_non_max_index(x);  // 1-based I(x)
        const int xi = x.digits[big_i - 1];
        KaryString pre = prefix(x, big_i - 1);
        KaryString y = pre;
        y.digits.push_back(xi + 1);
        y.digits.insert(y.digits.end(), m - big_i, 0);

        // x.x -> x.p_1 -> ... -> x.p_{m-I+1} = x.y -> q_2.y -> ... -> y.y
        std::vector<Policy> chain{join({x, x})};
        for (std::size_t r = 1; r <= static_cast<std::size_t>(m) - big_i + 1; ++r) {
            KaryString p = pre;
            p.digits.push_back(xi + 1);
            p.digits.insert(p.digits.end(), r - 1, 0);
            p.digits.insert(p.digits.end(), static_cast<std::size_t>(m) - big_i - r + 1,
                            k - 1);
            chain.push_back(join({x, p}));
        }
        for (std::size_t r = 2; r <= static_cast<std::size_t>(m) - big_i + 1; ++r) {
            KaryString q = pre;
            q.digits.push_back(xi);
            q.digits.insert(q.digits.end(), static_cast<std::size_t>(m) - big_i - r + 1,
                            k - 1);
            q.digits.insert(q.digits.end(), r - 1, 0);
            chain.push_back(join({q, y}));
        }
        chain.push_back(join({y, y}));

        const std::string seg = render(SplitPolicy{x, x}) + " -> " +
                                render(SplitPolicy{y, y});
        // every link is a certified single-state improvement
        for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
            int diffs = 0;
            for (std::size_t s = 0; s < chain[t].size(); ++s)
                if (chain[t][s] != chain[t + 1][s]) ++diffs;
            if (diffs != 1 || !is_improvement(mdp, chain[t], chain[t + 1]))
                return make_fail(claim, params, expected, "chain link not an improvement",
                                 seg + " link " + std::to_string(t));
        }
        // and the actual run traverses exactly this chain
        const std::size_t start = balanced_at[num];
        if (start + chain.size() - 1 != balanced_at[num + 1])
            return make_fail(claim, params, expected, "segment length differs", seg);
        for (std::size_t t = 0; t < chain.size(); ++t)
            if (traj.steps[start + t].policy != chain[t])
                return make_fail(claim, params, expected, "segment policies differ",
                                 seg + " offset " + std::to_string(t));
        x = y;
    }
    return make_pass(claim, params, expected,
                     std::to_string(total - 1) + " segments certified");
}

std::vector<ClaimReport> acceptance_criteria(const std::string& fixture_dir) {
    std::vector<ClaimReport> out;
    auto aggregate = [&out](const std::string& label, std::vector<ClaimReport> parts) {
        for (auto& r : parts)
            if (!r.pass) {
                r.claim = label + " / " + r.claim;
                out.push_back(std::move(r));
                return;
            }
        std::string obs = std::to_string(parts.size()) + " sub-checks pass";
        out.push_back(make_pass(label, "", "all sub-checks pass", obs));
    };

    // 1: the pinned 73-policy table
    {
        ClaimReport r = check_F(3, 3, fixture_dir + "/f33_trajectory.txt");
        r.claim = "criterion-1 / " + r.claim;
        out.push_back(r);
    }

    // 2: counts, balanced order and final policy across the (m,k) grid
    {
        std::vector<ClaimReport> parts;
        for (int m = 1; m <= 5; ++m)
            for (int k = 2; k <= 5; ++k)
                if (f_count(m, k) <= 100000) parts.push_back(check_F(m, k));
        aggregate("criterion-2", std::move(parts));
    }

    // 3: certify a battery of trajectories across families and variants
    {
        std::vector<ClaimReport> parts;
        std::vector<std::pair<Mdp, FamilyLayout>> instances;
        for (int sz = 1; sz <= 3; ++sz)
            for (int k = 2; k <= 3; ++k) {
                instances.push_back(build_F(sz, k));
                instances.push_back(build_G(sz, k));
                instances.push_back(build_H(sz, k));
            }
        instances.push_back(build_G(2, 5));
        const std::uint64_t budget = default_budget();
        for (const auto& [mdp, layout] : instances) {
            std::vector<std::pair<StateSelector, ActionSelect>> variants;
            for (auto ss : {StateSelector::howard(), StateSelector::simple(),
                            StateSelector::random_subset()})
                for (auto as : {ActionSelect::IndexMin, ActionSelect::RandomUniform,
                                ActionSelect::MaxQ})
                    variants.emplace_back(ss, as);
            if (layout.tag == FamilyTag::F)
                variants.emplace_back(StateSelector::peculiar(layout.split_m, layout.k),
                                      ActionSelect::PeculiarCyclic);
            for (const auto& [ss, as] : variants) {
                Trajectory t = run(mdp, zeros(mdp.n_nonterminal), ss, as, 1234);
                if (layout.split_m > 0) t.split_m = layout.split_m;
                parts.push_back(certify_trajectory(mdp, t, budget));
            }
        }
        aggregate("criterion-3", std::move(parts));
    }

    // 4: min-index action selection on the chain family, full grid
    {
        std::vector<ClaimReport> parts;
        for (int n = 1; n <= 10; ++n)
            for (int k = 2; k <= 10; ++k) parts.push_back(check_G_index(n, k));
        aggregate("criterion-4", std::move(parts));
    }

    // 5: random action selection Monte-Carlo band
    {
        std::vector<ClaimReport> parts;
        parts.push_back(check_G_random(4, 3, 10000, 2026));
        parts.push_back(check_G_random(3, 5, 10000, 2027));
        parts.push_back(check_G_random(2, 8, 10000, 2028));
        aggregate("criterion-5", std::move(parts));
    }

    // 6: improvement sets and exact value table on the chain family
    {
        std::vector<ClaimReport> parts;
        for (int n = 1; n <= 8; ++n)
            for (int k = 2; k <= 8; ++k) parts.push_back(check_G_sets(n, k));
        aggregate("criterion-6", std::move(parts));
    }

    // 7: balanced-policy dominance and reconstructed increment segments
    {
        std::vector<ClaimReport> parts;
        const std::vector<std::pair<int, int>> cases{{2, 2}, {2, 3}, {3, 3}};
        for (auto [m, k] : cases) {
            parts.push_back(check_F_order(m, k));
            parts.push_back(check_F_segments(m, k));
        }
        aggregate("criterion-7", std::move(parts));
    }

    // 8: the k -> 2 embedding, count bound, regression counts and doubling
    {
        std::vector<ClaimReport> parts;
        for (int n = 1; n <= 8; ++n)
            for (int k : {3, 4, 5})
                parts.push_back(check_H_embedding(n, k, ActionSelect::IndexMin));
        for (int n = 1; n <= 8; ++n)
            for (int k = 2; k <= 5; ++k) parts.push_back(check_H_counts(n, k));
        parts.push_back(check_H_growth(6, 11));
        aggregate("criterion-8", std::move(parts));
    }

    // 9: discount transfer
    {
        std::vector<ClaimReport> parts;
        for (const char* d : {"F:2,2", "F:2,3", "G:2,3", "H:3,2"})
            parts.push_back(check_discount_transfer(d));
        aggregate("criterion-9", std::move(parts));
    }

    // 10: byte-identical logs on repeated seeded runs
    {
        std::vector<ClaimReport> parts;
        auto rerun_identical = [](const Mdp& mdp, const FamilyLayout& layout,
                                  const StateSelector& ss, ActionSelect as,
                                  std::uint64_t seed) {
            const std::string params =
                fmt_params({{"family", to_string(layout.tag)},
                            {"state_select", to_string(ss.kind)},
                            {"action_select", to_string(as)},
                            {"seed", std::to_string(seed)}});
            Trajectory a = run(mdp, zeros(mdp.n_nonterminal), ss, as, seed);
            Trajectory b = run(mdp, zeros(mdp.n_nonterminal), ss, as, seed);
            a.split_m = b.split_m = layout.split_m;
            const std::string la = trajectory_log_string(a, mdp.n_actions);
            const std::string lb = trajectory_log_string(b, mdp.n_actions);
            if (la == lb)
                return make_pass("log-reproducibility", params, "byte-identical logs",
                                 std::to_string(la.size()) + " bytes equal");
            std::size_t at = 0;
            while (at < la.size() && at < lb.size() && la[at] == lb[at]) ++at;
            return make_fail("log-reproducibility", params, "byte-identical logs",
                             "logs differ",
                             "first divergence at byte " + std::to_string(at));
        };
        {
            auto [mdp, layout] = build_G(3, 3);
            parts.push_back(rerun_identical(mdp, layout, StateSelector::random_subset(),
                                            ActionSelect::RandomUniform, 7));
        }
        {
            auto [mdp, layout] = build_F(3, 3);
            parts.push_back(rerun_identical(
                mdp, layout, StateSelector::peculiar(layout.split_m, layout.k),
                ActionSelect::PeculiarCyclic, 7));
        }
        {
            auto [mdp, layout] = build_H(4, 3);
            parts.push_back(rerun_identical(mdp, layout, StateSelector::simple(),
                                            ActionSelect::RandomUniform, 99));
        }
        aggregate("criterion-10", std::move(parts));
    }

    return out;
}

}  // namespace piforge
