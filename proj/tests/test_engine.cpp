#include <doctest.h>

#include "piforge/engine.hpp"
#include "piforge/families.hpp"

using namespace piforge;

namespace {

Policy pol(const std::string& digits, int k) { return parse_kary(digits, k).digits; }

}  // namespace

TEST_CASE("improvement sets on the chain family") {
    auto [g, layout] = build_G(4, 4);
    // policy 0^(i-1) j (k-1)^(n-i) has exactly one improvable state
    for (int i = 1; i <= 4; ++i)
        for (int j = 0; j <= 2; ++j) {
            Policy pi(4, 0);
            for (int u = i; u < 4; ++u) pi[static_cast<std::size_t>(u)] = 3;
            pi[static_cast<std::size_t>(i - 1)] = j;
            ImprovementSet is = improvement_set(g, pi);
            REQUIRE(is.improvable == std::vector<int>{i - 1});
            std::vector<int> want;
            for (int a = j + 1; a <= 3; ++a) want.push_back(a);
            CHECK(is.improving_actions[0] == want);
        }
}

TEST_CASE("improvement set of the all-zero counter policy") {
    // under the all-zero policy every value is zero, and every nonzero
    // action pays a positive immediate reward, so every state is improvable
    auto [f, layout] = build_F(3, 3);
    ImprovementSet is = improvement_set(f, pol("000000", 3));
    CHECK(is.improvable == std::vector<int>{0, 1, 2, 3, 4, 5});
    for (const auto& ia : is.improving_actions)
        CHECK(ia == std::vector<int>{1, 2});
}

TEST_CASE("optimal policies have empty improvement sets") {
    auto [f, layout] = build_F(2, 3);
    CHECK(improvement_set(f, pol("2222", 3)).empty());
    auto [g, glayout] = build_G(3, 3);
    CHECK(improvement_set(g, pol("222", 3)).empty());
}

TEST_CASE("is_improvement") {
    auto [f, layout] = build_F(3, 3);
    CHECK(is_improvement(f, pol("000000", 3), pol("000001", 3)));
    CHECK_FALSE(is_improvement(f, pol("000000", 3), pol("000000", 3)));
    CHECK(is_improvement(f, pol("000000", 3), pol("100000", 3)));
    // at 012.012 switching s1 up to action 2 gains reward, but switching
    // s2 down to action 0 loses value
    CHECK(is_improvement(f, pol("012012", 3), pol("212012", 3)));
    CHECK_FALSE(is_improvement(f, pol("012012", 3), pol("002012", 3)));
}

TEST_CASE("peculiar switch targets") {
    // m = 3, k = 3; flat indices: s1 s2 s3 = 0 1 2, s'1 s'2 s'3 = 3 4 5
    CHECK(peculiar_target(parse_split("002\xc2\xb7"
                                      "012",
                                      3)) == 5);  // d=3, b=1, y3=k-1 -> s'3
    CHECK(peculiar_target(parse_split("000\xc2\xb7"
                                      "000",
                                      3)) == 5);  // d=0 -> s'_{I(x)} = s'3
    CHECK(peculiar_target(parse_split("002\xc2\xb7"
                                      "010",
                                      3)) == 2);  // d=1 -> s3
    CHECK_FALSE(peculiar_target(parse_split("010\xc2\xb7"
                                            "002",
                                            3))
                    .has_value());  // d<0: off-trajectory
}

TEST_CASE("single steps") {
    Rng rng(0);
    auto [g, glayout] = build_G(3, 3);
    StepResult gs = step(g, pol("000", 3), StateSelector::howard(),
                         ActionSelect::IndexMin, rng);
    CHECK_FALSE(gs.converged);
    CHECK(gs.next == pol("001", 3));
    CHECK(gs.switches == std::vector<Switch>{{2, 0, 1}});

    auto [f, flayout] = build_F(3, 3);
    StepResult fs = step(f, pol("001001", 3), StateSelector::peculiar(3, 3),
                         ActionSelect::PeculiarCyclic, rng);
    CHECK(fs.next == pol("001002", 3));

    StepResult done = step(g, pol("222", 3), StateSelector::howard(),
                           ActionSelect::IndexMin, rng);
    CHECK(done.converged);
}

TEST_CASE("off-trajectory configurations raise") {
    auto [f, layout] = build_F(3, 3);
    Rng rng(0);
    // [y] < [x] cannot arise on-trajectory and is an explicit error
    CHECK_THROWS_AS(step(f, pol("001000", 3), StateSelector::peculiar(3, 3),
                         ActionSelect::PeculiarCyclic, rng),
                    OffTrajectoryError);
    // cyclic successor action not improving: from action 2 the rule wraps to
    // action 0, but only action 1 improves here
    Mdp m;
    m.n_nonterminal = 1;
    m.n_terminal = 1;
    m.n_actions = 3;
    m.transitions = {{{{1, Rat(1)}}, {{1, Rat(1)}}, {{1, Rat(1)}}}};
    m.rewards = {{Rat(0), Rat(2), Rat(1)}};
    CHECK_THROWS_AS(step(m, {2}, StateSelector::howard(),
                         ActionSelect::PeculiarCyclic, rng),
                    OffTrajectoryError);
}

TEST_CASE("max-Q tie-breaking picks the smallest action index") {
    Mdp m;
    m.n_nonterminal = 1;
    m.n_terminal = 1;
    m.n_actions = 3;
    m.transitions = {{{{1, Rat(1)}}, {{1, Rat(1)}}, {{1, Rat(1)}}}};
    m.rewards = {{Rat(0), Rat(1), Rat(1)}};  // actions 1 and 2 tie
    Rng rng(0);
    StepResult s = step(m, {0}, StateSelector::howard(), ActionSelect::MaxQ, rng);
    CHECK(s.next == Policy{1});
}

TEST_CASE("runs on the counter family") {
    auto [f, layout] = build_F(3, 3);
    Trajectory t = run(f, Policy(6, 0), StateSelector::peculiar(3, 3),
                       ActionSelect::PeculiarCyclic, 0);
    CHECK(t.converged);
    CHECK(t.steps.size() == 73);
    CHECK(t.final_policy() == pol("222222", 3));
    CHECK(t.policy_string(0, 3) == "000\xc2\xb7"
                                   "000");
    // per-step switch sets always have size exactly one
    for (std::size_t i = 1; i < t.steps.size(); ++i)
        CHECK(t.steps[i].switched.size() == 1);
}

TEST_CASE("runs on the chain family") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 2; k <= 4; ++k) {
            auto [g, layout] = build_G(n, k);
            Trajectory t = run(g, Policy(static_cast<std::size_t>(n), 0),
                               StateSelector::howard(), ActionSelect::IndexMin, 0);
            CHECK(t.steps.size() ==
                  static_cast<std::size_t>(n * (k - 1) + 1));
            // exactly one improvable state at every non-final step
            for (const auto& s : t.steps)
                CHECK(s.improvable.improvable.size() ==
                      (improvement_set(g, s.policy).empty() ? 0u : 1u));
        }
}

TEST_CASE("run from an optimal start has length one") {
    auto [g, layout] = build_G(2, 3);
    Trajectory t = run(g, pol("22", 3), StateSelector::howard(),
                       ActionSelect::IndexMin, 0);
    CHECK(t.steps.size() == 1);
    CHECK(t.converged);
}

TEST_CASE("seeded runs are reproducible") {
    auto [g, layout] = build_G(4, 4);
    auto policies = [](const Trajectory& t) {
        std::vector<Policy> ps;
        for (const auto& s : t.steps) ps.push_back(s.policy);
        return ps;
    };
    Trajectory a = run(g, Policy(4, 0), StateSelector::random_subset(),
                       ActionSelect::RandomUniform, 123);
    Trajectory b = run(g, Policy(4, 0), StateSelector::random_subset(),
                       ActionSelect::RandomUniform, 123);
    CHECK(policies(a) == policies(b));
}

TEST_CASE("partner states are never improvable") {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        auto [h, layout] = build_H(n, k);
        Policy pi(static_cast<std::size_t>(2 * n), 0);
        // exhaustive over every policy of the instance
        while (true) {
            for (int s : improvement_set(h, pi).improvable) CHECK(s < n);
            bool carried = false;
            for (auto& a : pi) {
                if (++a < k) {
                    carried = true;
                    break;
                }
                a = 0;
            }
            if (!carried) break;
        }
    }
}

TEST_CASE("every recorded step is a valid improvement") {
    auto [h, layout] = build_H(3, 3);
    Trajectory t = run(h, Policy(6, 0), StateSelector::simple(),
                       ActionSelect::MaxQ, 0);
    CHECK(t.converged);
    for (std::size_t i = 1; i < t.steps.size(); ++i)
        CHECK(is_improvement(h, t.steps[i - 1].policy, t.steps[i].policy));
}

TEST_CASE("selector name round-trips") {
    for (auto s : {StateSelect::Howard, StateSelect::Simple, StateSelect::RandomSubset,
                   StateSelect::Peculiar})
        CHECK(state_select_from_string(to_string(s)) == s);
    for (auto a : {ActionSelect::IndexMin, ActionSelect::RandomUniform,
                   ActionSelect::MaxQ, ActionSelect::PeculiarCyclic})
        CHECK(action_select_from_string(to_string(a)) == a);
    CHECK_THROWS(state_select_from_string("greedy"));
}
