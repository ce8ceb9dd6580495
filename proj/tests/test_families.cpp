#include <doctest.h>

#include "piforge/engine.hpp"
#include "piforge/families.hpp"

using namespace piforge;

namespace {

Policy pol(const std::string& digits, int k) { return parse_kary(digits, k).digits; }

Rat kpow(int k, int e) {
    Rat r(1);
    for (int i = 0; i < e; ++i) r *= k;
    return r;
}

}  // namespace

TEST_CASE("counter family rewards and shape") {
    auto [m, layout] = build_F(3, 3);
    CHECK(m.n_nonterminal == 6);
    CHECK(m.n_terminal == 1);
    CHECK(m.rewards[1][2] == 6);  // s2, action 2: 2 * 3^(3-2)
    CHECK(layout.state_names[0] == "s1");
    CHECK(layout.state_names[3] == "s'1");
    CHECK(layout.split_m == 3);

    auto [m1, l1] = build_F(1, 4);
    CHECK(m1.n_nonterminal == 2);
    for (int a = 0; a < 4; ++a)
        CHECK(m1.transitions[0][static_cast<std::size_t>(a)] ==
              std::vector<std::pair<int, Rat>>{{2, Rat(1)}});
    CHECK_THROWS(build_F(0, 1));
}

TEST_CASE("balanced counter values follow the prefix formula") {
    for (int mm = 1; mm <= 3; ++mm)
        for (int k = 2; k <= 3; ++k) {
            auto [m, layout] = build_F(mm, k);
            KaryString x{std::vector<int>(static_cast<std::size_t>(mm), 0), k};
            std::uint64_t total = 1;
            for (int i = 0; i < mm; ++i) total *= static_cast<std::uint64_t>(k);
            for (std::uint64_t c = 0; c < total; ++c) {
                ValueFn v = evaluate(m, join({x, x}));
                for (int i = 1; i <= mm; ++i) {
                    Rat want = kpow(k, mm - i) * Rat(numeral(prefix(x, static_cast<std::size_t>(i))));
                    CHECK(v.values[static_cast<std::size_t>(i - 1)] == want);
                    CHECK(v.values[static_cast<std::size_t>(mm + i - 1)] == want);
                }
                CHECK(v.values[static_cast<std::size_t>(mm - 1)] == Rat(numeral(x)));
                for (int u = mm - 1; u >= 0; --u) {
                    if (++x.digits[static_cast<std::size_t>(u)] < k) break;
                    x.digits[static_cast<std::size_t>(u)] = 0;
                }
            }
        }
}

TEST_CASE("chain family construction") {
    auto [m, layout] = build_G(3, 3);
    CHECK(m.n_nonterminal == 3);
    CHECK(m.n_terminal == 4);
    // p_1 = 1/2 + (3-1)/6 = 5/6
    CHECK(m.transitions[1][1][0].second == Rat(5, 6));
    CHECK(m.rewards[1][1] == Rat(-10, 3));
    CHECK(m.rewards[1][0] == -4);
    CHECK(m.rewards[1][2] == 0);

    auto [m2, l2] = build_G(3, 2);  // no intermediate actions at k = 2
    for (int s = 0; s < 3; ++s) {
        CHECK(m2.transitions[static_cast<std::size_t>(s)].size() == 2);
        CHECK(m2.transitions[static_cast<std::size_t>(s)][0].size() == 1);
        CHECK(m2.transitions[static_cast<std::size_t>(s)][1].size() == 1);
    }
}

TEST_CASE("partner chain construction") {
    auto [m, layout] = build_H(3, 2);
    CHECK(m.n_nonterminal == 6);
    CHECK(m.n_terminal == 2);
    const Rat eps = Rat(1, 8);
    for (int i = 0; i < 3; ++i)
        CHECK(m.rewards[static_cast<std::size_t>(i)][1] == eps);  // top action pays eps
    // partner action rows are identical for every action
    for (int i = 3; i < 6; ++i)
        CHECK(m.transitions[static_cast<std::size_t>(i)][0] ==
              m.transitions[static_cast<std::size_t>(i)][1]);
    // s'_1 splits between the two terminals; entering T1 costs 1
    CHECK(m.transitions[3][0] ==
          std::vector<std::pair<int, Rat>>{{6, Rat(1, 2)}, {7, Rat(1, 2)}});
    CHECK(m.rewards[3][0] == Rat(-1, 2));
    CHECK(m.rewards[0][0] == -1);  // s1 action 0 drops to the costly terminal

    auto [m43, l43] = build_H(4, 3);
    CHECK(m43.rewards[0][2] == Rat(1, 16));       // eps
    CHECK(m43.rewards[0][1] == Rat(1, 32));       // eps / 2
}

TEST_CASE("largest-index iteration walks the binary reflected order") {
    auto [m, layout] = build_H(3, 2);
    Trajectory t = run(m, Policy(6, 0), StateSelector::simple(),
                       ActionSelect::IndexMin, 0);
    std::vector<std::string> decisions;
    for (const auto& s : t.steps)
        decisions.push_back(render_flat(Policy(s.policy.begin(), s.policy.begin() + 3), 2));
    CHECK(decisions == std::vector<std::string>{"000", "001", "011", "010", "110",
                                                "111", "101", "100"});
}

TEST_CASE("family descriptors") {
    auto [m, layout] = build_family("G:3,4");
    CHECK(layout.tag == FamilyTag::G);
    CHECK(layout.size == 3);
    CHECK(layout.k == 4);
    CHECK_THROWS(build_family("F:0,1"));
    CHECK_THROWS(build_family("X:2,2"));
    CHECK_THROWS(build_family("F:2"));
    CHECK_THROWS(build_family("F:2,2,2"));
}

TEST_CASE("all small instances validate") {
    for (int size = 1; size <= 4; ++size)
        for (int k = 2; k <= 4; ++k) {
            CHECK(validate(build_F(size, k).first).ok());
            CHECK(validate(build_G(size, k).first).ok());
            CHECK(validate(build_H(size, k).first).ok());
        }
}

TEST_CASE("discount threshold certificates") {
    // single-step MDP: every discount works
    auto cert1 = gamma_threshold(build_F(1, 2).first);
    CHECK(cert1.L == 1);
    CHECK(cert1.gamma0 == 0);

    // two-level counter: Delta = 1, L = 2, Rmax = 2 give an exact threshold
    auto cert = gamma_threshold(build_F(2, 2).first);
    CHECK(cert.delta == 1);
    CHECK(cert.L == 2);
    CHECK(cert.rmax == 2);
    CHECK(cert.gamma0 == Rat(3, 4));

    // partner chain: irrational cube root, certified upper bound on a
    // 10^-6 grid
    auto ch = gamma_threshold(build_H(3, 2).first);
    CHECK(ch.delta == Rat(1, 16));
    CHECK(ch.L == 4);
    CHECK(ch.rmax == 1);
    const Rat base = 1 - ch.delta / (2 * (ch.L - 1) * ch.rmax);
    CHECK(rat_pow(ch.gamma0, 3) >= base);
    CHECK(rat_pow(ch.gamma0 - Rat(1, 1000000), 3) < base);
    CHECK(ch.gamma0 < 1);
    CHECK(ch.gamma0.get_den() <= 1000000);
}

TEST_CASE("with_discount") {
    auto [m, layout] = build_F(3, 3);
    CHECK(with_discount(m, Rat(1)).discount == 1);
    Mdp d = with_discount(m, Rat(9999, 10000));
    CHECK(validate(d).ok());
    CHECK(d.transitions == m.transitions);
    CHECK_THROWS(with_discount(m, Rat(0)));
    CHECK_THROWS(with_discount(m, Rat(2)));
}
