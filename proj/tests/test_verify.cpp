#include <doctest.h>

#include "piforge/verify.hpp"

using namespace piforge;

TEST_CASE("count formula") {
    CHECK(f_count(3, 3) == 73);
    CHECK(f_count(2, 2) == 9);
    for (int k = 2; k <= 6; ++k)
        CHECK(f_count(1, k) == static_cast<unsigned long long>(2 * k - 1));
}

TEST_CASE("counter trajectory checker") {
    CHECK(check_F(1, 2).pass);  // 0.0, 0.1, 1.1
    CHECK(check_F(2, 3).pass);  // 21 policies
    CHECK(check_F(3, 3, PIFORGE_FIXTURE_DIR "/f33_trajectory.txt").pass);
    ClaimReport bad = check_F(3, 3, PIFORGE_FIXTURE_DIR "/no_such_file.txt");
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.witness.empty());
}

TEST_CASE("chain index checker") {
    CHECK(check_G_index(3, 3).pass);
    CHECK(check_G_index(1, 5).pass);
    CHECK(check_G_index(5, 2).pass);
}

TEST_CASE("expected random-action length") {
    CHECK(expected_G_random(4, 3) == 7);           // t0 = 3/2
    CHECK(expected_G_random(5, 2) == 6);           // t0 = 1
    CHECK(expected_G_random(1, 5) == 1 + Rat(25, 12));
    // the closed form is re-derived from the recurrence internally; a
    // disagreement throws, so sweeping k exercises the cross-check
    for (int k = 2; k <= 64; ++k) CHECK_NOTHROW(expected_G_random(2, k));
}

TEST_CASE("random-action Monte Carlo band") {
    CHECK(check_G_random(2, 3, 2000, 11).pass);
    CHECK(check_G_random(3, 2, 50, 1).pass);  // deterministic: always n+1
}

TEST_CASE("trajectory certification") {
    auto [g, layout] = build_G(3, 3);
    Trajectory t = run(g, Policy(3, 0), StateSelector::howard(),
                       ActionSelect::IndexMin, 0);
    CHECK(certify_trajectory(g, t).pass);

    // corrupt a middle policy: the report must carry a concrete witness
    Trajectory bad = t;
    bad.steps[2].policy = bad.steps[1].policy;
    ClaimReport r = certify_trajectory(g, bad);
    CHECK_FALSE(r.pass);
    CHECK(r.witness.find("t=2") != std::string::npos);

    Trajectory opt = run(g, parse_kary("222", 3).digits, StateSelector::howard(),
                         ActionSelect::IndexMin, 0);
    CHECK(certify_trajectory(g, opt).pass);
}

TEST_CASE("chain improvement-set sweep") {
    CHECK(check_G_sets(3, 3).pass);
    CHECK(check_G_sets(1, 2).pass);
    CHECK(check_G_sets(5, 6).pass);
}

TEST_CASE("balanced dominance and segment chains") {
    CHECK(check_F_order(2, 2).pass);
    CHECK(check_F_order(3, 3).pass);
    CHECK(check_F_segments(2, 2).pass);
    CHECK(check_F_segments(3, 3).pass);
    CHECK(check_F_segments(1, 4).pass);  // every segment has length 2
}

TEST_CASE("partner-chain counts and growth") {
    CHECK(check_H_counts(3, 2).pass);
    CHECK(check_H_counts(4, 3).pass);
    CHECK(check_H_counts(5, 5).pass);
    CHECK(check_H_growth(3, 5).pass);
}

TEST_CASE("partner-chain embedding holds trivially at n = 1") {
    CHECK(check_H_embedding(1, 3, ActionSelect::IndexMin).pass);
}

TEST_CASE("discount transfer") {
    CHECK(check_discount_transfer("F:2,2").pass);
    CHECK(check_discount_transfer("G:2,3").pass);
}

TEST_CASE("claim reports serialize") {
    ClaimReport r{"demo", "n=1", "x", "y", false, "w"};
    CHECK(r.to_json().find("\"pass\":false") != std::string::npos);
    CHECK(r.to_line().rfind("FAIL", 0) == 0);
}
