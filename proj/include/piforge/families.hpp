#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "piforge/mdp.hpp"

namespace piforge {

enum class FamilyTag { F, G, H };

std::string to_string(FamilyTag t);

struct FamilyLayout {
    FamilyTag tag = FamilyTag::F;
    int size = 0;  // m for F, n for G and H
    int k = 0;
    std::vector<std::string> state_names;  // all states, terminals last
    // F (and H): states 0..split_m-1 are counter/decision states,
    // split_m..2*split_m-1 their partners; 0 for G.
    std::size_t split_m = 0;
};

// Counter family.  2m non-terminal states (counters s_1..s_m at indices
// 0..m-1, partners s'_1..s'_m at m..2m-1), one terminal.  From level 1
// every action terminates; from level i >= 2 action 0 goes to s'_{i-1} and
// every action j >= 1 goes to s_{i-1}.  Reward j * k^(m-i) everywhere.
std::pair<Mdp, FamilyLayout> build_F(int m, int k);

// Chain family.  Non-terminal s_1..s_n at indices 0..n-1; terminals: one
// per state (index n+i-1, entered with reward -2^i) plus the final
// terminal 2n reached by action k-1 from s_n.  Action 0 terminates with
// reward -2^i, action k-1 advances with reward 0, and intermediate action
// j terminates with probability p_j = 1/2 + (k-j)/2k (reward folded to
// R(s_i,j) = -2^i * p_j) and advances otherwise.
std::pair<Mdp, FamilyLayout> build_G(int n, int k);

// Chain-with-partners family.  Decision states s_1..s_n at indices 0..n-1,
// partners s'_1..s'_n at n..2n-1, terminals T0 = 2n and T1 = 2n+1 where
// entering T1 costs 1 (folded into R).  Action 0 from s_i goes to s_{i-1}
// (s_1 to T1); action j >= 1 goes to s'_i with reward eps/2^(k-1-j),
// eps = 2^(-n).  Partner transitions are action-independent and
// equiprobable: s'_1 -> {T0, T1}, s'_2 -> {T1, s'_1},
// s'_i -> {s_{i-2}, s'_{i-1}} for i >= 3.
std::pair<Mdp, FamilyLayout> build_H(int n, int k);

// Parses "F:3,3" / "G:4,5" / "H:3,2".
std::pair<Mdp, FamilyLayout> build_family(const std::string& descriptor);

struct DiscountCertificate {
    Rat delta;   // minimum Q-gap over all policies / states / distinct action pairs
    int L = 0;   // horizon
    Rat rmax;    // reward bound
    Rat gamma0;  // discount threshold (exact or certified rational upper bound)
};

// Exact Delta-sweep over all policies (budget-gated), then
// gamma0 = (max{1 - Delta/(2(L-1)Rmax), 0})^(1/(L-1)).  When the root is
// irrational, returns the smallest multiple of 10^-6 that upper-bounds it.
// Action pairs with identical transition rows and rewards are excluded
// from Delta (their Q-values coincide by construction under every policy).
DiscountCertificate gamma_threshold(const Mdp& m, std::uint64_t budget = 100000);

// Same transitions and rewards with the discount replaced.
Mdp with_discount(const Mdp& m, const Rat& gamma);

}  // namespace piforge
