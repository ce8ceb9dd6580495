#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "piforge/engine.hpp"
#include "piforge/families.hpp"
#include "piforge/mdp.hpp"

namespace piforge {

// MDP file format (JSON): n_nonterminal, n_terminal, n_actions, discount
// (rational string), transitions as a flat list of
// {s, a, reward: "p/q", successors: [[s', "p/q"], ...]}.
// Round-trips bit-exactly.
nlohmann::json mdp_to_json(const Mdp& m);
Mdp mdp_from_json(const nlohmann::json& j);

void write_mdp(const std::string& path, const Mdp& m);
Mdp read_mdp(const std::string& path);

nlohmann::json layout_to_json(const FamilyLayout& layout);

// Trajectory log: JSON-lines.  First record is a header carrying the MDP
// hash, strategy names, seed, generator name and (optionally) a timestamp;
// each following record holds t, policy (codec string), values (rational
// strings), improvable ([state, [actions...]] pairs) and switched
// ([state, from, to] triples).  The timestamp is the only
// non-reproducible field and is omitted when timestamp is empty.
void write_trajectory(std::ostream& os, const Trajectory& traj, int k,
                      const std::string& timestamp = "");

// The log rendered to a string with the timestamp stripped — the
// canonical form for byte-level reproducibility comparisons.
std::string trajectory_log_string(const Trajectory& traj, int k);

}  // namespace piforge
