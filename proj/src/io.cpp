#include "piforge/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace piforge {

using nlohmann::json;

json mdp_to_json(const Mdp& m) {
    json j;
    j["n_nonterminal"] = m.n_nonterminal;
    j["n_terminal"] = m.n_terminal;
    j["n_actions"] = m.n_actions;
    j["discount"] = rat_to_string(m.discount);
    json trans = json::array();
    for (int s = 0; s < m.n_nonterminal; ++s)
        for (int a = 0; a < m.n_actions; ++a) {
            json rec;
            rec["s"] = s;
            rec["a"] = a;
            rec["reward"] = rat_to_string(
                m.rewards[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]);
            json succ = json::array();
            for (const auto& [t, p] :
                 m.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)])
                succ.push_back(json::array({t, rat_to_string(p)}));
            rec["successors"] = succ;
            trans.push_back(rec);
        }
    j["transitions"] = trans;
    return j;
}

Mdp mdp_from_json(const json& j) {
    Mdp m;
    m.n_nonterminal = j.at("n_nonterminal").get<int>();
    m.n_terminal = j.at("n_terminal").get<int>();
    m.n_actions = j.at("n_actions").get<int>();
    m.discount = rat_from_string(j.at("discount").get<std::string>());
    m.transitions.assign(
        static_cast<std::size_t>(m.n_nonterminal),
        std::vector<std::vector<std::pair<int, Rat>>>(static_cast<std::size_t>(m.n_actions)));
    m.rewards.assign(static_cast<std::size_t>(m.n_nonterminal),
                     std::vector<Rat>(static_cast<std::size_t>(m.n_actions), Rat(0)));
    std::vector<std::vector<bool>> seen(
        static_cast<std::size_t>(m.n_nonterminal),
        std::vector<bool>(static_cast<std::size_t>(m.n_actions), false));
    for (const auto& rec : j.at("transitions")) {
        int s = rec.at("s").get<int>();
        int a = rec.at("a").get<int>();
        if (s < 0 || s >= m.n_nonterminal || a < 0 || a >= m.n_actions)
            throw std::invalid_argument("transition record out of range");
        if (seen[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)])
            throw std::invalid_argument("duplicate transition record");
        seen[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] = true;
        m.rewards[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] =
            rat_from_string(rec.at("reward").get<std::string>());
        for (const auto& sp : rec.at("successors"))
            m.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)].emplace_back(
                sp.at(0).get<int>(), rat_from_string(sp.at(1).get<std::string>()));
    }
    for (int s = 0; s < m.n_nonterminal; ++s)
        for (int a = 0; a < m.n_actions; ++a)
            if (!seen[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)])
                throw std::invalid_argument("missing transition record for state " +
                                            std::to_string(s) + " action " + std::to_string(a));
    return m;
}

void write_mdp(const std::string& path, const Mdp& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << mdp_to_json(m).dump(2) << '\n';
}

Mdp read_mdp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    json j;
    in >> j;
    return mdp_from_json(j);
}

json layout_to_json(const FamilyLayout& layout) {
    json j;
    j["family"] = to_string(layout.tag);
    j["size"] = layout.size;
    j["k"] = layout.k;
    j["state_names"] = layout.state_names;
    j["split_m"] = layout.split_m;
    return j;
}

void write_trajectory(std::ostream& os, const Trajectory& traj, int k,
                      const std::string& timestamp) {
    json header;
    header["mdp_hash"] = traj.mdp_hash;
    header["state_select"] = traj.state_select;
    header["action_select"] = traj.action_select;
    header["seed"] = traj.seed;
    header["generator"] = traj.generator;
    header["converged"] = traj.converged;
    if (!timestamp.empty()) header["timestamp"] = timestamp;
    os << header.dump() << '\n';
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
        const StepRecord& step = traj.steps[t];
        json rec;
        rec["t"] = step.t;
        rec["policy"] = traj.policy_string(t, k);
        json values = json::array();
        for (const Rat& v : step.values.values) values.push_back(rat_to_string(v));
        rec["values"] = values;
        json improvable = json::array();
        for (std::size_t i = 0; i < step.improvable.improvable.size(); ++i)
            improvable.push_back(json::array(
                {step.improvable.improvable[i], step.improvable.improving_actions[i]}));
        rec["improvable"] = improvable;
        json switched = json::array();
        for (const Switch& sw : step.switched)
            switched.push_back(json::array({sw.state, sw.from, sw.to}));
        rec["switched"] = switched;
        os << rec.dump() << '\n';
    }
}

std::string trajectory_log_string(const Trajectory& traj, int k) {
    std::ostringstream os;
    write_trajectory(os, traj, k);
    return os.str();
}

}  // namespace piforge
