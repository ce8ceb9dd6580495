#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "piforge/engine.hpp"
#include "piforge/families.hpp"
#include "piforge/io.hpp"
#include "piforge/verify.hpp"

namespace {

using namespace piforge;

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Policy parse_init(const std::string& text, const Mdp& m) {
    if (text == "zeros") return Policy(static_cast<std::size_t>(m.n_nonterminal), 0);
    std::vector<int> actions;
    if (text.find("\xc2\xb7") != std::string::npos)
        actions = join(parse_split(text, m.n_actions));
    else
        actions = parse_kary(text, m.n_actions).digits;
    if (static_cast<int>(actions.size()) != m.n_nonterminal)
        throw CLI::ValidationError("--init", "policy length does not match the MDP");
    return actions;
}

struct RunFlags {
    std::string mdp_path;
    std::string family;
    std::string init = "zeros";
    std::string state_select = "howard";
    std::string action_select = "index";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int max_iters = 1000000;
    std::string out;
};

int do_run(const RunFlags& rf) {
    Mdp mdp;
    FamilyLayout layout{};
    bool have_layout = false;
    if (!rf.family.empty()) {
        auto built = build_family(rf.family);
        mdp = std::move(built.first);
        layout = std::move(built.second);
        have_layout = true;
    } else {
        mdp = read_mdp(rf.mdp_path);
    }

    StateSelect sk = state_select_from_string(rf.state_select);
    ActionSelect as = action_select_from_string(rf.action_select);
    StateSelector ss;
    switch (sk) {
        case StateSelect::Howard: ss = StateSelector::howard(); break;
        case StateSelect::Simple: ss = StateSelector::simple(); break;
        case StateSelect::RandomSubset: ss = StateSelector::random_subset(); break;
        case StateSelect::Peculiar: {
            if (mdp.n_nonterminal % 2 != 0)
                throw CLI::ValidationError(
                    "--state-select",
                    "peculiar needs a counter/partner state space of even size");
            ss = StateSelector::peculiar(static_cast<std::size_t>(mdp.n_nonterminal / 2),
                                         mdp.n_actions);
            break;
        }
    }
    const bool randomized =
        sk == StateSelect::RandomSubset || as == ActionSelect::RandomUniform;
    if (randomized && !rf.seed_given)
        throw CLI::ValidationError("--seed", "required for randomized strategies");

    Trajectory traj = run(mdp, parse_init(rf.init, mdp), ss, as, rf.seed, rf.max_iters);
    if (have_layout) traj.split_m = layout.split_m;

    if (!rf.out.empty()) {
        std::ofstream os(rf.out);
        if (!os) throw std::runtime_error("cannot open for writing: " + rf.out);
        write_trajectory(os, traj, mdp.n_actions, now_iso8601());
    }
    std::cout << traj.steps.size() << " policies, final "
              << traj.policy_string(traj.steps.size() - 1, mdp.n_actions) << "\n";
    std::cout << "final values:";
    for (const Rat& v : traj.steps.back().values.values)
        std::cout << ' ' << rat_to_string(v);
    std::cout << "\n";
    return 0;
}

struct VerifyFlags {
    std::vector<std::string> claims;
    bool all = false;
    bool json = false;
    int m = 3, n = 3, k = 3, trials = 10000;
    std::uint64_t seed = 0;
    std::string family = "F:2,2";
    std::string fixtures = "tests/fixtures";
};

int do_verify(const VerifyFlags& vf) {
    std::vector<ClaimReport> reports;
    if (vf.all) {
        reports = acceptance_criteria(vf.fixtures);
    } else {
        for (const std::string& c : vf.claims) {
            if (c == "f-count")
                reports.push_back(check_F(vf.m, vf.k));
            else if (c == "f-table")
                reports.push_back(check_F(3, 3, vf.fixtures + "/f33_trajectory.txt"));
            else if (c == "g-index")
                reports.push_back(check_G_index(vf.n, vf.k));
            else if (c == "g-random")
                reports.push_back(check_G_random(vf.n, vf.k, vf.trials, vf.seed));
            else if (c == "g-sets")
                reports.push_back(check_G_sets(vf.n, vf.k));
            else if (c == "f-order")
                reports.push_back(check_F_order(vf.m, vf.k));
            else if (c == "f-segments")
                reports.push_back(check_F_segments(vf.m, vf.k));
            else if (c == "h-embedding")
                reports.push_back(
                    check_H_embedding(vf.n, vf.k, ActionSelect::IndexMin, vf.seed));
            else if (c == "h-counts")
                reports.push_back(check_H_counts(vf.n, vf.k));
            else if (c == "h-growth")
                reports.push_back(check_H_growth());
            else if (c == "discount")
                reports.push_back(check_discount_transfer(vf.family, vf.seed));
            else
                throw CLI::ValidationError("--claim", "unknown claim: " + c);
        }
    }
    bool all_pass = true;
    for (const ClaimReport& r : reports) {
        std::cout << (vf.json ? r.to_json() : r.to_line()) << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

struct SweepFlags {
    std::string family = "F";
    int size_min = 1, size_max = 4;
    int k_min = 2, k_max = 4;
    std::string state_select = "howard";
    std::string action_select = "index";
    std::uint64_t seed = 0;
    int max_iters = 1000000;
    std::string out;
};

std::string decimal(const Rat& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", mpq_get_d(r.get_mpq_t()));
    return buf;
}

int do_sweep(const SweepFlags& sf) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!sf.out.empty()) {
        file.open(sf.out);
        if (!file) throw std::runtime_error("cannot open for writing: " + sf.out);
        os = &file;
    }
    *os << "family,size,k,variant,seed,iterations,converged,runtime_ms,"
           "final_value,final_value_exact\n";

    const std::string variant = sf.state_select + "+" + sf.action_select;
    std::uint64_t cell = 0;
    for (int size = sf.size_min; size <= sf.size_max; ++size)
        for (int k = sf.k_min; k <= sf.k_max; ++k, ++cell) {
            const std::uint64_t cell_seed = derive_seed(sf.seed, cell);
            *os << sf.family << ',' << size << ',' << k << ',' << variant << ','
                << cell_seed << ',';
            try {
                auto [mdp, layout] =
                    build_family(sf.family + ":" + std::to_string(size) + "," +
                                 std::to_string(k));
                StateSelect sk = state_select_from_string(sf.state_select);
                StateSelector ss;
                switch (sk) {
                    case StateSelect::Howard: ss = StateSelector::howard(); break;
                    case StateSelect::Simple: ss = StateSelector::simple(); break;
                    case StateSelect::RandomSubset:
                        ss = StateSelector::random_subset();
                        break;
                    case StateSelect::Peculiar:
                        ss = StateSelector::peculiar(layout.split_m, k);
                        break;
                }
                const auto t0 = std::chrono::steady_clock::now();
                Trajectory traj =
                    run(mdp, Policy(static_cast<std::size_t>(mdp.n_nonterminal), 0), ss,
                        action_select_from_string(sf.action_select), cell_seed,
                        sf.max_iters);
                const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
                const Rat& v0 = traj.steps.back().values.values.at(0);
                *os << traj.steps.size() << ',' << (traj.converged ? "true" : "false")
                    << ',' << ms << ',' << decimal(v0) << ',' << rat_to_string(v0)
                    << "\n";
            } catch (const std::exception& e) {
                // over-budget or otherwise failed cells are marked, not fatal
                *os << ",skipped:" << e.what() << ",,,\n";
            }
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-rational policy iteration laboratory"};
    app.require_subcommand(1);

    // generate
    std::string gen_family, gen_out;
    auto* gen = app.add_subcommand("generate", "Build a family instance as a JSON MDP");
    gen->add_option("--family", gen_family, "Descriptor F:m,k / G:n,k / H:n,k")
        ->required();
    gen->add_option("--out", gen_out, "Output path")->required();

    // run
    RunFlags rf;
    auto* runc = app.add_subcommand("run", "Run policy iteration, log the trajectory");
    auto* mdp_opt = runc->add_option("--mdp", rf.mdp_path, "MDP JSON file");
    auto* fam_opt = runc->add_option("--family", rf.family, "Family descriptor");
    mdp_opt->excludes(fam_opt);
    runc->add_option("--init", rf.init, "Initial policy (digit string or 'zeros')");
    runc->add_option("--state-select", rf.state_select,
                     "howard | simple | random | peculiar");
    runc->add_option("--action-select", rf.action_select,
                     "index | random | maxq | cyclic");
    auto* seed_opt = runc->add_option("--seed", rf.seed, "PRNG seed");
    runc->add_option("--max-iters", rf.max_iters, "Iteration cap");
    runc->add_option("--out", rf.out, "Trajectory log path (JSON lines)");

    // verify
    VerifyFlags vf;
    auto* ver = app.add_subcommand("verify", "Check structural and counting claims");
    ver->add_option("--claim", vf.claims,
                    "f-count | f-table | g-index | g-random | g-sets | f-order | f-segments | "
                    "h-embedding | h-counts | h-growth | discount");
    ver->add_flag("--all", vf.all, "Run the full acceptance battery");
    ver->add_flag("--json", vf.json, "Emit reports as JSON records");
    ver->add_option("--m", vf.m, "Counter-family size");
    ver->add_option("--n", vf.n, "Chain-family size");
    ver->add_option("--k", vf.k, "Action count");
    ver->add_option("--trials", vf.trials, "Monte-Carlo trials");
    ver->add_option("--seed", vf.seed, "PRNG seed");
    ver->add_option("--family", vf.family, "Family descriptor (discount claim)");
    ver->add_option("--fixtures", vf.fixtures, "Fixture directory");

    // sweep
    SweepFlags sf;
    auto* swp = app.add_subcommand("sweep", "Iteration-count table over a parameter grid");
    swp->add_option("--family", sf.family, "F | G | H")->required();
    swp->add_option("--size-min", sf.size_min, "Smallest m/n");
    swp->add_option("--size-max", sf.size_max, "Largest m/n");
    swp->add_option("--k-min", sf.k_min, "Smallest k");
    swp->add_option("--k-max", sf.k_max, "Largest k");
    swp->add_option("--state-select", sf.state_select, "State selector");
    swp->add_option("--action-select", sf.action_select, "Action selector");
    swp->add_option("--seed", sf.seed, "Base seed; cells derive their own");
    swp->add_option("--max-iters", sf.max_iters, "Iteration cap per cell");
    swp->add_option("--out", sf.out, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            auto [mdp, layout] = build_family(gen_family);
            write_mdp(gen_out, mdp);
            std::ofstream side(gen_out + ".layout.json");
            if (!side)
                throw std::runtime_error("cannot open for writing: " + gen_out +
                                         ".layout.json");
            side << layout_to_json(layout).dump(2) << '\n';
            std::cout << "wrote " << gen_out << " (" << mdp.n_nonterminal
                      << " non-terminal + " << mdp.n_terminal << " terminal states)\n";
            return 0;
        }
        if (runc->parsed()) {
            rf.seed_given = seed_opt->count() > 0;
            return do_run(rf);
        }
        if (ver->parsed()) return do_verify(vf);
        if (swp->parsed()) return do_sweep(sf);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
