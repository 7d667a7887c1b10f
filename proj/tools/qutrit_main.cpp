// qutrit: command-line front end for biphoton-qutrit analysis, operator
// factorization, Schmidt decomposition, Poincare-sphere export and the
// coincidence-counting experiment simulator.
//
// Exit codes: 0 ok, 2 usage or malformed input, 3 state validation failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "biphoton/core.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/expsim.hpp"
#include "biphoton/poincare.hpp"
#include "biphoton/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

struct StateInput {
    std::vector<double> c1, c2, c3;  // re [im]
    std::optional<double> alpha;
    std::string json_path;
};

void add_state_options(CLI::App* cmd, StateInput& in) {
    cmd->add_option("--c1", in.c1, "c1 amplitude: RE [IM]")->expected(1, 2);
    cmd->add_option("--c2", in.c2, "c2 amplitude: RE [IM]")->expected(1, 2);
    cmd->add_option("--c3", in.c3, "c3 amplitude: RE [IM]")->expected(1, 2);
    cmd->add_option("--alpha", in.alpha,
                    "alpha-family state N a_H'(cos a a_H' + sin a a_V')|0>");
    cmd->add_option("--json", in.json_path, "state from a canonical JSON file");
}

biphoton::Complex to_complex(const std::vector<double>& v) {
    if (v.empty()) return {0.0, 0.0};
    return {v[0], v.size() > 1 ? v[1] : 0.0};
}

// Throws CLI::ValidationError for malformed input (exit 2); biphoton
// validation errors propagate (exit 3).
biphoton::QutritState parse_state(const StateInput& in) {
    const bool has_amp = !in.c1.empty() || !in.c2.empty() || !in.c3.empty();
    const int sources = int(has_amp) + int(in.alpha.has_value()) + int(!in.json_path.empty());
    if (sources != 1)
        throw CLI::ValidationError(
            "state", "give exactly one of --c1/--c2/--c3, --alpha or --json");
    if (in.alpha) return biphoton::alpha_family_qutrit(*in.alpha);
    if (!in.json_path.empty()) {
        std::ifstream file(in.json_path);
        if (!file) throw CLI::ValidationError("--json", "cannot open " + in.json_path);
        biphoton::Json doc;
        try {
            file >> doc;
            return biphoton::qutrit_from_json(doc);
        } catch (const biphoton::Json::exception& e) {
            throw CLI::ValidationError("--json", e.what());
        }
    }
    return biphoton::make_qutrit(to_complex(in.c1), to_complex(in.c2), to_complex(in.c3));
}

double epsilon_rec_from_env() {
    const char* env = std::getenv("QUTRIT_EPS");
    if (env == nullptr || *env == '\0') return biphoton::Tolerances{}.reconstruction;
    char* end = nullptr;
    const double eps = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(eps > 0.0))
        throw CLI::ValidationError("QUTRIT_EPS", "not a positive number");
    return eps;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw CLI::ValidationError("--out", "cannot write " + out_path);
    file << text;
    if (text.empty() || text.back() != '\n') file << '\n';
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biphoton polarization qutrits: Schmidt modes, operator "
                 "factorization, Poincare-sphere geometry and a coincidence "
                 "measurement simulator"};
    app.require_subcommand(1);

    StateInput analyze_in, factorize_in, schmidt_in, sphere_in, simulate_in;
    std::string analyze_out, factorize_out, schmidt_out, sphere_out, simulate_out;

    CLI::App* analyze = app.add_subcommand("analyze", "full state report as JSON");
    add_state_options(analyze, analyze_in);
    analyze->add_option("--out", analyze_out, "write to file instead of stdout");

    CLI::App* factor = app.add_subcommand("factorize",
                                          "operator factorization |Psi> = N A'B'|0>");
    add_state_options(factor, factorize_in);
    factor->add_option("--out", factorize_out, "write to file instead of stdout");

    CLI::App* schmidt = app.add_subcommand("schmidt", "Schmidt decomposition as JSON");
    add_state_options(schmidt, schmidt_in);
    schmidt->add_option("--out", schmidt_out, "write to file instead of stdout");

    CLI::App* sphere = app.add_subcommand("sphere", "Stokes-vector scene (JSON, or CSV "
                                                    "when --out ends in .csv)");
    add_state_options(sphere, sphere_in);
    std::string frame_name = "lab";
    sphere->add_option("--frame", frame_name, "lab or schmidt")
        ->check(CLI::IsMember({"lab", "schmidt"}));
    sphere->add_option("--out", sphere_out, "write to file instead of stdout");

    CLI::App* simulate = app.add_subcommand("simulate",
                                            "coincidence-counting experiment");
    add_state_options(simulate, simulate_in);
    double eta1 = 1.0, eta2 = 1.0, dark = 0.0;
    std::int64_t pairs = 1000000;
    std::uint64_t seed = 1;
    bool exact = false;
    int sweep_steps = 0;
    simulate->add_option("--eta1", eta1, "detector 1 efficiency")
        ->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--eta2", eta2, "detector 2 efficiency")
        ->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--dark", dark, "dark counts per pair trial")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--pairs", pairs, "input pair count N")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "RNG seed (recorded in the report)");
    simulate->add_flag("--exact", exact, "noiseless: estimate from expected rates");
    simulate->add_option("--phi-sweep", sweep_steps,
                         "emit a CSV phi sweep with this many steps (needs --out)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--out", simulate_out, "output file (the phi sweep CSV, or "
                                                "the report when no sweep requested)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        const double eps_rec = epsilon_rec_from_env();
        biphoton::Tolerances tol;
        tol.reconstruction = eps_rec;

        if (*analyze) {
            const auto q = parse_state(analyze_in);
            emit(biphoton::analysis_report(q, eps_rec).dump(2), analyze_out);
        } else if (*factor) {
            const auto q = parse_state(factorize_in);
            emit(biphoton::to_json(biphoton::factorize(q)).dump(2), factorize_out);
        } else if (*schmidt) {
            const auto q = parse_state(schmidt_in);
            emit(biphoton::to_json(biphoton::schmidt_decomposition(q)).dump(2),
                 schmidt_out);
        } else if (*sphere) {
            const auto q = parse_state(sphere_in);
            const auto frame = frame_name == "schmidt" ? biphoton::SceneFrame::schmidt
                                                       : biphoton::SceneFrame::lab;
            const auto scene = biphoton::sphere_scene(q, frame, tol);
            if (ends_with(sphere_out, ".csv"))
                emit(biphoton::scene_to_csv(scene), sphere_out);
            else
                emit(biphoton::to_json(scene).dump(2), sphere_out);
        } else if (*simulate) {
            const auto q = parse_state(simulate_in);
            biphoton::SimulationOptions opt;
            opt.state = q;
            opt.detector = {eta1, eta2, dark};
            opt.n_pairs = pairs;
            opt.seed = seed;
            opt.exact = exact;
            const auto rep = biphoton::run_simulation(opt, tol);
            if (sweep_steps > 0) {
                if (simulate_out.empty())
                    throw CLI::ValidationError("--phi-sweep", "requires --out FILE");
                const auto sweep = biphoton::phi_sweep(rep.aligned, opt.detector,
                                                       opt.n_pairs, sweep_steps, tol);
                emit(biphoton::sweep_to_csv(sweep), simulate_out);
                std::cout << biphoton::to_json(rep).dump(2) << '\n';
            } else {
                emit(biphoton::to_json(rep).dump(2), simulate_out);
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}
