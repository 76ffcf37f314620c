// katz: flat sections of integrable connections over truncated power series.
//
//   katz run <file> [--tower] [--certify a,b] [--out report.json] [--expect expected.json]
//   katz gen --nvars N --rank R --degree D --seed S --count K --dir <path>

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "katz/problem_file.hpp"

namespace {

int emit(const katz::Json& report, const std::string& out_path)
{
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) {
            std::cerr << "katz: cannot write " << out_path << "\n";
            return 2;
        }
    }
    const int code = katz::exit_code(report);
    if (code == 3) {
        const auto& w = report["integrability"];
        std::cerr << "katz: connection is not integrable: curvature (" << w["i"] << "," << w["j"] << ") entry ["
                  << w["row"] << "," << w["col"] << "] = " << w["entry"].get<std::string>() << "\n";
    } else if (code == 2 || code == 4) {
        std::cerr << "katz: " << report["error"]["message"].get<std::string>() << "\n";
    }
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Flat sections, projector and trivialization for integrable connections"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Validate a problem file and report the flat frame and checks");
    std::string problem_path;
    std::string out_path;
    std::string expect_path;
    bool tower = false;
    std::vector<std::string> certify;
    run->add_option("file", problem_path, "Problem file (JSON)")->required();
    run->add_flag("--tower", tower, "Check projector compatibility down to one variable");
    run->add_option("--certify", certify, "Vector names to certify as coefficient tuples against the flat frame")
        ->delimiter(',');
    run->add_option("--out", out_path, "Write the report here instead of standard output");
    run->add_option("--expect", expect_path, "Expected-answer file from gen to compare the trivialization with");

    auto* gen = app.add_subcommand("gen", "Write a seeded corpus of gauge-generated problems");
    std::size_t nvars = 1;
    std::size_t rank = 1;
    unsigned degree = 1;
    std::uint64_t seed = 0;
    std::size_t count = 1;
    unsigned bound = 5;
    std::string dir;
    gen->add_option("--nvars", nvars)->required()->check(CLI::PositiveNumber);
    gen->add_option("--rank", rank)->required()->check(CLI::PositiveNumber);
    gen->add_option("--degree", degree)->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed)->required();
    gen->add_option("--count", count)->required()->check(CLI::PositiveNumber);
    gen->add_option("--bound", bound, "Coefficient numerator/denominator bound")->check(CLI::PositiveNumber);
    gen->add_option("--dir", dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*run) {
        katz::Json report;
        try {
            const katz::ProblemFile problem = katz::load_problem(problem_path);
            katz::RunOptions options;
            options.tower = tower;
            options.certify = certify;
            if (!expect_path.empty()) {
                options.expected_frame =
                    katz::load_expected_frame(expect_path, problem.n_vars, problem.rank, problem.trunc_order);
            }
            report = katz::run_problem(problem, options);
        } catch (const katz::ParseError& e) {
            report["error"] = {{"kind", "parse"}, {"offset", e.offset()}, {"message", e.what()}};
        } catch (const katz::Error& e) {
            report["error"] = {{"kind", "input"}, {"message", e.what()}};
        }
        return emit(report, out_path);
    }

    try {
        for (const auto& p : katz::generate_corpus(dir, nvars, rank, degree, seed, count, bound)) {
            std::cout << p.string() << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "katz: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
