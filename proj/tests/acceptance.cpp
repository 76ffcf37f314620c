// Acceptance suite: every criterion is an exact equality check over the
// seeded gauge corpus (or a hand-built input), one PASS/FAIL line each.
//
//   acceptance --cli <path to katz binary> --tmp <scratch dir>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "katz/cartier.hpp"
#include "katz/limits.hpp"
#include "katz/oracle.hpp"
#include "katz/problem_file.hpp"

using namespace katz;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kProblemsPerShape = 100;
constexpr std::size_t kLawVectorsPerProblem = 3;
constexpr std::size_t kKernelVectorsPerProblem = 50;
constexpr std::size_t kNakayamaVectorsPerProblem = 20;
constexpr std::size_t kTowerVectorsPerProblem = 5;
constexpr std::size_t kCertificatesPerProblem = 20;
constexpr double kLawSuiteSeconds = 60.0;
constexpr unsigned kCoefficientBound = 5;

struct Shape {
    std::size_t n;
    std::size_t r;
    unsigned d;
};
constexpr Shape kShapes[] = {{1, 2, 6}, {2, 2, 5}, {3, 3, 4}};

struct Tally {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what)
    {
        ++cases;
        if (!ok) {
            if (failures == 0) {
                first_failure = what;
            }
            ++failures;
        }
    }
    bool passed() const { return cases > 0 && failures == 0; }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool all_zero(const std::vector<Rational>& v)
{
    for (const auto& c : v) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

std::string tag(const Shape& s, std::size_t k)
{
    return "shape (" + std::to_string(s.n) + "," + std::to_string(s.r) + "," + std::to_string(s.d) + ") problem " +
           std::to_string(k);
}

int run_cli(const std::string& cli, const fs::path& file)
{
    const std::string cmd = "\"" + cli + "\" run \"" + file.string() + "\" > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_text(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary | std::ios::trunc) << text;
}

bool report(int id, const std::string& title, const Tally& t, const std::string& extra = "")
{
    std::cout << (t.passed() ? "[PASS] " : "[FAIL] ") << id << ". " << title << ": " << t.cases << " checks, "
              << t.failures << " failures" << extra;
    if (!t.passed() && !t.first_failure.empty()) {
        std::cout << " (first: " << t.first_failure << ")";
    }
    std::cout << std::endl;
    return t.passed();
}

} // namespace

int main(int argc, char** argv)
{
    std::string cli;
    fs::path tmp = fs::temp_directory_path() / "katz_acceptance";
    for (int a = 1; a + 1 < argc; a += 2) {
        const std::string key = argv[a];
        if (key == "--cli") {
            cli = argv[a + 1];
        } else if (key == "--tmp") {
            tmp = argv[a + 1];
        }
    }

    Tally laws, kernel, oracle, trivial, nakayama, tower, certs, rejection, known;
    double law_seconds = 0;

    for (const Shape& shape : kShapes) {
        const std::size_t n = shape.n;
        const std::size_t r = shape.r;
        const unsigned d = shape.d;
        for (std::size_t k = 0; k < kProblemsPerShape; ++k) {
            const std::uint64_t seed = derive_seed(1000 * n + 100 * r + d, k);
            const CorpusProblem problem = generate_problem(n, r, d, seed, kCoefficientBound);
            const Connection& conn = problem.connection;
            const SeriesMatrix& g0 = problem.known_frame;
            CorpusRng rng(derive_seed(seed, 1));
            const std::string where = tag(shape, k);

            // 1. Projector laws.
            const auto t0 = Clock::now();
            for (std::size_t v = 0; v < kLawVectorsPerProblem; ++v) {
                const ModuleVector m = rng.vector(r, n, d, kCoefficientBound, 6);
                const TruncatedSeries f = rng.series(n, d, kCoefficientBound, 4);
                const ModuleVector pm = project(conn, m);
                const ModuleVector ppm = project(conn, pm);
                laws.check(pm.precision() == d && ppm.precision() == d && ppm == pm, where + ": P^2 != P");
                const ModuleVector pfm = project(conn, f * m);
                laws.check(pfm.precision() == d && pfm == eval_at_zero(f) * pm, where + ": P(fm) != f(0)P(m)");
                laws.check(pm.constant_term() == m.constant_term(), where + ": constant term changed");
                for (std::size_t i = 0; i < n; ++i) {
                    const ModuleVector dpm = apply_D(conn, i, pm);
                    laws.check(dpm.precision() == d - 1 && dpm.is_zero(), where + ": D_i(Pm) != 0");
                }
            }
            law_seconds += seconds_since(t0);

            // 2. Kernel characterization: half generic, half in mM (no constant term).
            for (std::size_t v = 0; v < kKernelVectorsPerProblem; ++v) {
                const unsigned min_degree = v % 2 == 0 ? 0 : 1;
                ModuleVector m = rng.vector(r, n, d, kCoefficientBound, 5, min_degree);
                if (v % 5 == 4) {
                    m = TruncatedSeries::variable(n, d, v % n) * rng.vector(r, n, d, kCoefficientBound, 5);
                }
                const bool in_ideal = all_zero(m.constant_term());
                kernel.check(project(conn, m).is_zero() == in_ideal, where + ": kernel mismatch");
            }

            // 3. Oracle equivalence and recovery of the known frame.
            const FlatFrame frame = flat_basis(conn);
            const FlatFrame solved = solve_flat(conn);
            for (std::size_t c = 0; c < r; ++c) {
                bool same = true;
                for (std::size_t row = 0; row < r; ++row) {
                    same = same && frame.sections()[c][row].identical(solved.sections()[c][row]);
                }
                oracle.check(same, where + ": flat_basis != solve_flat, section " + std::to_string(c + 1));
            }
            const SeriesMatrix g = trivialize(conn);
            oracle.check(g.precision() == d && g == g0, where + ": trivialize != known frame");

            // 4. Trivialization certificate.
            trivial.check(g.constant_matrix() == RationalMatrix::identity(r), where + ": G(0) != I");
            for (std::size_t i = 0; i < n; ++i) {
                const SeriesMatrix residual = partial(i, g) + conn.coeff(i) * g;
                trivial.check(residual.precision() == d - 1 && residual.is_zero(),
                              where + ": d_i G + A_i G != 0");
            }

            // 5. Nakayama round trip.
            for (std::size_t v = 0; v < kNakayamaVectorsPerProblem; ++v) {
                const ModuleVector m = rng.vector(r, n, d, kCoefficientBound, 6);
                const ModuleVector back = recombine(frame, nakayama_expand(frame, m));
                nakayama.check(back.precision() == d && back == m, where + ": round trip");
            }

            // 6. Tower compatibility, n = 3 only, down two levels.
            if (n == 3) {
                for (std::size_t v = 0; v < kTowerVectorsPerProblem; ++v) {
                    const ModuleVector m = rng.vector(r, n, d, kCoefficientBound, 6);
                    const auto squares = tower_compatibility(conn, m);
                    tower.check(squares.size() == 2, where + ": expected two squares");
                    for (const auto& sq : squares) {
                        tower.check(sq.commutes, where + ": square at level " + std::to_string(sq.level));
                    }
                }
            }

            // 7. Independence certificates on random flat subsets.
            const std::vector<MultiIndex> order = monomials_up_to(n, d);
            for (std::size_t t = 0; t < kCertificatesPerProblem; ++t) {
                std::vector<ModuleVector> subset;
                while (subset.empty()) {
                    for (std::size_t c = 0; c < r; ++c) {
                        if (rng.below(2) == 1) {
                            subset.push_back(frame.sections()[c]);
                        }
                    }
                }
                std::vector<TruncatedSeries> coeffs;
                bool any = false;
                while (!any) {
                    coeffs.clear();
                    for (std::size_t c = 0; c < subset.size(); ++c) {
                        coeffs.push_back(rng.series(n, d, kCoefficientBound, 3));
                        any = any || !coeffs.back().is_zero();
                    }
                }
                const IndependenceCertificate cert = independence_certificate(conn, subset, coeffs);
                certs.check(cert.witness_values.at(cert.nonzero_position) != 0, where + ": zero witness");

                // Brute force: first monomial (graded order) where some f_k is nonzero,
                // and the combination itself is a nonzero series.
                MultiIndex first;
                bool found = false;
                for (const auto& J : order) {
                    for (const auto& f : coeffs) {
                        found = found || f.coefficient(J) != 0;
                    }
                    if (found) {
                        first = J;
                        break;
                    }
                }
                certs.check(found && cert.multi_index == first, where + ": certificate J is not minimal");
                for (std::size_t c = 0; c < subset.size(); ++c) {
                    certs.check(cert.witness_values[c] == coeffs[c].coefficient(first), where + ": witness value");
                }
                ModuleVector combo = ModuleVector::zero(r, n, d);
                for (std::size_t c = 0; c < subset.size(); ++c) {
                    combo = combo + coeffs[c] * subset[c];
                }
                certs.check(!combo.is_zero(), where + ": combination vanished");
            }
        }
    }

    // 8. Rejection of non-integrable input, in the library and through the CLI.
    {
        const std::vector<std::pair<std::string, std::string>> cases{
            {"noncommuting_constants",
             R"({"n_vars": 2, "rank": 2, "trunc_order": 3,
                 "matrices": [[["0", "1"], ["0", "0"]], [["0", "0"], ["1", "0"]]]})"},
            {"x2_dependence",
             R"({"n_vars": 2, "rank": 2, "trunc_order": 3,
                 "matrices": [[["x2", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]]})"},
        };
        fs::create_directories(tmp);
        for (const auto& [name, text] : cases) {
            const ProblemFile problem = parse_problem_text(text);
            bool rejected = false;
            try {
                Connection c(problem.matrices);
            } catch (const IntegrabilityError& e) {
                const auto& w = e.witness();
                rejected = w.i == 0 && w.j == 1 && !w.entry.is_zero();
            }
            rejection.check(rejected, name + ": no curvature witness at (1,2)");
            const Json rep = run_problem(problem, {});
            rejection.check(exit_code(rep) == 3 && rep["integrability"]["status"] == "fail" &&
                                rep["integrability"]["i"] == 1 && rep["integrability"]["j"] == 2,
                            name + ": report");
            if (!cli.empty()) {
                const fs::path file = tmp / (name + ".json");
                write_text(file, text);
                const int code = run_cli(cli, file);
                rejection.check(code == 3, name + ": CLI exit code " + std::to_string(code));
            }
        }
    }

    // 9. Known-value spot checks.
    {
        const std::size_t n = 1;
        auto series = [](const char* text, unsigned d) { return parse_series(text, 1, d); };
        auto matrix1 = [&](std::vector<const char*> entries, std::size_t size, unsigned d) {
            std::vector<TruncatedSeries> e;
            for (const char* t : entries) {
                e.push_back(series(t, d));
            }
            return SeriesMatrix(size, size, std::move(e));
        };

        const Connection flat1 = Connection::trivial(n, 1, 4);
        const ModuleVector pe = project(flat1, ModuleVector({series("1 + 2*x1 + 3*x1^2", 4)}));
        known.check(pe[0].identical(series("1", 4)), "P((1+2x1+3x1^2) e) != e");

        const Connection expo({matrix1({"1"}, 1, 2)});
        const FlatFrame ef = flat_basis(expo);
        const FlatFrame es = solve_flat(expo);
        known.check(ef.sections()[0][0].identical(series("1 - x1 + 1/2*x1^2", 2)), "rank-1 flat section");
        known.check(es.sections()[0][0].identical(series("1 - x1 + 1/2*x1^2", 2)), "rank-1 oracle section");

        const Connection nil({matrix1({"0", "1", "0", "0"}, 2, 3)});
        known.check(trivialize(nil) == matrix1({"1", "-x1", "0", "1"}, 2, 3), "nilpotent G");
    }

    bool ok = true;
    std::ostringstream timing;
    timing << ", " << law_seconds << " s";
    ok &= report(1, "projector laws (P^2 = P, P(fm) = f(0)P(m), constant term, D_i Pm = 0)", laws, timing.str());
    Tally law_time;
    law_time.check(law_seconds < kLawSuiteSeconds, "law suite took " + std::to_string(law_seconds) + " s");
    ok &= report(1, "projector law suite runtime under 60 s", law_time);
    ok &= report(2, "kernel characterization P(m) = 0 iff m in mM", kernel);
    ok &= report(3, "oracle equivalence flat_basis = solve_flat, trivialize = G", oracle);
    ok &= report(4, "trivialization d_i G + A_i G = 0, G(0) = I", trivial);
    ok &= report(5, "Nakayama round trip", nakayama);
    ok &= report(6, "tower compatibility restrict o project = project o restrict", tower);
    ok &= report(7, "independence certificates", certs);
    ok &= report(8, "rejection of non-integrable input (exit code 3)", rejection);
    ok &= report(9, "known-value spot checks", known);
    return ok ? 0 : 1;
}
