#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "katz/connection.hpp"

namespace katz {

using Json = nlohmann::ordered_json;

/// Parsed problem file. Coefficient matrices are shape-checked but not yet
/// validated for integrability; that happens when a Connection is built.
///
///   {"n_vars": int, "rank": int, "trunc_order": int,
///    "matrices": [[["poly", ...], ...], ...],     // n matrices, rank x rank
///    "vectors": {"name": ["poly", ...]},          // optional
///    "tower": bool}                               // optional
struct ProblemFile {
    std::size_t n_vars = 0;
    std::size_t rank = 0;
    unsigned trunc_order = 0;
    std::vector<SeriesMatrix> matrices;
    std::vector<std::pair<std::string, ModuleVector>> vectors;
    bool tower = false;
};

/// Throws ParseError (bad JSON, bad polynomial, bad shape) with the
/// offending location in the message.
ProblemFile parse_problem(const Json& j);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem(const std::filesystem::path& path);

Json matrix_to_json(const SeriesMatrix& m);
SeriesMatrix matrix_from_json(const Json& j, std::size_t n_vars, unsigned trunc_order, const std::string& where);
Json vector_to_json(const ModuleVector& m);

Json problem_to_json(const Connection& conn, const std::vector<std::pair<std::string, ModuleVector>>& vectors,
                     bool tower);

struct RunOptions {
    bool tower = false;
    std::vector<std::string> certify;
    /// Known frame to compare the trivialization against (gen output).
    std::optional<SeriesMatrix> expected_frame;
};

/// validate -> flat_basis -> trivialize -> checks -> certificates.
///
/// Always returns a report; failures are recorded in it rather than
/// thrown: "integrability" carries the curvature witness, "error" carries
/// internal inconsistencies and input errors.
Json run_problem(const ProblemFile& problem, const RunOptions& options);

/// 0 all checks pass, 1 some check failed, 2 input error,
/// 3 not integrable, 4 internal inconsistency.
int exit_code(const Json& report);

/// Reads an expected-answer file written by gen and returns its frame.
SeriesMatrix load_expected_frame(const std::filesystem::path& path, std::size_t n_vars, std::size_t rank,
                                 unsigned trunc_order);

/// Writes problem_NNNN.json and expected_NNNN.json for `count` generated
/// problems. Returns the written problem paths. Throws std::runtime_error
/// if the directory cannot be written.
std::vector<std::filesystem::path> generate_corpus(const std::filesystem::path& dir, std::size_t n_vars,
                                                   std::size_t rank, unsigned trunc_order, std::uint64_t seed,
                                                   std::size_t count, unsigned coefficient_bound = 5);

} // namespace katz
