#include "katz/problem_file.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "katz/cartier.hpp"
#include "katz/limits.hpp"
#include "katz/oracle.hpp"

namespace katz {

namespace {

std::size_t positive_int(const Json& j, const char* key)
{
    if (!j.contains(key)) {
        throw InputError(std::string("missing field \"") + key + "\"");
    }
    const Json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw InputError(std::string("field \"") + key + "\" must be a positive integer");
    }
    return v.get<std::size_t>();
}

TruncatedSeries series_at(const Json& j, std::size_t n_vars, unsigned trunc_order, const std::string& where)
{
    if (!j.is_string()) {
        throw InputError(where + " must be a polynomial string");
    }
    try {
        return parse_series(j.get<std::string>(), n_vars, trunc_order);
    } catch (const ParseError& e) {
        throw ParseError(e.offset(), where + ": " + e.reason());
    }
}

ModuleVector vector_from_json(const Json& j, std::size_t rank, std::size_t n_vars, unsigned trunc_order,
                              const std::string& where)
{
    if (!j.is_array() || j.size() != rank) {
        throw InputError(where + " must be an array of " + std::to_string(rank) + " polynomial strings");
    }
    std::vector<TruncatedSeries> e;
    e.reserve(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        e.push_back(series_at(j[k], n_vars, trunc_order, where + "[" + std::to_string(k) + "]"));
    }
    return ModuleVector(std::move(e));
}

Json witness_json(const CurvatureWitness& w)
{
    return Json{{"status", "fail"},
                {"i", w.i + 1},
                {"j", w.j + 1},
                {"row", w.row + 1},
                {"col", w.col + 1},
                {"entry", format(w.entry)}};
}

Json error_json(const char* kind, const std::string& message)
{
    return Json{{"kind", kind}, {"message", message}};
}

void write_file(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << j.dump(2) << "\n";
    out.close();
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

} // namespace

SeriesMatrix matrix_from_json(const Json& j, std::size_t n_vars, unsigned trunc_order, const std::string& where)
{
    if (!j.is_array() || j.empty()) {
        throw InputError(where + " must be a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    std::vector<TruncatedSeries> e;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols || cols == 0) {
            throw InputError(where + " is not a rectangular matrix");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            e.push_back(series_at(j[r][c], n_vars, trunc_order,
                                  where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
        }
    }
    return SeriesMatrix(rows, cols, std::move(e));
}

Json matrix_to_json(const SeriesMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(format(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_to_json(const ModuleVector& m)
{
    Json out = Json::array();
    for (const auto& e : m.entries()) {
        out.push_back(format(e));
    }
    return out;
}

ProblemFile parse_problem(const Json& j)
{
    if (!j.is_object()) {
        throw InputError("problem file must be a JSON object");
    }
    ProblemFile p;
    p.n_vars = positive_int(j, "n_vars");
    p.rank = positive_int(j, "rank");
    p.trunc_order = static_cast<unsigned>(positive_int(j, "trunc_order"));

    if (!j.contains("matrices") || !j.at("matrices").is_array() || j.at("matrices").size() != p.n_vars) {
        throw InputError("\"matrices\" must be an array of n_vars = " + std::to_string(p.n_vars) + " matrices");
    }
    for (std::size_t i = 0; i < p.n_vars; ++i) {
        SeriesMatrix a =
            matrix_from_json(j["matrices"][i], p.n_vars, p.trunc_order, "matrices[" + std::to_string(i) + "]");
        if (a.rows() != p.rank || a.cols() != p.rank) {
            throw InputError("matrices[" + std::to_string(i) + "] is not " + std::to_string(p.rank) + "x" +
                             std::to_string(p.rank));
        }
        p.matrices.push_back(std::move(a));
    }

    if (j.contains("vectors")) {
        if (!j.at("vectors").is_object()) {
            throw InputError("\"vectors\" must be an object of name -> polynomial array");
        }
        for (const auto& [name, v] : j.at("vectors").items()) {
            p.vectors.emplace_back(name, vector_from_json(v, p.rank, p.n_vars, p.trunc_order, "vectors." + name));
        }
    }
    if (j.contains("tower")) {
        if (!j.at("tower").is_boolean()) {
            throw InputError("\"tower\" must be a boolean");
        }
        p.tower = j.at("tower").get<bool>();
    }
    return p;
}

ProblemFile parse_problem_text(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte, std::string("invalid JSON: ") + e.what());
    }
    return parse_problem(j);
}

ProblemFile load_problem(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

Json problem_to_json(const Connection& conn, const std::vector<std::pair<std::string, ModuleVector>>& vectors,
                     bool tower)
{
    Json j;
    j["n_vars"] = conn.n_vars();
    j["rank"] = conn.rank();
    j["trunc_order"] = conn.trunc_order();
    Json mats = Json::array();
    for (const auto& a : conn.coeffs()) {
        mats.push_back(matrix_to_json(a));
    }
    j["matrices"] = std::move(mats);
    Json vecs = Json::object();
    for (const auto& [name, v] : vectors) {
        vecs[name] = vector_to_json(v);
    }
    j["vectors"] = std::move(vecs);
    j["tower"] = tower;
    return j;
}

Json run_problem(const ProblemFile& problem, const RunOptions& options)
{
    Json report;
    report["n_vars"] = problem.n_vars;
    report["rank"] = problem.rank;
    report["trunc_order"] = problem.trunc_order;

    std::optional<Connection> conn;
    try {
        conn.emplace(problem.matrices);
    } catch (const IntegrabilityError& e) {
        report["integrability"] = witness_json(e.witness());
        return report;
    } catch (const Error& e) {
        report["error"] = error_json("input", e.what());
        return report;
    }
    report["integrability"] = Json{{"status", "pass"}};

    try {
        const std::size_t n = conn->n_vars();
        const unsigned d = conn->trunc_order();
        const FlatFrame frame = flat_basis(*conn);
        const SeriesMatrix g = SeriesMatrix::from_columns(frame.sections());

        Json sections = Json::array();
        for (const auto& b : frame.sections()) {
            sections.push_back(vector_to_json(b));
        }
        report["flat_frame"] = std::move(sections);
        report["trivialization"] = matrix_to_json(g);

        std::vector<std::pair<std::string, ModuleVector>> vectors = problem.vectors;
        if (vectors.empty()) {
            for (std::size_t k = 0; k < conn->rank(); ++k) {
                vectors.emplace_back("e" + std::to_string(k + 1), ModuleVector::basis(conn->rank(), k, n, d));
            }
        }
        const TruncatedSeries scalar = parse_series("2 + x1 - 1/2*x1*x" + std::to_string(n), n, d);
        const TruncatedSeries x1 = TruncatedSeries::variable(n, d, 0);

        Json checks;
        bool trivializes = g.constant_matrix() == RationalMatrix::identity(conn->rank());
        for (std::size_t i = 0; i < n; ++i) {
            trivializes = trivializes && (partial(i, g) + conn->coeff(i) * g).is_zero();
        }
        checks["trivialization"] = trivializes;
        checks["oracle_equivalence"] = [&] {
            const FlatFrame oracle = solve_flat(*conn);
            for (std::size_t k = 0; k < conn->rank(); ++k) {
                if (!(oracle.sections()[k] == frame.sections()[k])) {
                    return false;
                }
            }
            return true;
        }();

        bool idempotent = true;
        bool scalar_rule = true;
        bool kernel = true;
        bool flat_image = true;
        bool nakayama = true;
        for (const auto& [name, v] : vectors) {
            idempotent = idempotent && idempotence_check(*conn, v);
            scalar_rule = scalar_rule && project_scalar_rule_check(*conn, scalar, v);
            kernel = kernel && kernel_check(*conn, v) && kernel_check(*conn, x1 * v);
            flat_image = flat_image && is_flat(*conn, project(*conn, v));
            nakayama = nakayama && recombine(frame, nakayama_expand(frame, v)) == v;
        }
        checks["idempotence"] = idempotent;
        checks["scalar_rule"] = scalar_rule;
        checks["kernel"] = kernel;
        checks["flat_image"] = flat_image;
        checks["nakayama"] = nakayama;

        if ((options.tower || problem.tower) && n >= 2) {
            bool commutes = true;
            for (const auto& [name, v] : vectors) {
                for (const auto& level : tower_compatibility(*conn, v)) {
                    commutes = commutes && level.commutes;
                }
            }
            checks["tower_compatibility"] = commutes;
        }
        if (options.expected_frame) {
            checks["expected_frame"] = g == *options.expected_frame && g.precision() == d;
        }

        Json certs = Json::array();
        bool certified = true;
        for (const auto& name : options.certify) {
            auto it = std::find_if(vectors.begin(), vectors.end(), [&](const auto& nv) { return nv.first == name; });
            if (it == vectors.end()) {
                throw InputError("--certify: no vector named \"" + name + "\"");
            }
            Json entry;
            entry["vector"] = name;
            try {
                const auto cert = independence_certificate(*conn, frame.sections(), it->second.entries());
                entry["level"] = cert.level;
                entry["multi_index"] = Json(std::vector<unsigned>(cert.multi_index.exponents().begin(),
                                                                  cert.multi_index.exponents().end()));
                Json values = Json::array();
                for (const auto& w : cert.witness_values) {
                    values.push_back(to_pq_string(w));
                }
                entry["witness_values"] = std::move(values);
                entry["nonzero_position"] = cert.nonzero_position + 1;
            } catch (const std::invalid_argument& e) {
                entry["error"] = e.what();
                certified = false;
            }
            certs.push_back(std::move(entry));
        }
        if (!options.certify.empty()) {
            checks["certificates"] = certified;
        }
        report["checks"] = std::move(checks);
        report["certificates"] = std::move(certs);
    } catch (const InconsistencyError& e) {
        report["error"] = error_json("inconsistency", e.what());
    } catch (const InputError& e) {
        report["error"] = error_json("input", e.what());
    }
    return report;
}

int exit_code(const Json& report)
{
    if (report.contains("error")) {
        return report["error"].value("kind", "") == "inconsistency" ? 4 : 2;
    }
    if (report.contains("integrability") && report["integrability"].value("status", "") != "pass") {
        return 3;
    }
    if (report.contains("checks")) {
        for (const auto& [name, ok] : report["checks"].items()) {
            if (!ok.get<bool>()) {
                return 1;
            }
        }
    }
    return 0;
}

SeriesMatrix load_expected_frame(const std::filesystem::path& path, std::size_t n_vars, std::size_t rank,
                                 unsigned trunc_order)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path.string());
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("known_frame")) {
        throw InputError("expected-answer file needs \"known_frame\"");
    }
    SeriesMatrix g = matrix_from_json(j["known_frame"], n_vars, trunc_order, "known_frame");
    if (g.rows() != rank || g.cols() != rank) {
        throw InputError("known_frame has the wrong shape");
    }
    return g;
}

std::vector<std::filesystem::path> generate_corpus(const std::filesystem::path& dir, std::size_t n_vars,
                                                   std::size_t rank, unsigned trunc_order, std::uint64_t seed,
                                                   std::size_t count, unsigned coefficient_bound)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint64_t s = derive_seed(seed, k);
        const CorpusProblem problem = generate_problem(n_vars, rank, trunc_order, s, coefficient_bound);
        CorpusRng rng(derive_seed(s, 0));
        const std::vector<std::pair<std::string, ModuleVector>> vectors{
            {"v", rng.vector(rank, n_vars, trunc_order, coefficient_bound, 3)}};

        char stem[32];
        std::snprintf(stem, sizeof stem, "%04zu", k);
        const auto problem_path = dir / (std::string("problem_") + stem + ".json");
        write_file(problem_path, problem_to_json(problem.connection, vectors, n_vars >= 2));

        Json expected;
        expected["seed"] = s;
        expected["known_frame"] = matrix_to_json(problem.known_frame);
        write_file(dir / (std::string("expected_") + stem + ".json"), expected);
        written.push_back(problem_path);
    }
    return written;
}

} // namespace katz
