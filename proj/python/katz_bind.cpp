#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "katz/cartier.hpp"
#include "katz/limits.hpp"
#include "katz/oracle.hpp"
#include "katz/problem_file.hpp"

namespace py = pybind11;
using namespace katz;

namespace {

py::object to_fraction(const Rational& q)
{
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_pq_string(q));
}

std::vector<TruncatedSeries> entries_of(const ModuleVector& m)
{
    return m.entries();
}

std::vector<std::vector<TruncatedSeries>> rows_of(const SeriesMatrix& m)
{
    std::vector<std::vector<TruncatedSeries>> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            rows[r].push_back(m(r, c));
        }
    }
    return rows;
}

SeriesMatrix matrix_of(const std::vector<std::vector<TruncatedSeries>>& rows)
{
    if (rows.empty()) {
        throw DimensionError("empty matrix");
    }
    std::vector<TruncatedSeries> e;
    for (const auto& row : rows) {
        if (row.size() != rows.front().size()) {
            throw DimensionError("ragged matrix");
        }
        e.insert(e.end(), row.begin(), row.end());
    }
    return SeriesMatrix(rows.size(), rows.front().size(), std::move(e));
}

std::vector<std::vector<std::vector<TruncatedSeries>>> coeff_rows(const Connection& c)
{
    std::vector<std::vector<std::vector<TruncatedSeries>>> out;
    for (const auto& a : c.coeffs()) {
        out.push_back(rows_of(a));
    }
    return out;
}

Connection connection_from_strings(const std::vector<std::vector<std::vector<std::string>>>& matrices,
                                   unsigned trunc_order)
{
    const std::size_t n = matrices.size();
    std::vector<SeriesMatrix> coeffs;
    for (const auto& m : matrices) {
        std::vector<std::vector<TruncatedSeries>> rows;
        for (const auto& row : m) {
            std::vector<TruncatedSeries> r;
            for (const auto& text : row) {
                r.push_back(parse_series(text, n, trunc_order));
            }
            rows.push_back(std::move(r));
        }
        coeffs.push_back(matrix_of(rows));
    }
    return Connection(std::move(coeffs));
}

} // namespace

PYBIND11_MODULE(_katz, m)
{
    m.doc() = "Flat sections of integrable connections over truncated power series";

    auto base = py::register_exception<Error>(m, "KatzError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<InconsistencyError>(m, "InconsistencyError", base.ptr());
    py::register_exception<IntegrabilityError>(m, "IntegrabilityError", base.ptr());

    py::class_<TruncatedSeries>(m, "Series")
        .def(py::init([](const std::string& text, std::size_t n_vars, unsigned trunc_order) {
                 return parse_series(text, n_vars, trunc_order);
             }),
             py::arg("text"), py::arg("n_vars"), py::arg("trunc_order"))
        .def_property_readonly("n_vars", &TruncatedSeries::n_vars)
        .def_property_readonly("trunc_order", &TruncatedSeries::trunc_order)
        .def_property_readonly("precision", &TruncatedSeries::precision)
        .def("coefficient",
             [](const TruncatedSeries& f, const std::vector<MultiIndex::value_type>& j) {
                 return to_fraction(f.coefficient(MultiIndex(j)));
             })
        .def("terms",
             [](const TruncatedSeries& f) {
                 py::dict d;
                 for (const auto& [j, c] : f.terms()) {
                     py::tuple key(j.size());
                     for (std::size_t i = 0; i < j.size(); ++i) {
                         key[i] = j[i];
                     }
                     d[key] = to_fraction(c);
                 }
                 return d;
             })
        .def("truncated", &TruncatedSeries::truncated)
        .def("is_zero", &TruncatedSeries::is_zero)
        .def("identical", &TruncatedSeries::identical)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__str__", [](const TruncatedSeries& f) { return format(f); })
        .def("__repr__", [](const TruncatedSeries& f) {
            return "Series('" + format(f) + "', precision=" + std::to_string(f.precision()) + ")";
        });

    m.def("partial", py::overload_cast<std::size_t, const TruncatedSeries&>(&partial), py::arg("i"), py::arg("f"),
          "d/dx_{i+1}, 0-based variable index");
    m.def("eval_at_zero", [](const TruncatedSeries& f) { return to_fraction(eval_at_zero(f)); });
    m.def("restrict_last", py::overload_cast<const TruncatedSeries&>(&restrict_last));

    py::class_<Connection>(m, "Connection")
        .def(py::init([](const std::vector<std::vector<std::vector<TruncatedSeries>>>& coeffs) {
                 std::vector<SeriesMatrix> mats;
                 for (const auto& a : coeffs) {
                     mats.push_back(matrix_of(a));
                 }
                 return Connection(std::move(mats));
             }),
             py::arg("coeffs"))
        .def_static("from_strings", &connection_from_strings, py::arg("matrices"), py::arg("trunc_order"))
        .def_static("trivial", &Connection::trivial)
        .def_property_readonly("n_vars", &Connection::n_vars)
        .def_property_readonly("rank", &Connection::rank)
        .def_property_readonly("trunc_order", &Connection::trunc_order)
        .def_property_readonly("coeffs", &coeff_rows);

    auto vec = [](const std::vector<TruncatedSeries>& v) { return ModuleVector(v); };

    m.def("apply_D", [vec](const Connection& c, std::size_t i, const std::vector<TruncatedSeries>& v) {
        return entries_of(apply_D(c, i, vec(v)));
    });
    m.def("apply_DJ", [vec](const Connection& c, const std::vector<MultiIndex::value_type>& j,
                            const std::vector<TruncatedSeries>& v) {
        return entries_of(apply_DJ(c, MultiIndex(j), vec(v)));
    });
    m.def("curvature", [](const Connection& c, std::size_t i, std::size_t j) {
        return rows_of(curvature(c.coeffs(), i, j));
    });
    m.def("project", [vec](const Connection& c, const std::vector<TruncatedSeries>& v) {
        return entries_of(project(c, vec(v)));
    });
    m.def("flat_basis", [](const Connection& c) {
        const auto frame = flat_basis(c);
        std::vector<std::vector<TruncatedSeries>> out;
        for (const auto& b : frame.sections()) {
            out.push_back(b.entries());
        }
        return out;
    });
    m.def("solve_flat", [](const Connection& c) {
        const auto frame = solve_flat(c);
        std::vector<std::vector<TruncatedSeries>> out;
        for (const auto& b : frame.sections()) {
            out.push_back(b.entries());
        }
        return out;
    });
    m.def("trivialize", [](const Connection& c) { return rows_of(trivialize(c)); });
    m.def(
        "nakayama_expand",
        [vec](const Connection& c, const std::vector<TruncatedSeries>& v) {
            return nakayama_expand(flat_basis(c), vec(v));
        },
        "Coefficients of v against flat_basis(c)");
    m.def("independence_certificate",
          [vec](const Connection& c, const std::vector<std::vector<TruncatedSeries>>& flat_vectors,
                const std::vector<TruncatedSeries>& coeffs) {
              std::vector<ModuleVector> fv;
              for (const auto& v : flat_vectors) {
                  fv.push_back(vec(v));
              }
              const auto cert = independence_certificate(c, fv, coeffs);
              py::dict d;
              d["level"] = cert.level;
              d["multi_index"] = std::vector<MultiIndex::value_type>(cert.multi_index.exponents().begin(),
                                                                      cert.multi_index.exponents().end());
              py::list values;
              for (const auto& w : cert.witness_values) {
                  values.append(to_fraction(w));
              }
              d["witness_values"] = values;
              d["nonzero_position"] = cert.nonzero_position;
              return d;
          });
    m.def("compatibility_check", [vec](const Connection& c, const std::vector<TruncatedSeries>& v) {
        return compatibility_check(c, vec(v));
    });
    m.def("restrict_connection", &restrict_connection);
    m.def(
        "generate_problem",
        [](std::size_t n, std::size_t r, unsigned d, std::uint64_t seed, unsigned bound) {
            auto p = generate_problem(n, r, d, seed, bound);
            return py::make_tuple(p.connection, rows_of(p.known_frame));
        },
        py::arg("n_vars"), py::arg("rank"), py::arg("trunc_order"), py::arg("seed"), py::arg("coefficient_bound") = 5);
    m.def(
        "run_problem",
        [](const std::string& problem_json, bool tower, const std::vector<std::string>& certify) {
            RunOptions options;
            options.tower = tower;
            options.certify = certify;
            const Json report = run_problem(parse_problem_text(problem_json), options);
            return py::make_tuple(report.dump(), exit_code(report));
        },
        py::arg("problem_json"), py::arg("tower") = false, py::arg("certify") = std::vector<std::string>{},
        "Returns (report JSON text, exit code)");
}
