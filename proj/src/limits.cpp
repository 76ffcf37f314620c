#include "katz/limits.hpp"

#include "katz/cartier.hpp"

namespace katz {

Connection restrict_connection(const Connection& conn)
{
    if (conn.n_vars() < 2) {
        throw DimensionError("cannot restrict a connection below one variable");
    }
    std::vector<SeriesMatrix> coeffs;
    coeffs.reserve(conn.n_vars() - 1);
    for (std::size_t i = 0; i + 1 < conn.n_vars(); ++i) {
        coeffs.push_back(restrict_last(conn.coeff(i)));
    }
    return Connection(std::move(coeffs));
}

ModuleVector restrict_vector(const ModuleVector& m)
{
    if (m.n_vars() < 2) {
        throw DimensionError("cannot restrict a vector below one variable");
    }
    std::vector<TruncatedSeries> e;
    e.reserve(m.rank());
    for (const auto& s : m.entries()) {
        e.push_back(restrict_last(s));
    }
    return ModuleVector(std::move(e));
}

bool compatibility_check(const Connection& conn, const ModuleVector& m)
{
    const ModuleVector upper = restrict_vector(project(conn, m));
    const ModuleVector lower = project(restrict_connection(conn), restrict_vector(m));
    return upper.precision() == lower.precision() && upper == lower;
}

std::vector<TowerLevel> build_tower(const Connection& conn)
{
    std::vector<TowerLevel> tower;
    tower.push_back({conn.n_vars(), conn});
    while (tower.back().level > 1) {
        tower.push_back({tower.back().level - 1, restrict_connection(tower.back().connection)});
    }
    return tower;
}

std::vector<LevelCompatibility> tower_compatibility(const Connection& conn, const ModuleVector& m)
{
    std::vector<LevelCompatibility> out;
    Connection c = conn;
    ModuleVector v = m;
    while (c.n_vars() > 1) {
        out.push_back({c.n_vars(), compatibility_check(c, v)});
        c = restrict_connection(c);
        v = restrict_vector(v);
    }
    return out;
}

} // namespace katz
