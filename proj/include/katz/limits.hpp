#pragma once

#include <cstddef>
#include <vector>

#include "katz/connection.hpp"

namespace katz {

// The infinite-variable ring is only ever seen through its finite levels
// R_n and the restriction maps x_n -> 0 between them.

struct TowerLevel {
    std::size_t level;
    Connection connection;
};

/// Connection at level n-1: drop A_n, restrict the rest entrywise.
/// Requires n >= 2.
Connection restrict_connection(const Connection& conn);

/// Entrywise restriction; requires n >= 2.
ModuleVector restrict_vector(const ModuleVector& m);

/// restrict(project(C, m)) == project(restrict(C), restrict(m)), exactly.
bool compatibility_check(const Connection& conn, const ModuleVector& m);

/// Levels n, n-1, ..., 1 obtained by repeated restriction.
std::vector<TowerLevel> build_tower(const Connection& conn);

struct LevelCompatibility {
    std::size_t level; // the upper level of the square
    bool commutes;
};

/// compatibility_check for every square from level n down to level 2 -> 1,
/// restricting m along the way.
std::vector<LevelCompatibility> tower_compatibility(const Connection& conn, const ModuleVector& m);

} // namespace katz
