#pragma once

// Single-qubit Clifford group, generated as the closure of {X/2, Z/2}.
//
// Indexing is the BFS discovery order: start from the identity, then for each
// element in queue order left-multiply by X/2, then Z/2, and append anything
// new (equality up to global phase).

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geogate/pulses.hpp"
#include "geogate/su2.hpp"

namespace geogate {

struct CliffordElement {
    int index = 0;
    Matrix2 unitary;
    AxisAngle axis_angle;
};

inline constexpr int kCliffordCount = 24;

const std::vector<CliffordElement>& clifford_group();

// Index of the element equal to u up to global phase, if any.
std::optional<int> find_clifford(const Matrix2& u, double tol = 1e-9);

// table[a][b] = index of (C_a * C_b).
const std::array<std::array<int, kCliffordCount>, kCliffordCount>& clifford_products();

int clifford_inverse(int index);

// Direct: one compiled rotation per element. Primitive: the element as a
// product of at most three gates from {X, Y, X/2, -X/2, Y/2, -Y/2}, each
// compiled on its own.
enum class CliffordCompile { Direct, Primitive };

CliffordCompile parse_clifford_compile(std::string_view name);
std::string_view to_string(CliffordCompile mode);

// Time-ordered primitive labels whose product equals the element up to phase.
std::vector<std::string> primitive_decomposition(int index);

PulseSequence compile_clifford(const CliffordElement& element, GateFamily family,
                               bool perfect_pi = false,
                               CliffordCompile mode = CliffordCompile::Direct);

}  // namespace geogate
