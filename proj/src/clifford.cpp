#include "geogate/clifford.hpp"

#include <deque>

#include "geogate/errors.hpp"

namespace geogate {

namespace {

std::optional<int> find_in(const std::vector<CliffordElement>& group, const Matrix2& u,
                           double tol) {
    for (const auto& c : group) {
        if (equal_up_to_phase(c.unitary, u, tol)) return c.index;
    }
    return std::nullopt;
}

std::vector<CliffordElement> build_group() {
    const Matrix2 gens[] = {su2_exp(Vec3(1, 0, 0), kPi / 2), su2_exp(Vec3(0, 0, 1), kPi / 2)};
    std::vector<CliffordElement> group;
    std::deque<Matrix2> queue{Matrix2::Identity()};
    group.push_back({0, Matrix2::Identity(), axis_angle_decompose(Matrix2::Identity())});
    while (!queue.empty()) {
        const Matrix2 u = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            const Matrix2 next = g * u;
            if (find_in(group, next, 1e-9)) continue;
            const int idx = static_cast<int>(group.size());
            group.push_back({idx, next, axis_angle_decompose(next)});
            queue.push_back(next);
            if (group.size() > kCliffordCount) {
                throw InternalConsistencyError("clifford closure exceeded 24 elements");
            }
        }
    }
    if (group.size() != kCliffordCount) {
        throw InternalConsistencyError("clifford closure has " + std::to_string(group.size()) +
                                       " elements, expected 24");
    }
    return group;
}

}  // namespace

const std::vector<CliffordElement>& clifford_group() {
    static const std::vector<CliffordElement> group = build_group();
    return group;
}

std::optional<int> find_clifford(const Matrix2& u, double tol) {
    return find_in(clifford_group(), u, tol);
}

const std::array<std::array<int, kCliffordCount>, kCliffordCount>& clifford_products() {
    static const auto table = [] {
        std::array<std::array<int, kCliffordCount>, kCliffordCount> t{};
        const auto& g = clifford_group();
        for (int a = 0; a < kCliffordCount; ++a) {
            for (int b = 0; b < kCliffordCount; ++b) {
                const auto idx = find_clifford(g[a].unitary * g[b].unitary);
                if (!idx) throw InternalConsistencyError("clifford group not closed");
                t[a][b] = *idx;
            }
        }
        return t;
    }();
    return table;
}

int clifford_inverse(int index) {
    if (index < 0 || index >= kCliffordCount) throw InvalidArgument("clifford index out of range");
    const auto& row = clifford_products()[index];
    for (int b = 0; b < kCliffordCount; ++b) {
        if (row[b] == 0) return b;
    }
    throw InternalConsistencyError("clifford inverse missing");
}

CliffordCompile parse_clifford_compile(std::string_view name) {
    if (name == "direct") return CliffordCompile::Direct;
    if (name == "primitive") return CliffordCompile::Primitive;
    throw InvalidArgument("clifford compile mode must be 'direct' or 'primitive'");
}

std::string_view to_string(CliffordCompile mode) {
    return mode == CliffordCompile::Direct ? "direct" : "primitive";
}

std::vector<std::string> primitive_decomposition(int index) {
    static const std::vector<std::vector<std::string>> table = [] {
        const std::vector<std::vector<std::string>> words = {
            {},
            {"X"},
            {"Y"},
            {"Y", "X"},
            {"X/2", "Y/2"},
            {"X/2", "-Y/2"},
            {"-X/2", "Y/2"},
            {"-X/2", "-Y/2"},
            {"Y/2", "X/2"},
            {"Y/2", "-X/2"},
            {"-Y/2", "X/2"},
            {"-Y/2", "-X/2"},
            {"X/2"},
            {"-X/2"},
            {"Y/2"},
            {"-Y/2"},
            {"-X/2", "Y/2", "X/2"},
            {"-X/2", "-Y/2", "X/2"},
            {"X", "Y/2"},
            {"X", "-Y/2"},
            {"Y", "X/2"},
            {"Y", "-X/2"},
            {"X/2", "Y/2", "X/2"},
            {"-X/2", "Y/2", "-X/2"},
        };
        std::vector<std::vector<std::string>> by_index(kCliffordCount);
        std::vector<bool> seen(kCliffordCount, false);
        for (const auto& w : words) {
            Matrix2 u = Matrix2::Identity();
            for (const auto& label : w) u = parse_rotation(label).unitary() * u;
            const auto idx = find_clifford(u);
            if (!idx || seen[*idx]) throw InternalConsistencyError("primitive table does not cover the group");
            seen[*idx] = true;
            by_index[*idx] = w;
        }
        return by_index;
    }();
    if (index < 0 || index >= kCliffordCount) throw InvalidArgument("clifford index out of range");
    return table[index];
}

PulseSequence compile_clifford(const CliffordElement& element, GateFamily family,
                               bool perfect_pi, CliffordCompile mode) {
    if (mode == CliffordCompile::Direct) return compile_unitary(element.unitary, family, perfect_pi);
    PulseSequence seq;
    seq.family = family;
    for (const auto& label : primitive_decomposition(element.index)) {
        seq = concatenate(seq, build_rotation(parse_rotation(label), family, perfect_pi));
    }
    return seq;
}

}  // namespace geogate
