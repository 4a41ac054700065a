#include "distillery/errors.hpp"
#include "distillery/skeleton.hpp"

#include <gtest/gtest.h>

namespace distillery {
namespace {

MctCircuit toffolis(std::size_t k, std::size_t width = 3) {
    MctCircuit c;
    c.width = width;
    for (std::size_t i = 0; i < k; ++i) c.gates.push_back({{i % width, (i + 1) % width}, (i + 2) % width});
    return c;
}

TEST(Skeleton, CountsPerToffoli) {
    EXPECT_EQ(circuit_stats(expand_to_icm_skeleton(toffolis(1))).n_inject_a, 7u);
    EXPECT_EQ(circuit_stats(expand_to_icm_skeleton(toffolis(1))).n_inject_y, 14u);
    const CircuitStats two = circuit_stats(expand_to_icm_skeleton(toffolis(2)));
    EXPECT_EQ(two.n_inject_a, 14u);
    EXPECT_EQ(two.n_inject_y, 28u);
    EXPECT_EQ(two.width, 3u + 2 * 21);
}

TEST(Skeleton, CnotOnlyCircuitHasNoInjections) {
    MctCircuit c;
    c.width = 3;
    c.gates = {{{0}, 1}, {{1}, 2}, {{}, 0}};
    const IcmCircuit s = expand_to_icm_skeleton(c);
    const CircuitStats st = circuit_stats(s);
    EXPECT_EQ(st.n_inject_a + st.n_inject_y, 0u);
    EXPECT_EQ(st.n, 3u + 2u + 3u);
}

TEST(Skeleton, ParametersScaleCounts) {
    const SkeletonParams p{3, 1, 2};
    const IcmCircuit s = expand_to_icm_skeleton(toffolis(4), p);
    const CircuitStats st = circuit_stats(s);
    EXPECT_EQ(st.n_inject_a, 12u);
    EXPECT_EQ(st.n_inject_y, 12u);
    std::size_t cnots = 0;
    for (const Operation& op : s.ops()) cnots += op.kind == OpKind::Cnot;
    EXPECT_EQ(cnots, 4u * (3 + 3 + 2));
}

TEST(Skeleton, RejectsUndecomposedGates) {
    MctCircuit c;
    c.width = 4;
    c.gates = {{{0, 1, 2}, 3}};
    EXPECT_THROW((void)expand_to_icm_skeleton(c), ValidationError);
    EXPECT_NO_THROW((void)expand_to_icm_skeleton(decompose_mct(c)));
}

TEST(SkeletonProperty, GeneratorContract) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const MctCircuit c = decompose_mct(random_mct_circuit(3 + seed % 8, 1 + seed % 12, 5, seed));
        const IcmCircuit s = expand_to_icm_skeleton(c);
        const CircuitStats st = circuit_stats(s);
        EXPECT_EQ(st.n_inject_y, 2 * st.n_inject_a);
        EXPECT_EQ(st.n_inject_a, 7 * c.toffoli_count());
        // every injected state is consumed by a CNOT with a gate wire
        for (const Operation& op : s.ops()) {
            if (!is_injected(op.kind)) continue;
            const auto next = s.successor(op.id, op.wires[0]);
            ASSERT_TRUE(next.has_value());
            EXPECT_EQ(s.op(*next).kind, OpKind::Cnot);
            EXPECT_LT(s.op(*next).wires[0], c.width);
        }
    }
}

}  // namespace
}  // namespace distillery
