#include "distillery/skeleton.hpp"

#include "distillery/errors.hpp"

#include <array>
#include <utility>

namespace distillery {

IcmCircuit expand_to_icm_skeleton(const MctCircuit& c, const SkeletonParams& params, std::string name) {
    c.validate();
    std::size_t toffolis = 0;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        if (c.gates[i].controls.size() > 2) {
            throw ValidationError("gate " + std::to_string(i) + " has " + std::to_string(c.gates[i].controls.size()) +
                                  " controls; decompose first");
        }
        if (c.gates[i].controls.size() == 2) ++toffolis;
    }
    const std::size_t per_toffoli = params.a_per_toffoli * (1 + params.y_per_a);
    const std::size_t width = c.width + toffolis * per_toffoli;

    std::vector<Operation> ops;
    const auto emit = [&ops](OpKind kind, std::vector<std::size_t> wires) { ops.push_back({ops.size(), kind, std::move(wires)}); };
    for (std::size_t w = 0; w < c.width; ++w) emit(OpKind::BasisInit, {w});

    std::size_t next_wire = c.width;
    const auto inject = [&](OpKind kind, std::size_t data) {
        const std::size_t w = next_wire++;
        emit(kind, {w});
        emit(OpKind::Cnot, {data, w});
        emit(OpKind::Measure, {w});
    };

    for (const MctGate& g : c.gates) {
        if (g.controls.empty()) continue;
        if (g.controls.size() == 1) {
            emit(OpKind::Cnot, {g.controls[0], g.target});
            continue;
        }
        const std::size_t c1 = g.controls[0];
        const std::size_t c2 = g.controls[1];
        const std::size_t t = g.target;
        const std::array<std::size_t, 7> t_wires = {t, t, t, t, c2, c1, c2};
        const std::array<std::pair<std::size_t, std::size_t>, 6> pairs = {
            std::pair{c2, t}, std::pair{c1, t}, std::pair{c2, t}, std::pair{c1, t}, std::pair{c1, c2}, std::pair{c1, c2}};
        const std::size_t events = std::max(params.a_per_toffoli, params.internal_cnots);
        for (std::size_t k = 0; k < events; ++k) {
            if (k < params.a_per_toffoli) {
                const std::size_t data = t_wires[k % t_wires.size()];
                inject(OpKind::InjectedInitA, data);
                for (std::size_t y = 0; y < params.y_per_a; ++y) inject(OpKind::InjectedInitY, data);
            }
            if (k < params.internal_cnots) {
                const auto [a, b] = pairs[k % pairs.size()];
                emit(OpKind::Cnot, {a, b});
            }
        }
    }
    for (std::size_t w = 0; w < c.width; ++w) emit(OpKind::Measure, {w});
    return IcmCircuit(std::move(name), width, std::move(ops));
}

}  // namespace distillery
