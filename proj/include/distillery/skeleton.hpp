#pragma once

// ICM skeletons for decomposed MCT circuits: the injected-state counts of a
// T-gate synthesis with a simple teleportation-style CNOT scaffold.

#include "distillery/icm.hpp"
#include "distillery/mct.hpp"

namespace distillery {

struct SkeletonParams {
    std::size_t a_per_toffoli = 7;
    std::size_t y_per_a = 2;
    /// CNOTs between the three gate wires per Toffoli.
    std::size_t internal_cnots = 6;
};

/// Each injected state gets its own wire: init, one CNOT with a gate wire,
/// measure. Gates with one control become a CNOT, gates without controls
/// emit nothing. Throws ValidationError on a gate with more than 2 controls.
IcmCircuit expand_to_icm_skeleton(const MctCircuit& c, const SkeletonParams& params = {}, std::string name = "skeleton");

}  // namespace distillery
