#pragma once

namespace nlslab {

/// Point on the ground-state cylinder: e^{i theta} Q(. - x0).
struct GroundStateParams {
    double theta = 0.0; // radians, principal range [0, 2*pi)
    double x0 = 0.0;    // box coordinates, wrapped to [-L/2, L/2)
};

} // namespace nlslab
