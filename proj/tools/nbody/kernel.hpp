// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <lamina/simd.hpp>

namespace nbody
{
    /// Benchmark fixtures: softening and time step of the all-pairs kernel.
    inline constexpr double kEps2 = 0.01;
    inline constexpr double kDt = 0.0001;

    /// One pairwise interaction: d = pos_i - pos_j, r2 = eps2 + d.d,
    /// vel_i += d * (mass_j * (r2)^(-3/2) * dt). V is a scalar or an
    /// N-wide batch; all arithmetic stays in V's element precision.
    template<typename V>
    inline void pPInteraction(
        V piPosX,
        V piPosY,
        V piPosZ,
        V& piVelX,
        V& piVelY,
        V& piVelZ,
        V pjPosX,
        V pjPosY,
        V pjPosZ,
        V pjMass,
        V eps2,
        V dt)
    {
        using std::sqrt;
        const V dx = piPosX - pjPosX;
        const V dy = piPosY - pjPosY;
        const V dz = piPosZ - pjPosZ;
        const V distSqr = eps2 + dx * dx + dy * dy + dz * dz;
        const V distSixth = distSqr * distSqr * distSqr;
        const V invDistCube = lamina::simdBroadcast<V>(1.0) / sqrt(distSixth);
        const V sts = pjMass * invDistCube * dt;
        piVelX += dx * sts;
        piVelY += dy * sts;
        piVelZ += dz * sts;
    }
} // namespace nbody
