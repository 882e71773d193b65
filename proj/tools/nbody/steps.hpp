// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "accessors.hpp"
#include "kernel.hpp"

#include <vector>

namespace nbody
{
    /// One update step: per W-wide i-block, load the full simdized
    /// particle, accumulate interactions with every j, store Vel only.
    template<typename T, std::size_t W, typename Acc>
    void updateStep(lamina::View& view, const Acc& acc, std::uint64_t n)
    {
        using V = lamina::SimdN<T, W>;
        const V eps2 = lamina::simdBroadcast<V>(kEps2);
        const V dt = lamina::simdBroadcast<V>(kDt);
        for(std::uint64_t i = 0; i < n; i += W)
        {
            V piPosX, piPosY, piPosZ, piVelX, piVelY, piVelZ;
            [[maybe_unused]] V piMass;
            lamina::loadLeafSimd<T, W>(view, i, kPosX, piPosX);
            lamina::loadLeafSimd<T, W>(view, i, kPosY, piPosY);
            lamina::loadLeafSimd<T, W>(view, i, kPosZ, piPosZ);
            lamina::loadLeafSimd<T, W>(view, i, kVelX, piVelX);
            lamina::loadLeafSimd<T, W>(view, i, kVelY, piVelY);
            lamina::loadLeafSimd<T, W>(view, i, kVelZ, piVelZ);
            lamina::loadLeafSimd<T, W>(view, i, kMass, piMass);
            for(std::uint64_t j = 0; j < n; ++j)
            {
                const V pjPosX = lamina::simdBroadcast<V>(acc.template get<kPosX>(j));
                const V pjPosY = lamina::simdBroadcast<V>(acc.template get<kPosY>(j));
                const V pjPosZ = lamina::simdBroadcast<V>(acc.template get<kPosZ>(j));
                const V pjMass = lamina::simdBroadcast<V>(acc.template get<kMass>(j));
                pPInteraction(piPosX, piPosY, piPosZ, piVelX, piVelY, piVelZ, pjPosX, pjPosY, pjPosZ, pjMass, eps2, dt);
            }
            lamina::storeLeafSimd<T, W>(piVelX, view, i, kVelX);
            lamina::storeLeafSimd<T, W>(piVelY, view, i, kVelY);
            lamina::storeLeafSimd<T, W>(piVelZ, view, i, kVelZ);
        }
    }

    /// Update step with the j loop split into AoSoA blocks and lanes, so
    /// block addresses are hoisted instead of recomputed per access. Visits
    /// the same j in the same order as the flat loop.
    template<typename T, std::size_t W>
    void updateStepNested(lamina::View& view, const AoSoAAccessor<T>& acc, std::uint64_t n)
    {
        using V = lamina::SimdN<T, W>;
        const V eps2 = lamina::simdBroadcast<V>(kEps2);
        const V dt = lamina::simdBroadcast<V>(kDt);
        const std::uint64_t laneCount = acc.laneCount;
        for(std::uint64_t i = 0; i < n; i += W)
        {
            V piPosX, piPosY, piPosZ, piVelX, piVelY, piVelZ;
            [[maybe_unused]] V piMass;
            lamina::loadLeafSimd<T, W>(view, i, kPosX, piPosX);
            lamina::loadLeafSimd<T, W>(view, i, kPosY, piPosY);
            lamina::loadLeafSimd<T, W>(view, i, kPosZ, piPosZ);
            lamina::loadLeafSimd<T, W>(view, i, kVelX, piVelX);
            lamina::loadLeafSimd<T, W>(view, i, kVelY, piVelY);
            lamina::loadLeafSimd<T, W>(view, i, kVelZ, piVelZ);
            lamina::loadLeafSimd<T, W>(view, i, kMass, piMass);
            for(std::uint64_t jb = 0; jb < n; jb += laneCount)
            {
                const std::byte* block = acc.blockBase(jb / laneCount);
                const std::uint64_t lanes = laneCount < n - jb ? laneCount : n - jb;
                for(std::uint64_t jl = 0; jl < lanes; ++jl)
                {
                    const V pjPosX = lamina::simdBroadcast<V>(acc.template getLane<kPosX>(block, jl));
                    const V pjPosY = lamina::simdBroadcast<V>(acc.template getLane<kPosY>(block, jl));
                    const V pjPosZ = lamina::simdBroadcast<V>(acc.template getLane<kPosZ>(block, jl));
                    const V pjMass = lamina::simdBroadcast<V>(acc.template getLane<kMass>(block, jl));
                    pPInteraction(
                        piPosX,
                        piPosY,
                        piPosZ,
                        piVelX,
                        piVelY,
                        piVelZ,
                        pjPosX,
                        pjPosY,
                        pjPosZ,
                        pjMass,
                        eps2,
                        dt);
                }
            }
            lamina::storeLeafSimd<T, W>(piVelX, view, i, kVelX);
            lamina::storeLeafSimd<T, W>(piVelY, view, i, kVelY);
            lamina::storeLeafSimd<T, W>(piVelZ, view, i, kVelZ);
        }
    }

    /// One move step: pos += vel * dt for every particle.
    template<typename T, std::size_t W>
    void moveStep(lamina::View& view, std::uint64_t n)
    {
        using V = lamina::SimdN<T, W>;
        const V dt = lamina::simdBroadcast<V>(kDt);
        for(std::uint64_t i = 0; i < n; i += W)
        {
            V posX, posY, posZ, velX, velY, velZ;
            lamina::loadLeafSimd<T, W>(view, i, kPosX, posX);
            lamina::loadLeafSimd<T, W>(view, i, kPosY, posY);
            lamina::loadLeafSimd<T, W>(view, i, kPosZ, posZ);
            lamina::loadLeafSimd<T, W>(view, i, kVelX, velX);
            lamina::loadLeafSimd<T, W>(view, i, kVelY, velY);
            lamina::loadLeafSimd<T, W>(view, i, kVelZ, velZ);
            posX += velX * dt;
            posY += velY * dt;
            posZ += velZ * dt;
            lamina::storeLeafSimd<T, W>(posX, view, i, kPosX);
            lamina::storeLeafSimd<T, W>(posY, view, i, kPosY);
            lamina::storeLeafSimd<T, W>(posZ, view, i, kPosZ);
        }
    }

    // ============================================================================
    // hand-written baselines
    // ============================================================================

    template<typename T>
    struct ManualParticle
    {
        T posX, posY, posZ;
        T velX, velY, velZ;
        T mass;
    };

    template<typename T>
    void manualAoSUpdate(std::vector<ManualParticle<T>>& ps)
    {
        const T eps2 = static_cast<T>(kEps2);
        const T dt = static_cast<T>(kDt);
        const std::size_t n = ps.size();
        for(std::size_t i = 0; i < n; ++i)
        {
            const T piPosX = ps[i].posX;
            const T piPosY = ps[i].posY;
            const T piPosZ = ps[i].posZ;
            T piVelX = ps[i].velX;
            T piVelY = ps[i].velY;
            T piVelZ = ps[i].velZ;
            for(std::size_t j = 0; j < n; ++j)
                pPInteraction(
                    piPosX,
                    piPosY,
                    piPosZ,
                    piVelX,
                    piVelY,
                    piVelZ,
                    ps[j].posX,
                    ps[j].posY,
                    ps[j].posZ,
                    ps[j].mass,
                    eps2,
                    dt);
            ps[i].velX = piVelX;
            ps[i].velY = piVelY;
            ps[i].velZ = piVelZ;
        }
    }

    template<typename T>
    void manualAoSMove(std::vector<ManualParticle<T>>& ps)
    {
        const T dt = static_cast<T>(kDt);
        for(auto& p : ps)
        {
            p.posX += p.velX * dt;
            p.posY += p.velY * dt;
            p.posZ += p.velZ * dt;
        }
    }

    template<typename T>
    struct ManualSoA
    {
        std::vector<T> posX, posY, posZ;
        std::vector<T> velX, velY, velZ;
        std::vector<T> mass;
    };

    template<typename T>
    void manualSoAUpdate(ManualSoA<T>& ps)
    {
        const T eps2 = static_cast<T>(kEps2);
        const T dt = static_cast<T>(kDt);
        const std::size_t n = ps.posX.size();
        for(std::size_t i = 0; i < n; ++i)
        {
            const T piPosX = ps.posX[i];
            const T piPosY = ps.posY[i];
            const T piPosZ = ps.posZ[i];
            T piVelX = ps.velX[i];
            T piVelY = ps.velY[i];
            T piVelZ = ps.velZ[i];
            for(std::size_t j = 0; j < n; ++j)
                pPInteraction(
                    piPosX,
                    piPosY,
                    piPosZ,
                    piVelX,
                    piVelY,
                    piVelZ,
                    ps.posX[j],
                    ps.posY[j],
                    ps.posZ[j],
                    ps.mass[j],
                    eps2,
                    dt);
            ps.velX[i] = piVelX;
            ps.velY[i] = piVelY;
            ps.velZ[i] = piVelZ;
        }
    }

    template<typename T>
    void manualSoAMove(ManualSoA<T>& ps)
    {
        const T dt = static_cast<T>(kDt);
        for(std::size_t i = 0; i < ps.posX.size(); ++i)
        {
            ps.posX[i] += ps.velX[i] * dt;
            ps.posY[i] += ps.velY[i] * dt;
            ps.posZ[i] += ps.velZ[i] * dt;
        }
    }
} // namespace nbody
