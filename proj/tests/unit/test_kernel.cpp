// SPDX-License-Identifier: Apache-2.0
#include <lamina/layout_spec.hpp>
#include <lamina/view.hpp>

#include <nbody/accessors.hpp>
#include <nbody/kernel.hpp>
#include <nbody/steps.hpp>

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace lamina;

namespace
{
    const RecordSchema& particleSchema()
    {
        static const RecordSchema schema = RecordSchema::parse(
            "Record{Pos: Record{x: f64, y: f64, z: f64}, Vel: Record{x: f64, y: f64, z: f64}, Mass: f64}");
        return schema;
    }

    View makeView(const char* layout, std::uint64_t n)
    {
        return View(parseLayout(layout, particleSchema(), ArrayExtents(IndexType::I64, {n}, {})));
    }

    std::vector<nbody::ManualParticle<double>> randomParticles(std::uint64_t n, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<nbody::ManualParticle<double>> ps(n);
        for(auto& p : ps)
        {
            p.posX = dist(rng);
            p.posY = dist(rng);
            p.posZ = dist(rng);
            p.velX = dist(rng) / 10.0;
            p.velY = dist(rng) / 10.0;
            p.velZ = dist(rng) / 10.0;
            p.mass = dist(rng) + 1.5;
        }
        return ps;
    }

    void fillFromParticles(View& view, const std::vector<nbody::ManualParticle<double>>& ps)
    {
        for(std::uint64_t i = 0; i < ps.size(); ++i)
        {
            view.store<double>(i, nbody::kPosX, ps[i].posX);
            view.store<double>(i, nbody::kPosY, ps[i].posY);
            view.store<double>(i, nbody::kPosZ, ps[i].posZ);
            view.store<double>(i, nbody::kVelX, ps[i].velX);
            view.store<double>(i, nbody::kVelY, ps[i].velY);
            view.store<double>(i, nbody::kVelZ, ps[i].velZ);
            view.store<double>(i, nbody::kMass, ps[i].mass);
        }
    }
} // namespace

TEST_CASE("equal masses on one axis accelerate apart symmetrically")
{
    auto view = makeView("aos-packed", 2);
    view.store<double>(0, nbody::kPosX, -1.0);
    view.store<double>(1, nbody::kPosX, 1.0);
    view.store<double>(0, nbody::kMass, 3.0);
    view.store<double>(1, nbody::kMass, 3.0);

    const nbody::AffineAccessor<double> acc(view);
    nbody::updateStep<double, 1>(view, acc, 2);

    const double dx = -2.0;
    const double distSqr = nbody::kEps2 + dx * dx + 0.0 + 0.0;
    const double invDistCube = 1.0 / std::sqrt(distSqr * distSqr * distSqr);
    const double expected = dx * (3.0 * invDistCube * nbody::kDt);

    CHECK(view.load<double>(0, nbody::kVelX) == expected);
    CHECK(view.load<double>(1, nbody::kVelX) == -expected);
    CHECK(view.load<double>(0, nbody::kVelY) == 0.0);
    CHECK(view.load<double>(0, nbody::kVelZ) == 0.0);
    CHECK(view.load<double>(0, nbody::kPosX) == -1.0);

    nbody::moveStep<double, 1>(view, 2);
    CHECK(view.load<double>(0, nbody::kPosX) == -1.0 + expected * nbody::kDt);
    CHECK(view.load<double>(1, nbody::kPosX) == 1.0 - expected * nbody::kDt);
}

TEST_CASE("a particle feels no force from itself")
{
    auto view = makeView("soa-mb", 1);
    view.store<double>(0, nbody::kPosX, 0.5);
    view.store<double>(0, nbody::kMass, 100.0);
    const nbody::FunnelAccessor<double> acc(view);
    nbody::updateStep<double, 1>(view, acc, 1);
    CHECK(view.load<double>(0, nbody::kVelX) == 0.0);
    CHECK(view.load<double>(0, nbody::kVelY) == 0.0);
    CHECK(view.load<double>(0, nbody::kVelZ) == 0.0);
}

TEST_CASE("batched interaction equals four scalar interactions per lane")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    using V = SimdBatch<double, 4>;
    V piPosX, piPosY, piPosZ, piVelX, piVelY, piVelZ;
    for(std::size_t k = 0; k < 4; ++k)
    {
        piPosX[k] = dist(rng);
        piPosY[k] = dist(rng);
        piPosZ[k] = dist(rng);
        piVelX[k] = dist(rng);
        piVelY[k] = dist(rng);
        piVelZ[k] = dist(rng);
    }
    const double pjPosX = dist(rng);
    const double pjPosY = dist(rng);
    const double pjPosZ = dist(rng);
    const double pjMass = dist(rng) + 2.5;

    V batchVelX = piVelX;
    V batchVelY = piVelY;
    V batchVelZ = piVelZ;
    nbody::pPInteraction(
        piPosX,
        piPosY,
        piPosZ,
        batchVelX,
        batchVelY,
        batchVelZ,
        simdBroadcast<V>(pjPosX),
        simdBroadcast<V>(pjPosY),
        simdBroadcast<V>(pjPosZ),
        simdBroadcast<V>(pjMass),
        simdBroadcast<V>(nbody::kEps2),
        simdBroadcast<V>(nbody::kDt));

    for(std::size_t k = 0; k < 4; ++k)
    {
        double vx = piVelX[k];
        double vy = piVelY[k];
        double vz = piVelZ[k];
        nbody::pPInteraction(
            piPosX[k], piPosY[k], piPosZ[k], vx, vy, vz, pjPosX, pjPosY, pjPosZ, pjMass, nbody::kEps2, nbody::kDt);
        CHECK(batchVelX[k] == vx);
        CHECK(batchVelY[k] == vy);
        CHECK(batchVelZ[k] == vz);
    }
}

TEST_CASE("scalar library update matches the hand-written baseline bitwise")
{
    const std::uint64_t n = 8;
    auto manual = randomParticles(n, 99);
    auto view = makeView("aos-packed", n);
    fillFromParticles(view, manual);

    for(int step = 0; step < 3; ++step)
    {
        nbody::manualAoSUpdate(manual);
        nbody::manualAoSMove(manual);
        const nbody::AffineAccessor<double> acc(view);
        nbody::updateStep<double, 1>(view, acc, n);
        nbody::moveStep<double, 1>(view, n);
    }

    for(std::uint64_t i = 0; i < n; ++i)
    {
        CHECK(view.load<double>(i, nbody::kPosX) == manual[i].posX);
        CHECK(view.load<double>(i, nbody::kPosY) == manual[i].posY);
        CHECK(view.load<double>(i, nbody::kPosZ) == manual[i].posZ);
        CHECK(view.load<double>(i, nbody::kVelX) == manual[i].velX);
        CHECK(view.load<double>(i, nbody::kVelY) == manual[i].velY);
        CHECK(view.load<double>(i, nbody::kVelZ) == manual[i].velZ);
    }
}

TEST_CASE("nested block traversal equals the flat traversal")
{
    const std::uint64_t n = 16;
    const auto particles = randomParticles(n, 5);

    auto flat = makeView("aosoa:4", n);
    auto nested = makeView("aosoa:4", n);
    fillFromParticles(flat, particles);
    fillFromParticles(nested, particles);

    const auto& mapping = dynamic_cast<const AoSoAMapping&>(flat.mapping());
    for(int step = 0; step < 2; ++step)
    {
        const nbody::AoSoAAccessor<double> flatAcc(flat, mapping);
        nbody::updateStep<double, 4>(flat, flatAcc, n);
        nbody::moveStep<double, 4>(flat, n);

        const auto& nestedMapping = dynamic_cast<const AoSoAMapping&>(nested.mapping());
        const nbody::AoSoAAccessor<double> nestedAcc(nested, nestedMapping);
        nbody::updateStepNested<double, 4>(nested, nestedAcc, n);
        nbody::moveStep<double, 4>(nested, n);
    }

    for(std::uint64_t i = 0; i < n; ++i)
        for(std::size_t f = 0; f < nbody::kLeafCount; ++f)
            CHECK(flat.load<double>(i, f) == nested.load<double>(i, f));
}
