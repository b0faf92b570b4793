#include "doctest.h"

#include <cmath>
#include <random>

#include "qpurify/recurrence.hpp"
#include "test_util.hpp"

using namespace qpurify;
using qpurify::testing::max_abs_diff;

namespace {

BellDiagonal random_bell_diagonal(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::array<double, 4> w{};
    double sum = 0.0;
    for (double& x : w) {
        x = uni(rng);
        sum += x;
    }
    for (double& x : w) x /= sum;
    return BellDiagonal(w);
}

DensityMatrix bell_diagonal_state(const BellDiagonal& x) {
    Matrix4c m = Matrix4c::Zero();
    for (size_t k = 0; k < 4; ++k) {
        const Vector4c& v = bell_vector(kBellOrder[k]);
        m += x[k] * (v * v.adjoint());
    }
    return DensityMatrix(m);
}

}  // namespace

TEST_CASE("bell_diagonal_of reference values") {
    const BellDiagonal phi = bell_diagonal_of(pure_to_density(bell_state(BellIndex::PhiPlus)));
    CHECK(phi[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(phi[1] + phi[2] + phi[3] < 1e-12);

    const Vector4c psi = bell_vector(BellIndex::PsiPlus);
    Matrix4c m = 0.7 * (psi * psi.adjoint());
    m(3, 3) += 0.3;
    const BellDiagonal ranktwo = bell_diagonal_of(DensityMatrix(m));
    CHECK(ranktwo[0] == doctest::Approx(0.15).epsilon(1e-13));
    CHECK(ranktwo[1] == doctest::Approx(0.15).epsilon(1e-13));
    CHECK(ranktwo[2] == doctest::Approx(0.70).epsilon(1e-13));
    CHECK(ranktwo[3] == doctest::Approx(0.0).epsilon(1e-13));

    const BellDiagonal mixed = bell_diagonal_of(DensityMatrix::maximally_mixed());
    for (size_t k = 0; k < 4; ++k) CHECK(mixed[k] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("bell-diagonal weights are validated") {
    CHECK_THROWS_AS(BellDiagonal(0.5, 0.5, 0.5, -0.5), InvalidStateError);
    CHECK_THROWS_AS(BellDiagonal(0.5, 0.1, 0.1, 0.1), InvalidStateError);
}

TEST_CASE("twirl behavior") {
    SUBCASE("bell-diagonal states are fixed points") {
        std::mt19937_64 rng(307);
        const DensityMatrix rho = bell_diagonal_state(random_bell_diagonal(rng));
        CHECK(max_abs_diff(twirl(rho).matrix(), rho.matrix()) < 1e-14);
    }

    SUBCASE("coherences between the xx eigenspaces are erased, others survive") {
        const Vector4c phip = bell_vector(BellIndex::PhiPlus);
        const Vector4c phim = bell_vector(BellIndex::PhiMinus);
        const Vector4c psip = bell_vector(BellIndex::PsiPlus);
        // state with both a phi+/phi- coherence (opposite xx signs -> erased)
        // and a phi+/psi+ coherence (equal xx signs -> preserved)
        Matrix4c m = 0.25 * Matrix4c::Identity();
        m += 0.1 * (phip * phim.adjoint() + phim * phip.adjoint());
        m += 0.1 * (phip * psip.adjoint() + psip * phip.adjoint());
        const DensityMatrix rho(m);
        const DensityMatrix t = twirl(rho);
        const Complex erased = (phip.adjoint() * t.matrix() * phim)(0, 0);
        const Complex kept = (phip.adjoint() * t.matrix() * psip)(0, 0);
        CHECK(std::abs(erased) < 1e-14);
        CHECK(kept.real() == doctest::Approx(0.1).epsilon(1e-13));
    }

    SUBCASE("twirl preserves the bell diagonal and is idempotent") {
        std::mt19937_64 rng(311);
        for (int trial = 0; trial < 20; ++trial) {
            const DensityMatrix rho = qpurify::testing::random_density(rng);
            const DensityMatrix once = twirl(rho);
            const BellDiagonal before = bell_diagonal_of(rho);
            const BellDiagonal after = bell_diagonal_of(once);
            for (size_t k = 0; k < 4; ++k) CHECK(std::abs(before[k] - after[k]) < 1e-13);
            CHECK(max_abs_diff(twirl(once).matrix(), once.matrix()) < 1e-12);
        }
    }
}

TEST_CASE("recurrence map reference values") {
    SUBCASE("pure phi+ is the attracting fixed point") {
        const MapResult r = recurrence_map(BellDiagonal(1, 0, 0, 0), BellDiagonal(1, 0, 0, 0));
        CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    }

    SUBCASE("werner F = 0.8") {
        const BellDiagonal w = BellDiagonal::werner(0.8);
        const MapResult r = recurrence_map(w, w);
        CHECK(r.success_probability == doctest::Approx(173.0 / 225.0).epsilon(1e-14));
        CHECK(r.weights[0] == doctest::Approx(145.0 / 173.0).epsilon(1e-14));
    }

    SUBCASE("maximally mixed is a fixed point with N = 1/2") {
        const BellDiagonal mixed(0.25, 0.25, 0.25, 0.25);
        const MapResult r = recurrence_map(mixed, mixed);
        CHECK(r.success_probability == doctest::Approx(0.5).epsilon(1e-15));
        for (size_t k = 0; k < 4; ++k)
            CHECK(r.weights[k] == doctest::Approx(0.25).epsilon(1e-14));
    }

    SUBCASE("normalization holds for random weight pairs") {
        std::mt19937_64 rng(313);
        for (int trial = 0; trial < 50; ++trial) {
            const MapResult r =
                recurrence_map(random_bell_diagonal(rng), random_bell_diagonal(rng));
            double sum = 0.0;
            for (size_t k = 0; k < 4; ++k) sum += r.weights[k];
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("orthogonal sector pairing never succeeds") {
        CHECK_THROWS_AS(recurrence_map(BellDiagonal(1, 0, 0, 0), BellDiagonal(0, 0, 0, 1)),
                        ProtocolNeverSucceeds);
    }
}

TEST_CASE("iterate traces") {
    SUBCASE("werner F = 0.8 converges with strictly increasing fidelity") {
        const PurificationTrace trace = iterate(BellDiagonal::werner(0.8), 20, 0.99);
        CHECK(trace.converged);
        REQUIRE(trace.rounds.size() > 1);
        for (size_t r = 1; r < trace.rounds.size(); ++r) {
            CHECK(trace.rounds[r].state.fidelity() > trace.rounds[r - 1].state.fidelity());
            CHECK(trace.rounds[r].success_probability > 0.0);
            CHECK(trace.rounds[r].success_probability <= 1.0);
        }
        CHECK(trace.rounds.back().state.fidelity() >= 0.99);
        // yield shrinks by at least the pair halving every round
        CHECK(trace.rounds.back().cumulative_yield <
              std::pow(0.5, static_cast<double>(trace.rounds.size() - 1)));
    }

    SUBCASE("below the basin the iteration does not converge") {
        const PurificationTrace trace = iterate(BellDiagonal::werner(0.45), 30, 0.99);
        CHECK_FALSE(trace.converged);
        CHECK_FALSE(trace.rounds.front().basin_condition);
    }

    SUBCASE("already converged input stops at round zero") {
        const PurificationTrace trace = iterate(BellDiagonal(1, 0, 0, 0), 10, 0.99);
        CHECK(trace.converged);
        CHECK(trace.rounds.size() == 1);
    }
}

TEST_CASE("exact 16x16 round agrees with the weight map") {
    SUBCASE("phi+ pairs pass through with unit probability") {
        const DensityMatrix phi = pure_to_density(bell_state(BellIndex::PhiPlus));
        const ExactRoundResult r = simulate_round_exact(phi, phi);
        CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(max_abs_diff(r.kept_state.matrix(), phi.matrix()) < 1e-12);
    }

    SUBCASE("random bell-diagonal pairs") {
        std::mt19937_64 rng(331);
        for (int trial = 0; trial < 25; ++trial) {
            const BellDiagonal x = random_bell_diagonal(rng);
            const BellDiagonal xp = random_bell_diagonal(rng);
            const MapResult expected = recurrence_map(x, xp);
            const ExactRoundResult r =
                simulate_round_exact(bell_diagonal_state(x), bell_diagonal_state(xp));
            CHECK(std::abs(r.success_probability - expected.success_probability) < 1e-10);
            const BellDiagonal kept = bell_diagonal_of(r.kept_state);
            for (size_t k = 0; k < 4; ++k)
                CHECK(std::abs(kept[k] - expected.weights[k]) < 1e-10);
        }
    }

    SUBCASE("bell-basis coherences do not disturb the kept diagonal") {
        std::mt19937_64 rng(337);
        for (int trial = 0; trial < 10; ++trial) {
            const DensityMatrix rho = qpurify::testing::random_density(rng);
            const DensityMatrix rho_prime = qpurify::testing::random_density(rng);
            const MapResult expected =
                recurrence_map(bell_diagonal_of(rho), bell_diagonal_of(rho_prime));
            const ExactRoundResult r = simulate_round_exact(rho, rho_prime);
            CHECK(std::abs(r.success_probability - expected.success_probability) < 1e-10);
            const BellDiagonal kept = bell_diagonal_of(r.kept_state);
            for (size_t k = 0; k < 4; ++k)
                CHECK(std::abs(kept[k] - expected.weights[k]) < 1e-10);
        }
    }
}
