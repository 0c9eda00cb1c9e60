#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pcclone/states.hpp"
#include "pcclone/verify.hpp"

using namespace pcc;

namespace {

double overlap_deficit(const CVec& a, const CVec& b) {
    return std::abs(std::abs((a.adjoint() * b)(0, 0)) - 1.0);
}

} // namespace

TEST_CASE("make_equatorial produces the flat superposition") {
    const QuditState psi0 = make_equatorial(PhaseVector::zeros(2));
    CHECK(std::abs(psi0.amps(0) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(psi0.amps(1) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);

    const QuditState flipped = make_equatorial(PhaseVector({std::numbers::pi, 0.0}));
    CVec expected(3);
    expected << cplx(1, 0), cplx(-1, 0), cplx(1, 0);
    expected /= std::sqrt(3.0);
    CHECK(overlap_deficit(flipped.amps, expected) < 1e-12);
}

TEST_CASE("equatorial amplitudes all have modulus 1/sqrt(d)") {
    for (int d = 2; d <= 5; ++d) {
        std::vector<double> angles;
        for (int j = 1; j < d; ++j) angles.push_back(counter_angle(5, 10 * d + j));
        const QuditState psi = make_equatorial(PhaseVector(angles));
        for (int i = 0; i < d; ++i)
            CHECK(std::abs(psi.amps(i)) == doctest::Approx(1 / std::sqrt(double(d))));
    }
}

TEST_CASE("PhaseVector reduces angles into [0, 2pi) and rejects junk") {
    const PhaseVector p({-std::numbers::pi, 7.0});
    CHECK(p.angle(1) == doctest::Approx(std::numbers::pi));
    CHECK(p.angle(2) == doctest::Approx(7.0 - 2 * std::numbers::pi));
    CHECK(p.angle(0) == 0.0);
    CHECK_THROWS_AS(PhaseVector({std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(PhaseVector(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("embed_product of psi0 at N=2 gives (1/2, 1/sqrt2, 1/2)") {
    const SymVector v = embed_product(make_equatorial(PhaseVector::zeros(2)), 2);
    REQUIRE(v.dim() == 3);
    CHECK(std::abs(v.amps(0) - cplx(0.5, 0)) < 1e-15);
    CHECK(std::abs(v.amps(1) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(v.amps(2) - cplx(0.5, 0)) < 1e-15);
}

TEST_CASE("embed_product of a basis level is a single occupation state") {
    CVec amps = CVec::Zero(3);
    amps(0) = cplx(1, 0);
    const QuditState level0(3, amps);
    for (int n = 1; n <= 4; ++n) {
        const SymVector v = embed_product(level0, n);
        CHECK(std::abs(v.amps(0) - cplx(1, 0)) < 1e-15);
        CHECK(v.amps.tail(v.dim() - 1).norm() < 1e-15);
    }
}

TEST_CASE("embedding amplitudes match the brute-force overlap formula") {
    // <{n}|psi0^N> = sqrt(N!/prod n_i!) / d^{N/2}, checked via expand_to_full
    for (int d = 2; d <= 3; ++d)
        for (int n = 1; n <= 4; ++n) {
            const SymVector embedded =
                embed_product(make_equatorial(PhaseVector::zeros(d)), n);
            const CVec full = expand_to_full(embedded);
            for (const Occupation& occ : enumerate_occupations(n, d)) {
                const CVec basis_full = expand_to_full(SymVector::basis(occ));
                const cplx via_oracle = (basis_full.adjoint() * full)(0, 0);
                const double expected = std::sqrt(double(multinomial(occ))) /
                                        std::pow(double(d), n / 2.0);
                CHECK(std::abs(via_oracle - cplx(expected, 0)) < 1e-12);
                CHECK(std::abs(embedded.amps(occupation_rank(occ)) -
                               cplx(expected, 0)) < 1e-12);
            }
        }
}

TEST_CASE("embed_product is isometric on random equatorial inputs") {
    for (int d = 2; d <= 4; ++d)
        for (int n = 1; n <= 4; ++n) {
            std::vector<double> angles;
            for (int j = 1; j < d; ++j)
                angles.push_back(counter_angle(11, 100 * d + 10 * n + j));
            const SymVector v = embed_product(make_equatorial(PhaseVector(angles)), n);
            CHECK(v.is_normalized());
        }
}

TEST_CASE("apply_phases_sym acts diagonally and undoes itself") {
    const SymVector v = random_sym_vector(3, 3, 23, 50);

    SUBCASE("zero phases are the identity") {
        const SymVector w = apply_phases_sym(PhaseVector::zeros(3), v);
        CHECK((w.amps - v.amps).norm() == 0.0);
    }
    SUBCASE("inverse phases undo the action") {
        std::vector<double> angles{1.3, 2.9};
        std::vector<double> negated{-1.3, -2.9};
        const SymVector w =
            apply_phases_sym(PhaseVector(negated), apply_phases_sym(PhaseVector(angles), v));
        CHECK((w.amps - v.amps).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("norm is preserved") {
        const SymVector w = apply_phases_sym(PhaseVector({0.4, 5.5}), v);
        CHECK(w.norm() == doctest::Approx(v.norm()));
    }
}

TEST_CASE("the covariant orbit property holds") {
    // embed(equatorial(phi), N) == apply_phases(phi, embed(psi0, N))
    for (int d = 2; d <= 3; ++d)
        for (int n = 1; n <= 3; ++n)
            for (int draw = 0; draw < 10; ++draw) {
                std::vector<double> angles;
                for (int j = 1; j < d; ++j)
                    angles.push_back(counter_angle(31, 1000 * d + 100 * n + 10 * draw + j));
                const PhaseVector phases(angles);
                const SymVector direct = embed_product(make_equatorial(phases), n);
                const SymVector rotated = apply_phases_sym(
                    phases, embed_product(make_equatorial(PhaseVector::zeros(d)), n));
                CHECK((direct.amps - rotated.amps).cwiseAbs().maxCoeff() < 1e-12);
            }
}

TEST_CASE("apply_phases_sym agrees with letter-wise phases in the full space") {
    for (int d = 2; d <= 3; ++d) {
        const int n = 3;
        const SymVector v = random_sym_vector(n, d, 7, 300 + d);
        std::vector<double> angles;
        for (int j = 1; j < d; ++j) angles.push_back(counter_angle(7, 400 + 10 * d + j));
        const PhaseVector phases(angles);

        const CVec rotated_full = expand_to_full(apply_phases_sym(phases, v));
        CVec oracle = expand_to_full(v);
        const long total = oracle.size();
        for (long t = 0; t < total; ++t) {
            double angle = 0.0;
            long rest = t;
            for (int s = 0; s < n; ++s) {
                angle += phases.angle(static_cast<int>(rest % d));
                rest /= d;
            }
            oracle(t) *= std::polar(1.0, angle);
        }
        CHECK((rotated_full - oracle).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("QuditState rejects unnormalized amplitudes") {
    CVec amps(2);
    amps << cplx(1, 0), cplx(1, 0);
    CHECK_THROWS_AS(QuditState(2, amps), std::invalid_argument);
}
