#include <doctest.h>

#include <cmath>

#include "coopstc/errors.hpp"
#include "support/scenarios.hpp"

using namespace coopstc;
using namespace testsupport;

TEST_CASE("amplification gain examples") {
    CHECK(amplification_gain(1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(amplification_gain(2.0, 1.0, 1.0, 0.0) == doctest::Approx(std::sqrt(2.0)));
    double prev = amplification_gain(1.0, 1.0, 1.0, 0.1);
    for (double s2 : {1.0, 10.0, 1e3, 1e6}) {
        const double g = amplification_gain(1.0, 1.0, 1.0, s2);
        CHECK(g < prev);
        prev = g;
    }
    CHECK(prev < 1e-3);
    CHECK_THROWS_AS(amplification_gain(1.0, 0.0, 1.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(amplification_gain(1.0, 1.0, -1.0, 1.0), InvalidParameter);
}

TEST_CASE("zero symbols and zero noise give a zero receive vector") {
    RngStream rng(1, 0);
    const Scenario sc = make_scenario(rng, {SystemType::Mas, Scheme::DAlamouti, 2, {0, 1}});
    const NoiseSample noise = draw_noise(rng, sc.model, 0.0, 0.0);
    const CVector r = transmit(sc.model, CVector{0.0, 0.0}, sc.codes, sc.gains, noise).r;
    CHECK(frobenius_norm_sq(r) == 0.0);
    CHECK(r.size() == 2 * 3);
}

TEST_CASE("doubling the code matrices doubles the signal part") {
    RngStream rng(2, 0);
    for (auto system : {SystemType::Mas, SystemType::Sas}) {
        const Scenario sc = make_scenario(rng, {system, Scheme::DAlamouti, 2, {0, 2}});
        const CVector s = random_vector(rng, 2);
        CodeSet twice = sc.codes;
        for (auto& phi : twice.phi) phi *= 2.0;
        const CVector a = signal_part(sc.model, s, sc.codes, sc.gains);
        const CVector b = signal_part(sc.model, s, twice, sc.gains);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] - 2.0 * a[i]) < 1e-12);
    }
}

TEST_CASE("zero code scalars leave only destination noise (SAS)") {
    RngStream rng(3, 0);
    Scenario sc = make_scenario(rng, {SystemType::Sas, Scheme::DAlamouti, 2, {0, 1}});
    for (auto& phi : sc.codes.phi) phi = CMatrix(1, 1);
    const NoiseSample noise = draw_noise(rng, sc.model, 1.0, 1.0);
    const CVector r = transmit(sc.model, random_vector(rng, 2), sc.codes, sc.gains, noise).r;
    CHECK(max_abs_diff(r, noise.destination) == 0.0);
}

TEST_CASE("forwarded relay noise is reconstructed from the recorded draws") {
    RngStream rng(4, 0);
    for (auto system : {SystemType::Mas, SystemType::Sas}) {
        const Scenario sc = make_scenario(rng, {system, Scheme::RAlamouti, 2, {0, 1}});
        NoiseSample noise = draw_noise(rng, sc.model, 1.0, 0.0);
        const CVector r = transmit(sc.model, CVector{0.0, 0.0}, sc.codes, sc.gains, noise).r;
        CVector expect(r.size());
        for (std::size_t b = 0; b < sc.model.branches.size(); ++b) {
            const Branch& br = sc.model.branches[b];
            const EquivalentChannel eq = equivalent_channel(br, sc.model.window);
            const CVector part = apply(phi_eq(sc.model, b, sc.codes.phi[b]), eq.g_eq.apply(noise.relay[br.relay]));
            for (std::size_t i = 0; i < part.size(); ++i) expect[i] += sc.gains[b] * part[i];
        }
        CHECK(max_abs_diff(r, expect) < 1e-10);
    }
}

TEST_CASE("the source prefactor scales only the signal") {
    RngStream rng(5, 0);
    const ScenarioSpec spec{SystemType::Mas, Scheme::DAlamouti, 2, {0, 1}, false, false, 1.0};
    RngStream r1(5, 1);
    RngStream r2(5, 1);
    Scenario a = make_scenario(r1, spec);
    ScenarioSpec spec4 = spec;
    spec4.p1 = 4.0;
    Scenario b = make_scenario(r2, spec4);
    const CVector s = random_vector(rng, 2);
    const NoiseSample noise = draw_noise(rng, a.model, 1.0, 1.0);
    const CVector ra = transmit(a.model, s, a.codes, a.gains, noise).r;
    const CVector rb = transmit(b.model, s, b.codes, b.gains, noise).r;
    const CVector sa = signal_part(a.model, s, a.codes, a.gains);
    for (std::size_t i = 0; i < ra.size(); ++i) {
        // Four times P1 doubles the signal, the noise part is unchanged.
        CHECK(std::abs((rb[i] - ra[i]) - sa[i]) < 1e-10);
    }
}

TEST_CASE("matrix model equals the full phi_eq H_eq product") {
    RngStream rng(6, 0);
    for (auto system : {SystemType::Mas, SystemType::Sas}) {
        const Scenario sc = make_scenario(rng, {system, Scheme::Ldc, 2, {1, 0}, true});
        const CVector s = random_vector(rng, 2);
        CVector expect(sc.model.receive_length());
        for (std::size_t b = 0; b < sc.model.branches.size(); ++b) {
            const EquivalentChannel eq = equivalent_channel(sc.model.branches[b], sc.model.window);
            const CVector part = apply(phi_eq(sc.model, b, sc.codes.phi[b]), eq.h_eq.apply(s));
            for (std::size_t i = 0; i < part.size(); ++i) expect[i] += sc.model.prefactor * sc.gains[b] * part[i];
        }
        const CVector d = sc.model.direct->apply(s);
        for (std::size_t i = 0; i < d.size(); ++i) expect[sc.model.relay_part_length() + i] += sc.model.prefactor * d[i];
        CHECK(max_abs_diff(signal_part(sc.model, s, sc.codes, sc.gains), expect) < 1e-10);
    }
}

TEST_CASE("transmit enforces the trace budget and the system type") {
    RngStream rng(7, 0);
    const Scenario sc = make_scenario(rng, {SystemType::Mas, Scheme::DAlamouti, 2, {0, 1}});
    const double p = sc.codes.trace_power();
    CHECK_NOTHROW(transmit_mas(sc.model, CVector{1.0, 1.0}, sc.codes, sc.gains, p, 0.1, 0.1, rng));
    CHECK_THROWS_AS(transmit_mas(sc.model, CVector{1.0, 1.0}, sc.codes, sc.gains, 0.5 * p, 0.1, 0.1, rng),
                    PowerConstraintError);
    CHECK_THROWS_AS(transmit_sas(sc.model, CVector{1.0, 1.0}, sc.codes, sc.gains, p, 0.1, 0.1, rng), ShapeError);
    CodeSet wrong = sc.codes;
    wrong.phi.pop_back();
    CHECK_THROWS_AS(signal_part(sc.model, CVector{1.0, 1.0}, wrong, sc.gains), ShapeError);
}

TEST_CASE("phi_eq is block diagonal with the delayed code") {
    RngStream rng(8, 0);
    const Scenario sc = make_scenario(rng, {SystemType::Mas, Scheme::DAlamouti, 2, {0, 2}});
    const std::size_t b = sc.model.branches_of(1).front();
    const CMatrix pe = phi_eq(sc.model, b, sc.codes.phi[b]);
    REQUIRE(pe.rows() == 8);
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(pe(m * 4 + 2 + i, m * 4 + 2 + j) == sc.codes.phi[b](i, j));
    CHECK(trace_power(pe) == doctest::Approx(2.0 * trace_power(sc.codes.phi[b])));
}

TEST_CASE("branch gains are zero for idle branches") {
    const auto g = branch_gains(std::vector<double>{0.5, 0.0, 0.5}, 1.0, 1.0, 1.0);
    CHECK(g[0] == doctest::Approx(0.5));
    CHECK(g[1] == 0.0);
}
