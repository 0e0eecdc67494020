#include "mrspec/spectrum.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

using namespace mrspec;

namespace {

PotentialParams table_params(double alpha, double inv_b = 0.025)
{
    return PotentialParams::from_inverse_range(inv_b, 2.0, alpha);
}

bool same_bits(double a, double b)
{
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

} // namespace

TEST_CASE("shape parameter examples")
{
    CHECK(shape_parameter(0.0, QuantumState{0, 0, 3}) == 1.0);
    CHECK(shape_parameter(0.75, QuantumState{0, 1, 2}) ==
          doctest::Approx(std::sqrt(3.25)).epsilon(1e-15));
    CHECK(shape_parameter(0.75, QuantumState{0, 1, 2}) ==
          doctest::Approx(1.8027756).epsilon(1e-7));
    for (int D = 2; D <= 7; ++D) {
        for (int l = 0; l <= 4; ++l) {
            if (D == 2 && l == 0) {
                continue;
            }
            QuantumState const s{0, l, D};
            CHECK(same_bits(shape_parameter(0.75, s), shape_parameter(0.25, s)));
        }
    }
    auto const lvl = evaluate_level(PotentialParams{2.0, 0.0, 1.0}, QuantumState{0, 0, 3});
    CHECK(lvl.eta == 0.0);
}

TEST_CASE("shape parameter radicand below zero")
{
    // (1 - 2 alpha)^2 - 1 < 0 at q = 0
    CHECK_THROWS_AS(shape_parameter(0.5, QuantumState{0, 0, 2}), domain_error);
    CHECK_THROWS_AS(shape_parameter(0.25, QuantumState{3, 0, 2}), domain_error);
    CHECK_NOTHROW(shape_parameter(0.0, QuantumState{0, 0, 2}));
    try {
        shape_parameter(0.5, QuantumState{0, 0, 2});
    }
    catch (domain_error const& e) {
        std::string const what = e.what();
        CHECK(what.find("alpha=0.5") != std::string::npos);
        CHECK(what.find("D=2") != std::string::npos);
    }
}

TEST_CASE("reference energies")
{
    auto const e = energy(table_params(0.75), QuantumState{0, 1, 2});
    CHECK(std::abs(e.energy - -0.241087728) < 5e-10);
    CHECK(e.a_param == doctest::Approx(std::sqrt(3.25)));
    CHECK(e.eta == doctest::Approx((std::sqrt(3.25) - 1.0) / 2.0));

    auto const h = energy(table_params(0.0), QuantumState{0, 1, 2});
    CHECK(std::abs(h.energy - -0.209898003) < 5e-10);
    double const hand = -(311.0 * 311.0) / (32.0 * 1600.0 * 9.0);
    CHECK(oracle::ulp_distance(h.energy, hand) <= 4);

    auto const d2 = energy(table_params(1.5), QuantumState{0, 2, 2});
    auto const d4 = energy(table_params(1.5), QuantumState{0, 1, 4});
    CHECK(std::abs(d2.energy - -0.058898861) < 5e-10);
    CHECK(d2.energy == d4.energy);

    // 6d, D = 2, alpha = 0.75: the printed table value -0.005435481 is not reproduced
    auto const six_d = energy(table_params(0.75), QuantumState{3, 2, 2});
    CHECK(six_d.energy == doctest::Approx(-0.006591028).epsilon(1e-7));
    CHECK(std::abs(six_d.energy - -0.005435481) > 1e-3);
}

TEST_CASE("unbound states are classified through epsilon")
{
    PotentialParams const p{0.1, 0.0, 1.0};
    QuantumState const s{0, 0, 3};
    auto const res = solve_level(p, s);
    REQUIRE(std::holds_alternative<Unbound>(res));
    CHECK(std::get<Unbound>(res).epsilon <= 0.0);
    CHECK_THROWS_AS(energy(p, s), unbound_error);
    try {
        energy(p, s);
    }
    catch (unbound_error const& e) {
        CHECK(e.state() == s);
        CHECK(e.epsilon() == doctest::Approx(-0.45));
    }
}

TEST_CASE("bound_states stops at the first unbound level")
{
    auto const p = table_params(0.75);
    auto const states = bound_states(p, 1, 2);
    REQUIRE(!states.empty());
    for (std::size_t i = 0; i < states.size(); ++i) {
        CHECK(states[i].state.n == static_cast<int>(i));
        CHECK(states[i].epsilon > 0.0);
    }
    auto const next = QuantumState{static_cast<int>(states.size()), 1, 2};
    CHECK(std::holds_alternative<Unbound>(solve_level(p, next)));
    CHECK(bound_states(PotentialParams{0.1, 0.0, 1.0}, 0, 3).empty());
}

TEST_CASE("critical coupling examples")
{
    CHECK(critical_coupling(QuantumState{0, 0, 3}, 0.0) == 1.0);
    CHECK(critical_coupling(QuantumState{2, 0, 3}, 0.0) == 9.0);
    // closed form vanishes at A = 1 for the Hulthen s-wave
    CHECK(evaluate_level(PotentialParams{1.0, 0.0, 1.0}, QuantumState{0, 0, 3}).energy == 0.0);

    QuantumState const s{0, 1, 2};
    double const eta = (std::sqrt(3.25) - 1.0) / 2.0;
    double const ac = critical_coupling(s, 0.75);
    CHECK(ac == doctest::Approx((1.0 + eta) * (1.0 + eta) - eta * (eta + 1.0) + 0.75));
    auto const lvl = evaluate_level(PotentialParams{ac, 0.75, 1.0}, s);
    CHECK(std::abs(lvl.energy) < 1e-10);
    CHECK(std::abs(lvl.epsilon) < 1e-10);
}

TEST_CASE("degenerate partners")
{
    auto const chain = degenerate_partners(QuantumState{0, 4, 2}, 2, 8);
    std::vector<QuantumState> const want{{0, 4, 2}, {0, 3, 4}, {0, 2, 6}, {0, 1, 8}};
    CHECK(chain == want);

    CHECK(degenerate_partners(QuantumState{1, 0, 3}, 3, 3) ==
          std::vector<QuantumState>{{1, 0, 3}});

    auto const pair = degenerate_partners(QuantumState{0, 1, 4}, 2, 4);
    CHECK(pair == std::vector<QuantumState>{{0, 2, 2}, {0, 1, 4}});
    for (double alpha : {0.0, 0.75, 1.5}) {
        auto const p = table_params(alpha);
        CHECK(energy(p, pair[0]).energy == energy(p, pair[1]).energy);
    }

    CHECK_THROWS_AS(degenerate_partners(QuantumState{0, 0, 2}, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(degenerate_partners(QuantumState{0, 0, 2}, 4, 3), std::invalid_argument);
}

TEST_CASE("Hulthen special case")
{
    CHECK(hulthen_principal(QuantumState{0, 1, 2}) == 3);
    double const e = hulthen_energy(QuantumState{0, 1, 2}, 80.0, 40.0);
    CHECK(std::abs(e - -0.209898003) < 5e-10);
    CHECK_THROWS_AS(hulthen_energy(QuantumState{0, 0, 3}, 1.0, 1.0), unbound_error);

    // alpha = 0 and alpha = 1 against Hulthen over a sweep of states
    for (double inv_b : {0.025, 0.05, 0.075, 0.1}) {
        for (int D : {2, 3, 4, 5}) {
            for (int l = 0; l <= 4; ++l) {
                for (int n = 0; n <= 5; ++n) {
                    QuantumState const s{n, l, D};
                    auto const p0 = table_params(0.0, inv_b);
                    auto const r0 = solve_level(p0, s);
                    if (!std::holds_alternative<SpectrumEntry>(r0)) {
                        continue;
                    }
                    double const e0 = std::get<SpectrumEntry>(r0).energy;
                    double const e1 = energy(table_params(1.0, inv_b), s).energy;
                    CHECK(same_bits(e0, e1));
                    CHECK(oracle::ulp_distance(e0, hulthen_energy(s, p0.A, p0.b)) <= 4);
                }
            }
        }
    }
}

TEST_CASE("screened Coulomb and Coulomb limits")
{
    QuantumState const ground{0, 0, 3};
    CHECK(coulomb_limit_energy(ground, 1.0) == -0.5);
    CHECK(coulomb_limit_energy(QuantumState{1, 0, 3}, 1.0) == -0.125);
    CHECK(coulomb_limit_energy(QuantumState{0, 0, 5}, 1.0) ==
          coulomb_limit_energy(QuantumState{0, 1, 3}, 1.0));
    CHECK(coulomb_limit_energy(QuantumState{0, 1, 3}, 1.0) == -0.125);

    double const e = screened_coulomb_energy(ground, 1.0, 1e-8);
    CHECK(e == doctest::Approx(-0.5).epsilon(1e-7));

    // screened-Coulomb form equals the Hulthen energy at the mapped coupling
    for (double delta : {1e-4, 1e-3, 0.01, 0.05}) {
        for (QuantumState s : {QuantumState{0, 0, 3}, QuantumState{1, 1, 3}, QuantumState{0, 2, 4}}) {
            double const b = 1.0 / delta;
            double const A = screened_coulomb_coupling(1.0, b);
            CHECK(screened_coulomb_energy(s, 1.0, delta) ==
                  doctest::Approx(hulthen_energy(s, A, b)).epsilon(1e-13));
        }
    }

    Units const si_like{2.0, 1.5, 0.7};
    double const b = 50.0;
    double const A = screened_coulomb_coupling(1.3, b, si_like);
    CHECK(screened_coulomb_energy(QuantumState{0, 1, 3}, 1.3, 1.0 / b, si_like) ==
          doctest::Approx(hulthen_energy(QuantumState{0, 1, 3}, A, b, si_like)).epsilon(1e-13));

    CHECK_THROWS_AS(screened_coulomb_energy(ground, 1.0, 10.0), unbound_error);
    CHECK_THROWS_AS(coulomb_limit_energy(ground, 0.0), domain_error);
}

TEST_CASE("spectroscopic labels")
{
    CHECK(parse_spectroscopic("2p", 2) == QuantumState{0, 1, 2});
    CHECK(parse_spectroscopic("6g", 4) == QuantumState{1, 4, 4});
    CHECK(parse_spectroscopic("1s", 3) == QuantumState{0, 0, 3});
    CHECK(parse_spectroscopic("12h", 3) == QuantumState{6, 5, 3});
    for (char const* bad : {"1x", "1p", "p", "2", "", "x2p", "-2p", "2pp", "0s"}) {
        CHECK_THROWS_AS(parse_spectroscopic(bad, 3), parse_error);
    }
    for (int l = 0; l <= 5; ++l) {
        for (int n = 0; n <= 4; ++n) {
            QuantumState const s{n, l, 3};
            CHECK(parse_spectroscopic(spectroscopic_label(s), 3) == s);
        }
    }
    CHECK(spectroscopic_label(QuantumState{2, 7, 3}) == "n2l7");
}

TEST_CASE("property: energy depends on (l, D) only through D + 2l")
{
    std::mt19937 gen(101);
    std::uniform_real_distribution<double> A(0.5, 200.0);
    std::uniform_real_distribution<double> alpha(-1.0, 2.0);
    std::uniform_real_distribution<double> b(0.5, 50.0);
    std::uniform_int_distribution<int> n(0, 6);
    std::uniform_int_distribution<int> l(1, 8);
    std::uniform_int_distribution<int> D(2, 12);
    for (int i = 0; i < 500; ++i) {
        PotentialParams const p{A(gen), alpha(gen), b(gen)};
        QuantumState const s{n(gen), l(gen), D(gen)};
        QuantumState const t{s.n, s.l - 1, s.D + 2};
        auto const a = evaluate_level(p, s);
        auto const c = evaluate_level(p, t);
        CHECK(same_bits(a.energy, c.energy));
        CHECK(same_bits(a.epsilon, c.epsilon));
    }
}

TEST_CASE("property: alpha -> 1 - alpha symmetry is exact")
{
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> A(0.5, 200.0);
    std::uniform_real_distribution<double> b(0.5, 50.0);
    std::uniform_int_distribution<int> n(0, 6);
    std::uniform_int_distribution<int> l(0, 6);
    std::uniform_int_distribution<int> D(3, 10);
    for (double alpha : {0.1, 0.25, 0.75, 1.5, 2.0, -0.75}) {
        for (int i = 0; i < 100; ++i) {
            QuantumState const s{n(gen), l(gen), D(gen)};
            double const a = A(gen);
            double const bb = b(gen);
            auto const e1 = evaluate_level(PotentialParams{a, alpha, bb}, s);
            auto const e2 = evaluate_level(PotentialParams{a, 1.0 - alpha, bb}, s);
            CHECK(same_bits(e1.energy, e2.energy));
        }
    }
}

TEST_CASE("property: scaling b at fixed A")
{
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> A(5.0, 200.0);
    std::uniform_real_distribution<double> alpha(0.0, 2.0);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    for (int i = 0; i < 300; ++i) {
        PotentialParams p{A(gen), alpha(gen), 3.0};
        QuantumState const s{0, 1, 3};
        auto const r1 = solve_level(p, s);
        if (!std::holds_alternative<SpectrumEntry>(r1)) {
            continue;
        }
        double const sc = scale(gen);
        PotentialParams q = p;
        q.b *= sc;
        auto const e1 = std::get<SpectrumEntry>(r1);
        auto const e2 = energy(q, s);
        CHECK(e2.epsilon == e1.epsilon);
        CHECK(e2.energy == doctest::Approx(e1.energy / (sc * sc)).epsilon(1e-14));
    }
}

TEST_CASE("property: energy and epsilon are consistent")
{
    std::mt19937 gen(9);
    std::uniform_real_distribution<double> A(0.5, 200.0);
    std::uniform_real_distribution<double> alpha(-1.0, 2.0);
    std::uniform_real_distribution<double> b(0.5, 50.0);
    std::uniform_real_distribution<double> mu(0.2, 5.0);
    std::uniform_real_distribution<double> hbar(0.5, 2.0);
    std::uniform_int_distribution<int> n(0, 8);
    std::uniform_int_distribution<int> l(0, 6);
    std::uniform_int_distribution<int> D(3, 9);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        PotentialParams const p{A(gen), alpha(gen), b(gen), mu(gen), hbar(gen)};
        QuantumState const s{n(gen), l(gen), D(gen)};
        auto const res = solve_level(p, s);
        if (auto const* e = std::get_if<SpectrumEntry>(&res)) {
            ++checked;
            double const lhs = -2.0 * p.mu * p.b * p.b * e->energy / (p.hbar * p.hbar);
            CHECK(oracle::ulp_distance(lhs, e->epsilon * e->epsilon) <= 4);
            CHECK(e->a_param >= 0.0);
            CHECK(e->eta == (e->a_param - 1.0) / 2.0);
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("property: energies increase with n on the reference parameter sets")
{
    for (double inv_b : {0.025, 0.05, 0.075, 0.1}) {
        for (double alpha : {0.0, 0.75, 1.5}) {
            for (int D : {2, 4}) {
                for (int l = 1; l <= 4; ++l) {
                    auto const states = bound_states(table_params(alpha, inv_b), l, D);
                    for (std::size_t i = 1; i < states.size(); ++i) {
                        CHECK(states[i].energy > states[i - 1].energy);
                    }
                }
            }
        }
    }
}
