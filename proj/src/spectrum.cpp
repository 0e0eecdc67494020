#include "mrspec/spectrum.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace mrspec {

namespace {

std::string unbound_message(QuantumState const& s, double epsilon)
{
    std::ostringstream msg;
    msg << "state (n=" << s.n << ", l=" << s.l << ", D=" << s.D
        << ") is not bound: epsilon = " << epsilon << " <= 0";
    return msg.str();
}

constexpr std::string_view kLetters = "spdfgh";

} // namespace

unbound_error::unbound_error(QuantumState state, double epsilon)
  : std::runtime_error(unbound_message(state, epsilon))
  , state_(state)
  , epsilon_(epsilon)
{
}

double shape_parameter(double alpha, QuantumState const& state)
{
    state.validate();
    double const s = 1.0 - 2.0 * alpha;
    double const q = state.q();
    double const radicand = s * s + (q * q - 1.0);
    if (radicand < 0.0) {
        std::ostringstream msg;
        msg << "shape parameter undefined for alpha=" << alpha << ", l=" << state.l
            << ", D=" << state.D << ": (1-2alpha)^2 + (D+2l-2)^2 - 1 = " << radicand << " < 0";
        throw domain_error(msg.str());
    }
    return std::sqrt(radicand);
}

double shape_parameter(PotentialParams const& params, QuantumState const& state)
{
    return shape_parameter(params.alpha, state);
}

NuLevel evaluate_level(PotentialParams const& params, QuantumState const& state)
{
    params.validate();
    double const a = shape_parameter(params, state);
    double const eta = 0.5 * (a - 1.0);
    double const n1 = state.n + 1.0;
    double const q = state.q();
    // Bracket of the energy formula; negative for bound states.
    double const bracket =
        4.0 * n1 * n1 + q * q + 4.0 * (2.0 * state.n + 1.0) * eta - 4.0 * params.A - 1.0;
    double const denom = n1 + eta;
    double const epsilon = -bracket / (8.0 * denom);
    double const ratio = bracket / (2.0 * denom);
    double const energy =
        -(params.hbar * params.hbar / (32.0 * params.mu * params.b * params.b)) * ratio * ratio;
    return NuLevel{a, eta, epsilon, energy};
}

SpectrumResult solve_level(PotentialParams const& params, QuantumState const& state)
{
    auto const lvl = evaluate_level(params, state);
    if (!(lvl.epsilon > 0.0)) {
        return Unbound{state, lvl.epsilon};
    }
    return SpectrumEntry{state, lvl.energy, lvl.a_param, lvl.eta, lvl.epsilon};
}

SpectrumEntry energy(PotentialParams const& params, QuantumState const& state)
{
    auto res = solve_level(params, state);
    if (auto const* u = std::get_if<Unbound>(&res)) {
        throw unbound_error(u->state, u->epsilon);
    }
    return std::get<SpectrumEntry>(res);
}

std::vector<SpectrumEntry> bound_states(PotentialParams const& params, int l, int D, int n_max)
{
    std::vector<SpectrumEntry> out;
    for (int n = 0; n <= n_max; ++n) {
        auto res = solve_level(params, QuantumState{n, l, D});
        if (std::holds_alternative<Unbound>(res)) {
            break;
        }
        out.push_back(std::get<SpectrumEntry>(res));
    }
    return out;
}

double critical_coupling(QuantumState const& state, double alpha)
{
    double const a = shape_parameter(alpha, state);
    double const eta = 0.5 * (a - 1.0);
    double const q = state.q();
    double const t = state.n + 1.0 + eta;
    return t * t - eta * (eta + 1.0) + (q * q) / 4.0 - 0.25;
}

std::vector<QuantumState> degenerate_partners(QuantumState const& state, int d_min, int d_max)
{
    state.validate();
    if (d_min < 2 || d_max < d_min) {
        std::ostringstream msg;
        msg << "invalid dimension range [" << d_min << ", " << d_max << "]";
        throw std::invalid_argument(msg.str());
    }
    int const total = state.D + 2 * state.l;
    std::vector<QuantumState> out;
    for (int d = d_min; d <= d_max; ++d) {
        int const twice_l = total - d;
        if (twice_l >= 0 && twice_l % 2 == 0) {
            out.push_back(QuantumState{state.n, twice_l / 2, d});
        }
    }
    return out;
}

int hulthen_principal(QuantumState const& state)
{
    return 2 * state.n + state.D + 2 * state.l - 1;
}

double hulthen_energy(QuantumState const& state, double A, double b, Units const& units)
{
    state.validate();
    if (!(b > 0.0)) {
        throw domain_error("hulthen_energy: b must be positive");
    }
    double const N = hulthen_principal(state);
    double const gap = 4.0 * A - N * N;
    if (!(gap > 0.0)) {
        // epsilon = (4A - N^2) / (4N)
        throw unbound_error(state, gap / (4.0 * N));
    }
    return -units.hbar * units.hbar * gap * gap / (32.0 * units.mu * b * b * N * N);
}

double screened_coulomb_coupling(double Z, double b, Units const& units)
{
    return 2.0 * units.mu * Z * units.e2 * b / (units.hbar * units.hbar);
}

double screened_coulomb_energy(QuantumState const& state, double Z, double delta,
                               Units const& units)
{
    state.validate();
    if (!(Z > 0.0) || !(delta > 0.0)) {
        throw domain_error("screened_coulomb_energy: Z and delta must be positive");
    }
    double const N = hulthen_principal(state);
    double const Ze2 = Z * units.e2;
    double const h2 = units.hbar * units.hbar;
    double const bracket = 1.0 / N - h2 * delta * N / (8.0 * Ze2 * units.mu);
    if (!(bracket > 0.0)) {
        throw unbound_error(state, 2.0 * units.mu * Ze2 / (h2 * delta) * bracket);
    }
    return -2.0 * units.mu * Ze2 * Ze2 / h2 * bracket * bracket;
}

double coulomb_limit_energy(QuantumState const& state, double Z, Units const& units)
{
    state.validate();
    if (!(Z > 0.0)) {
        throw domain_error("coulomb_limit_energy: Z must be positive");
    }
    double const h2 = units.hbar * units.hbar;
    double const a0 = h2 / (units.mu * units.e2);
    double const eps0 = Z * Z * h2 / (2.0 * units.mu * a0 * a0);
    double const N = hulthen_principal(state);
    return -4.0 * eps0 / (N * N);
}

QuantumState parse_spectroscopic(std::string_view label, int D)
{
    auto fail = [&](char const* why) {
        throw parse_error("malformed state label '" + std::string(label) + "': " + why);
    };
    if (label.size() < 2) {
        fail("expected <N><letter>, e.g. 2p");
    }
    char const letter = static_cast<char>(std::tolower(static_cast<unsigned char>(label.back())));
    auto const pos = kLetters.find(letter);
    if (pos == std::string_view::npos) {
        fail("orbital letter must be one of s,p,d,f,g,h");
    }
    auto const digits = label.substr(0, label.size() - 1);
    int N = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), N);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        fail("principal number must be a positive integer");
    }
    int const l = static_cast<int>(pos);
    if (N <= l) {
        fail("principal number must exceed l");
    }
    QuantumState s{N - l - 1, l, D};
    s.validate();
    return s;
}

std::string spectroscopic_label(QuantumState const& state)
{
    if (state.l < static_cast<int>(kLetters.size())) {
        return std::to_string(state.n + state.l + 1) + kLetters[state.l];
    }
    return "n" + std::to_string(state.n) + "l" + std::to_string(state.l);
}

} // namespace mrspec
