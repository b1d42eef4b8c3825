#pragma once

#include "aqm/dynamics.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

// Declarative scenario files: line-oriented `key = value` with `#` comments.
// Complex values are written `re + imi` (e.g. `0.6 + 0i`); plain reals are
// accepted. Unknown keys and invariant violations are errors with a line
// number.

namespace aqm {

enum class Mode { pure, mixed };
enum class Command { compare, simulate, restrict, wigner, triple };
enum class EvolutionKind { map, hamiltonian };

struct EnvironmentSpec {
    int dim = 2;
    double overlap = 0.0;  // kappa = |<E2|E1>|, in [0, 1]
    double phase = 0.0;
};

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& message, int line = 0);
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

struct Scenario {
    Mode mode = Mode::pure;
    Complex a1{0.0, 0.0};
    Complex a2{0.0, 0.0};
    std::array<double, 3> pointer_eigenvalues{0.0, 1.0, -1.0};
    std::optional<EnvironmentSpec> environment;
    long samples = 100000;
    std::uint64_t seed = 1;
    EvolutionKind evolution = EvolutionKind::map;
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 1e-3;
    Command command = Command::compare;

    [[nodiscard]] Amplitudes amplitudes() const { return Amplitudes{a1, a2}.normalized(); }
    [[nodiscard]] MeasurementModel model() const {
        return MeasurementModel::standard(pointer_eigenvalues);
    }
    [[nodiscard]] EnvironmentSpec environment_or_default() const {
        return environment.value_or(EnvironmentSpec{});
    }
};

/// Parses a scenario document. Missing optional keys take the defaults above;
/// a1/a2 are required. Amplitudes are renormalized when the norm is within
/// 1e-6 of 1 and rejected beyond that.
Scenario parse_scenario(std::string_view text);

std::string to_string(Mode m);
std::string to_string(Command c);
std::string to_string(EvolutionKind e);

}  // namespace aqm
