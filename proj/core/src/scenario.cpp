#include "aqm/scenario.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace aqm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool consume_double(std::string_view& s, double& out) {
    s = trim(s);
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{}) return false;
    s.remove_prefix(static_cast<std::size_t>(ptr - begin));
    return true;
}

// `re`, or `re + imi` / `re - imi` (whitespace optional around the sign).
bool parse_complex(std::string_view s, Complex& out) {
    double re = 0.0;
    if (!consume_double(s, re)) return false;
    s = trim(s);
    if (s.empty()) {
        out = Complex(re, 0.0);
        return true;
    }
    double sign = 1.0;
    if (s.front() == '+') {
        s.remove_prefix(1);
    } else if (s.front() == '-') {
        sign = -1.0;
        s.remove_prefix(1);
    } else {
        return false;
    }
    double im = 0.0;
    if (!consume_double(s, im)) return false;
    s = trim(s);
    if (s.size() != 1 || s.front() != 'i') return false;
    out = Complex(re, sign * im);
    return true;
}

bool parse_long(std::string_view s, long& out) {
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_real(std::string_view s, double& out) {
    if (!consume_double(s, out)) return false;
    return trim(s).empty();
}

}  // namespace

ScenarioError::ScenarioError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    EnvironmentSpec env;
    bool has_env = false;
    bool has_a1 = false;
    bool has_a2 = false;
    int amplitude_line = 0;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ScenarioError("expected `key = value`", line_no);
        }
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ScenarioError("empty key or value", line_no);
        }

        auto fail = [&](const std::string& what) -> ScenarioError {
            return ScenarioError("invalid value for `" + std::string(key) + "`: " + what, line_no);
        };

        if (key == "mode") {
            if (value == "pure") s.mode = Mode::pure;
            else if (value == "mixed") s.mode = Mode::mixed;
            else throw fail("expected pure or mixed");
        } else if (key == "a1" || key == "a2") {
            Complex c;
            if (!parse_complex(value, c)) throw fail("expected `re` or `re + imi`");
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw fail("amplitude must be finite");
            }
            (key == "a1" ? s.a1 : s.a2) = c;
            (key == "a1" ? has_a1 : has_a2) = true;
            amplitude_line = line_no;
        } else if (key == "pointer") {
            std::array<double, 3> q{};
            std::string_view rest = value;
            for (int k = 0; k < 3; ++k) {
                if (!consume_double(rest, q[static_cast<std::size_t>(k)])) {
                    throw fail("expected three comma-separated eigenvalues");
                }
                rest = trim(rest);
                if (k < 2) {
                    if (rest.empty() || rest.front() != ',') {
                        throw fail("expected three comma-separated eigenvalues");
                    }
                    rest.remove_prefix(1);
                }
            }
            if (!trim(rest).empty()) throw fail("trailing characters");
            s.pointer_eigenvalues = q;
        } else if (key == "samples") {
            long n = 0;
            if (!parse_long(value, n) || n < 1) throw fail("expected a positive integer");
            s.samples = n;
        } else if (key == "seed") {
            std::uint64_t v = 0;
            if (!parse_u64(value, v)) throw fail("expected an unsigned 64-bit integer");
            s.seed = v;
        } else if (key == "evolution") {
            if (value == "map") s.evolution = EvolutionKind::map;
            else if (value == "hamiltonian") s.evolution = EvolutionKind::hamiltonian;
            else throw fail("expected map or hamiltonian");
        } else if (key == "t0" || key == "t1" || key == "dt") {
            double v = 0.0;
            if (!parse_real(value, v)) throw fail("expected a real number");
            if (key == "t0") s.t0 = v;
            else if (key == "t1") s.t1 = v;
            else s.dt = v;
        } else if (key == "command") {
            if (value == "compare") s.command = Command::compare;
            else if (value == "simulate") s.command = Command::simulate;
            else if (value == "restrict") s.command = Command::restrict;
            else if (value == "wigner") s.command = Command::wigner;
            else if (value == "triple") s.command = Command::triple;
            else throw fail("expected compare, simulate, restrict, wigner or triple");
        } else if (key == "env_dim") {
            long v = 0;
            if (!parse_long(value, v) || v < 2) throw fail("expected an integer >= 2");
            env.dim = static_cast<int>(v);
            has_env = true;
        } else if (key == "env_overlap") {
            double v = 0.0;
            if (!parse_real(value, v) || v < 0.0 || v > 1.0) throw fail("expected kappa in [0, 1]");
            env.overlap = v;
            has_env = true;
        } else if (key == "env_phase") {
            double v = 0.0;
            if (!parse_real(value, v)) throw fail("expected a real number");
            env.phase = v;
            has_env = true;
        } else {
            throw ScenarioError("unknown key `" + std::string(key) + "`", line_no);
        }
    }

    if (!has_a1 || !has_a2) {
        throw ScenarioError("a1 and a2 are required");
    }
    double n2 = std::norm(s.a1) + std::norm(s.a2);
    if (!(std::abs(n2 - 1.0) <= 1e-6)) {  // negated form also rejects non-finite norms
        throw ScenarioError("|a1|^2 + |a2|^2 must equal 1 within 1e-6", amplitude_line);
    }
    if (s.evolution == EvolutionKind::hamiltonian) {
        if (!(s.t1 > s.t0)) throw ScenarioError("hamiltonian evolution requires t1 > t0");
        if (!(s.dt > 0.0)) throw ScenarioError("hamiltonian evolution requires dt > 0");
    }
    if (has_env) {
        s.environment = env;
    }
    return s;
}

std::string to_string(Mode m) {
    return m == Mode::pure ? "pure" : "mixed";
}

std::string to_string(Command c) {
    switch (c) {
        case Command::compare: return "compare";
        case Command::simulate: return "simulate";
        case Command::restrict: return "restrict";
        case Command::wigner: return "wigner";
        case Command::triple: return "triple";
    }
    return "?";
}

std::string to_string(EvolutionKind e) {
    return e == EvolutionKind::map ? "map" : "hamiltonian";
}

}  // namespace aqm
