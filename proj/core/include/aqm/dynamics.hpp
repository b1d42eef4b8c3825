#pragma once

#include "aqm/linalg.hpp"

#include <array>
#include <vector>

// Premeasurement unitaries, Liouville evolution, interference-term
// observables, and the system-observer-environment triple state.

namespace aqm {

/// Incoming amplitudes (a1, a2) of the measured two-level state.
struct Amplitudes {
    Complex a1;
    Complex a2;

    [[nodiscard]] double norm_sq() const { return std::norm(a1) + std::norm(a2); }
    /// Renormalizes when |norm^2 - 1| <= band, throws beyond it.
    [[nodiscard]] Amplitudes normalized(double band = 1e-6) const;
};

/// The measured-system/observer pair: pointer observable on O, measured
/// observable on S, and the premeasurement unitary correlating them.
class MeasurementModel {
public:
    MeasurementModel(int s_dim, int o_dim, Operator pointer, Operator s_basis_observable,
                     Operator premeasurement);

    /// Two-level system, three-level observer, S_z = diag(1,-1) and pointer
    /// diag(q0, q1, q2); default pointer eigenvalues (0, +1, -1) keep the
    /// measurement unbiased (pointer mean = incoming S_z mean).
    static MeasurementModel standard(std::array<double, 3> pointer_eigenvalues = {0.0, 1.0, -1.0});

    [[nodiscard]] int s_dim() const { return s_dim_; }
    [[nodiscard]] int o_dim() const { return o_dim_; }
    [[nodiscard]] const Operator& pointer() const { return pointer_; }
    [[nodiscard]] const Operator& s_basis_observable() const { return s_obs_; }
    [[nodiscard]] const Operator& premeasurement() const { return premeasurement_; }

    [[nodiscard]] Factorization composite_factorization() const;
    /// I_S (x) pointer on the composite space.
    [[nodiscard]] Operator pointer_lifted() const;
    /// Observable on S lifted as obs (x) I_O.
    [[nodiscard]] Operator s_observable_lifted(const Operator& obs) const;

private:
    int s_dim_;
    int o_dim_;
    Operator pointer_;
    Operator s_obs_;
    Operator premeasurement_;
};

/// Permutation unitary |s_i, O_0> -> |s_i, O_i| for i = 1..s_dim, completed by
/// the inverse assignments |s_i, O_i> -> |s_i, O_0> and identity elsewhere.
/// Requires o_dim >= s_dim + 1.
Operator build_premeasurement(int s_dim, int o_dim);

/// Fixed-step fourth-order integration of d(rho)/dt = -i [h, rho] (hbar = 1).
/// Trace and Hermiticity are preserved within 1e-9 per unit time; positivity
/// error is O(dt^4). The exact propagator below is the reference.
DensityState evolve_liouville(const DensityState& rho, const Operator& h, double t, double dt);

/// rho -> exp(-i h t) rho exp(+i h t) through the spectral decomposition of h.
DensityState evolve_exact(const DensityState& rho, const Operator& h, double t);

/// Interference-term observable |s_i><s_j| (x) |O_i><O_j| + adjoint on the
/// composite space; nonzero expectation certifies S-O coherence. i != j.
Operator interference_observable(const MeasurementModel& model, int i, int j);

/// Triple superposition sum_i a_i |s_i>|O_i>|E_i> on S(x)O(x)E. Environment
/// vectors must be unit norm and one per outcome. Tracing out E leaves S-O
/// coherence of magnitude |a1 a2 <E2|E1>|.
PureState decohere_triple(const Amplitudes& a, const std::vector<Vector>& env);

/// Environment pair with overlap <E2|E1> = kappa * exp(i phase), kappa in [0,1].
std::vector<Vector> environment_pair(int dim, double kappa, double phase = 0.0);

/// Outcome mixture sum_i |a_i|^2 |s_i O_i><s_i O_i|.
DensityState mixed_final_state(const Amplitudes& a, const MeasurementModel& model);

/// (a1|s1> + a2|s2>) (x) |O_0>.
PureState incoming_state(const Amplitudes& a, const MeasurementModel& model);

/// Incoming mixture (sum_i |a_i|^2 |s_i><s_i|) (x) |O_0><O_0|.
DensityState incoming_mixture(const Amplitudes& a, const MeasurementModel& model);

/// Premeasurement applied to the incoming state: sum_i a_i |s_i>|O_i>.
PureState premeasured_state(const Amplitudes& a, const MeasurementModel& model);

/// Hermitian generator whose exponential over `duration` equals the
/// premeasurement unitary (spectral logarithm of the involution).
Operator premeasurement_hamiltonian(const MeasurementModel& model, double duration);

}  // namespace aqm
