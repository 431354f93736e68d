#pragma once

#include <cstddef>

#include "emission/transition.hpp"
#include "emission/wwa_core.hpp"

namespace emission {

/// Energies in units of hbar*omega0; total is the sum of the other three.
struct EnergyBreakdown {
  double atom = 0.0;
  double field = 0.0;
  double interaction = 0.0;
  double total = 0.0;

  static EnergyBreakdown from_parts(double atom, double field, double interaction) {
    return {atom, field, interaction, atom + field + interaction};
  }
};

/// z-components in units of hbar.
struct AngularMomentumBreakdown {
  double atom_z = 0.0;
  double field_z = 0.0;
  double spin_z = 0.0;
  double orbital_z = 0.0;
  double initial_atom_z = 0.0;
};

/// Which delta_{H,G} coefficient the closed-form field angular momentum uses.
/// Conservation is 1/[H(H+1)]; AsPrinted is 1/[H(H+1)(2H+1)], kept for
/// comparison only (it does not conserve angular momentum).
enum class HgCoefficient { Conservation, AsPrinted };

/// Atom, field and interaction energies. Pure scheme: closed forms
/// (e^{-2 tau}, 1 - e^{-2 tau}, 0). Modified scheme: frequency quadrature of
/// the truncated Lorentzian; the interaction is -(1/pi ratio) int delta |K|^2.
EnergyBreakdown energies(const TransitionSpec& spec, const InitialState& state, double tau,
                         const WWAScheme& scheme = WWAScheme::pure());

/// Fraction of the excited-state J_z left in the ground state after one
/// emission: sum_mG mG |<G mG; 1 q|H mH>|^2 = bracket * mH.
double atom_bracket(HalfIntegerJ H, HalfIntegerJ G);

/// Fraction of the excited-state J_z carried by the photon.
double field_bracket(HalfIntegerJ H, HalfIntegerJ G,
                     HgCoefficient coefficient = HgCoefficient::Conservation);

/// e^{-2 tau} M0 + (1 - e^{-2 tau}) atom_bracket M0, M0 = sum m |c_m(0)|^2.
double atom_angmom_z(const TransitionSpec& spec, const InitialState& state, double tau);

/// (1 - e^{-2 tau}) field_bracket M0.
double field_angmom_z_closed(const TransitionSpec& spec, const InitialState& state, double tau,
                             HgCoefficient coefficient = HgCoefficient::Conservation);

struct AngularQuadratureOptions {
  std::size_t theta_nodes = 64;  // Gauss-Legendre in cos(theta_k)
  std::size_t phi_nodes = 64;    // periodic trapezoid in phi_k
  bool check_convergence = true; // repeat at doubled node counts
  double tolerance = 1e-8;
};

/// Solid-angle integrals of the one-photon sector, summed over mG and
/// normalized per emitted photon (so `norm` is 1 for a normalized state).
/// The field angular momentum operator splits into a divergence term,
///   Im( c_phi* [d_theta(sin th c_theta) + d_phi c_phi] ),
/// and a gradient term,
///   -Im( -c_theta* d_phi c_theta + c_phi* d_theta(sin th c_theta) ),
/// whose solid-angle integral vanishes for these dipole amplitudes.
struct PhotonAngularIntegrals {
  double norm = 0.0;
  double divergence = 0.0;
  double gradient = 0.0;
  double spin = 0.0;     // 2 Im(c_theta* c_phi) cos(theta_k)
  double orbital = 0.0;  // sum_j Im(C_j* d_phi C_j), Cartesian components
  double total() const { return divergence + gradient; }
};

/// Evaluates the integrals at the requested node counts, without a
/// convergence check.
PhotonAngularIntegrals photon_angular_integrals(const TransitionSpec& spec,
                                                const InitialState& state,
                                                std::size_t theta_nodes, std::size_t phi_nodes);

/// As above with the node-doubling check; throws ConvergenceError when any
/// integral moves by more than options.tolerance.
PhotonAngularIntegrals photon_angular_integrals(const TransitionSpec& spec,
                                                const InitialState& state,
                                                const AngularQuadratureOptions& options = {});

/// Field J_z from angular quadrature of the full operator, times the
/// universal time factor wwa_line_integral(tau) / pi.
double field_angmom_z_numeric(const TransitionSpec& spec, const InitialState& state, double tau,
                              const AngularQuadratureOptions& options = {});

struct SpinOrbital {
  double spin = 0.0;
  double orbital = 0.0;
};

/// Spin and orbital parts of the field J_z by angular quadrature.
SpinOrbital spin_orbital_angmom_z(const TransitionSpec& spec, const InitialState& state,
                                  double tau, const AngularQuadratureOptions& options = {});

/// Everything at once; field_z is the numeric value.
AngularMomentumBreakdown angular_momenta(const TransitionSpec& spec, const InitialState& state,
                                         double tau, const AngularQuadratureOptions& options = {});

}  // namespace emission
