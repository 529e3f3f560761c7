#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace entosc {

/// Slow (symmetric, in-phase) and fast (antisymmetric) normal modes.
enum class ModeIndex { Plus, Minus };

/// Single-excitation Bell-like states (|0+ 1-> +/- |1+ 0->)/sqrt(2).
enum class BellState { PsiPlus, PsiMinus };

enum class OscillatorIndex { One, Two };

inline const char* to_string(BellState s) { return s == BellState::PsiPlus ? "psi-plus" : "psi-minus"; }
inline const char* to_string(ModeIndex m) { return m == ModeIndex::Plus ? "+" : "-"; }
inline int to_int(OscillatorIndex o) { return o == OscillatorIndex::One ? 1 : 2; }

/// Two identical oscillators of angular frequency `omega` with position-position
/// coupling of strength `coupling_ratio * omega`. Natural units, hbar = 1.
template <typename Scalar = double>
struct SystemParams {
  Scalar omega{1};
  Scalar coupling_ratio{0};

  SystemParams() = default;
  SystemParams(Scalar omega_, Scalar coupling_ratio_) : omega(omega_), coupling_ratio(coupling_ratio_) {
    validate();
  }

  void validate() const {
    if (!(omega > Scalar(0)) || !std::isfinite(static_cast<double>(omega)))
      throw std::invalid_argument("omega must be finite and > 0");
    if (!(coupling_ratio >= Scalar(0)) || !std::isfinite(static_cast<double>(coupling_ratio)))
      throw std::invalid_argument("coupling ratio must be finite and >= 0");
  }

  /// Omega, the absolute coupling frequency.
  Scalar coupling_frequency() const { return coupling_ratio * omega; }
};

using Params = SystemParams<double>;

/// Ratio of the fast to the slow normal-mode frequency, sqrt(1 + 2 g^2).
template <typename Scalar>
Scalar eta(const SystemParams<Scalar>& params) {
  using std::sqrt;
  const Scalar g = params.coupling_ratio;
  return sqrt(Scalar(1) + Scalar(2) * g * g);
}

template <typename Scalar>
Scalar mode_frequency(const SystemParams<Scalar>& params, ModeIndex mode) {
  return mode == ModeIndex::Plus ? params.omega : eta(params) * params.omega;
}

/// Signed beat frequency (1 - eta) omega of the entangled-state envelopes; never positive.
template <typename Scalar>
Scalar beat_frequency(const SystemParams<Scalar>& params) {
  return mode_frequency(params, ModeIndex::Plus) - mode_frequency(params, ModeIndex::Minus);
}

}  // namespace entosc
