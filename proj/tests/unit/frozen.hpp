// Copyright 2026 The vmfbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference values produced by tests/oracles/frozen_values.py (mpmath and
// scipy, independent of the library code). Regenerate with that script.

namespace vmfbench::frozen {

inline constexpr double kDensityK2Pole = 0.32424870843767356;
inline constexpr double kMeanExcitationK2 = 0.23134263963622595;
inline constexpr double kMeanCosK2 = 0.5373147207275481;
inline constexpr double kCapFractionK50 = 0.99780346004735082;  // P(theta < 0.5) at kappa = 50

inline constexpr double kEquatorialK1 = 0.72134937312724409;
inline constexpr double kNoPriorK1 = 0.6869647145006687;
inline constexpr double kDoNothingK2 = 0.76865736036377405;
inline constexpr double kCrossoverKappa = 1.3439996727497457;
inline constexpr double kCrossoverN = 0.29904309146588748;

// Brute-force maximization over guesses for a general measurement axis.
inline constexpr double kAxisK1T06 = 0.705775092079561;
inline constexpr double kAxisK3T12 = 0.853001311921228;

// Brute-force posterior maximization for the single-qubit POVM.
struct Conditional1q {
  double kappa, theta_m, theta_tilde, fidelity;
};
inline constexpr Conditional1q kConditional1q[] = {
    {1.0, 1.5707963267948966, 0.785398175112, 0.721349373127244},
    {2.0, 2.5, 0.767522732371, 0.703288063052854},
    {0.5, 0.4, 0.259503916579, 0.716171699405183},
};

struct MeanFidelity1q {
  double kappa, fidelity;
};
inline constexpr MeanFidelity1q kMeanFidelity1q[] = {
    {0.05, 0.6668054935443901}, {0.5, 0.67996007922322579}, {1.0, 0.71372511567300528},
    {2.0, 0.79389734425581739}, {10.0, 0.95192471560422997},
};

// Direct two-dimensional quadrature of the N-qubit posterior overlap.
struct ConditionalNq {
  int n;
  double kappa, theta_m, theta_tilde, fidelity, evidence;
};
inline constexpr ConditionalNq kConditionalNq[] = {
    {3, 2.0, 1.0, 0.7, 0.674956377714410, 0.119856645946706},
    {2, 0.5, 2.0, 1.5, 0.585764922465777, 0.071277662375836},
    {5, 4.0, 2.8, 0.4, 0.147139140789131, 0.002075503631718},
};

inline constexpr double kDoNothingN3K2 = 0.54291085022735878;

// Tensor-grid brute force; the N = 3 value is trusted to about 1e-8.
inline constexpr double kMeanNqN2K1 = 0.638783976958;
inline constexpr double kMeanNqN3K3 = 0.724371633068;

}  // namespace vmfbench::frozen
