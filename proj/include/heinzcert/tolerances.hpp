#pragma once

namespace heinzcert {

// Relative tolerances. Every comparison scales them by max(1, magnitude).
inline constexpr double kHermitianTol = 1e-10;  // accepted input asymmetry
inline constexpr double kPsdTol = 1e-9;         // kernel is_psd / eigenvalue clamp
inline constexpr double kReconTol = 1e-9;       // eigendecomposition reconstruction
inline constexpr double kScalarTol = 1e-12;     // scalar registry links
inline constexpr double kOperatorTol = 1e-8;    // Loewner gaps in randomized runs
inline constexpr double kNormTol = 1e-8;        // Hilbert-Schmidt norm links
inline constexpr double kEigenbasisTol = 1e-10; // direct vs eigenbasis-summation agreement

}  // namespace heinzcert
