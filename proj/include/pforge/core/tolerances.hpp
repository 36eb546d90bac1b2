#pragma once

namespace pforge {

// "Within budget" slack for observed play.
inline constexpr double kTolFeas = 1e-6;
// Absolute residual allowed on LP constraint rows.
inline constexpr double kTolLp = 1e-7;
// Default bisection tolerance on the Pareto gap.
inline constexpr double kTolR = 1e-5;
// Default lower bound enforced on every multiplier lambda.
inline constexpr double kDefaultAlpha = 1e-3;
// Default Nikaido-Isoda residual accepted as an equilibrium.
inline constexpr double kTolNe = 1e-5;

}  // namespace pforge
