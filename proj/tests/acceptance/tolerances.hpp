#pragma once

// Limits of the acceptance criteria, verbatim.
namespace gflap::acceptance::tol {

inline constexpr long kSuiteSamples = 100000;
inline constexpr double kSuiteRtol = 1e-10;
inline constexpr double kSuiteSeconds = 30.0;

inline constexpr int kConjugateGrid = 200;
inline constexpr double kConjugateGap = 1e-8;
inline constexpr double kConjugateClosedForm = 1e-8;

inline constexpr double kProfileResidual = 1e-3;
inline constexpr double kProfileI1 = 1e-6;
inline constexpr double kProfileOrderRel = 0.25;
inline constexpr double kProfileSeconds = 120.0;

inline constexpr int kBumpPoints = 100;

inline constexpr double kGradientFd = 1e-5;
inline constexpr double kCrossImpl = 1e-6;
inline constexpr double kUniquenessFactor = 10.0;  // times grad_tol

inline constexpr double kLinfStability = 0.05;
inline constexpr double kTorsionSeconds = 600.0;

inline constexpr double kBoundaryStability = 0.10;
inline constexpr double kHolderSlack = 0.05;
inline constexpr double kHolderStability = 0.15;

inline constexpr double kScalingEllipticity = 1e-8;

inline constexpr int kExteriorPairs = 20;
inline constexpr double kExteriorIdentity = 1e-4;

inline constexpr double kResidualStability = 0.10;

}  // namespace gflap::acceptance::tol
