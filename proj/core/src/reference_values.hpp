#pragma once

// Published values the scenarios are compared against, and the grids that
// define each exhibit.

#include <array>

namespace caft {

struct ReferenceCell {
  double mean, lo, hi;
};

struct Table1Row {
  ReferenceCell theta_m;
  ReferenceCell cox_hr;
};

// Order: Gamma 0.5, 1, 2; inverse Gaussian 0.5, 1, 2.
inline constexpr std::array<Table1Row, 6> kTable1Down = {{
    {{0.692, 0.690, 0.694}, {0.471, 0.461, 0.482}},
    {{0.694, 0.692, 0.696}, {0.574, 0.554, 0.594}},
    {{0.692, 0.689, 0.696}, {0.689, 0.658, 0.722}},
    {{0.693, 0.691, 0.695}, {0.419, 0.413, 0.426}},
    {{0.693, 0.691, 0.695}, {0.458, 0.448, 0.468}},
    {{0.694, 0.691, 0.696}, {0.494, 0.482, 0.507}},
}};

inline constexpr std::array<Table1Row, 6> kTable1Up = {{
    {{1.437, 1.433, 1.441}, {2.102, 2.053, 2.151}},
    {{1.444, 1.439, 1.449}, {1.746, 1.687, 1.808}},
    {{1.445, 1.438, 1.452}, {1.451, 1.386, 1.520}},
    {{1.440, 1.436, 1.444}, {2.372, 2.335, 2.411}},
    {{1.443, 1.439, 1.447}, {2.189, 2.144, 2.236}},
    {{1.440, 1.436, 1.444}, {2.022, 1.971, 2.075}},
}};

inline constexpr std::array<double, 5> kFig1FollowUpMultiples = {1, 2, 3, 5, 8};
inline constexpr std::array<double, 3> kFig1CensoringMeans = {50, 100, 200};

inline constexpr std::array<double, 3> kFig3EffectVariances = {0.5, 1.0, 2.0};
inline constexpr std::array<double, 3> kAppendixLevels = {0.0, 0.25, 0.45};

// E[T0]/E[T1] and exp(E log T0 - E log T1) as printed, per row in the
// order: homogeneous Gamma 0.5, 1, 2, IG 0.5, 1, 2; BHN Weibull; BHN
// mixture; Gamma U1 variance 0.5, 1, 2.
struct SuppReference {
  double mean_ratio, log_contrast;
};

inline constexpr std::array<SuppReference, 11> kSuppReferenceDown = {{
    {0.693, 0.693}, {0.693, 0.693}, {0.693, 0.693}, {0.693, 0.693}, {0.693, 0.693}, {0.693, 0.693},
    {0.385, 0.001}, {0.385, 0.000}, {0.023, 0.000}, {0.000, 0.000}, {0.000, 0.000},
}};

inline constexpr std::array<SuppReference, 11> kSuppReferenceUp = {{
    {1.442, 1.442}, {1.442, 1.442}, {1.442, 1.442}, {1.442, 1.442}, {1.442, 1.442}, {1.442, 1.442},
    {1.090, 1.477}, {1.090, 1.572}, {1.096, 1.513}, {0.750, 0.206}, {0.128, 0.000},
}};

struct MixtureComponent {
  double weight, factor;
};
inline constexpr std::array<MixtureComponent, 2> kCaseMixture = {{{0.5, 0.9}, {0.5, 0.45}}};

}  // namespace caft
