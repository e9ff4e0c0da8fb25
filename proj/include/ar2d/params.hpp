// Copyright 2026 The ar2d Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AR2D_PARAMS_HPP_
#define AR2D_PARAMS_HPP_

#include <string>
#include <utility>

#include "ar2d/field.hpp"

namespace ar2d {

/// AR coefficient triple of X_{k,l} = alpha X_{k-1,l} + beta X_{k,l-1}
///                                  + gamma X_{k-1,l-1} + eps_{k,l}.
struct Params {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Strata of the stability tetrahedron with vertices
/// (1,1,-1), (1,-1,1), (-1,1,1), (-1,-1,-1).
enum class RegionTag {
  kStable,
  kFacePlus,
  kFaceMinus,
  kEdge1,
  kEdge2,
  kEdge3,
  kVertex,
  kOutside,
};

std::string region_name(RegionTag tag);

struct RegionClass {
  RegionTag tag = RegionTag::kOutside;
  double tolerance = 0.0;
};

enum class SitePhase { kNone, kCheckerboard, kRowFlip, kColFlip };

/// Sign change (d1,d2,d3) of the coefficient axes together with the
/// lattice phase that transports fields between the two parameterizations.
/// Every flip is an involution.
struct SignFlip {
  int d1 = 1;
  int d2 = 1;
  int d3 = 1;
  SitePhase phase = SitePhase::kNone;

  bool identity() const { return d1 == 1 && d2 == 1 && d3 == 1; }
};

/// Params sign change under a flip: (alpha,beta,gamma) -> (d1 a, d2 b, d3 g).
Params apply_flip(const Params& p, const SignFlip& flip);

/// Phase factor of a flip at lattice site (k,l): one of 1, (-1)^{k+l},
/// (-1)^k, (-1)^l.
double flip_phase(const SignFlip& flip, int k, int l);

/// Classify a parameter triple against the tetrahedron and its boundary
/// strata, testing stratum equalities to the given tolerance. Total: any
/// triple gets exactly one tag.
RegionClass classify(const Params& p, double tol = 1e-12);

/// Map to the representative with alpha >= 0 and beta >= 0, returning the
/// flip that recovers the input (the flip is its own inverse).
std::pair<Params, SignFlip> canonicalize(const Params& p);

/// Multiply every field entry by the flip's site phase. Involution.
Field apply_flip(const Field& field, const SignFlip& flip);

/// Multiply every innovation entry by the flip's site phase.
NoiseMatrix apply_flip(const NoiseMatrix& eps, const SignFlip& flip);

}  // namespace ar2d

#endif  // AR2D_PARAMS_HPP_
