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

#include "ar2d/params.hpp"

#include <cmath>

#include "ar2d/errors.hpp"

namespace ar2d {

std::string region_name(RegionTag tag) {
  switch (tag) {
    case RegionTag::kStable:
      return "Stable";
    case RegionTag::kFacePlus:
      return "FacePlus";
    case RegionTag::kFaceMinus:
      return "FaceMinus";
    case RegionTag::kEdge1:
      return "Edge1";
    case RegionTag::kEdge2:
      return "Edge2";
    case RegionTag::kEdge3:
      return "Edge3";
    case RegionTag::kVertex:
      return "Vertex";
    case RegionTag::kOutside:
      return "Outside";
  }
  return "Outside";
}

Params apply_flip(const Params& p, const SignFlip& flip) {
  return Params{flip.d1 * p.alpha, flip.d2 * p.beta, flip.d3 * p.gamma};
}

double flip_phase(const SignFlip& flip, int k, int l) {
  switch (flip.phase) {
    case SitePhase::kNone:
      return 1.0;
    case SitePhase::kCheckerboard:
      return ((k + l) % 2 == 0) ? 1.0 : -1.0;
    case SitePhase::kRowFlip:
      return (k % 2 == 0) ? 1.0 : -1.0;
    case SitePhase::kColFlip:
      return (l % 2 == 0) ? 1.0 : -1.0;
  }
  return 1.0;
}

namespace {

bool near(double x, double target, double tol) {
  return std::abs(x - target) <= tol;
}

bool is_vertex(const Params& p, double tol) {
  const double vs[4][3] = {
      {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, -1}};
  for (const auto& v : vs) {
    if (near(p.alpha, v[0], tol) && near(p.beta, v[1], tol) &&
        near(p.gamma, v[2], tol))
      return true;
  }
  return false;
}

}  // namespace

RegionClass classify(const Params& p, double tol) {
  if (tol < 0) throw DomainError("classify: tolerance must be nonnegative");
  const double a = p.alpha, b = p.beta, g = p.gamma;
  const double aa = std::abs(a), ab = std::abs(b), ag = std::abs(g);

  RegionClass out;
  out.tolerance = tol;

  // Interior: strict coefficient bounds plus slack on every linear face.
  bool box = aa < 1.0 - tol && ab < 1.0 - tol && ag < 1.0 - tol;
  bool slack = (a - b - g < 1.0 - tol) && (-a + b - g < 1.0 - tol) &&
               (-a - b + g < 1.0 - tol) && (a + b + g < 1.0 - tol);
  if (box && slack) {
    out.tag = RegionTag::kStable;
    return out;
  }

  if (is_vertex(p, tol)) {
    out.tag = RegionTag::kVertex;
    return out;
  }

  // Edges: one coefficient at +-1, the doubly geometric tie on the others.
  if (ab < 1.0 - tol) {
    if ((near(a, 1.0, tol) && near(g, -b, tol)) ||
        (near(a, -1.0, tol) && near(g, b, tol))) {
      out.tag = RegionTag::kEdge1;
      return out;
    }
  }
  if (aa < 1.0 - tol) {
    if ((near(b, 1.0, tol) && near(g, -a, tol)) ||
        (near(b, -1.0, tol) && near(g, a, tol))) {
      out.tag = RegionTag::kEdge2;
      return out;
    }
    if ((near(g, 1.0, tol) && near(b, -a, tol)) ||
        (near(g, -1.0, tol) && near(b, a, tol))) {
      out.tag = RegionTag::kEdge3;
      return out;
    }
  }

  // Faces: inside the open coefficient cube, on one absolute-sum plane.
  if (aa < 1.0 - tol && ab < 1.0 - tol && ag < 1.0 - tol) {
    double prod = a * b * g;
    if (prod >= 0.0 && near(aa + ab + ag, 1.0, tol)) {
      out.tag = RegionTag::kFacePlus;
      return out;
    }
    if (prod < 0.0) {
      if (near(aa + ab - ag, 1.0, tol)) {
        out.tag = RegionTag::kFacePlus;
        return out;
      }
      if (near(aa - ab + ag, 1.0, tol) || near(-aa + ab + ag, 1.0, tol)) {
        out.tag = RegionTag::kFaceMinus;
        return out;
      }
    }
  }

  out.tag = RegionTag::kOutside;
  return out;
}

std::pair<Params, SignFlip> canonicalize(const Params& p) {
  SignFlip flip;
  bool neg_a = std::signbit(p.alpha) && p.alpha != 0.0;
  bool neg_b = std::signbit(p.beta) && p.beta != 0.0;
  if (neg_a && neg_b) {
    flip = SignFlip{-1, -1, 1, SitePhase::kCheckerboard};
  } else if (neg_a) {
    flip = SignFlip{-1, 1, -1, SitePhase::kRowFlip};
  } else if (neg_b) {
    flip = SignFlip{1, -1, -1, SitePhase::kColFlip};
  }
  return {apply_flip(p, flip), flip};
}

Field apply_flip(const Field& field, const SignFlip& flip) {
  Field out = field;
  if (flip.phase == SitePhase::kNone) return out;
  for (int k = 0; k <= field.n; ++k)
    for (int l = 0; l <= field.m; ++l)
      out.at(k, l) = flip_phase(flip, k, l) * field.at(k, l);
  return out;
}

NoiseMatrix apply_flip(const NoiseMatrix& eps, const SignFlip& flip) {
  NoiseMatrix out = eps;
  if (flip.phase == SitePhase::kNone) return out;
  for (int k = 1; k <= eps.n; ++k)
    for (int l = 1; l <= eps.m; ++l)
      out.at(k, l) = flip_phase(flip, k, l) * eps.at(k, l);
  return out;
}

}  // namespace ar2d
