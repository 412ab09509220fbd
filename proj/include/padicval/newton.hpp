// Copyright 2026 The padicval Authors
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padicval/polynomial.hpp"
#include "padicval/rational.hpp"
#include "padicval/tower.hpp"

namespace padicval {

/// What is known about one coefficient's valuation: exactly zero, an exact
/// value, or only a lower bound (coefficient vanished at the working precision).
struct CoeffValuation {
  enum class Kind { zero, exact, at_least };
  Kind kind = Kind::zero;
  Rat value;

  static CoeffValuation zero() { return {Kind::zero, Rat(0)}; }
  static CoeffValuation exact(Rat v) { return {Kind::exact, std::move(v)}; }
  static CoeffValuation at_least(Rat v) { return {Kind::at_least, std::move(v)}; }
};

struct NSegment {
  Rat slope;
  long length = 0;
  friend bool operator==(const NSegment&, const NSegment&) = default;
};

struct NVertex {
  long index = 0;
  Rat value;
  friend bool operator==(const NVertex&, const NVertex&) = default;
};

struct NPolygon {
  std::vector<NVertex> vertices;
  std::vector<NSegment> segments;
  long degree = 0;
  long order_at_zero = 0;
};

/// Lower convex hull of {(i, v(a_i))} by monotone chain with exact slopes.
/// Lower-bound coefficients are left out of the hull and must lie on or above
/// it afterwards; otherwise the polygon is not determined at this precision.
inline NPolygon newton_polygon(std::span<const CoeffValuation> coeffs) {
  NPolygon np;
  std::vector<NVertex> pts;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i].kind == CoeffValuation::Kind::exact)
      pts.push_back({static_cast<long>(i), coeffs[i].value});
  if (pts.empty()) fail(ErrorCode::domain_error, "Newton polygon of the zero polynomial");
  if (coeffs.back().kind != CoeffValuation::Kind::exact)
    throw PrecisionError(ErrorCode::below_precision, "leading coefficient not determined", 0);
  np.degree = static_cast<long>(coeffs.size()) - 1;
  np.order_at_zero = pts.front().index;
  for (long i = 0; i < np.order_at_zero; ++i)
    if (coeffs[static_cast<std::size_t>(i)].kind == CoeffValuation::Kind::at_least)
      throw PrecisionError(ErrorCode::below_precision,
                           "low-order coefficient vanishes at working precision", 0);

  auto slope = [](const NVertex& a, const NVertex& b) {
    return (b.value - a.value) / Rat(b.index - a.index);
  };
  std::vector<NVertex> hull;
  for (const NVertex& pt : pts) {
    while (hull.size() >= 2 && slope(hull[hull.size() - 2], hull.back()) >= slope(hull.back(), pt))
      hull.pop_back();
    hull.push_back(pt);
  }
  for (std::size_t i = 0; i + 1 < hull.size(); ++i)
    np.segments.push_back({slope(hull[i], hull[i + 1]), hull[i + 1].index - hull[i].index});

  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].kind != CoeffValuation::Kind::at_least) continue;
    const long idx = static_cast<long>(i);
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
      if (idx < hull[s].index || idx > hull[s + 1].index) continue;
      Rat on_hull = hull[s].value + np.segments[s].slope * Rat(idx - hull[s].index);
      if (coeffs[i].value < on_hull)
        throw PrecisionError(ErrorCode::below_precision,
                             "coefficient " + std::to_string(i) + " undetermined below the hull", 0);
    }
  }
  np.vertices = std::move(hull);
  return np;
}

inline NPolygon newton_polygon(const Poly<Rat>& f, const Integer& p) {
  std::vector<CoeffValuation> cv;
  for (const Rat& c : f.coeffs())
    cv.push_back(c.is_zero() ? CoeffValuation::zero() : CoeffValuation::exact(vp_rational(c, p).value()));
  return newton_polygon(cv);
}

inline CoeffValuation coeff_valuation(const TowerElement& c) {
  ValuationBound b = c.valuation_bound();
  return b.exact ? CoeffValuation::exact(b.value) : CoeffValuation::at_least(b.value);
}

inline NPolygon newton_polygon(const Poly<TowerElement>& f) {
  std::vector<CoeffValuation> cv;
  for (const TowerElement& c : f.coeffs()) cv.push_back(coeff_valuation(c));
  return newton_polygon(cv);
}

/// Multiset of root valuations, ascending: -slope repeated by segment length.
inline std::vector<Rat> root_valuations(const NPolygon& np) {
  std::vector<Rat> out;
  for (const NSegment& s : np.segments)
    for (long i = 0; i < s.length; ++i) out.push_back(-s.slope);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Rat> root_valuations(const Poly<Rat>& f, const Integer& p) {
  return root_valuations(newton_polygon(f, p));
}

inline std::vector<Rat> root_valuations(const Poly<TowerElement>& f) {
  return root_valuations(newton_polygon(f));
}

}  // namespace padicval
