// Copyright 2026 The bilevel-kge Authors
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


#ifndef BILEVEL_QUATERNION_HPP_
#define BILEVEL_QUATERNION_HPP_

#include <cmath>

namespace bilevel::embed {

/// a + b i + c j + d k
struct Quaternion {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion Hamilton(const Quaternion& p, const Quaternion& q) {
  return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
          p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
          p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
          p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

constexpr Quaternion Conjugate(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }

constexpr double Dot(const Quaternion& p, const Quaternion& q) {
  return p.a * q.a + p.b * q.b + p.c * q.c + p.d * q.d;
}

constexpr Quaternion operator+(const Quaternion& p, const Quaternion& q) {
  return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d};
}

constexpr Quaternion operator*(double s, const Quaternion& q) {
  return {s * q.a, s * q.b, s * q.c, s * q.d};
}

inline double Norm(const Quaternion& q) { return std::sqrt(Dot(q, q)); }

/// Norms below this are treated as zero and replaced by the identity.
inline constexpr double kMinRelationNorm = 1e-12;

inline Quaternion Normalize(const Quaternion& q) {
  const double n = Norm(q);
  if (n < kMinRelationNorm) return {1.0, 0.0, 0.0, 0.0};
  return (1.0 / n) * q;
}

}  // namespace bilevel::embed

#endif  // BILEVEL_QUATERNION_HPP_
