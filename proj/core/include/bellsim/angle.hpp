// Copyright 2026 The bellsim Authors
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

#ifndef BELLSIM_ANGLE_HPP_
#define BELLSIM_ANGLE_HPP_

#include <numbers>

namespace bellsim {

// Plane angle. Degrees at every user-facing boundary, radians inside.
class Angle {
 public:
  constexpr Angle() = default;

  static constexpr Angle from_degrees(double degrees) {
    return Angle(degrees * std::numbers::pi / 180.0, degrees);
  }
  static constexpr Angle from_radians(double radians) {
    return Angle(radians, radians * 180.0 / std::numbers::pi);
  }

  constexpr double radians() const { return radians_; }
  // Exactly the value passed to from_degrees(), so reports echo user input.
  constexpr double degrees() const { return degrees_; }

  constexpr Angle operator-(Angle other) const {
    return Angle(radians_ - other.radians_, degrees_ - other.degrees_);
  }
  constexpr Angle operator+(Angle other) const {
    return Angle(radians_ + other.radians_, degrees_ + other.degrees_);
  }

 private:
  constexpr Angle(double radians, double degrees) : radians_(radians), degrees_(degrees) {}

  double radians_ = 0.0;
  double degrees_ = 0.0;
};

}  // namespace bellsim

#endif  // BELLSIM_ANGLE_HPP_
