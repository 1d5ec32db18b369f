// Copyright 2026 The fairasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

namespace fairasr {

/// Rounds half away from zero to `decimals` places.
double round_half_away(double value, int decimals);

/// A fraction shown as a percentage with one decimal, e.g. 0.25 -> "25.0%".
std::string format_percent(double fraction);

/// Fixed-point text with `decimals` places, rounding half away from zero.
std::string format_fixed(double value, int decimals);

}  // namespace fairasr
