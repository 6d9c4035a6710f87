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

#ifndef BELLSIM_JSON_IO_HPP_
#define BELLSIM_JSON_IO_HPP_

#include <nlohmann/json.hpp>

#include "bellsim/qlin.hpp"

namespace bellsim::qlin {

// Row-major nested array: [[[re, im], ...], ...].
nlohmann::ordered_json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace bellsim::qlin

#endif  // BELLSIM_JSON_IO_HPP_
