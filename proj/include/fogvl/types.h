// Copyright 2026 The fogvl Authors.
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

#ifndef FOGVL_TYPES_H_
#define FOGVL_TYPES_H_

#include <string_view>

#include <Eigen/Dense>

namespace fogvl {

// Row-major so that a sample is a contiguous row.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class ModelKind { kLinear, kLogistic };

std::string_view to_string(ModelKind kind);
// Accepts "linear" / "logistic"; throws ConfigError otherwise.
ModelKind parse_model_kind(std::string_view s);

}  // namespace fogvl

#endif  // FOGVL_TYPES_H_
