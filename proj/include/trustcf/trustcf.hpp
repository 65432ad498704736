// Copyright 2026 The trustcf Authors
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

#include "trustcf/dataset.hpp"
#include "trustcf/dense_oracle.hpp"
#include "trustcf/errors.hpp"
#include "trustcf/evaluation.hpp"
#include "trustcf/katz.hpp"
#include "trustcf/metrics.hpp"
#include "trustcf/parallel.hpp"
#include "trustcf/ratings.hpp"
#include "trustcf/recommender.hpp"
#include "trustcf/serialization.hpp"
#include "trustcf/sparse_matrix.hpp"
#include "trustcf/spectral.hpp"
#include "trustcf/trust_graph.hpp"
