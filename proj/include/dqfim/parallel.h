// Copyright 2026 The dqfim Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>

namespace dqfim {

/// splitmix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic child seed from a master seed and a path of indices.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Worker count from DQFIM_WORKERS, else hardware concurrency (at least 1).
int default_workers();

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Exceptions from any
/// task are rethrown on the calling thread after all workers stop (the one from
/// the lowest index wins, so the result does not depend on scheduling).
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)> &fn);

} // namespace dqfim
