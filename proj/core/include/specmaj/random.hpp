/*
 * Copyright 2026 the specmaj authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "specmaj/types.hpp"

namespace specmaj {

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the R
/// diagonal phases absorbed into Q.  Identical seeds give identical matrices.
Unitary random_unitary(int n, std::uint64_t seed);
Unitary random_unitary(int n, std::mt19937_64& rng);

/// Haar unitary times a diagonal of uniform [0,1] singular values times an
/// independent Haar unitary.
Contraction random_contraction(int n, std::uint64_t seed);
Contraction random_contraction(int n, std::mt19937_64& rng);

/// GUE-style Hermitian sample, or U diag(spectrum) U* with Haar U when a
/// spectrum is pinned.
HermitianMatrix random_hermitian(int n, std::uint64_t seed,
                                 const std::optional<Spectrum>& spectrum = std::nullopt);
HermitianMatrix random_hermitian(int n, std::mt19937_64& rng,
                                 const std::optional<Spectrum>& spectrum = std::nullopt);

/// Random psd matrix (Hermitian sample with spectrum folded to |lambda|).
PsdMatrix random_psd(int n, std::uint64_t seed);
PsdMatrix random_psd(int n, std::mt19937_64& rng);

/// Derives a stream-local seed; used to give parallel restarts and batch
/// items independent deterministic generators.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace specmaj
