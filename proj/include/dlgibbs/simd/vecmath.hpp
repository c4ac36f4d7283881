/* Copyright 2026 The dlgibbs Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Data-parallel arithmetic used by the samplers and diagnostics.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 variant. The active variant is picked once at startup
// from CPUID and can be forced with DLGIBBS_ISA=scalar|avx2.
//
// All variants are bit-identical: elementwise kernels use the same IEEE
// operations in the same order, and reductions accumulate in four
// interleaved lanes combined as (l0 + l2) + (l1 + l3), with the tail added
// sequentially afterwards. The scalar reference mirrors that lane layout.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace dlgibbs::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  // out_j = s / (1 + s), s = psi_j * scale_j^2 clamped to [DBL_MIN, DBL_MAX].
  void (*shrinkage_variance)(std::span<const double> psi,
                             std::span<const double> scale,
                             std::span<double> out);
  // out_j = a_j * b_j
  void (*multiply)(std::span<const double> a, std::span<const double> b,
                   std::span<double> out);
  double (*dot)(std::span<const double> a, std::span<const double> b);
  // sum_j (a_j - b_j)^2
  double (*squared_distance)(std::span<const double> a,
                             std::span<const double> b);
};

bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// Kernel table for a specific ISA; throws ParameterError when unavailable.
const KernelTable& kernels(Isa isa);
/// Kernel table for the active ISA.
const KernelTable& kernels() noexcept;

namespace scalar {
void shrinkage_variance(std::span<const double> psi,
                        std::span<const double> scale, std::span<double> out);
void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

#if defined(DLGIBBS_HAVE_AVX2)
namespace avx2 {
void shrinkage_variance(std::span<const double> psi,
                        std::span<const double> scale, std::span<double> out);
void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
}  // namespace avx2
#endif

// Convenience wrappers over the active table.
inline void shrinkage_variance(std::span<const double> psi,
                               std::span<const double> scale,
                               std::span<double> out) {
  kernels().shrinkage_variance(psi, scale, out);
}
inline void multiply(std::span<const double> a, std::span<const double> b,
                     std::span<double> out) {
  kernels().multiply(a, b, out);
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return kernels().dot(a, b);
}
inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  return kernels().squared_distance(a, b);
}

}  // namespace dlgibbs::simd
