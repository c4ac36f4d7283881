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

#include <cstdlib>
#include <string>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/simd/vecmath.hpp"

namespace dlgibbs::simd {
namespace {

constexpr KernelTable kScalarTable{&scalar::shrinkage_variance,
                                   &scalar::multiply, &scalar::dot,
                                   &scalar::squared_distance};
#if defined(DLGIBBS_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&avx2::shrinkage_variance, &avx2::multiply,
                                 &avx2::dot, &avx2::squared_distance};
#endif

Isa detect() noexcept {
  if (const char* forced = std::getenv("DLGIBBS_ISA")) {
    const std::string value(forced);
    if (value == "scalar") return Isa::Scalar;
    if (value == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(DLGIBBS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

const KernelTable& kernels(Isa isa) {
  if (!isa_available(isa)) {
    throw ParameterError("ISA not available on this machine: " +
                         std::string(isa_name(isa)));
  }
#if defined(DLGIBBS_HAVE_AVX2)
  if (isa == Isa::Avx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& kernels() noexcept {
  static const KernelTable& table = kernels(active_isa());
  return table;
}

}  // namespace dlgibbs::simd
