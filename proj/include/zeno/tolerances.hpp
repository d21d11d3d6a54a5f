// Copyright 2026 The zeno Authors
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

namespace zeno {

/// Every numerical threshold used by the library lives here.
struct Tolerances {
  double hermiticity = 1e-10;     // relative: |A - A^H| <= tol * max(1, |A|)
  double unitarity = 1e-10;       // |U^H U - I|
  double expm_accuracy = 1e-12;   // default target for expm
  double cluster = 1e-8;          // eigenvalue merge threshold, scaled by max(1, |A|)
  double projector = 1e-10;       // idempotence, orthogonality, completeness
  double rank = 1e-6;             // |trace(P) - round(trace(P))|
  double state_trace = 1e-10;     // |trace(rho) - 1|
  double state_psd = 1e-10;       // smallest admissible eigenvalue is -tol
  double state_norm = 1e-10;      // |  |psi| - 1 | for closed dynamics
  long renorm_interval = 10000;   // projective engine steps between trace checks
  double renorm_drift = 1e-12;    // trace drift that triggers renormalization
};

inline constexpr Tolerances kTolerances{};

}  // namespace zeno
