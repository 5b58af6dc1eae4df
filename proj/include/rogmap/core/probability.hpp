// Copyright 2026 The rogmap authors
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

#include <cmath>
#include <stdexcept>

#include "rogmap/core/types.hpp"

namespace rogmap {

/// log(p / (1 - p)), natural log. Defined on the open interval (0, 1).
inline double logOdds(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("logOdds: probability must be in (0, 1)");
  }
  return std::log(p / (1.0 - p));
}

/// Inverse of logOdds: 1 / (1 + exp(-L)).
inline double probabilityOf(double l) { return 1.0 / (1.0 + std::exp(-l)); }

/// Sensor-model and classification parameters. Probabilities are the
/// configuration surface; the log-odds values derived from them are what the
/// update path actually uses. A cell starts at the uninformative prior
/// p = 0.5, i.e. log-odds 0.
struct ProbParams {
  double pHit = 0.7;
  double pMiss = 0.4;
  double pMin = 0.12;
  double pMax = 0.97;
  double pOcc = 0.7;
  double pFree = 0.3;

  double lHit = 0.0;
  double lMiss = 0.0;
  double lMin = 0.0;
  double lMax = 0.0;
  double lOcc = 0.0;
  double lFree = 0.0;

  ProbParams() { derive(); }

  ProbParams(double hit, double miss, double min, double max, double occ, double free)
      : pHit(hit), pMiss(miss), pMin(min), pMax(max), pOcc(occ), pFree(free) {
    derive();
  }

  /// Recomputes the log-odds values and validates the parameter set.
  void derive() {
    lHit = logOdds(pHit);
    lMiss = logOdds(pMiss);
    lMin = logOdds(pMin);
    lMax = logOdds(pMax);
    lOcc = logOdds(pOcc);
    lFree = logOdds(pFree);
    if (!(pMiss < 0.5 && 0.5 < pHit)) {
      throw std::invalid_argument("ProbParams: requires pMiss < 0.5 < pHit");
    }
    if (!(lMin <= lFree && lFree < lOcc && lOcc <= lMax)) {
      throw std::invalid_argument("ProbParams: requires lMin <= lFree < lOcc <= lMax");
    }
  }
};

/// Classification thresholds: closed at lOcc, open at lFree.
inline OccState stateOf(double l, const ProbParams& p) {
  if (l < p.lFree) return OccState::KnownFree;
  if (l >= p.lOcc) return OccState::Occupied;
  return OccState::Unknown;
}

}  // namespace rogmap
