#pragma once

#include <memory>

#include "efleet/compat.hpp"
#include "efleet/finance.hpp"
#include "efleet/mp.hpp"
#include "efleet/solution.hpp"

namespace efleet {

// Handle tying the built model to the variable index maps needed for
// extraction.
class ExactModel {
 public:
  ExactModel(const CompatibilityIndex& compat, const CostParams& costs);

  ModelHandle& model() { return model_; }
  const ModelHandle& model() const { return model_; }

  Solution extract(const SolveResult& result) const;

 private:
  struct VisitVars {
    int i, j, c;
    int q, s, u;         // variable columns
    StepRange steps;     // T_ijc
    int xBase, xaBase, xbBase;
  };

  const CompatibilityIndex* compat_;
  CostParams costs_;
  ModelHandle model_;
  std::vector<std::vector<int>> yEv_, yDb_;  // arc vars, [i][slot]; see cpp
  std::vector<int> yEvFromGarage_, yDbFromGarage_, yEvToGarage_, yDbToGarage_;
  std::vector<int> bVar_, tEtaVar_;
  int vVar_ = -1, vPrimeVar_ = -1;
  std::vector<VisitVars> visits_;
  std::vector<std::vector<int>> garageVisitQ_;  // q^kappa, [i][slot over I_is^sigma]

  friend class ExactBuilder;
};

ExactModel buildExact(const CompatibilityIndex& compat, const CostParams& costs);

Solution solveExact(ExactModel& model, double timeLimitSeconds);

// Per-visit dwell decomposition. A step counts as waiting iff the station's
// occupancy equals its plug count during that step.
struct DwellEntry {
  int run = 0;
  int afterIndex = 0;
  int station = 0;
  double waiting = 0;
  double preLayover = 0;
  double charging = 0;
  double postLayover = 0;
};

std::vector<DwellEntry> classifyDwell(const Solution& sol,
                                      const CompatibilityIndex& compat);

}  // namespace efleet
