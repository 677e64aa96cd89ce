#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace efleet {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType { Continuous, Binary };
enum class Sense { LessEqual, Equal, GreaterEqual };

enum class SolveStatus { Optimal, FeasibleTimeLimit, Infeasible, Unbounded, Error };

struct SolveResult {
  SolveStatus status = SolveStatus::Error;
  double objective = 0;
  double bestBound = 0;
  std::vector<double> values;
  std::vector<double> duals;  // per constraint; LP solves only
  double wallTime = 0;

  bool feasible() const {
    return status == SolveStatus::Optimal || status == SolveStatus::FeasibleTimeLimit;
  }
};

// Solver-agnostic linear model. Minimization only.
class ModelHandle {
 public:
  int addVar(double lb, double ub, double obj, VarType type, const std::string& name);
  int addConstr(Sense sense, double rhs,
                std::vector<std::pair<int, double>> coefs, const std::string& name);

  void setObjCoef(int var, double coef);

  int numVars() const { return static_cast<int>(varLb_.size()); }
  int numConstrs() const { return static_cast<int>(rhs_.size()); }

  void setTimeLimit(double seconds) { timeLimit_ = seconds; }
  void setMipGap(double gap) { mipGap_ = gap; }
  void setSeed(int seed) { seed_ = seed; }

  // relaxIntegrality: treat binaries as 0 <= x <= 1 and return duals.
  SolveResult solve(bool relaxIntegrality) const;

  void writeLp(const std::filesystem::path& file) const;

 private:
  std::vector<double> varLb_, varUb_, obj_;
  std::vector<VarType> varType_;
  std::vector<std::string> varName_;
  std::vector<Sense> sense_;
  std::vector<double> rhs_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
  std::vector<std::string> rowName_;
  std::unordered_set<std::string> names_;
  double timeLimit_ = kInf;
  double mipGap_ = 1e-9;
  int seed_ = 0;
};

inline SolveResult solveMILP(const ModelHandle& m, double timeLimitSeconds) {
  ModelHandle copy = m;
  copy.setTimeLimit(timeLimitSeconds);
  return copy.solve(false);
}

inline SolveResult solveLP(const ModelHandle& m) { return m.solve(true); }

}  // namespace efleet
