#include "efleet/mp.hpp"

#include <chrono>
#include <stdexcept>

#include "Highs.h"

namespace efleet {

int ModelHandle::addVar(double lb, double ub, double obj, VarType type,
                        const std::string& name) {
  if (!names_.insert(name).second)
    throw std::invalid_argument("duplicate variable name: " + name);
  varLb_.push_back(lb);
  varUb_.push_back(ub);
  obj_.push_back(obj);
  varType_.push_back(type);
  varName_.push_back(name);
  return numVars() - 1;
}

int ModelHandle::addConstr(Sense sense, double rhs,
                           std::vector<std::pair<int, double>> coefs,
                           const std::string& name) {
  if (!names_.insert(name).second)
    throw std::invalid_argument("duplicate constraint name: " + name);
  for (const auto& [var, coef] : coefs) {
    (void)coef;
    if (var < 0 || var >= numVars())
      throw std::invalid_argument("constraint " + name + " references unknown variable");
  }
  sense_.push_back(sense);
  rhs_.push_back(rhs);
  rows_.push_back(std::move(coefs));
  rowName_.push_back(name);
  return numConstrs() - 1;
}

void ModelHandle::setObjCoef(int var, double coef) { obj_.at(var) = coef; }

namespace {

HighsLp buildHighsLp(const std::vector<double>& lb, const std::vector<double>& ub,
                     const std::vector<double>& obj, const std::vector<Sense>& sense,
                     const std::vector<double>& rhs,
                     const std::vector<std::vector<std::pair<int, double>>>& rows) {
  HighsLp lp;
  lp.num_col_ = static_cast<HighsInt>(lb.size());
  lp.num_row_ = static_cast<HighsInt>(rhs.size());
  lp.sense_ = ObjSense::kMinimize;
  lp.col_cost_ = obj;
  lp.col_lower_ = lb;
  lp.col_upper_ = ub;
  lp.row_lower_.resize(rhs.size());
  lp.row_upper_.resize(rhs.size());
  for (size_t r = 0; r < rhs.size(); ++r) {
    switch (sense[r]) {
      case Sense::LessEqual:
        lp.row_lower_[r] = -kHighsInf;
        lp.row_upper_[r] = rhs[r];
        break;
      case Sense::Equal:
        lp.row_lower_[r] = rhs[r];
        lp.row_upper_[r] = rhs[r];
        break;
      case Sense::GreaterEqual:
        lp.row_lower_[r] = rhs[r];
        lp.row_upper_[r] = kHighsInf;
        break;
    }
  }
  lp.a_matrix_.format_ = MatrixFormat::kRowwise;
  lp.a_matrix_.start_.clear();
  lp.a_matrix_.start_.push_back(0);
  for (const auto& row : rows) {
    for (const auto& [var, coef] : row) {
      lp.a_matrix_.index_.push_back(var);
      lp.a_matrix_.value_.push_back(coef);
    }
    lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
  }
  return lp;
}

}  // namespace

SolveResult ModelHandle::solve(bool relaxIntegrality) const {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult out;

  if (numVars() == 0) {
    out.status = SolveStatus::Optimal;
    out.objective = 0;
    out.bestBound = 0;
    out.duals.assign(numConstrs(), 0.0);
    return out;
  }

  std::vector<double> lb = varLb_, ub = varUb_;
  bool anyInteger = false;
  for (int v = 0; v < numVars(); ++v) {
    if (varType_[v] == VarType::Binary) {
      lb[v] = std::max(lb[v], 0.0);
      ub[v] = std::min(ub[v], 1.0);
      anyInteger = true;
    }
  }

  HighsLp lp = buildHighsLp(lb, ub, obj_, sense_, rhs_, rows_);
  const bool mip = anyInteger && !relaxIntegrality;
  if (mip) {
    lp.integrality_.assign(numVars(), HighsVarType::kContinuous);
    for (int v = 0; v < numVars(); ++v)
      if (varType_[v] == VarType::Binary) lp.integrality_[v] = HighsVarType::kInteger;
  }

  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("random_seed", seed_);
  highs.setOptionValue("mip_rel_gap", mipGap_);
  if (timeLimit_ < kInf) highs.setOptionValue("time_limit", timeLimit_);
  if (highs.passModel(lp) != HighsStatus::kOk) {
    out.status = SolveStatus::Error;
    return out;
  }
  const HighsStatus rc = highs.run();
  const auto elapsed = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - t0);
  out.wallTime = elapsed.count();
  if (rc == HighsStatus::kError) {
    out.status = SolveStatus::Error;
    return out;
  }

  const HighsModelStatus ms = highs.getModelStatus();
  const HighsInfo& info = highs.getInfo();
  switch (ms) {
    case HighsModelStatus::kOptimal:
      out.status = SolveStatus::Optimal;
      break;
    case HighsModelStatus::kInfeasible:
      out.status = SolveStatus::Infeasible;
      return out;
    case HighsModelStatus::kUnbounded:
    case HighsModelStatus::kUnboundedOrInfeasible:
      out.status = SolveStatus::Unbounded;
      return out;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
      out.status = info.primal_solution_status == kSolutionStatusFeasible
                       ? SolveStatus::FeasibleTimeLimit
                       : SolveStatus::Error;
      if (out.status == SolveStatus::Error) return out;
      break;
    default:
      out.status = SolveStatus::Error;
      return out;
  }

  const HighsSolution& sol = highs.getSolution();
  out.values = sol.col_value;
  out.objective = info.objective_function_value;
  out.bestBound = mip ? info.mip_dual_bound : out.objective;
  if (!mip && sol.dual_valid) out.duals = sol.row_dual;
  return out;
}

void ModelHandle::writeLp(const std::filesystem::path& file) const {
  std::vector<double> lb = varLb_, ub = varUb_;
  HighsLp lp = buildHighsLp(lb, ub, obj_, sense_, rhs_, rows_);
  lp.integrality_.assign(numVars(), HighsVarType::kContinuous);
  for (int v = 0; v < numVars(); ++v)
    if (varType_[v] == VarType::Binary) {
      lp.integrality_[v] = HighsVarType::kInteger;
      lp.col_lower_[v] = 0;
      lp.col_upper_[v] = 1;
    }
  lp.col_names_ = varName_;
  lp.row_names_ = rowName_;
  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.passModel(lp);
  highs.writeModel(file.string());
}

}  // namespace efleet
