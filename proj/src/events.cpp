#include "tmi/events.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "tmi/errors.hpp"

namespace tmi {

std::optional<std::size_t> TimeMomentSet::find(const std::string& label) const {
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].label == label) return i;
  }
  return std::nullopt;
}

std::size_t TimeMomentSet::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw UnknownLabel("no outcome labeled '" + label + "' at tick " +
                     std::to_string(moment.tick));
}

double TimeMomentSet::probability_of(const std::string& label) const {
  return outcomes[index_of(label)].probability;
}

std::vector<double> TimeMomentSet::probabilities() const {
  std::vector<double> p;
  p.reserve(outcomes.size());
  for (const auto& o : outcomes) p.push_back(o.probability);
  return p;
}

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Deterministic: return "DETERMINISTIC";
    case KernelKind::Refinement: return "REFINEMENT";
    case KernelKind::Bijective: return "BIJECTIVE";
    case KernelKind::General: return "GENERAL";
  }
  return "GENERAL";
}

bool OperatorKernel::is_deterministic(double tol) const {
  if (rows.empty()) return false;
  for (const auto& row : rows) {
    std::size_t hot = 0;
    for (double v : row) {
      if (v >= 1.0 - tol) {
        ++hot;
      } else if (v > tol) {
        return false;
      }
    }
    if (hot != 1) return false;
  }
  return true;
}

bool OperatorKernel::is_refinement(double tol) const {
  if (rows.empty()) return false;
  for (std::size_t j = 0; j < target_arity(); ++j) {
    std::size_t feeders = 0;
    for (const auto& row : rows) {
      if (row[j] > tol) ++feeders;
    }
    if (feeders > 1) return false;
  }
  return true;
}

bool OperatorKernel::is_bijective(double tol) const {
  return is_deterministic(tol) && is_refinement(tol);
}

KernelKind OperatorKernel::classify(double tol) const {
  const bool det = is_deterministic(tol);
  const bool ref = is_refinement(tol);
  if (det && ref) return KernelKind::Bijective;
  if (det) return KernelKind::Deterministic;
  if (ref) return KernelKind::Refinement;
  return KernelKind::General;
}

OperatorKernel OperatorKernel::identity(std::size_t n) {
  OperatorKernel k;
  k.rows.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) k.rows[i][i] = 1.0;
  return k;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyChain: return "EmptyChain";
    case ViolationKind::DuplicateLabel: return "DuplicateLabel";
    case ViolationKind::NonPositiveProbability: return "NonPositiveProbability";
    case ViolationKind::Normalization: return "Normalization";
    case ViolationKind::KernelCount: return "KernelCount";
    case ViolationKind::KernelEntryRange: return "KernelEntryRange";
    case ViolationKind::KernelRowSum: return "KernelRowSum";
    case ViolationKind::ArityMismatch: return "ArityMismatch";
    case ViolationKind::MomentOrdering: return "MomentOrdering";
    case ViolationKind::TemporalInconsistency: return "TemporalInconsistency";
    case ViolationKind::RealizationLength: return "RealizationLength";
    case ViolationKind::RealizationUnknownLabel: return "RealizationUnknownLabel";
    case ViolationKind::RealizationImpossible: return "RealizationImpossible";
  }
  return "Unknown";
}

namespace {

bool kernel_rectangular(const OperatorKernel& k) {
  if (k.rows.empty()) return false;
  const std::size_t cols = k.rows[0].size();
  if (cols == 0) return false;
  return std::all_of(k.rows.begin(), k.rows.end(),
                     [cols](const auto& r) { return r.size() == cols; });
}

}  // namespace

ValidationReport validate_chain(const ProcessChain& chain) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, std::size_t index, double dev,
                       std::string detail) {
    report.violations.push_back({kind, index, dev, std::move(detail)});
  };

  if (chain.stages.empty()) {
    add(ViolationKind::EmptyChain, 0, 0.0, "chain has no stages");
    return report;
  }

  for (std::size_t s = 0; s < chain.stages.size(); ++s) {
    const auto& stage = chain.stages[s];
    if (stage.outcomes.empty()) {
      add(ViolationKind::NonPositiveProbability, s, 0.0, "stage has no outcomes");
      continue;
    }
    std::unordered_set<std::string> seen;
    double sum = 0.0;
    for (const auto& o : stage.outcomes) {
      if (!seen.insert(o.label).second) {
        add(ViolationKind::DuplicateLabel, s, 0.0,
            "duplicate label '" + o.label + "'");
      }
      if (!(o.probability > 0.0)) {
        add(ViolationKind::NonPositiveProbability, s, o.probability,
            "outcome '" + o.label + "' has probability " +
                std::to_string(o.probability));
      }
      sum += o.probability;
    }
    const double dev = std::abs(sum - 1.0);
    if (dev > kProbabilityTolerance) {
      add(ViolationKind::Normalization, s, dev, "stage mass sums to " +
              std::to_string(sum));
    }
  }

  if (chain.kernels.size() + 1 != chain.stages.size()) {
    add(ViolationKind::KernelCount, 0, 0.0,
        "expected " + std::to_string(chain.stages.size() - 1) + " kernels, got " +
            std::to_string(chain.kernels.size()));
  }

  const std::size_t usable_kernels =
      std::min(chain.kernels.size(),
               chain.stages.empty() ? 0 : chain.stages.size() - 1);

  std::vector<bool> kernel_usable(chain.kernels.size(), false);
  for (std::size_t k = 0; k < chain.kernels.size(); ++k) {
    const auto& kernel = chain.kernels[k];
    if (!kernel_rectangular(kernel)) {
      add(ViolationKind::ArityMismatch, k, 0.0, "kernel matrix is empty or ragged");
      continue;
    }
    double max_entry_dev = 0.0;
    double max_row_dev = 0.0;
    for (const auto& row : kernel.rows) {
      double sum = 0.0;
      for (double v : row) {
        if (v < 0.0) max_entry_dev = std::max(max_entry_dev, -v);
        if (v > 1.0) max_entry_dev = std::max(max_entry_dev, v - 1.0);
        sum += v;
      }
      max_row_dev = std::max(max_row_dev, std::abs(sum - 1.0));
    }
    if (max_entry_dev > kProbabilityTolerance) {
      add(ViolationKind::KernelEntryRange, k, max_entry_dev,
          "kernel entry outside [0,1]");
    }
    if (max_row_dev > kProbabilityTolerance) {
      add(ViolationKind::KernelRowSum, k, max_row_dev,
          "kernel row mass differs from 1");
    }
    bool arity_ok = true;
    if (k < usable_kernels) {
      if (kernel.source_arity() != chain.stages[k].size()) {
        add(ViolationKind::ArityMismatch, k, 0.0,
            "kernel source arity " + std::to_string(kernel.source_arity()) +
                " != stage size " + std::to_string(chain.stages[k].size()));
        arity_ok = false;
      }
      if (kernel.target_arity() != chain.stages[k + 1].size()) {
        add(ViolationKind::ArityMismatch, k, 0.0,
            "kernel target arity " + std::to_string(kernel.target_arity()) +
                " != stage size " + std::to_string(chain.stages[k + 1].size()));
        arity_ok = false;
      }
    }
    kernel_usable[k] = arity_ok && k < usable_kernels &&
                       max_entry_dev <= kProbabilityTolerance &&
                       max_row_dev <= kProbabilityTolerance;
  }

  for (std::size_t s = 0; s + 1 < chain.stages.size(); ++s) {
    if (chain.stages[s + 1].moment.tick <= chain.stages[s].moment.tick) {
      add(ViolationKind::MomentOrdering, s + 1, 0.0,
          "stage moments must strictly increase");
    }
  }

  // Pushforward of each stage through its kernel must reproduce the declared
  // successor distribution.
  for (std::size_t k = 0; k < usable_kernels; ++k) {
    if (!kernel_usable[k]) continue;
    const auto& source = chain.stages[k];
    const auto& target = chain.stages[k + 1];
    const auto pushed =
        pushforward_probabilities(source.probabilities(), chain.kernels[k]);
    double dev = 0.0;
    for (std::size_t j = 0; j < target.size(); ++j) {
      dev = std::max(dev, std::abs(pushed[j] - target.outcomes[j].probability));
    }
    if (dev > kProbabilityTolerance) {
      add(ViolationKind::TemporalInconsistency, k + 1, dev,
          "declared distribution differs from kernel pushforward");
    }
  }

  if (chain.realized) {
    const auto& realized = *chain.realized;
    if (realized.size() != chain.stages.size()) {
      add(ViolationKind::RealizationLength, 0, 0.0,
          "realized record length " + std::to_string(realized.size()) +
              " != stage count " + std::to_string(chain.stages.size()));
    } else {
      std::vector<std::optional<std::size_t>> idx(realized.size());
      for (std::size_t s = 0; s < realized.size(); ++s) {
        idx[s] = chain.stages[s].find(realized[s]);
        if (!idx[s]) {
          add(ViolationKind::RealizationUnknownLabel, s, 0.0,
              "realized label '" + realized[s] + "' not in stage");
        }
      }
      for (std::size_t k = 0; k < usable_kernels; ++k) {
        if (!kernel_usable[k] || !idx[k] || !idx[k + 1]) continue;
        const double rho = chain.kernels[k].rows[*idx[k]][*idx[k + 1]];
        if (!(rho > 0.0) && !chain.artificial_variation) {
          add(ViolationKind::RealizationImpossible, k, rho,
              "realized transition '" + realized[k] + "' -> '" + realized[k + 1] +
                  "' has zero probability");
        }
      }
    }
  }

  return report;
}

std::vector<double> pushforward_probabilities(const std::vector<double>& source,
                                              const OperatorKernel& kernel) {
  if (source.size() != kernel.source_arity()) {
    throw ArityMismatch("pushforward: source size " +
                        std::to_string(source.size()) + " != kernel arity " +
                        std::to_string(kernel.source_arity()));
  }
  std::vector<double> target(kernel.target_arity(), 0.0);
  for (std::size_t i = 0; i < source.size(); ++i) {
    for (std::size_t j = 0; j < target.size(); ++j) {
      target[j] += source[i] * kernel.rows[i][j];
    }
  }
  return target;
}

TimeMomentSet pushforward(const TimeMomentSet& source, const OperatorKernel& kernel,
                          TimeMoment target_moment,
                          const std::vector<std::string>& target_labels) {
  if (target_labels.size() != kernel.target_arity()) {
    throw ArityMismatch("pushforward: " + std::to_string(target_labels.size()) +
                        " labels for target arity " +
                        std::to_string(kernel.target_arity()));
  }
  const auto probs = pushforward_probabilities(source.probabilities(), kernel);
  TimeMomentSet result;
  result.moment = target_moment;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] < kZeroMassDrop) continue;
    result.outcomes.push_back({target_labels[j], probs[j]});
  }
  return result;
}

TimeMomentSet pushforward(const TimeMomentSet& source, const OperatorKernel& kernel) {
  std::vector<std::string> labels;
  labels.reserve(kernel.target_arity());
  for (std::size_t j = 0; j < kernel.target_arity(); ++j) {
    labels.push_back("y" + std::to_string(j + 1));
  }
  return pushforward(source, kernel, TimeMoment(source.moment.tick + 1), labels);
}

SurjectivityResult check_surjectivity(const OperatorKernel& kernel,
                                      const TimeMomentSet& target) {
  if (!kernel.is_deterministic()) {
    throw NotDeterministic("surjectivity is defined for deterministic kernels");
  }
  if (kernel.target_arity() != target.size()) {
    throw ArityMismatch("surjectivity: kernel target arity " +
                        std::to_string(kernel.target_arity()) +
                        " != target size " + std::to_string(target.size()));
  }
  for (std::size_t j = 0; j < target.size(); ++j) {
    bool fed = false;
    for (const auto& row : kernel.rows) {
      if (row[j] >= 1.0 - kProbabilityTolerance) {
        fed = true;
        break;
      }
    }
    if (!fed) return {false, target.outcomes[j].label};
  }
  return {true, std::nullopt};
}

bool independence_test(const TimeMomentSet& source, const OperatorKernel& kernel) {
  const auto marginal =
      pushforward_probabilities(source.probabilities(), kernel);
  for (const auto& row : kernel.rows) {
    for (std::size_t j = 0; j < marginal.size(); ++j) {
      if (std::abs(row[j] - marginal[j]) > kProbabilityTolerance) return false;
    }
  }
  return true;
}

OperatorKernel reverse_kernel(const TimeMomentSet& source,
                              const OperatorKernel& kernel) {
  const auto src = source.probabilities();
  const auto marginal = pushforward_probabilities(src, kernel);
  OperatorKernel reversed;
  reversed.rows.assign(marginal.size(), std::vector<double>(src.size(), 0.0));
  for (std::size_t j = 0; j < marginal.size(); ++j) {
    if (marginal[j] < kZeroMassDrop) {
      throw std::invalid_argument(
          "reverse_kernel: target outcome " + std::to_string(j) +
          " carries no mass");
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
      reversed.rows[j][i] = kernel.rows[i][j] * src[i] / marginal[j];
    }
  }
  return reversed;
}

}  // namespace tmi
