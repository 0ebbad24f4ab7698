#include "tmi/blackhole.hpp"

#include <cmath>

#include "tmi/errors.hpp"

namespace tmi {

std::vector<BlackHoleEntry> BlackHoleLedger::entries() const {
  std::vector<BlackHoleEntry> flat;
  for (const auto& t : transitions) {
    flat.insert(flat.end(), t.lost_branches.begin(), t.lost_branches.end());
  }
  return flat;
}

namespace {

std::size_t resolve_source_index(const TimeMomentSet& source,
                                 const std::optional<std::string>& source_label) {
  if (source_label) return source.index_of(*source_label);
  if (source.size() == 1) return 0;
  throw std::invalid_argument(
      "source event is ambiguous: name it for multi-outcome sources");
}

}  // namespace

ExtendedChain extend_with_blackhole(const ProcessChain& chain) {
  if (!chain.realized) {
    throw MissingRealization("black-hole extension needs a realized record");
  }
  const auto& realized = *chain.realized;
  if (realized.size() != chain.stages.size()) {
    throw MissingRealization("realized record does not cover every stage");
  }

  ExtendedChain extended;
  extended.base = chain;
  extended.start_probability =
      chain.stages.front().probability_of(realized.front());

  for (std::size_t k = 0; k < chain.kernels.size(); ++k) {
    const auto& kernel = chain.kernels[k];
    const std::size_t src = chain.stages[k].index_of(realized[k]);
    const std::size_t dst = chain.stages[k + 1].index_of(realized[k + 1]);
    const double alpha = kernel.rows[src][dst];
    if (!(alpha > 0.0) && !chain.artificial_variation) {
      throw ImpossibleRealization("realized transition '" + realized[k] +
                                  "' -> '" + realized[k + 1] +
                                  "' has zero probability");
    }

    RealizedTransitionRecord record;
    record.transition_index = k;
    record.source_label = realized[k];
    record.realized_label = realized[k + 1];
    record.alpha = alpha;
    record.aggregate_negative = alpha - 1.0;
    for (std::size_t j = 0; j < kernel.target_arity(); ++j) {
      if (j == dst) continue;
      const double rho = kernel.rows[src][j];
      if (rho > 0.0) {
        record.lost_branches.push_back(
            {k, realized[k], chain.stages[k + 1].outcomes[j].label, -rho});
      }
    }
    extended.ledger.transitions.push_back(std::move(record));

    // Augment: one extra absorbing state as the last row and column. The
    // realized source row collapses to certainty; lost mass is carried by
    // the ledger, not the matrix.
    OperatorKernel augmented;
    const std::size_t n = kernel.source_arity();
    const std::size_t m = kernel.target_arity();
    augmented.rows.assign(n + 1, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) augmented.rows[i][j] = kernel.rows[i][j];
    }
    auto& realized_row = augmented.rows[src];
    std::fill(realized_row.begin(), realized_row.end(), 0.0);
    realized_row[dst] = 1.0;
    augmented.rows[n][m] = 1.0;
    extended.effective_kernels.push_back(std::move(augmented));
  }

  return extended;
}

bool blackhole_absorbing(const ExtendedChain& chain) {
  for (const auto& kernel : chain.effective_kernels) {
    const auto& hole_row = kernel.rows.back();
    for (std::size_t j = 0; j + 1 < hole_row.size(); ++j) {
      if (hole_row[j] != 0.0) return false;
    }
    if (hole_row.back() != 1.0) return false;
  }
  return true;
}

ConservationReport conservation_check(const ExtendedChain& chain) {
  ConservationReport report;
  report.start_bits = -std::log2(chain.start_probability);
  double path = chain.start_probability;
  for (std::size_t k = 0; k < chain.effective_kernels.size(); ++k) {
    const std::size_t src = chain.base.stages[k].index_of(chain.realized()[k]);
    const std::size_t dst =
        chain.base.stages[k + 1].index_of(chain.realized()[k + 1]);
    path *= chain.effective_kernels[k].rows[src][dst];
  }
  report.end_bits = -std::log2(path);
  report.conserved =
      std::abs(report.start_bits - report.end_bits) < kProbabilityTolerance;
  report.ledger = chain.ledger.entries();
  return report;
}

double realized_path_information(const ProcessChain& chain) {
  if (!chain.realized) {
    throw MissingRealization("path information needs a realized record");
  }
  const auto& realized = *chain.realized;
  double path = chain.stages.front().probability_of(realized.front());
  for (std::size_t k = 0; k < chain.kernels.size(); ++k) {
    const std::size_t src = chain.stages[k].index_of(realized[k]);
    const std::size_t dst = chain.stages[k + 1].index_of(realized[k + 1]);
    path *= chain.kernels[k].rows[src][dst];
  }
  return -std::log2(path);
}

const char* to_string(VariationClass v) {
  switch (v) {
    case VariationClass::Natural: return "NATURAL";
    case VariationClass::Artificial: return "ARTIFICIAL";
    case VariationClass::Ordinary: return "ORDINARY";
  }
  return "ORDINARY";
}

VariationClass classify_variation(double rho, double threshold) {
  if (rho == 0.0) return VariationClass::Artificial;
  if (rho > 0.0 && rho <= threshold) return VariationClass::Natural;
  return VariationClass::Ordinary;
}

VariationClass classify_variation(const TimeMomentSet& source,
                                  const OperatorKernel& kernel,
                                  const TimeMomentSet& target,
                                  const std::string& realized, double threshold,
                                  const std::optional<std::string>& source_label) {
  const std::size_t i = resolve_source_index(source, source_label);
  const std::size_t j = target.index_of(realized);
  return classify_variation(kernel.rows[i][j], threshold);
}

RealizationVolume realization_information_volume(
    const TimeMomentSet& source, const OperatorKernel& kernel,
    const TimeMomentSet& target, const std::string& realized,
    const std::optional<std::string>& source_label) {
  const std::size_t i = resolve_source_index(source, source_label);
  const std::size_t j = target.index_of(realized);
  const double rho = kernel.rows[i][j];
  if (rho == 0.0) return {true, 0.0};
  return {false, -std::log2(rho * source.outcomes[i].probability)};
}

}  // namespace tmi
