#include "tmi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "tmi/blackhole.hpp"
#include "tmi/errors.hpp"
#include "tmi/frames.hpp"
#include "tmi/measures.hpp"
#include "tmi/tolerances.hpp"

namespace tmi::oracle {

namespace {

const BigRat kOne = 1;

double entropy_of_rationals(const std::vector<BigRat>& probs) {
  double h = 0.0;
  for (const auto& p : probs) {
    if (p == 0) continue;
    const double d = p.convert_to<double>();
    h -= d * std::log2(d);
  }
  return h + 0.0;
}

std::string stage_label(std::size_t stage, std::size_t outcome) {
  static const char* prefixes[] = {"x", "y", "z"};
  const std::string prefix =
      stage < 3 ? prefixes[stage] : "s" + std::to_string(stage) + "e";
  return prefix + std::to_string(outcome + 1);
}

}  // namespace

bool exactly_valid(const RationalChain& chain) {
  if (chain.stages.empty()) return false;
  if (chain.ticks.size() != chain.stages.size()) return false;
  if (chain.kernels.size() + 1 != chain.stages.size()) return false;
  for (std::size_t s = 0; s + 1 < chain.ticks.size(); ++s) {
    if (chain.ticks[s + 1] <= chain.ticks[s]) return false;
  }
  for (const auto& stage : chain.stages) {
    if (stage.empty()) return false;
    BigRat sum = 0;
    for (const auto& p : stage) {
      if (p <= 0) return false;
      sum += p;
    }
    if (sum != kOne) return false;
  }
  for (std::size_t k = 0; k < chain.kernels.size(); ++k) {
    const auto& kernel = chain.kernels[k];
    if (kernel.size() != chain.stages[k].size()) return false;
    for (const auto& row : kernel) {
      if (row.size() != chain.stages[k + 1].size()) return false;
      BigRat sum = 0;
      for (const auto& v : row) {
        if (v < 0 || v > kOne) return false;
        sum += v;
      }
      if (sum != kOne) return false;
    }
  }
  // Declared stages must equal the exact pushforward of their predecessor.
  for (std::size_t k = 0; k < chain.kernels.size(); ++k) {
    for (std::size_t j = 0; j < chain.stages[k + 1].size(); ++j) {
      BigRat mass = 0;
      for (std::size_t i = 0; i < chain.stages[k].size(); ++i) {
        mass += chain.stages[k][i] * chain.kernels[k][i][j];
      }
      if (mass != chain.stages[k + 1][j]) return false;
    }
  }
  return true;
}

ProcessChain to_process_chain(const RationalChain& chain) {
  ProcessChain pc;
  for (std::size_t s = 0; s < chain.stages.size(); ++s) {
    TimeMomentSet set;
    set.moment = TimeMoment(chain.ticks[s]);
    for (std::size_t i = 0; i < chain.stages[s].size(); ++i) {
      set.outcomes.push_back(
          {stage_label(s, i), chain.stages[s][i].convert_to<double>()});
    }
    pc.stages.push_back(std::move(set));
  }
  for (const auto& kernel : chain.kernels) {
    OperatorKernel k;
    for (const auto& row : kernel) {
      std::vector<double> r;
      r.reserve(row.size());
      for (const auto& v : row) r.push_back(v.convert_to<double>());
      k.rows.push_back(std::move(r));
    }
    pc.kernels.push_back(std::move(k));
  }
  return pc;
}

std::vector<PathProbability> enumerate_joint(const RationalChain& chain) {
  std::size_t total = 1;
  for (const auto& stage : chain.stages) {
    if (stage.empty()) throw std::invalid_argument("empty stage");
    if (total > kMaxPaths / stage.size()) {
      throw TooLarge("path enumeration exceeds " + std::to_string(kMaxPaths));
    }
    total *= stage.size();
  }

  std::vector<PathProbability> paths;
  paths.reserve(total);
  std::vector<std::size_t> indices(chain.stages.size(), 0);

  // Depth-first product walk with the running probability.
  std::vector<BigRat> partial(chain.stages.size());
  std::size_t depth = 0;
  while (true) {
    if (depth == 0) {
      partial[0] = chain.stages[0][indices[0]];
    } else {
      partial[depth] =
          partial[depth - 1] * chain.kernels[depth - 1][indices[depth - 1]][indices[depth]];
    }
    if (depth + 1 == chain.stages.size()) {
      paths.push_back({indices, partial[depth]});
      // advance
      std::size_t level = depth;
      while (true) {
        ++indices[level];
        if (indices[level] < chain.stages[level].size()) break;
        indices[level] = 0;
        if (level == 0) return paths;
        --level;
      }
      depth = level;
    } else {
      ++depth;
    }
  }
}

double marginal_entropy(const std::vector<PathProbability>& paths,
                        const RationalChain& chain, std::size_t stage) {
  std::vector<BigRat> marginal(chain.stages[stage].size(), BigRat(0));
  for (const auto& path : paths) {
    marginal[path.outcomes[stage]] += path.probability;
  }
  return entropy_of_rationals(marginal);
}

double joint_entropy(const std::vector<PathProbability>& paths,
                     const RationalChain& chain, std::size_t stage_a,
                     std::size_t stage_b) {
  const std::size_t nb = chain.stages[stage_b].size();
  std::vector<BigRat> joint(chain.stages[stage_a].size() * nb, BigRat(0));
  for (const auto& path : paths) {
    joint[path.outcomes[stage_a] * nb + path.outcomes[stage_b]] +=
        path.probability;
  }
  return entropy_of_rationals(joint);
}

double conditional_entropy_from_joint(const std::vector<PathProbability>& paths,
                                      const RationalChain& chain,
                                      std::size_t given_stage,
                                      std::size_t target_stage) {
  return joint_entropy(paths, chain, given_stage, target_stage) -
         marginal_entropy(paths, chain, given_stage);
}

double mutual_information_from_joint(const std::vector<PathProbability>& paths,
                                     const RationalChain& chain,
                                     std::size_t stage_a, std::size_t stage_b) {
  return marginal_entropy(paths, chain, stage_a) +
         marginal_entropy(paths, chain, stage_b) -
         joint_entropy(paths, chain, stage_a, stage_b);
}

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  if (n == 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t cutoff = (max % n + 1) % n;  // biased top values
  while (true) {
    const std::uint64_t x = gen_();
    if (cutoff == 0 || x < max - cutoff + 1) return static_cast<std::size_t>(x % n);
  }
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::size_t>(hi - lo + 1)));
}

std::vector<BigRat> random_distribution(Rng& rng, std::size_t arity,
                                        std::int64_t max_weight) {
  std::vector<std::int64_t> weights(arity);
  std::int64_t total = 0;
  for (auto& w : weights) {
    w = rng.range(1, max_weight);
    total += w;
  }
  std::vector<BigRat> dist;
  dist.reserve(arity);
  for (const auto w : weights) dist.emplace_back(w, total);
  return dist;
}

std::vector<BigRat> near_degenerate_distribution(std::size_t arity) {
  const std::int64_t total = 1'000'000'000;
  std::vector<BigRat> dist;
  dist.reserve(arity);
  dist.emplace_back(total - static_cast<std::int64_t>(arity - 1), total);
  for (std::size_t i = 1; i < arity; ++i) dist.emplace_back(1, total);
  return dist;
}

std::vector<std::vector<BigRat>> deterministic_surjective_kernel(
    Rng& rng, std::size_t source_arity, std::size_t target_arity) {
  if (target_arity > source_arity) {
    throw std::invalid_argument("surjection needs target arity <= source arity");
  }
  std::vector<std::size_t> image(source_arity);
  while (true) {
    std::vector<bool> hit(target_arity, false);
    for (auto& v : image) {
      v = rng.below(target_arity);
      hit[v] = true;
    }
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) break;
  }
  std::vector<std::vector<BigRat>> rows(source_arity,
                                        std::vector<BigRat>(target_arity, 0));
  for (std::size_t i = 0; i < source_arity; ++i) rows[i][image[i]] = 1;
  return rows;
}

std::vector<std::vector<BigRat>> refinement_kernel(Rng& rng,
                                                   std::size_t source_arity,
                                                   std::size_t target_arity) {
  if (target_arity < source_arity) {
    throw std::invalid_argument("refinement needs target arity >= source arity");
  }
  std::vector<std::size_t> parent(target_arity);
  while (true) {
    std::vector<bool> hit(source_arity, false);
    for (auto& v : parent) {
      v = rng.below(source_arity);
      hit[v] = true;
    }
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) break;
  }
  std::vector<std::vector<BigRat>> rows(source_arity,
                                        std::vector<BigRat>(target_arity, 0));
  for (std::size_t i = 0; i < source_arity; ++i) {
    std::vector<std::size_t> children;
    for (std::size_t j = 0; j < target_arity; ++j) {
      if (parent[j] == i) children.push_back(j);
    }
    std::vector<std::int64_t> weights(children.size());
    std::int64_t total = 0;
    for (auto& w : weights) {
      w = rng.range(1, 60);
      total += w;
    }
    for (std::size_t c = 0; c < children.size(); ++c) {
      rows[i][children[c]] = BigRat(weights[c], total);
    }
  }
  return rows;
}

std::vector<std::vector<BigRat>> bijective_kernel(Rng& rng, std::size_t arity) {
  std::vector<std::size_t> perm(arity);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = arity; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  std::vector<std::vector<BigRat>> rows(arity, std::vector<BigRat>(arity, 0));
  for (std::size_t i = 0; i < arity; ++i) rows[i][perm[i]] = 1;
  return rows;
}

namespace {

std::vector<std::vector<BigRat>> stochastic_kernel(Rng& rng,
                                                   std::size_t source_arity,
                                                   std::size_t target_arity) {
  std::vector<std::vector<BigRat>> rows(source_arity);
  for (auto& row : rows) row = random_distribution(rng, target_arity);
  return rows;
}

std::vector<BigRat> exact_pushforward(const std::vector<BigRat>& source,
                                      const std::vector<std::vector<BigRat>>& kernel) {
  std::vector<BigRat> target(kernel[0].size(), BigRat(0));
  for (std::size_t i = 0; i < source.size(); ++i) {
    for (std::size_t j = 0; j < target.size(); ++j) {
      target[j] += source[i] * kernel[i][j];
    }
  }
  return target;
}

}  // namespace

OracleLawReport oracle_entropy_laws(std::size_t arity_bound, std::size_t trials,
                                    std::uint64_t seed) {
  if (arity_bound == 0 || arity_bound > 8) {
    throw std::invalid_argument("arity bound must be in 1..8");
  }
  OracleLawReport report;
  report.trials = trials;
  report.arity_bound = arity_bound;
  report.seed = seed;
  Rng rng(seed);

  auto diverge = [&report](std::size_t trial, const char* what, double engine,
                           double oracle_value) {
    ++report.divergence_count;
    if (report.divergences.size() < 100) {
      report.divergences.push_back({trial, what, engine, oracle_value});
    }
  };
  auto compare = [&](std::size_t trial, const char* what, double engine,
                     double oracle_value) {
    if (std::abs(engine - oracle_value) > kIdentityTolerance) {
      diverge(trial, what, engine, oracle_value);
    }
  };

  for (std::size_t t = 0; t < trials; ++t) {
    const int kind = static_cast<int>(t % 3);  // 0 det, 1 ref, 2 bij
    const std::size_t n = 1 + rng.below(arity_bound);

    RationalChain chain;
    chain.ticks.push_back(rng.range(0, 10));
    chain.ticks.push_back(chain.ticks[0] + rng.range(1, 5));
    chain.stages.push_back(t % 101 == 7 ? near_degenerate_distribution(n)
                                        : random_distribution(rng, n));

    bool bijective = false;
    if (kind == 0) {
      const std::size_t m = 1 + rng.below(n);
      chain.kernels.push_back(deterministic_surjective_kernel(rng, n, m));
      bijective = (m == n);
      ++report.deterministic_trials;
    } else if (kind == 1) {
      const std::size_t m = n + rng.below(arity_bound - n + 1);
      chain.kernels.push_back(refinement_kernel(rng, n, m));
      bijective = (m == n);
      ++report.refinement_trials;
    } else {
      chain.kernels.push_back(bijective_kernel(rng, n));
      bijective = true;
      ++report.bijective_trials;
    }
    chain.stages.push_back(exact_pushforward(chain.stages[0], chain.kernels[0]));

    // Every fifth trial grows a third stage through a general kernel.
    if (t % 5 == 0) {
      const std::size_t m2 = 1 + rng.below(arity_bound);
      chain.ticks.push_back(chain.ticks[1] + rng.range(1, 5));
      chain.kernels.push_back(
          stochastic_kernel(rng, chain.stages[1].size(), m2));
      chain.stages.push_back(exact_pushforward(chain.stages[1], chain.kernels[1]));
    }

    if (!exactly_valid(chain)) {
      diverge(t, "exact_validity", 0.0, 1.0);
      continue;
    }
    ProcessChain pc = to_process_chain(chain);
    if (!validate_chain(pc).ok()) {
      diverge(t, "validate_chain", 0.0, 1.0);
      continue;
    }

    const auto paths = enumerate_joint(chain);
    const double hx = marginal_entropy(paths, chain, 0);
    const double hy = marginal_entropy(paths, chain, 1);
    const double hyx = conditional_entropy_from_joint(paths, chain, 0, 1);
    const double hxy = conditional_entropy_from_joint(paths, chain, 1, 0);
    const double mi = mutual_information_from_joint(paths, chain, 0, 1);

    compare(t, "H(X0)", entropy(pc.stages[0]), hx);
    compare(t, "H(Y1)", entropy(pc.stages[1]), hy);
    compare(t, "H(Y1|X0)",
            conditional_entropy(pc.stages[0], pc.kernels[0], Direction::Forward),
            hyx);
    compare(t, "H(X0|Y1)",
            conditional_entropy(pc.stages[0], pc.kernels[0], Direction::Backward),
            hxy);
    compare(t, "I(X0;Y1)",
            mutual_information_volume(pc.stages[0], pc.kernels[0]).bits, mi);
    if (chain.stage_count() == 3) {
      compare(t, "H(Z2)", entropy(pc.stages[2]),
              marginal_entropy(paths, chain, 2));
      compare(t, "H(Z2|Y1)",
              conditional_entropy(pc.stages[1], pc.kernels[1], Direction::Forward),
              conditional_entropy_from_joint(paths, chain, 1, 2));
    }

    if (kind == 0 || kind == 2) {
      const auto verdict = entropy_reduction_verdict(pc, 0);
      compare(t, "T1.lhs", verdict.lhs_bits, hy);
      compare(t, "T1.rhs", verdict.rhs_bits, hx);
      const bool oracle_holds = hy <= hx + kProbabilityTolerance;
      if (!verdict.holds || !oracle_holds) {
        ++report.law_violations;
        diverge(t, "T1.holds", verdict.holds ? 1.0 : 0.0, oracle_holds ? 1.0 : 0.0);
      }
      if (verdict.equality != bijective) {
        ++report.law_violations;
        diverge(t, "T1.equality", verdict.equality ? 1.0 : 0.0,
                bijective ? 1.0 : 0.0);
      }
      if (verdict.equality) ++report.equality_cases;
      if (verdict.decomposition_gap > kIdentityTolerance) {
        diverge(t, "T1.decomposition", verdict.decomposition_gap, 0.0);
      }
      if (std::abs(hx - (hy + hxy)) > kIdentityTolerance) {
        diverge(t, "oracle.decomposition", hx, hy + hxy);
      }
      const auto surjective = check_surjectivity(pc.kernels[0], pc.stages[1]);
      if (!surjective.surjective) ++report.surjectivity_failures;
    }
    if (kind == 1 || kind == 2) {
      const auto verdict = entropy_increase_verdict(pc, 0);
      compare(t, "T2.lhs", verdict.lhs_bits, hy);
      compare(t, "T2.rhs", verdict.rhs_bits, hx);
      const bool oracle_holds = hy >= hx - kProbabilityTolerance;
      if (!verdict.holds || !oracle_holds) {
        ++report.law_violations;
        diverge(t, "T2.holds", verdict.holds ? 1.0 : 0.0, oracle_holds ? 1.0 : 0.0);
      }
      if (verdict.equality != bijective) {
        ++report.law_violations;
        diverge(t, "T2.equality", verdict.equality ? 1.0 : 0.0,
                bijective ? 1.0 : 0.0);
      }
      if (kind == 1 && verdict.equality) ++report.equality_cases;
      if (verdict.decomposition_gap > kIdentityTolerance) {
        diverge(t, "T2.decomposition", verdict.decomposition_gap, 0.0);
      }
    }

    // Conservation of the realized path under the black-hole extension.
    {
      std::vector<std::string> realized;
      std::size_t cur = rng.below(pc.stages[0].size());
      realized.push_back(pc.stages[0].outcomes[cur].label);
      bool dead_end = false;
      for (std::size_t k = 0; k < pc.kernels.size(); ++k) {
        std::vector<std::size_t> candidates;
        for (std::size_t j = 0; j < pc.kernels[k].target_arity(); ++j) {
          if (pc.kernels[k].rows[cur][j] > 0.0) candidates.push_back(j);
        }
        if (candidates.empty()) {
          dead_end = true;
          break;
        }
        cur = candidates[rng.below(candidates.size())];
        realized.push_back(pc.stages[k + 1].outcomes[cur].label);
      }
      if (!dead_end) {
        ProcessChain with_path = pc;
        with_path.realized = realized;
        const auto extended = extend_with_blackhole(with_path);
        const auto conservation = conservation_check(extended);
        if (!conservation.conserved || !blackhole_absorbing(extended)) {
          ++report.conservation_failures;
          diverge(t, "T3.conserved", conservation.end_bits,
                  conservation.start_bits);
        }
      }
    }
  }
  return report;
}

}  // namespace tmi::oracle
