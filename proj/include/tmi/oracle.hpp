#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tmi/events.hpp"

// Independent brute-force verifiers for the test suite. Everything here is
// built on exact rational arithmetic and whole-path enumeration so it never
// shares a code path (or a rounding profile) with the engine it checks.
namespace tmi::oracle {

using BigRat = boost::multiprecision::cpp_rational;

// Mirror of ProcessChain with exact probabilities. Stage and row sums must
// equal 1 exactly, no tolerance.
struct RationalChain {
  std::vector<std::int64_t> ticks;
  std::vector<std::vector<BigRat>> stages;
  std::vector<std::vector<std::vector<BigRat>>> kernels;

  std::size_t stage_count() const { return stages.size(); }
};

bool exactly_valid(const RationalChain& chain);

// Double-precision chain with generated labels (x1.., y1.., z1..).
ProcessChain to_process_chain(const RationalChain& chain);

inline constexpr std::size_t kMaxPaths = 1'000'000;

struct PathProbability {
  std::vector<std::size_t> outcomes;  // one index per stage
  BigRat probability;
};

// Exact probability of every full path through the chain, as products of
// kernel entries. Throws TooLarge past kMaxPaths.
std::vector<PathProbability> enumerate_joint(const RationalChain& chain);

// Entropies recomputed from the enumerated joint; rationals only become
// doubles at the final log.
double marginal_entropy(const std::vector<PathProbability>& paths,
                        const RationalChain& chain, std::size_t stage);
double joint_entropy(const std::vector<PathProbability>& paths,
                     const RationalChain& chain, std::size_t stage_a,
                     std::size_t stage_b);
// H(target | given) = H(given, target) - H(given).
double conditional_entropy_from_joint(const std::vector<PathProbability>& paths,
                                      const RationalChain& chain,
                                      std::size_t given_stage,
                                      std::size_t target_stage);
// I(a;b) = H(a) + H(b) - H(a,b).
double mutual_information_from_joint(const std::vector<PathProbability>& paths,
                                     const RationalChain& chain,
                                     std::size_t stage_a, std::size_t stage_b);

// Deterministic random source; all draws go through explicit helpers so runs
// reproduce exactly from the seed regardless of standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, n), debiased.
  std::size_t below(std::size_t n);

  // Uniform in [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 gen_;
};

// Normalized integer composition: arity positive weights over a common
// denominator, so the distribution is exact and strictly positive.
std::vector<BigRat> random_distribution(Rng& rng, std::size_t arity,
                                        std::int64_t max_weight = 60);

// One outcome at 1 - (arity-1)/1e9, the rest sharing the sliver. Stress case
// for near-degenerate sums.
std::vector<BigRat> near_degenerate_distribution(std::size_t arity);

// Uniform random surjection [n] -> [m], m <= n, by rejection.
std::vector<std::vector<BigRat>> deterministic_surjective_kernel(
    Rng& rng, std::size_t source_arity, std::size_t target_arity);

// Each target fed by exactly one source, every source splitting its mass
// over its children with a random exact composition. target_arity >= source.
std::vector<std::vector<BigRat>> refinement_kernel(Rng& rng,
                                                   std::size_t source_arity,
                                                   std::size_t target_arity);

std::vector<std::vector<BigRat>> bijective_kernel(Rng& rng, std::size_t arity);

struct OracleDivergence {
  std::size_t trial = 0;
  std::string quantity;
  double engine = 0.0;
  double oracle = 0.0;
};

struct OracleLawReport {
  std::size_t trials = 0;
  std::size_t arity_bound = 0;
  std::uint64_t seed = 0;
  std::size_t deterministic_trials = 0;
  std::size_t refinement_trials = 0;
  std::size_t bijective_trials = 0;
  std::size_t equality_cases = 0;
  std::size_t law_violations = 0;
  std::size_t surjectivity_failures = 0;
  std::size_t conservation_failures = 0;
  std::size_t divergence_count = 0;
  std::vector<OracleDivergence> divergences;  // first 100 kept

  bool ok() const {
    return divergence_count == 0 && law_violations == 0 &&
           surjectivity_failures == 0 && conservation_failures == 0;
  }
};

// Generates random deterministic / refinement / bijective chains with exact
// rational distributions, recomputes every entropy from the enumerated
// joint, and compares the engine's measures and law verdicts against the
// recomputation. Divergences above 1e-6 are reported.
OracleLawReport oracle_entropy_laws(std::size_t arity_bound, std::size_t trials,
                                    std::uint64_t seed);

}  // namespace tmi::oracle
