#pragma once

#include "esdsim/ensemble.hpp"
#include "esdsim/observables.hpp"
#include "esdsim/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace esd {

struct SampleConfig {
  std::uint64_t seed = 0;
  long rounds = 1;  // >= 1
};

struct EstimateReport {
  double empirical_mean = 0.0;
  double empirical_std = 0.0;
  double stderr_of_std = 0.0;  // s / sqrt(2(R-1)), normal approximation
  long rounds = 0;
  // (mean, std) predicted exactly for the composition that was sampled.
  std::optional<std::pair<double, double>> exact_reference;
};

struct PreskillResult {
  double agreement_rate;  // matches / pairs, exact ratio
  char basis_used;        // 'z' or 'x'
  long pairs;
};

enum class Chosen { First, Second, Inconclusive };

struct DistinguishReport {
  std::string observable_label;
  double z_statistic;  // z(first) - z(second); negative favors the first
  Chosen chosen;
  double threshold;
};

// One projective measurement of omega on state, Born probabilities over the
// merged eigenspaces. Exactly one uniform draw is consumed.
double born_sample(const PureState& state, const HermitianObservable& omega,
                   SplitStream& stream);

// One preparation of the whole ensemble: an independent Born sample per
// molecule, summed. Molecule m uses substream round_stream.child(m), so the
// result does not depend on evaluation order. Counts must be integral.
double sample_collective_round(const EnsembleComposition& comp,
                               const CollectiveObservable& omega,
                               const SplitStream& round_stream);

// Mixed-state counterpart: every one of n molecules is measured independently
// with probabilities Tr(rho Pi_k).
double sample_mixed_round(const IdenticalMixedEnsemble& ens,
                          const CollectiveObservable& omega,
                          const SplitStream& round_stream);

// Rounds the counts to integers by largest-remainder apportionment, keeping
// the total number of molecules fixed.
EnsembleComposition apportion_integer_counts(const EnsembleComposition& comp);

// The R round sums for (seed, rounds). Round r uses substream child(r) of the
// seed stream; with threads > 1 rounds are computed concurrently and the
// result is still bit-identical to the single-threaded one.
std::vector<double> sample_rounds(const EnsembleComposition& comp,
                                  const CollectiveObservable& omega,
                                  const SampleConfig& cfg, int threads = 1);

// Mean and sample standard deviation of the round sums over R independent
// preparations. Real-valued counts are apportioned to integers first; the
// exact_reference is computed for the apportioned composition actually
// sampled. Requires rounds >= 2.
EstimateReport estimate_fluctuation(const EnsembleComposition& comp,
                                    const CollectiveObservable& omega,
                                    const SampleConfig& cfg, int threads = 1);

EstimateReport estimate_fluctuation(const IdenticalMixedEnsemble& ens,
                                    const CollectiveObservable& omega,
                                    const SampleConfig& cfg, int threads = 1);

// Shared Bell pairs (|00>+|11>)/sqrt(2): Bob measures each of his qubits in
// bob_basis ('z' or 'x'), collapsing Alice's qubit, then Alice measures
// sigma_z and compares outcomes. z-basis agreement is exactly 1 for every
// seed; x-basis agreement converges to 1/2.
PreskillResult preskill_protocol(long pairs, char bob_basis, SplitStream stream);

// Moment-matching hypothesis test: which composition better explains the
// observed round sums? Each hypothesis gets z = max(z_mean, z_std) against
// its exact (mean, std); inconclusive when both hypotheses are within the
// threshold or when they predict identical moments.
DistinguishReport distinguish_compositions(const EnsembleComposition& a,
                                           const EnsembleComposition& b,
                                           const CollectiveObservable& omega,
                                           const std::vector<double>& data,
                                           double threshold = 3.0);

}  // namespace esd
