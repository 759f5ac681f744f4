#include "esdsim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace esd {

namespace {

constexpr double kLargeZ = 1e9;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// Outcome table for repeated Born sampling: eigenvalues of the merged
// eigenspaces plus one cumulative distribution per sampled state.
struct OutcomeTable {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> cumulative;  // one cdf per prepared state
  std::vector<long> counts;                     // molecules per prepared state

  double draw(std::size_t state_idx, double u) const {
    const auto& cdf = cumulative[state_idx];
    for (std::size_t k = 0; k + 1 < cdf.size(); ++k)
      if (u < cdf[k]) return eigenvalues[k];
    return eigenvalues.back();
  }
};

std::vector<double> born_probabilities(const EigenDecomposition& eig, const Vector& psi) {
  std::vector<double> probs;
  probs.reserve(eig.eigenprojectors.size());
  double sum = 0.0;
  for (const Matrix& proj : eig.eigenprojectors) {
    const double p = std::max(psi.dot(proj * psi).real(), 0.0);
    probs.push_back(p);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::runtime_error("born sampling: probability normalization failure (sum = " +
                             std::to_string(sum) + ")");
  for (double& p : probs) p /= sum;
  return probs;
}

std::vector<double> mixed_probabilities(const EigenDecomposition& eig, const Matrix& rho) {
  std::vector<double> probs;
  probs.reserve(eig.eigenprojectors.size());
  double sum = 0.0;
  for (const Matrix& proj : eig.eigenprojectors) {
    const double p = std::max((rho * proj).trace().real(), 0.0);
    probs.push_back(p);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::runtime_error("born sampling: probability normalization failure (sum = " +
                             std::to_string(sum) + ")");
  for (double& p : probs) p /= sum;
  return probs;
}

std::vector<double> to_cumulative(const std::vector<double>& probs) {
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  return cdf;
}

OutcomeTable prepare_composition(const EnsembleComposition& comp,
                                 const HermitianObservable& omega) {
  const EigenDecomposition eig = eigendecompose(omega);
  OutcomeTable table;
  table.eigenvalues = eig.eigenvalues;
  for (const Component& c : comp.components()) {
    table.cumulative.push_back(to_cumulative(born_probabilities(eig, c.state.amplitudes())));
    table.counts.push_back(std::lround(c.count));
  }
  return table;
}

// One ensemble preparation: molecule m draws from round_stream.child(m).
double run_round(const OutcomeTable& table, const SplitStream& round_stream) {
  double sum = 0.0;
  std::uint64_t molecule = 0;
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    for (long k = 0; k < table.counts[i]; ++k, ++molecule) {
      SplitStream s = round_stream.child(molecule);
      sum += table.draw(i, s.uniform());
    }
  }
  return sum;
}

std::vector<double> run_rounds(const OutcomeTable& table, const SampleConfig& cfg,
                               int threads) {
  require(cfg.rounds >= 1, "sampling: rounds must be >= 1");
  const SplitStream root(cfg.seed);
  std::vector<double> sums(static_cast<std::size_t>(cfg.rounds));

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cfg.rounds));

  auto work = [&](long lo, long hi) {
    for (long r = lo; r < hi; ++r)
      sums[static_cast<std::size_t>(r)] = run_round(table, root.child(static_cast<std::uint64_t>(r)));
  };

  if (n_threads <= 1) {
    work(0, cfg.rounds);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (cfg.rounds + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      const long lo = t * chunk;
      const long hi = std::min<long>(lo + chunk, cfg.rounds);
      if (lo >= hi) break;
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return sums;
}

// Mean and sample std in fixed round order, so results are bitwise
// reproducible no matter how the rounds were scheduled.
EstimateReport summarize(const std::vector<double>& sums) {
  EstimateReport report;
  report.rounds = static_cast<long>(sums.size());
  double mean = 0.0;
  for (double x : sums) mean += x;
  mean /= static_cast<double>(sums.size());
  double ss = 0.0;
  for (double x : sums) ss += (x - mean) * (x - mean);
  report.empirical_mean = mean;
  report.empirical_std = std::sqrt(ss / static_cast<double>(sums.size() - 1));
  report.stderr_of_std =
      report.empirical_std / std::sqrt(2.0 * static_cast<double>(sums.size() - 1));
  return report;
}

void check_collective_dims(Eigen::Index d, const CollectiveObservable& omega,
                           const char* who) {
  if (d != omega.per_molecule.dim())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

double born_sample(const PureState& state, const HermitianObservable& omega,
                   SplitStream& stream) {
  if (state.dim() != omega.dim())
    throw std::invalid_argument("born_sample: dimension mismatch");
  const EigenDecomposition eig = eigendecompose(omega);
  const auto probs = born_probabilities(eig, state.amplitudes());
  const double u = stream.uniform();
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc) return eig.eigenvalues[k];
  }
  return eig.eigenvalues.back();
}

double sample_collective_round(const EnsembleComposition& comp,
                               const CollectiveObservable& omega,
                               const SplitStream& round_stream) {
  check_collective_dims(comp.dim(), omega, "sample_collective_round");
  require(comp.has_integral_counts(), "sample_collective_round: counts must be integral");
  return run_round(prepare_composition(comp, omega.per_molecule), round_stream);
}

double sample_mixed_round(const IdenticalMixedEnsemble& ens, const CollectiveObservable& omega,
                          const SplitStream& round_stream) {
  check_collective_dims(ens.rho().rows(), omega, "sample_mixed_round");
  const double n = ens.n_molecules();
  require(std::abs(n - std::round(n)) <= 1e-9, "sample_mixed_round: molecule count must be integral");

  const EigenDecomposition eig = eigendecompose(omega.per_molecule);
  OutcomeTable table;
  table.eigenvalues = eig.eigenvalues;
  table.cumulative.push_back(to_cumulative(mixed_probabilities(eig, ens.rho())));
  table.counts.push_back(std::lround(n));
  return run_round(table, round_stream);
}

EnsembleComposition apportion_integer_counts(const EnsembleComposition& comp) {
  const auto& components = comp.components();
  const long target = std::lround(comp.total_molecules());
  require(target >= 1, "apportion_integer_counts: total rounds to zero molecules");

  std::vector<long> floors(components.size());
  std::vector<std::pair<double, std::size_t>> remainders;  // (-remainder, index)
  long assigned = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    floors[i] = static_cast<long>(std::floor(components[i].count));
    assigned += floors[i];
    remainders.push_back({-(components[i].count - static_cast<double>(floors[i])), i});
  }
  std::stable_sort(remainders.begin(), remainders.end());

  long leftover = target - assigned;
  for (std::size_t k = 0; leftover > 0 && k < remainders.size(); ++k, --leftover)
    ++floors[remainders[k].second];

  std::vector<Component> rounded;
  for (std::size_t i = 0; i < components.size(); ++i)
    if (floors[i] > 0) rounded.push_back({static_cast<double>(floors[i]), components[i].state});
  return EnsembleComposition(std::move(rounded));
}

std::vector<double> sample_rounds(const EnsembleComposition& comp,
                                  const CollectiveObservable& omega, const SampleConfig& cfg,
                                  int threads) {
  check_collective_dims(comp.dim(), omega, "sample_rounds");
  require(comp.has_integral_counts(), "sample_rounds: counts must be integral");
  return run_rounds(prepare_composition(comp, omega.per_molecule), cfg, threads);
}

EstimateReport estimate_fluctuation(const EnsembleComposition& comp,
                                    const CollectiveObservable& omega, const SampleConfig& cfg,
                                    int threads) {
  check_collective_dims(comp.dim(), omega, "estimate_fluctuation");
  require(cfg.rounds >= 2, "estimate_fluctuation: need at least 2 rounds");

  const EnsembleComposition sampled =
      comp.has_integral_counts() ? comp : apportion_integer_counts(comp);
  EstimateReport report = summarize(sample_rounds(sampled, omega, cfg, threads));
  report.exact_reference = {ensemble_expectation(sampled, omega.per_molecule),
                            fluctuation_proper(sampled, omega.per_molecule).fluctuation};
  return report;
}

EstimateReport estimate_fluctuation(const IdenticalMixedEnsemble& ens,
                                    const CollectiveObservable& omega, const SampleConfig& cfg,
                                    int threads) {
  check_collective_dims(ens.rho().rows(), omega, "estimate_fluctuation");
  require(cfg.rounds >= 2, "estimate_fluctuation: need at least 2 rounds");
  const double n = ens.n_molecules();
  require(std::abs(n - std::round(n)) <= 1e-9, "estimate_fluctuation: molecule count must be integral");

  const EigenDecomposition eig = eigendecompose(omega.per_molecule);
  OutcomeTable table;
  table.eigenvalues = eig.eigenvalues;
  table.cumulative.push_back(to_cumulative(mixed_probabilities(eig, ens.rho())));
  table.counts.push_back(std::lround(n));

  EstimateReport report = summarize(run_rounds(table, cfg, threads));
  report.exact_reference = {n * (ens.rho() * omega.per_molecule.matrix()).trace().real(),
                            fluctuation_identical_mixed(ens, omega.per_molecule)};
  return report;
}

PreskillResult preskill_protocol(long pairs, char bob_basis, SplitStream stream) {
  require(pairs >= 1, "preskill_protocol: need at least one pair");
  require(bob_basis == 'z' || bob_basis == 'x', "preskill_protocol: basis must be 'z' or 'x'");

  long matches = 0;
  for (long i = 0; i < pairs; ++i) {
    SplitStream s = stream.child(static_cast<std::uint64_t>(i));
    const int bob = s.uniform() < 0.5 ? +1 : -1;
    int alice;
    if (bob_basis == 'z') {
      // Bob's z outcome collapses Alice onto |0> or |1>: her z measurement
      // repeats his result deterministically.
      alice = bob;
    } else {
      // Collapse onto |+x> or |-x>: Alice's z outcome is uniform and
      // independent of Bob's.
      alice = s.uniform() < 0.5 ? +1 : -1;
    }
    if (alice == bob) ++matches;
  }
  return {static_cast<double>(matches) / static_cast<double>(pairs), bob_basis, pairs};
}

DistinguishReport distinguish_compositions(const EnsembleComposition& a,
                                           const EnsembleComposition& b,
                                           const CollectiveObservable& omega,
                                           const std::vector<double>& data, double threshold) {
  check_collective_dims(a.dim(), omega, "distinguish_compositions");
  check_collective_dims(b.dim(), omega, "distinguish_compositions");
  require(data.size() >= 2, "distinguish_compositions: need at least 2 round sums");

  const double rounds = static_cast<double>(data.size());
  double mean = 0.0;
  for (double x : data) mean += x;
  mean /= rounds;
  double ss = 0.0;
  for (double x : data) ss += (x - mean) * (x - mean);
  const double std_dev = std::sqrt(ss / (rounds - 1.0));

  struct Moments {
    double mean, std;
  };
  auto predict = [&](const EnsembleComposition& comp) -> Moments {
    return {ensemble_expectation(comp, omega.per_molecule),
            fluctuation_proper(comp, omega.per_molecule).fluctuation};
  };
  const Moments ma = predict(a);
  const Moments mb = predict(b);

  // z = max of the mean and std z-scores. A zero-fluctuation hypothesis
  // predicts every round exactly; anything else is an unbounded mismatch.
  auto z_score = [&](const Moments& m) {
    if (m.std <= 1e-12) {
      const bool matches =
          std::abs(mean - m.mean) <= 1e-9 * std::max(1.0, std::abs(m.mean)) && std_dev <= 1e-9;
      return matches ? 0.0 : kLargeZ;
    }
    const double z_mean = std::abs(mean - m.mean) / (m.std / std::sqrt(rounds));
    const double z_std = std::abs(std_dev - m.std) / (m.std / std::sqrt(2.0 * (rounds - 1.0)));
    return std::max(z_mean, z_std);
  };
  const double za = z_score(ma);
  const double zb = z_score(mb);

  const double scale = std::max({1.0, std::abs(ma.mean), std::abs(mb.mean), ma.std, mb.std});
  const bool identical_predictions =
      std::abs(ma.mean - mb.mean) <= 1e-9 * scale && std::abs(ma.std - mb.std) <= 1e-9 * scale;

  DistinguishReport report;
  report.observable_label = omega.label;
  report.z_statistic = za - zb;
  report.threshold = threshold;
  if (identical_predictions || (za < threshold && zb < threshold) || za == zb)
    report.chosen = Chosen::Inconclusive;
  else
    report.chosen = za < zb ? Chosen::First : Chosen::Second;
  return report;
}

}  // namespace esd
