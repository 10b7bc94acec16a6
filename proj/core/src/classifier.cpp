#include "ridgeclass/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "ridgeclass/error.hpp"

namespace ridgeclass {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "vectors of length " + std::to_string(a.size()) +
                                               " and " + std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

Classification knn_classify(std::span<const double> query,
                            std::span<const LabeledFeature> entries, const KnnConfig& config) {
  if (config.k_neighbors == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (config.k_neighbors > entries.size()) {
    throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(config.k_neighbors) +
                                          " exceeds database size " +
                                          std::to_string(entries.size()));
  }

  std::vector<double> distances(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    distances[i] = euclidean_distance(query, entries[i].feature.values);
  }

  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto k = static_cast<std::ptrdiff_t>(config.k_neighbors);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return std::tie(distances[a], entries[a].source_id, a) <
                             std::tie(distances[b], entries[b].source_id, b);
                    });

  Classification result;
  result.votes = {{Gender::Male, 0}, {Gender::Female, 0}};
  result.neighbors.reserve(config.k_neighbors);
  for (std::ptrdiff_t i = 0; i < k; ++i) {
    const std::size_t idx = order[static_cast<std::size_t>(i)];
    const auto& e = entries[idx];
    result.neighbors.push_back({idx, e.source_id, e.gender, e.finger_no, distances[idx]});
    ++result.votes[e.gender];
  }

  const std::size_t male = result.votes[Gender::Male];
  const std::size_t female = result.votes[Gender::Female];
  if (male != female) {
    result.label = male > female ? Gender::Male : Gender::Female;
  } else {
    result.label = result.neighbors.front().gender;
  }
  return result;
}

Classification knn_classify(const FusedFeature& query, const FeatureDatabase& db,
                            const KnnConfig& config) {
  if (!(query.layout == db.config.layout) || query.values.size() != db.config.layout.total()) {
    throw Error(ErrorCode::LengthMismatch,
                "query feature (" + std::to_string(query.layout.spectrum_len) + "+" +
                    std::to_string(query.layout.energy_len) + ") does not match database layout (" +
                    std::to_string(db.config.layout.spectrum_len) + "+" +
                    std::to_string(db.config.layout.energy_len) + ")");
  }
  return knn_classify(query.values, db.entries, config);
}

}  // namespace ridgeclass
