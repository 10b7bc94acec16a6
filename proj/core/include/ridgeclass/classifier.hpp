#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ridgeclass/features.hpp"
#include "ridgeclass/image_io.hpp"

namespace ridgeclass {

struct KnnConfig {
  std::size_t k_neighbors = 1;

  friend bool operator==(const KnnConfig&, const KnnConfig&) = default;
};

struct Neighbor {
  std::size_t index = 0;  // position in the scanned entries
  std::string source_id;
  Gender gender = Gender::Male;
  int finger_no = 1;
  double distance = 0.0;
};

struct Classification {
  Gender label = Gender::Male;
  std::map<Gender, std::size_t> votes;
  /// Ascending by (distance, source_id).
  std::vector<Neighbor> neighbors;
};

/// sqrt(sum (a_i - b_i)^2); LengthMismatch when sizes differ.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Exhaustive scan. The k nearest entries under the total order
/// (distance, source_id, index) vote; a tied vote goes to the class of the
/// single nearest neighbour.
Classification knn_classify(std::span<const double> query,
                            std::span<const LabeledFeature> entries, const KnnConfig& config);

/// Also checks the query layout against the database's.
Classification knn_classify(const FusedFeature& query, const FeatureDatabase& db,
                            const KnnConfig& config);

}  // namespace ridgeclass
