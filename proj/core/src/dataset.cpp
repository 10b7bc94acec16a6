#include <map>
#include <numeric>
#include <utility>

#include "ridgeclass/error.hpp"
#include "ridgeclass/image_io.hpp"
#include "ridgeclass/random.hpp"

namespace ridgeclass {

DatasetSplit split_dataset(const std::vector<SampleMeta>& samples, std::uint64_t seed) {
  if (samples.empty()) throw Error(ErrorCode::EmptyDataset, "cannot split an empty sample list");

  // Strata are visited in (gender, finger) order so the RNG stream consumed
  // by each stratum does not depend on the input ordering of other strata.
  std::map<std::pair<int, int>, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    strata[{static_cast<int>(samples[i].gender), samples[i].finger_no}].push_back(i);
  }

  std::vector<bool> to_learning(samples.size(), false);
  DatasetSplit split;
  PortableRng rng(seed);
  for (auto& [key, members] : strata) {
    // Fisher-Yates.
    for (std::size_t i = members.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.below(i));
      std::swap(members[i - 1], members[j]);
    }
    const std::size_t n_learn = members.size() * 2 / 3;
    for (std::size_t i = 0; i < n_learn; ++i) to_learning[members[i]] = true;
    if (n_learn == 0) {
      split.warnings.push_back("stratum (gender " +
                               std::string(to_string(static_cast<Gender>(key.first))) +
                               ", finger " + std::to_string(key.second) + ") has " +
                               std::to_string(members.size()) +
                               " sample(s); none go to learning");
    }
  }

  for (std::size_t i = 0; i < samples.size(); ++i) {
    (to_learning[i] ? split.learning : split.testing).push_back(samples[i]);
  }
  return split;
}

}  // namespace ridgeclass
