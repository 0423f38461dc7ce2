// cmpos/sequence.hpp -- the data contract between feature extraction and the
// sequence model: named feature strings per position plus label strings.

#ifndef CMPOS_SEQUENCE_HPP_
#define CMPOS_SEQUENCE_HPP_

#include <string>
#include <vector>

namespace cmpos {

/// Named feature strings ("name=value") for one position; no duplicates.
using FeatureVector = std::vector<std::string>;

struct LabeledSequence {
  std::vector<FeatureVector> features;
  std::vector<std::string> labels;  // empty when unlabeled
};

}  // namespace cmpos

#endif  // CMPOS_SEQUENCE_HPP_
