#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "termpat/corpus.hpp"
#include "termpat/eval.hpp"

namespace termpat::worked {

inline const char* kPath = TERMPAT_SOURCE_DIR "/tests/data/worked_examples.tsv";

// Pattern each worked example must be accepted by, in file order.
inline const std::vector<std::string> kExpectedPatterns = {
    "BT1", "BT1", "BT1",    "BT2",    "BT2",    "BT3",    "BT3",   "BT4", "BT5", "BT5",
    "BT6", "BT7", "BT8",    "ELEM",   "CT-WJ1", "CT-WJ2", "CT-WJ3", "CT-IW", "PHR"};

inline std::vector<Sentence> terms() {
  std::ifstream in(kPath);
  return gold_terms(parse_tagged_stream(in, TagMap::identity(), true));
}

}  // namespace termpat::worked
