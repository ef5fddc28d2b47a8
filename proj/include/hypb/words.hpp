#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypb/paths.hpp"
#include "hypb/tiling.hpp"

namespace hypb {

struct Word {
  TilingParams params;
  std::vector<int> letters;  // 1..p

  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator<(const Word& o) const { return letters < o.letters; }
};

Word make_word(TilingParams params, const std::vector<int>& letters);  // range-checks
Word parse_word(TilingParams params, const std::string& digits);       // "1212"; p <= 9

enum class RuleSet { E, OUpper, OLower };

struct Violation {
  std::string rule;  // E1, E2, O1, O2, O-lower
  int position = 0;  // 1-based start of the violating subword
  int length = 0;
};

struct Verdict {
  bool admissible = true;
  std::optional<Violation> violation;
};

// First violation scanning left to right.  Alternation means consecutive
// letters cyclically adjacent in {1..p} (p and 1 included).
Verdict check_admissible(const Word& w, RuleSet rules);

// All words reachable by swapping the phase of one maximal alternating block
// of length exactly q/2 (q even).
std::vector<Word> vertex_sequence_neighbors(const Word& w);

struct WordClass {
  std::vector<Word> members;  // sorted
  Word canonical;
  bool classAdmissible = false;
};

WordClass word_class(const Word& w, std::size_t cap = 1 << 20);

struct ClassEnumeration {
  std::int64_t count = 0;
  std::vector<Word> canonicals;  // sorted
};

// Admissible word classes of length n (q even), deduplicated by canonical form.
ClassEnumeration enumerate_admissible_classes(TilingParams params, int n,
                                              std::size_t cap = 1 << 24);

// Walk the tiling by edge labels.  The label frame starts as baseLabels
// (default 1..p) on the base tile and is reflected across each crossed edge,
// which for q even agrees with the global labeling.
TilingPath word_to_path(const Word& w, const TilingGraph& g, int baseTile = -1,
                        const std::vector<int>& baseLabels = {});

Word path_to_word(const TilingPath& path, const TilingGraph& g,
                  const std::vector<int>& baseLabels = {});

}  // namespace hypb
