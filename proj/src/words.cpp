#include "hypb/words.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hypb {

namespace {

bool adjacentLetters(int a, int b, int p) {
  int d = (a - b + p) % p;
  return d == 1 || d == p - 1;
}

struct Run {
  int start = 0;
  int len = 0;
};

// maximal alternating blocks (cyclically adjacent letter pairs), len >= 2;
// consecutive runs may overlap in one letter
std::vector<Run> maximalRuns(const std::vector<int>& w, int p) {
  std::vector<Run> runs;
  int n = (int)w.size();
  int i = 0;
  while (i + 1 < n) {
    if (!adjacentLetters(w[i], w[i + 1], p)) {
      ++i;
      continue;
    }
    int j = i + 2;
    while (j < n && adjacentLetters(w[j - 1], w[j], p) && w[j] == w[j - 2]) ++j;
    runs.push_back({i, j - i});
    i = j - 1;
  }
  return runs;
}

}  // namespace

Word make_word(TilingParams params, const std::vector<int>& letters) {
  params.validate();
  for (int a : letters)
    if (a < 1 || a > params.p) throw param_error("word letter out of range 1..p");
  return {params, letters};
}

Word parse_word(TilingParams params, const std::string& digits) {
  if (params.p > 9) throw param_error("digit-string words need p <= 9");
  std::vector<int> letters;
  for (char c : digits) {
    if (c < '0' || c > '9') throw param_error("word must be a digit string");
    letters.push_back(c - '0');
  }
  return make_word(params, letters);
}

Verdict check_admissible(const Word& w, RuleSet rules) {
  const int p = w.params.p, q = w.params.q;
  w.params.validate();
  const bool even = (q % 2 == 0);
  if ((rules == RuleSet::E) != even)
    throw param_error("rule set parity does not match q");

  std::string pairRule = even ? "E1" : "O1";
  std::string runRule;
  int thresh = 0;  // minimal forbidden alternating length
  switch (rules) {
    case RuleSet::E:
      runRule = "E2";
      thresh = q / 2 + 1;
      break;
    case RuleSet::OUpper:
      runRule = "O2";
      thresh = (q + 3) / 2;
      break;
    case RuleSet::OLower:
      runRule = "O-lower";
      thresh = (q - 1) / 2;
      break;
  }

  const auto& a = w.letters;
  const int n = (int)a.size();
  if (thresh == 1 && n > 0) return {false, Violation{runRule, 1, 1}};
  int r = 0;  // start of the alternating run ending at the current letter
  for (int e = 1; e < n; ++e) {
    if (a[e] == a[e - 1]) return {false, Violation{pairRule, e, 2}};
    if (adjacentLetters(a[e - 1], a[e], p) && (e - 1 == r || a[e] == a[e - 2])) {
      // run continues
    } else if (adjacentLetters(a[e - 1], a[e], p)) {
      r = e - 1;
    } else {
      r = e;
    }
    if (e - r + 1 >= thresh) return {false, Violation{runRule, r + 1, thresh}};
  }
  return {true, std::nullopt};
}

std::vector<Word> vertex_sequence_neighbors(const Word& w) {
  const int p = w.params.p, q = w.params.q;
  w.params.validate();
  if (q % 2 != 0) throw param_error("vertex sequence moves need q even");
  const int nu = q / 2;
  std::vector<Word> out;
  for (const Run& run : maximalRuns(w.letters, p)) {
    if (run.len != nu) continue;
    Word v = w;
    int a = w.letters[run.start], b = w.letters[run.start + 1];
    for (int t = 0; t < run.len; ++t) v.letters[run.start + t] = (t % 2 == 0) ? b : a;
    out.push_back(std::move(v));
  }
  return out;
}

WordClass word_class(const Word& w, std::size_t cap) {
  std::set<std::vector<int>> seen{w.letters};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    for (Word& nb : vertex_sequence_neighbors(cur)) {
      if (seen.insert(nb.letters).second) {
        if (seen.size() > cap) throw resource_error("word class closure exceeds cap");
        queue.push_back(std::move(nb));
      }
    }
  }
  WordClass cls;
  cls.classAdmissible = true;
  for (const auto& letters : seen) {
    Word m{w.params, letters};
    if (!check_admissible(m, RuleSet::E).admissible) cls.classAdmissible = false;
    cls.members.push_back(std::move(m));
  }
  cls.canonical = cls.members.front();  // set iteration is sorted
  return cls;
}

ClassEnumeration enumerate_admissible_classes(TilingParams params, int n, std::size_t cap) {
  params.validate();
  if (params.q % 2 != 0) throw param_error("class enumeration needs q even");
  if (n < 0) throw param_error("word length must be >= 0");
  const int p = params.p, nu = params.q / 2;

  ClassEnumeration out;
  if (n == 0) {
    out.count = 1;
    out.canonicals.push_back({params, {}});
    return out;
  }

  std::set<std::vector<int>> seen;
  std::vector<int> w;
  std::vector<int> runStart;  // runStart[k]: alternating-run start when |w| = k+1

  auto visit = [&](auto&& self) -> void {
    if ((int)w.size() == n) {
      if (seen.count(w)) return;
      WordClass cls = word_class({params, w}, cap);
      for (const Word& m : cls.members) {
        seen.insert(m.letters);
        if (seen.size() > cap) throw resource_error("class enumeration exceeds cap");
      }
      if (cls.classAdmissible && cls.canonical.letters == w) {
        ++out.count;
        out.canonicals.push_back(cls.canonical);
      }
      return;
    }
    for (int a = 1; a <= p; ++a) {
      int k = (int)w.size();
      if (k > 0) {
        if (a == w[k - 1]) continue;  // E1
        int rPrev = runStart[k - 1];  // run ending at w[k-1]
        int r;
        if (adjacentLetters(w[k - 1], a, p) && (k - 1 == rPrev || a == w[k - 2]))
          r = rPrev;
        else if (adjacentLetters(w[k - 1], a, p))
          r = k - 1;
        else
          r = k;
        if (k - r + 1 > nu) continue;  // E2
        runStart.push_back(r);
      } else {
        runStart.push_back(0);
      }
      w.push_back(a);
      self(self);
      w.pop_back();
      runStart.pop_back();
    }
  };
  visit(visit);

  // canonicals were found in DFS order of their class's first-visited member;
  // the canonical itself need not be visited first, so sort for determinism
  std::sort(out.canonicals.begin(), out.canonicals.end());
  return out;
}

namespace {

std::vector<int> initialFrame(const TilingGraph& g, const std::vector<int>& baseLabels) {
  const int p = g.params.p;
  std::vector<int> frame(p);
  if (baseLabels.empty()) {
    for (int i = 0; i < p; ++i) frame[i] = i + 1;
  } else {
    if ((int)baseLabels.size() != p) throw param_error("baseLabels must have p entries");
    std::vector<bool> used(p + 1, false);
    for (int a : baseLabels) {
      if (a < 1 || a > p || used[a]) throw param_error("baseLabels must be a permutation of 1..p");
      used[a] = true;
    }
    frame = baseLabels;
  }
  return frame;
}

// reflect the side-label frame of tile t across edge at index i into the
// neighbouring tile; returns (neighbour, its frame)
std::pair<int, std::vector<int>> reflectFrame(const TilingGraph& g, int t,
                                              const std::vector<int>& frame, int i) {
  const int p = g.params.p;
  int e = g.tileEdges[t][i];
  int u = g.tileAcross(e, t);
  if (u < 0) throw depth_error("path leaves the generated region");
  int j = -1;
  for (int k = 0; k < p; ++k)
    if (g.tileEdges[u][k] == e) j = k;
  std::vector<int> nf(p);
  for (int s = 0; s < p; ++s) nf[(j + s) % p] = frame[(i - s + p) % p];
  return {u, std::move(nf)};
}

}  // namespace

TilingPath word_to_path(const Word& w, const TilingGraph& g, int baseTile,
                        const std::vector<int>& baseLabels) {
  if (w.params.p != g.params.p || w.params.q != g.params.q)
    throw param_error("word and graph parameters differ");
  int t = baseTile < 0 ? g.baseTile : baseTile;
  if (t < 0 || t >= g.tileCount()) throw param_error("base tile out of range");
  std::vector<int> frame = initialFrame(g, baseLabels);
  TilingPath path;
  path.tiles.push_back(t);
  for (int a : w.letters) {
    int i = -1;
    for (int k = 0; k < g.params.p; ++k)
      if (frame[k] == a) i = k;
    path.edges.push_back(g.tileEdges[t][i]);
    auto [u, nf] = reflectFrame(g, t, frame, i);
    t = u;
    frame = std::move(nf);
    path.tiles.push_back(t);
  }
  return path;
}

Word path_to_word(const TilingPath& path, const TilingGraph& g,
                  const std::vector<int>& baseLabels) {
  validate_path(g, path);
  std::vector<int> frame = initialFrame(g, baseLabels);
  Word w{g.params, {}};
  for (int k = 0; k < path.length(); ++k) {
    int t = path.tiles[k];
    int i = -1;
    for (int s = 0; s < g.params.p; ++s)
      if (g.tileEdges[t][s] == path.edges[k]) i = s;
    w.letters.push_back(frame[i]);
    auto [u, nf] = reflectFrame(g, t, frame, i);
    if (u != path.tiles[k + 1]) throw param_error("path steps do not match edges");
    frame = std::move(nf);
  }
  return w;
}

}  // namespace hypb
