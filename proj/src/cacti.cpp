#include "cactus/cacti.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cactus {

CactusError::CactusError(Kind kind, const std::string& what)
    : std::runtime_error(std::string(cactus::to_string(kind)) + ": " + what), kind_(kind) {}

const char* to_string(CactusError::Kind kind) {
  using K = CactusError::Kind;
  switch (kind) {
    case K::InterleavedLobes: return "InterleavedLobes";
    case K::MissingLobe: return "MissingLobe";
    case K::BadParametrization: return "BadParametrization";
    case K::IndexOutOfRange: return "IndexOutOfRange";
    case K::ArityMismatch: return "ArityMismatch";
    case K::SlotOutOfRange: return "SlotOutOfRange";
    case K::IllegalPinch: return "IllegalPinch";
    case K::CountMismatch: return "CountMismatch";
    case K::BadBarycentric: return "BadBarycentric";
    case K::BadMetric: return "BadMetric";
  }
  return "CactusError";
}

namespace {

using Kind = CactusError::Kind;

std::string word_string(const std::vector<int>& w) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ']';
  return os.str();
}

int cyclic_prev(int p, int n) { return p == 0 ? n - 1 : p - 1; }

// First position strictly after `after` (cyclically) carrying `label`.
int next_occurrence(const std::vector<int>& word, int label, int after) {
  const int n = static_cast<int>(word.size());
  for (int step = 1; step <= n; ++step) {
    const int q = (after + step) % n;
    if (word[q] == label) return q;
  }
  return -1;
}

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

// Rotates so that old position `start` becomes position 0.
SpinyCactus rotated(const SpinyCactus& sc, int start) {
  const int n = sc.total_points();
  std::vector<int> w(n);
  for (int p = 0; p < n; ++p) w[p] = sc.word()[(p + start) % n];
  std::vector<int> bp = sc.basepoints();
  for (int& b : bp) b = (b - start + n) % n;
  return SpinyCactus(std::move(w), std::move(bp));
}

}  // namespace

bool is_noncrossing(const std::vector<int>& word) {
  std::set<int> labels(word.begin(), word.end());
  for (int a : labels)
    for (int b : labels) {
      if (b <= a) continue;
      std::vector<int> runs;
      for (int x : word) {
        if (x != a && x != b) continue;
        if (runs.empty() || runs.back() != x) runs.push_back(x);
      }
      if (runs.size() > 1 && runs.front() == runs.back()) runs.pop_back();
      if (runs.size() >= 4) return false;
    }
  return true;
}

SpinyCactus::SpinyCactus(std::vector<int> word, std::vector<int> basepoints)
    : word_(std::move(word)), basepoints_(std::move(basepoints)) {
  if (word_.empty()) throw CactusError(Kind::MissingLobe, "empty traversal word");
  int n = 0;
  for (int x : word_) {
    if (x < 1) throw CactusError(Kind::BadParametrization, "lobe labels start at 1 in " + word_string(word_));
    n = std::max(n, x);
  }
  std::vector<int> first(n, -1);
  for (int p = 0; p < total_points(); ++p)
    if (first[word_[p] - 1] < 0) first[word_[p] - 1] = p;
  for (int k = 0; k < n; ++k)
    if (first[k] < 0)
      throw CactusError(Kind::MissingLobe, "lobe " + std::to_string(k + 1) + " absent from " + word_string(word_));
  if (!is_noncrossing(word_))
    throw CactusError(Kind::InterleavedLobes, word_string(word_) + " has interleaved lobes");
  if (basepoints_.empty()) {
    basepoints_ = first;
  } else {
    if (static_cast<int>(basepoints_.size()) != n)
      throw CactusError(Kind::BadParametrization, "expected " + std::to_string(n) + " basepoints");
    for (int k = 0; k < n; ++k) {
      const int b = basepoints_[k];
      if (b < 0 || b >= total_points() || word_[b] != k + 1)
        throw CactusError(Kind::BadParametrization,
                          "basepoint of lobe " + std::to_string(k + 1) + " is not on that lobe");
    }
  }
}

SpinyCactus SpinyCactus::circle(int points, int basepoint) {
  return SpinyCactus(std::vector<int>(static_cast<std::size_t>(points), 1), {basepoint});
}

std::vector<int> SpinyCactus::counts() const {
  std::vector<int> j(basepoints_.size(), 0);
  for (int x : word_) ++j[x - 1];
  return j;
}

int SpinyCactus::count(int lobe) const {
  return static_cast<int>(std::count(word_.begin(), word_.end(), lobe));
}

std::vector<int> SpinyCactus::occurrences(int lobe) const {
  std::vector<int> occ;
  const int n = total_points();
  const int b = basepoints_[lobe - 1];
  for (int step = 0; step < n; ++step) {
    const int p = (b + step) % n;
    if (word_[p] == lobe) occ.push_back(p);
  }
  return occ;
}

int SpinyCactus::global_index(int lobe, int slot) const {
  if (lobe < 1 || lobe > lobes()) throw CactusError(Kind::SlotOutOfRange, "no lobe " + std::to_string(lobe));
  const auto occ = occurrences(lobe);
  if (slot < 0 || slot >= static_cast<int>(occ.size()))
    throw CactusError(Kind::SlotOutOfRange,
                      "lobe " + std::to_string(lobe) + " has no point " + std::to_string(slot));
  return occ[slot];
}

bool SpinyCactus::switches_into(int pos) const {
  return word_[cyclic_prev(pos, total_points())] != word_[pos];
}

bool SpinyCactus::is_special(int pos) const {
  if (pos == 0 || switches_into(pos)) return true;
  return std::find(basepoints_.begin(), basepoints_.end(), pos) != basepoints_.end();
}

std::vector<Node> SpinyCactus::nodes() const {
  const int n = total_points();
  UnionFind uf(n);
  std::vector<bool> member(n, false);
  for (int p = 0; p < n; ++p) {
    if (!switches_into(p)) continue;
    const int prev = cyclic_prev(p, n);
    const int back = next_occurrence(word_, word_[prev], prev);
    uf.unite(p, back);
    member[p] = member[back] = true;
  }
  std::map<int, Node> classes;
  for (int p = 0; p < n; ++p) {
    if (!member[p]) continue;
    Node& node = classes[uf.find(p)];
    node.positions.push_back(p);
    node.lobes.push_back(word_[p]);
  }
  std::vector<Node> out;
  for (auto& [root, node] : classes) out.push_back(std::move(node));
  std::sort(out.begin(), out.end(), [](const Node& a, const Node& b) { return a.positions < b.positions; });
  return out;
}

int SpinyCactus::total_multiplicity() const {
  int total = 0;
  for (int p = 0; p < total_points(); ++p)
    if (switches_into(p)) ++total;
  return total;
}

SpinyCactus strip_plain_points(const SpinyCactus& sc) {
  std::vector<int> w;
  std::vector<int> new_pos(sc.total_points(), -1);
  for (int p = 0; p < sc.total_points(); ++p) {
    if (!sc.is_special(p)) continue;
    new_pos[p] = static_cast<int>(w.size());
    w.push_back(sc.label(p));
  }
  std::vector<int> bp;
  for (int b : sc.basepoints()) bp.push_back(new_pos[b]);
  return SpinyCactus(std::move(w), std::move(bp));
}

Cactus::Cactus(const SpinyCactus& sc) : spiny_(strip_plain_points(sc)) {}

Cactus validate_cactus(const std::vector<int>& word, const std::vector<int>& basepoints) {
  return Cactus(SpinyCactus(word, basepoints));
}

SpinyCactus relabel(const SpinyCactus& sc, const std::vector<int>& perm) {
  const int n = sc.lobes();
  if (static_cast<int>(perm.size()) != n)
    throw CactusError(Kind::ArityMismatch, "relabeling has wrong length");
  std::vector<int> seen(n, 0);
  for (int x : perm) {
    if (x < 1 || x > n || seen[x - 1]++) throw CactusError(Kind::ArityMismatch, "relabeling is not a permutation");
  }
  std::vector<int> w = sc.word();
  for (int& x : w) x = perm[x - 1];
  std::vector<int> bp(n);
  for (int k = 0; k < n; ++k) bp[perm[k] - 1] = sc.basepoints()[k];
  return SpinyCactus(std::move(w), std::move(bp));
}

Cactus relabel(const Cactus& c, const std::vector<int>& perm) { return Cactus(relabel(c.spiny(), perm)); }

SpinyCactus spiny_degeneracy(const SpinyCactus& sc, int lobe, int slot) {
  const int p = sc.global_index(lobe, slot);
  std::vector<int> w = sc.word();
  w.insert(w.begin() + p + 1, lobe);
  std::vector<int> bp = sc.basepoints();
  for (int& b : bp)
    if (b > p) ++b;
  return SpinyCactus(std::move(w), std::move(bp));
}

SpinyCactus spiny_face(const SpinyCactus& sc, int lobe, int slot) {
  const int p = sc.global_index(lobe, slot);
  const auto occ = sc.occurrences(lobe);
  const int j = static_cast<int>(occ.size());
  if (j < 2)
    throw CactusError(Kind::IllegalPinch, "lobe " + std::to_string(lobe) + " has a single point left");
  const int next = occ[(slot + 1) % j];
  std::vector<int> w = sc.word();
  w.erase(w.begin() + p);
  std::vector<int> bp = sc.basepoints();
  if (bp[lobe - 1] == p) bp[lobe - 1] = next;
  for (int& b : bp)
    if (b > p) --b;
  try {
    return SpinyCactus(std::move(w), std::move(bp));
  } catch (const CactusError& e) {
    throw CactusError(Kind::IllegalPinch, e.what());
  }
}

SpinyCactus spiny_compose(const SpinyCactus& sc, const std::vector<SpinyCactus>& refinements) {
  const int n = sc.lobes();
  if (static_cast<int>(refinements.size()) != n)
    throw CactusError(Kind::ArityMismatch, "expected " + std::to_string(n) + " refinements");
  std::vector<int> w = sc.word();
  std::vector<int> bp;
  int offset = 0;
  for (int k = 1; k <= n; ++k) {
    const SpinyCactus& r = refinements[k - 1];
    const auto occ = sc.occurrences(k);
    if (r.total_points() != static_cast<int>(occ.size()))
      throw CactusError(Kind::CountMismatch, "refinement of lobe " + std::to_string(k) + " carries " +
                                                 std::to_string(r.total_points()) + " points, lobe has " +
                                                 std::to_string(occ.size()));
    for (std::size_t t = 0; t < occ.size(); ++t) w[occ[t]] = offset + r.word()[t];
    for (int b : r.basepoints()) bp.push_back(occ[b]);
    offset += r.lobes();
  }
  return SpinyCactus(std::move(w), std::move(bp));
}

SpinyCactus spiny_compose_at(const SpinyCactus& sc, int lobe, const SpinyCactus& piece) {
  std::vector<SpinyCactus> refs;
  for (int k = 1; k <= sc.lobes(); ++k)
    refs.push_back(k == lobe ? piece : SpinyCactus::circle(sc.count(k)));
  return spiny_compose(sc, refs);
}

Cactus compose(const Cactus& c, int i, const Cactus& d) {
  if (i < 1 || i > c.lobes())
    throw CactusError(Kind::IndexOutOfRange, "cannot compose into lobe " + std::to_string(i) + " of a " +
                                                 std::to_string(c.lobes()) + "-lobe cactus");
  SpinyCactus outer = c.spiny();
  SpinyCactus inner = d.spiny();
  const int inner_points = inner.total_points();
  const int lobe_points = outer.count(i);
  for (int t = 1; t < inner_points; ++t) outer = spiny_degeneracy(outer, i, 0);
  for (int t = 1; t < lobe_points; ++t) {
    const int last = inner.total_points() - 1;
    const int lobe = inner.label(last);
    const auto occ = inner.occurrences(lobe);
    const int slot = static_cast<int>(std::find(occ.begin(), occ.end(), last) - occ.begin());
    inner = spiny_degeneracy(inner, lobe, slot);
  }
  return Cactus(spiny_compose_at(outer, i, inner));
}

Cactus full_compose(const Cactus& c, const std::vector<Cactus>& ds) {
  if (static_cast<int>(ds.size()) != c.lobes())
    throw CactusError(Kind::ArityMismatch, "gamma of a " + std::to_string(c.lobes()) + "-lobe cactus needs " +
                                               std::to_string(c.lobes()) + " inputs, got " +
                                               std::to_string(ds.size()));
  Cactus result = c;
  for (int k = c.lobes(); k >= 1; --k) result = compose(result, k, ds[k - 1]);
  return result;
}

Decomposition decompose_generators(const Cactus& c) {
  SpinyCactus cur = c.spiny();
  std::vector<PinchStep> reversed;
  while (cur.lobes() > 1) {
    const auto nodes = cur.nodes();
    std::vector<int> node_count(cur.lobes(), 0);
    for (const auto& node : nodes)
      for (int l : node.lobes) ++node_count[l - 1];
    int leaf = 0;
    for (int k = cur.lobes(); k >= 1; --k)
      if (node_count[k - 1] == 1) {
        leaf = k;
        break;
      }
    int partner = 0;
    for (const auto& node : nodes) {
      if (std::find(node.lobes.begin(), node.lobes.end(), leaf) == node.lobes.end()) continue;
      for (int l : node.lobes)
        if (l != leaf && (partner == 0 || l < partner)) partner = l;
    }

    // Merge the leaf into its partner.
    std::vector<int> w = cur.word();
    for (int& x : w) {
      if (x == leaf) x = partner;
      if (x > leaf) --x;
    }
    std::vector<int> bp;
    for (int k = 1; k <= cur.lobes(); ++k)
      if (k != leaf) bp.push_back(cur.basepoints()[k - 1]);
    SpinyCactus prev(std::move(w), std::move(bp));
    const int merged = partner > leaf ? partner - 1 : partner;

    // The piece records how the merged lobe splits: lobe 1 = partner, lobe 2 = leaf.
    const auto occ = prev.occurrences(merged);
    std::vector<int> piece_word;
    int leaf_base = -1;
    for (std::size_t t = 0; t < occ.size(); ++t) {
      piece_word.push_back(cur.label(occ[t]) == leaf ? 2 : 1);
      if (occ[t] == cur.basepoints()[leaf - 1]) leaf_base = static_cast<int>(t);
    }
    SpinyCactus piece(std::move(piece_word), {0, leaf_base});

    const SpinyCactus composed = spiny_compose_at(prev, merged, piece);
    std::vector<int> perm(cur.lobes(), 0);
    for (int p = 0; p < cur.total_points(); ++p) perm[composed.label(p) - 1] = cur.label(p);
    reversed.push_back({merged, std::move(piece), std::move(perm)});
    cur = std::move(prev);
  }
  Decomposition dec;
  dec.circle = cur;
  dec.steps.assign(reversed.rbegin(), reversed.rend());
  return dec;
}

Cactus recompose(const Decomposition& dec) {
  SpinyCactus sc = dec.circle;
  for (const auto& step : dec.steps) sc = relabel(spiny_compose_at(sc, step.lobe, step.piece), step.relabeling);
  return Cactus(sc);
}

namespace {

bool all_special(const SpinyCactus& sc) {
  for (int p = 0; p < sc.total_points(); ++p)
    if (!sc.is_special(p)) return false;
  return true;
}

void collect_basepoint_choices(const std::vector<int>& word, int lobes, std::set<Cactus>& out) {
  std::vector<std::vector<int>> occ(lobes);
  for (int p = 0; p < static_cast<int>(word.size()); ++p) occ[word[p] - 1].push_back(p);
  std::vector<std::size_t> idx(lobes, 0);
  while (true) {
    std::vector<int> bp(lobes);
    for (int k = 0; k < lobes; ++k) bp[k] = occ[k][idx[k]];
    SpinyCactus sc(word, bp);
    if (all_special(sc)) out.insert(Cactus(sc));
    int k = 0;
    while (k < lobes && ++idx[k] == occ[k].size()) idx[k++] = 0;
    if (k == lobes) break;
  }
}

void extend_words(std::vector<int>& word, int lobes, int max_len, int repeats, std::set<Cactus>& out) {
  if (!word.empty()) {
    bool complete = true;
    for (int k = 1; k <= lobes && complete; ++k)
      complete = std::find(word.begin(), word.end(), k) != word.end();
    if (complete && is_noncrossing(word)) {
      // the wrap-around position 0 is always special; only count inner repeats
      collect_basepoint_choices(word, lobes, out);
    }
  }
  if (static_cast<int>(word.size()) == max_len) return;
  for (int x = 1; x <= lobes; ++x) {
    const bool repeat = !word.empty() && word.back() == x;
    if (repeat && repeats == lobes) continue;
    word.push_back(x);
    if (is_noncrossing(word)) extend_words(word, lobes, max_len, repeats + (repeat ? 1 : 0), out);
    word.pop_back();
  }
}

}  // namespace

std::vector<Cactus> enumerate_cacti_bruteforce(int lobes) {
  std::set<Cactus> out;
  std::vector<int> word;
  extend_words(word, lobes, 3 * lobes - 1, 0, out);
  return {out.begin(), out.end()};
}

std::vector<Cactus> enumerate_cacti(int lobes) {
  if (lobes == 1) return {Cactus(SpinyCactus::circle(1)), Cactus(SpinyCactus::circle(2, 1))};
  std::set<Cactus> out;
  for (const Cactus& smaller : enumerate_cacti(lobes - 1)) {
    std::vector<SpinyCactus> expansions{smaller.spiny()};
    for (int k = 1; k <= smaller.lobes(); ++k)
      for (int s = 0; s < smaller.spiny().count(k); ++s) expansions.push_back(spiny_degeneracy(smaller.spiny(), k, s));
    for (const SpinyCactus& u : expansions) {
      for (int fresh = 1; fresh <= lobes; ++fresh) {
        std::vector<int> perm(u.lobes());
        for (int k = 1; k <= u.lobes(); ++k) perm[k - 1] = k >= fresh ? k + 1 : k;
        const int len = u.total_points();
        for (int gap = 0; gap <= len; ++gap)
          for (int r = 1; r <= 3; ++r)
            for (int b = 0; b < r; ++b)
              for (int s = -1; s < r; ++s) {
                std::vector<int> w;
                for (int p = 0; p < gap; ++p) w.push_back(perm[u.label(p) - 1]);
                for (int t = 0; t < r; ++t) w.push_back(fresh);
                for (int p = gap; p < len; ++p) w.push_back(perm[u.label(p) - 1]);
                std::vector<int> bp(lobes);
                for (int k = 1; k <= u.lobes(); ++k) {
                  const int old = u.basepoints()[k - 1];
                  bp[perm[k - 1] - 1] = old >= gap ? old + r : old;
                }
                bp[fresh - 1] = gap + b;
                if (!is_noncrossing(w)) continue;
                SpinyCactus cand(w, bp);
                if (s >= 0) cand = rotated(cand, gap + s);
                if (all_special(cand)) out.insert(Cactus(cand));
              }
      }
    }
  }
  return {out.begin(), out.end()};
}

std::vector<SpinyCactus> enumerate_spiny(int lobes, int max_points) {
  std::set<SpinyCactus> seen;
  std::vector<SpinyCactus> frontier;
  for (const auto& c : enumerate_cacti(lobes))
    if (c.spiny().total_points() <= max_points && seen.insert(c.spiny()).second) frontier.push_back(c.spiny());
  while (!frontier.empty()) {
    std::vector<SpinyCactus> next;
    for (const auto& sc : frontier) {
      if (sc.total_points() >= max_points) continue;
      for (int k = 1; k <= lobes; ++k)
        for (int i = 0; i < sc.count(k); ++i) {
          auto grown = spiny_degeneracy(sc, k, i);
          if (seen.insert(grown).second) next.push_back(std::move(grown));
        }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------- metric

MetricCactus::MetricCactus(Cactus cactus, std::vector<Rational> lengths)
    : cactus_(std::move(cactus)), lengths_(std::move(lengths)) {
  if (static_cast<int>(lengths_.size()) != cactus_.spiny().total_points())
    throw CactusError(Kind::BadMetric, "one arc length per traversal position is required");
  Rational total = 0;
  for (const auto& l : lengths_) {
    if (l <= 0) throw CactusError(Kind::BadMetric, "arc lengths must be positive");
    total += l;
  }
  if (total != 1) throw CactusError(Kind::BadMetric, "radii must sum to 1, got " + total.str());
}

MetricCactus MetricCactus::from_spiny(const SpinyCactus& sc, std::vector<Rational> lengths) {
  if (static_cast<int>(lengths.size()) != sc.total_points())
    throw CactusError(Kind::BadMetric, "one arc length per traversal position is required");
  std::vector<Rational> merged;
  for (int p = 0; p < sc.total_points(); ++p) {
    if (sc.is_special(p)) {
      merged.push_back(lengths[p]);
    } else {
      merged.back() += lengths[p];
    }
  }
  return MetricCactus(Cactus(sc), std::move(merged));
}

std::vector<Rational> MetricCactus::radii() const {
  std::vector<Rational> r(static_cast<std::size_t>(cactus_.lobes()), Rational(0));
  for (int p = 0; p < cactus_.spiny().total_points(); ++p) r[cactus_.word()[p] - 1] += lengths_[p];
  return r;
}

std::vector<Rational> MetricCactus::offsets(int lobe) const {
  std::vector<Rational> out;
  Rational acc = 0;
  for (int p : cactus_.spiny().occurrences(lobe)) {
    out.push_back(acc);
    acc += lengths_[p];
  }
  return out;
}

Rational MetricCactus::start(int pos) const {
  Rational acc = 0;
  for (int q = 0; q < pos; ++q) acc += lengths_[q];
  return acc;
}

Rational basepoint_parameter(const MetricCactus& mc, int lobe) {
  return mc.start(mc.cactus().basepoints()[lobe - 1]);
}

namespace {

// Traversal parameter of the point at `offset` (measured from 0_lobe) on `lobe`.
Rational lobe_point_parameter(const MetricCactus& mc, int lobe, Rational offset) {
  const auto occ = mc.cactus().spiny().occurrences(lobe);
  const auto off = mc.offsets(lobe);
  const Rational radius = mc.radii()[lobe - 1];
  while (offset >= radius) offset -= radius;
  for (std::size_t t = occ.size(); t-- > 0;)
    if (off[t] <= offset) return mc.start(occ[t]) + (offset - off[t]);
  return mc.start(occ.front());
}

// Inserts plain points at the given coordinates. `coord[p]` is the coordinate
// at which segment p starts for the selected positions (others ignored), in
// the same units as `lengths`.
std::pair<SpinyCactus, std::vector<Rational>> subdivide(const SpinyCactus& sc, const std::vector<Rational>& lengths,
                                                       const std::vector<bool>& selected,
                                                       const std::vector<Rational>& coord,
                                                       const std::vector<Rational>& cuts) {
  std::vector<int> w;
  std::vector<Rational> len;
  std::vector<int> new_pos(sc.total_points());
  for (int p = 0; p < sc.total_points(); ++p) {
    new_pos[p] = static_cast<int>(w.size());
    w.push_back(sc.label(p));
    if (!selected[p]) {
      len.push_back(lengths[p]);
      continue;
    }
    Rational from = coord[p];
    const Rational to = coord[p] + lengths[p];
    for (const auto& cut : cuts) {
      if (cut <= coord[p] || cut >= to) continue;
      len.push_back(cut - from);
      w.push_back(sc.label(p));
      from = cut;
    }
    len.push_back(to - from);
  }
  std::vector<int> bp;
  for (int b : sc.basepoints()) bp.push_back(new_pos[b]);
  return {SpinyCactus(std::move(w), std::move(bp)), std::move(len)};
}

}  // namespace

std::vector<Rational> realize(const MetricCactus& mc, const std::vector<std::vector<Rational>>& barycentric) {
  const SpinyCactus& sc = mc.cactus().spiny();
  if (static_cast<int>(barycentric.size()) != sc.lobes())
    throw CactusError(Kind::BadBarycentric, "one barycentric point per lobe is required");
  for (const auto& point : barycentric) {
    if (point.empty()) throw CactusError(Kind::BadBarycentric, "empty barycentric point");
    Rational total = 0;
    for (const auto& x : point) {
      if (x < 0) throw CactusError(Kind::BadBarycentric, "negative barycentric coordinate");
      total += x;
    }
    if (total != 1) throw CactusError(Kind::BadBarycentric, "barycentric coordinates sum to " + total.str());
  }

  std::vector<Rational> params;
  params.emplace_back(0);  // global basepoint
  for (int p = 0; p < sc.total_points(); ++p)
    if (sc.switches_into(p)) params.push_back(mc.start(p));
  const auto radii = mc.radii();
  for (int k = 1; k <= sc.lobes(); ++k) {
    Rational acc = 0;
    for (const auto& s : barycentric[k - 1]) {
      params.push_back(lobe_point_parameter(mc, k, radii[k - 1] * acc));
      acc += s;
    }
  }
  std::sort(params.begin(), params.end());
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < params.size(); ++i) out.push_back(params[i + 1] - params[i]);
  out.push_back(Rational(1) - params.back());
  return out;
}

MetricCactus compose(const MetricCactus& c, int i, const MetricCactus& d) {
  const SpinyCactus& outer = c.cactus().spiny();
  const SpinyCactus& inner = d.cactus().spiny();
  if (i < 1 || i > outer.lobes())
    throw CactusError(Kind::IndexOutOfRange, "cannot compose into lobe " + std::to_string(i));
  const Rational radius = c.radii()[i - 1];

  // Coordinates along lobe i of c, measured from 0_i.
  std::vector<bool> outer_sel(outer.total_points(), false);
  std::vector<Rational> outer_coord(outer.total_points(), Rational(0));
  const auto occ = outer.occurrences(i);
  const auto off = c.offsets(i);
  for (std::size_t t = 0; t < occ.size(); ++t) {
    outer_sel[occ[t]] = true;
    outer_coord[occ[t]] = off[t];
  }
  // Coordinates along the traversal of d, scaled to circumference r_i.
  std::vector<bool> inner_sel(inner.total_points(), true);
  std::vector<Rational> inner_coord(inner.total_points());
  std::vector<Rational> inner_len(inner.total_points());
  for (int q = 0; q < inner.total_points(); ++q) {
    inner_coord[q] = radius * d.start(q);
    inner_len[q] = radius * d.lengths()[q];
  }
  std::set<Rational> cuts(off.begin(), off.end());
  cuts.insert(inner_coord.begin(), inner_coord.end());
  const std::vector<Rational> all_cuts(cuts.begin(), cuts.end());

  auto [outer_sc, outer_len] = subdivide(outer, c.lengths(), outer_sel, outer_coord, all_cuts);
  auto [inner_sc, scaled_len] = subdivide(inner, inner_len, inner_sel, inner_coord, all_cuts);
  return MetricCactus::from_spiny(spiny_compose_at(outer_sc, i, inner_sc), outer_len);
}

std::string to_string(const SpinyCactus& sc) {
  std::ostringstream os;
  os << word_string(sc.word()) << " basepoints " << word_string(sc.basepoints());
  return os.str();
}

}  // namespace cactus
