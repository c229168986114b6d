// Combinatorial cacti.
//
// A spiny cactus is stored as the lobe label of every marked segment, listed
// in the order the traversal of the circle meets them, starting at the global
// basepoint, together with the position of each lobe's basepoint. Segment p
// starts at marked point p, so positions double as point occurrences:
// an intersection point of multiplicity m occupies m positions, one per lobe.
//
// Everything else is derived from that word: a position is an intersection
// occurrence exactly when the traversal switches lobes into it, the node it
// belongs to is found by following each switch back to the lobe it left, and
// the i-th point of lobe k is the i-th occurrence of k read from its basepoint.
//
// A plain `Cactus` is the spiny cactus whose marked points are exactly the
// special ones (basepoints and intersection occurrences).
#pragma once

#include "cactus/field.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cactus {

class CactusError : public std::runtime_error {
 public:
  enum class Kind {
    InterleavedLobes,
    MissingLobe,
    BadParametrization,
    IndexOutOfRange,
    ArityMismatch,
    SlotOutOfRange,
    IllegalPinch,
    CountMismatch,
    BadBarycentric,
    BadMetric,
  };

  CactusError(Kind kind, const std::string& what);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(CactusError::Kind kind);

struct Node {
  std::vector<int> positions;  // occurrences in traversal order
  std::vector<int> lobes;      // cyclic ordering of incident lobes
  int multiplicity() const { return static_cast<int>(positions.size()); }
};

class SpinyCactus {
 public:
  SpinyCactus() = default;

  /// Validates and builds. `basepoints[k-1]` is the position of 0_k; when
  /// empty, each lobe's basepoint is its first occurrence.
  SpinyCactus(std::vector<int> word, std::vector<int> basepoints = {});

  /// One lobe carrying `points` marked points, basepoint at global 0.
  static SpinyCactus circle(int points, int basepoint = 0);

  const std::vector<int>& word() const { return word_; }
  const std::vector<int>& basepoints() const { return basepoints_; }

  int lobes() const { return static_cast<int>(basepoints_.size()); }
  int total_points() const { return static_cast<int>(word_.size()); }
  int label(int pos) const { return word_[static_cast<std::size_t>(pos)]; }

  /// Points per lobe (j_1, ..., j_n).
  std::vector<int> counts() const;
  int count(int lobe) const;

  /// Positions of lobe k's points, in lobe order starting at 0_k.
  std::vector<int> occurrences(int lobe) const;

  /// Position in the global cyclic order of the i-th point of lobe k.
  int global_index(int lobe, int slot) const;

  /// True when the traversal enters position `pos` from a different lobe.
  bool switches_into(int pos) const;

  /// Basepoints, global 0 and intersection occurrences.
  bool is_special(int pos) const;

  std::vector<Node> nodes() const;

  /// Total multiplicity of all intersection points.
  int total_multiplicity() const;

  auto operator<=>(const SpinyCactus&) const = default;

 private:
  std::vector<int> word_;
  std::vector<int> basepoints_;
};

/// Combinatorial class of a cactus: a spiny cactus with no plain points.
class Cactus {
 public:
  Cactus() : spiny_(SpinyCactus::circle(1)) {}

  /// Drops plain points of `sc`.
  explicit Cactus(const SpinyCactus& sc);

  static Cactus identity() { return Cactus(); }

  const SpinyCactus& spiny() const { return spiny_; }
  const std::vector<int>& word() const { return spiny_.word(); }
  const std::vector<int>& basepoints() const { return spiny_.basepoints(); }
  int lobes() const { return spiny_.lobes(); }
  std::vector<Node> nodes() const { return spiny_.nodes(); }

  auto operator<=>(const Cactus&) const = default;

 private:
  SpinyCactus spiny_;
};

/// Validates a raw traversal word and returns its canonical cactus.
Cactus validate_cactus(const std::vector<int>& word, const std::vector<int>& basepoints = {});

/// Removes every plain point, keeping positions of the special ones.
SpinyCactus strip_plain_points(const SpinyCactus& sc);

/// Symmetric group action: lobe k becomes lobe perm[k-1].
SpinyCactus relabel(const SpinyCactus& sc, const std::vector<int>& perm);
Cactus relabel(const Cactus& c, const std::vector<int>& perm);

/// Operadic composition c o_i d. Lobe i of c is replaced by d with 0_i glued to
/// the global basepoint of d; the remaining special points of lobe i are carried
/// into the final arc of d's traversal. Lobes of d take labels i..i+m-1.
Cactus compose(const Cactus& c, int i, const Cactus& d);

/// gamma(c; d_1, ..., d_n).
Cactus full_compose(const Cactus& c, const std::vector<Cactus>& ds);

/// (k, i)-th cyclic degeneracy: a plain point after point i of lobe k.
SpinyCactus spiny_degeneracy(const SpinyCactus& sc, int lobe, int slot);

/// (k, i)-th cyclic face: pinches points i and i+1 of lobe k together.
SpinyCactus spiny_face(const SpinyCactus& sc, int lobe, int slot);

/// Composition of spiny cacti. The i-th refinement must carry exactly j_i points;
/// its points are matched with lobe i's points starting from 0_i.
SpinyCactus spiny_compose(const SpinyCactus& sc, const std::vector<SpinyCactus>& refinements);

/// Spiny composition at a single lobe, identity refinements elsewhere.
SpinyCactus spiny_compose_at(const SpinyCactus& sc, int lobe, const SpinyCactus& piece);

/// One pinch: compose at `lobe` with a two-lobe spiny piece, then relabel.
struct PinchStep {
  int lobe;
  SpinyCactus piece;
  std::vector<int> relabeling;
};

/// Generator decomposition: a reparametrized circle followed by n-1 pinches.
struct Decomposition {
  SpinyCactus circle;
  std::vector<PinchStep> steps;
};

Decomposition decompose_generators(const Cactus& c);
Cactus recompose(const Decomposition& dec);

/// All canonical cacti with exactly n lobes, built by attaching leaf lobes to
/// cacti with n-1 lobes.
std::vector<Cactus> enumerate_cacti(int lobes);

/// All canonical cacti with exactly n lobes, by filtering every noncrossing word.
std::vector<Cactus> enumerate_cacti_bruteforce(int lobes);

/// Every spiny cactus over an n-lobe cactus with at most `max_points` marked points.
std::vector<SpinyCactus> enumerate_spiny(int lobes, int max_points);

/// Noncrossing test for a cyclic word.
bool is_noncrossing(const std::vector<int>& word);

/// A cactus with exact arc lengths: `lengths[p]` is the length of segment p on
/// the traversal circle of total length 1, so lobe k has circumference r_k.
class MetricCactus {
 public:
  MetricCactus(Cactus cactus, std::vector<Rational> lengths);

  /// Spiny form with lengths for every marked segment; plain points are
  /// merged away.
  static MetricCactus from_spiny(const SpinyCactus& sc, std::vector<Rational> lengths);

  const Cactus& cactus() const { return cactus_; }
  const std::vector<Rational>& lengths() const { return lengths_; }

  std::vector<Rational> radii() const;

  /// Offset of every point of lobe k from 0_k, in lobe order.
  std::vector<Rational> offsets(int lobe) const;

  /// Traversal parameter at which segment p starts.
  Rational start(int pos) const;

 private:
  Cactus cactus_;
  std::vector<Rational> lengths_;
};

/// The simplex map m_c: barycentric points on each lobe, plus every
/// intersection occurrence and the global basepoint, read as a subdivision
/// of the traversal circle.
std::vector<Rational> realize(const MetricCactus& mc, const std::vector<std::vector<Rational>>& barycentric);

/// Metric composition c o_i d.
MetricCactus compose(const MetricCactus& c, int i, const MetricCactus& d);

/// Traversal parameter of 0_lobe in mc.
Rational basepoint_parameter(const MetricCactus& mc, int lobe);

std::string to_string(const SpinyCactus& sc);

}  // namespace cactus
