#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace curtainlab::geometry {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

/// Letters of the free product Z * ... * Z (* Z/2) whose Cayley graph is the
/// regular tree of the given valence. Generator i is letter 2i (printed 'a'+i)
/// and its inverse 2i+1 (printed 'A'+i). Odd valence adds one involution,
/// printed 's', which is its own inverse.
class Alphabet {
 public:
  explicit Alphabet(int valence);

  int valence() const { return valence_; }
  int rank() const { return rank_; }
  bool has_involution() const { return involution_; }
  int size() const { return valence_; }

  Letter inverse(Letter l) const {
    return (involution_ && l == valence_ - 1) ? l : static_cast<Letter>(l ^ 1u);
  }
  bool valid(Letter l) const { return l < valence_; }

  /// Right-multiplies a reduced word by one letter, cancelling if needed.
  void append(Word& w, Letter l) const;
  /// Right-multiplies in place; O(|g|).
  void append(Word& w, const Word& g) const;
  Word multiply(const Word& u, const Word& v) const;
  Word invert(const Word& w) const;
  Word reduce(const Word& w) const;
  bool is_reduced(const Word& w) const;

  char symbol(Letter l) const;
  std::string format(const Word& w) const;
  /// Accepts "e" or "" for the identity; throws std::invalid_argument.
  Word parse(std::string_view text) const;

 private:
  int valence_;
  int rank_;
  bool involution_;
};

std::size_t common_prefix(const Word& u, const Word& v);

/// Reduced-word length distance between vertices.
inline double vertex_distance(const Word& u, const Word& v) {
  return static_cast<double>(u.size() + v.size() - 2 * common_prefix(u, v));
}

}  // namespace curtainlab::geometry
