#include "curtainlab/geometry/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace curtainlab::geometry {

Alphabet::Alphabet(int valence)
    : valence_(valence), rank_(valence / 2), involution_(valence % 2 == 1) {
  if (valence < 3 || valence > 37)
    throw std::invalid_argument("tree valence must lie in [3, 37]");
}

void Alphabet::append(Word& w, Letter l) const {
  if (!w.empty() && w.back() == inverse(l))
    w.pop_back();
  else
    w.push_back(l);
}

void Alphabet::append(Word& w, const Word& g) const {
  for (Letter l : g) append(w, l);
}

Word Alphabet::multiply(const Word& u, const Word& v) const {
  Word out = u;
  append(out, v);
  return out;
}

Word Alphabet::invert(const Word& w) const {
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = inverse(w[w.size() - 1 - i]);
  return out;
}

Word Alphabet::reduce(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) append(out, l);
  return out;
}

bool Alphabet::is_reduced(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!valid(w[i])) return false;
    if (i > 0 && w[i] == inverse(w[i - 1])) return false;
  }
  return true;
}

char Alphabet::symbol(Letter l) const {
  if (involution_ && l == valence_ - 1) return 's';
  const char base = (l % 2 == 0) ? 'a' : 'A';
  return static_cast<char>(base + l / 2);
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(symbol(l));
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word out;
  if (text == "e") return out;
  for (char ch : text) {
    Letter l;
    if (involution_ && ch == 's') {
      l = static_cast<Letter>(valence_ - 1);
    } else if (ch >= 'a' && ch < 'a' + rank_) {
      l = static_cast<Letter>(2 * (ch - 'a'));
    } else if (ch >= 'A' && ch < 'A' + rank_) {
      l = static_cast<Letter>(2 * (ch - 'A') + 1);
    } else {
      throw std::invalid_argument("unknown letter '" + std::string(1, ch) +
                                  "' in word '" + std::string(text) + "'");
    }
    append(out, l);
  }
  return out;
}

std::size_t common_prefix(const Word& u, const Word& v) {
  const std::size_t n = std::min(u.size(), v.size());
  std::size_t k = 0;
  while (k < n && u[k] == v[k]) ++k;
  return k;
}

}  // namespace curtainlab::geometry
