#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace isosep {

/// A group element as a formally reduced word in signed generator indices.
///
/// Letter +i is generator i (1-based), -i its inverse. The word
/// [w1, w2, ..., wk] denotes the composition w1 . w2 . ... . wk, so wk acts
/// first. No adjacent pair (+i, -i) or (-i, +i) ever survives.
class IsometryWord {
 public:
  IsometryWord() = default;
  IsometryWord(std::initializer_list<int> letters);
  explicit IsometryWord(std::vector<int> letters);

  static IsometryWord identity() { return {}; }
  /// Generator letter repeated `count` times.
  static IsometryWord power(int letter, std::size_t count);

  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  friend bool operator==(const IsometryWord&, const IsometryWord&) = default;

  std::string to_string() const;

 private:
  std::vector<int> letters_;
};

/// u . v with formal reduction at the junction (and inside v if needed).
IsometryWord compose(const IsometryWord& u, const IsometryWord& v);

/// Reversed and negated.
IsometryWord invert(const IsometryWord& w);

}  // namespace isosep
