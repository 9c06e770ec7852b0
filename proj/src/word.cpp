#include "isosep/word.hpp"

#include <algorithm>

#include "isosep/errors.hpp"

namespace isosep {

namespace {

std::vector<int> reduce(const std::vector<int>& letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (l == 0) throw InvalidInput("generator index 0 is not a valid letter");
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace

IsometryWord::IsometryWord(std::initializer_list<int> letters)
    : letters_(reduce(std::vector<int>(letters))) {}

IsometryWord::IsometryWord(std::vector<int> letters) : letters_(reduce(letters)) {}

IsometryWord IsometryWord::power(int letter, std::size_t count) {
  return IsometryWord(std::vector<int>(count, letter));
}

std::string IsometryWord::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(letters_[i]);
  }
  return s + "]";
}

IsometryWord compose(const IsometryWord& u, const IsometryWord& v) {
  std::vector<int> joined = u.letters();
  joined.insert(joined.end(), v.letters().begin(), v.letters().end());
  return IsometryWord(std::move(joined));
}

IsometryWord invert(const IsometryWord& w) {
  std::vector<int> r(w.letters().rbegin(), w.letters().rend());
  for (int& l : r) l = -l;
  return IsometryWord(std::move(r));
}

}  // namespace isosep
