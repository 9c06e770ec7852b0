#include "isosep/orbit.hpp"

#include <algorithm>

#include "isosep/errors.hpp"

namespace isosep {

void OrbitBudget::validate() const {
  if (max_points == 0) throw InvalidInput("budget max_points must be positive");
  if (max_word_length == 0) throw InvalidInput("budget max_word_length must be positive");
}

OrbitExplorer::OrbitExplorer(const GeneratedAction& action, Point start, OrbitBudget budget)
    : action_(&action), budget_(budget) {
  budget_.validate();
  action.space().require_point(start);
  seen_.insert(start);
  nodes_.push_back({std::move(start), IsometryWord::identity()});
}

std::optional<OrbitEntry> OrbitExplorer::next() {
  if (produced_ >= budget_.max_points) return std::nullopt;
  if (produced_ == 0) {
    ++produced_;
    return OrbitEntry{nodes_[0].point, nodes_[0].word};
  }
  const int slots = 2 * action_->generator_count();
  while (expand_ < nodes_.size()) {
    // children would exceed the word-length cap; BFS order makes this final
    if (nodes_[expand_].word.length() >= budget_.max_word_length) return std::nullopt;
    while (slot_ < slots) {
      const int g = slot_ / 2 + 1;
      const int letter = slot_ % 2 == 0 ? g : -g;
      ++slot_;
      Point image = action_->apply_letter(letter, nodes_[expand_].point);
      if (!seen_.insert(image).second) continue;
      IsometryWord word = compose(IsometryWord{letter}, nodes_[expand_].word);
      nodes_.push_back({std::move(image), std::move(word)});
      ++produced_;
      return OrbitEntry{nodes_.back().point, nodes_.back().word};
    }
    ++expand_;
    slot_ = 0;
  }
  return std::nullopt;
}

std::vector<OrbitEntry> orbit_points(const GeneratedAction& action, const Point& p,
                                     const OrbitBudget& budget) {
  OrbitExplorer explorer(action, p, budget);
  std::vector<OrbitEntry> out;
  while (auto e = explorer.next()) out.push_back(std::move(*e));
  return out;
}

IsometryWord find_escape(const GeneratedAction& action, const Point& p, const PointSet& Q,
                         const Rational& eps, const OrbitBudget& budget, std::size_t* explored) {
  if (eps.sign() <= 0) throw InvalidInput("escape radius must be positive");
  const PreparedSet targets(action.space(), Q);
  OrbitExplorer explorer(action, p, budget);
  while (auto e = explorer.next()) {
    if (!targets.first_within(e->point, eps)) {
      if (explored) *explored += explorer.explored();
      return e->word;
    }
  }
  if (explored) *explored += explorer.explored();
  throw BudgetExhausted("no escape for " + p.to_string() + " at radius " + eps.to_string() +
                            " within " + std::to_string(explorer.explored()) + " orbit points",
                        explorer.explored());
}

std::vector<OrbitEntry> separated_family(const GeneratedAction& action, const Point& p,
                                         const Rational& eps, std::size_t n,
                                         const OrbitBudget& budget) {
  if (eps.sign() <= 0) throw InvalidInput("separation radius must be positive");
  if (n == 0) throw InvalidInput("separated family size must be >= 1");
  const Rational gap = eps * Rational(2);
  std::vector<OrbitEntry> kept;
  OrbitExplorer explorer(action, p, budget);
  while (auto e = explorer.next()) {
    const bool far = std::all_of(kept.begin(), kept.end(), [&](const OrbitEntry& k) {
      return action.space().distance(k.point, e->point) >= gap;
    });
    if (!far) continue;
    kept.push_back(std::move(*e));
    if (kept.size() == n) return kept;
  }
  throw BudgetExhausted("found only " + std::to_string(kept.size()) + " of " + std::to_string(n) +
                            " separated orbit points within " +
                            std::to_string(explorer.explored()) + " orbit points",
                        explorer.explored());
}

}  // namespace isosep
