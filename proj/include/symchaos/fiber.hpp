#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "symchaos/word.hpp"

namespace symchaos {

/// One decomposition element f^{-1}(y): a nonempty finite set of Words,
/// kept sorted and duplicate-free.
class Fiber {
 public:
  explicit Fiber(std::vector<Word> members);
  Fiber(std::initializer_list<Word> members) : Fiber(std::vector<Word>(members)) {}

  const std::vector<Word>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Word& front() const { return members_.front(); }
  bool contains(const Word& w) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// `{w1, w2}` using the pre:period text form.
  std::string to_string() const;

  friend bool operator==(const Fiber&, const Fiber&) = default;

 private:
  std::vector<Word> members_;
};

}  // namespace symchaos
