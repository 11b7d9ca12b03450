#include "symchaos/fiber.hpp"

#include <algorithm>
#include <stdexcept>

namespace symchaos {

Fiber::Fiber(std::vector<Word> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("a fiber must be nonempty");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Fiber::contains(const Word& w) const {
  return std::binary_search(members_.begin(), members_.end(), w);
}

std::string Fiber::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ", ";
    s += members_[i].to_string();
  }
  return s + "}";
}

}  // namespace symchaos
