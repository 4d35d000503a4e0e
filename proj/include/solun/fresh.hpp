#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace solun {

/// Generated symbols live in the `#` namespace, which the input grammar
/// rejects, so they never collide with user names.
inline bool is_generated_name(std::string_view name) {
  return !name.empty() && name.front() == '#';
}

/// Trailing decimal index of a generated name (`#h12` -> 12).
inline std::optional<std::size_t> generated_index(std::string_view name) {
  if (!is_generated_name(name)) return std::nullopt;
  std::size_t end = name.size();
  std::size_t begin = end;
  while (begin > 1 && std::isdigit(static_cast<unsigned char>(name[begin - 1]))) --begin;
  if (begin == end) return std::nullopt;
  return std::stoul(std::string(name.substr(begin)));
}

/// Issues `#<stem><n>` with a monotonic counter. Copies of a FreshNames
/// continue independently; the search threads one through each branch.
class FreshNames {
 public:
  explicit FreshNames(std::size_t next = 1) : next_(next) {}

  std::string make(std::string_view stem) {
    return "#" + std::string(stem) + std::to_string(next_++);
  }

  /// Ensure later names are numbered above any index already used by `name`.
  void reserve(std::string_view name) {
    if (auto idx = generated_index(name)) next_ = std::max(next_, *idx + 1);
  }

  std::size_t next() const { return next_; }

 private:
  std::size_t next_;
};

/// Orientation rule for binding two first-order variables: the one
/// introduced later is bound to the earlier one. Generated names come after
/// user names; generated names order by index, user names lexicographically.
inline bool introduced_later(std::string_view a, std::string_view b) {
  bool ga = is_generated_name(a), gb = is_generated_name(b);
  if (ga != gb) return ga;
  if (ga) {
    auto ia = generated_index(a).value_or(0), ib = generated_index(b).value_or(0);
    if (ia != ib) return ia > ib;
  }
  return a > b;
}

}  // namespace solun
