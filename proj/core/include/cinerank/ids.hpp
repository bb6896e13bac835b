#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace cinerank {

/// Integer identifier tagged with the entity it names, so user and movie ids
/// cannot be swapped silently.
template <class Tag>
class StrongId {
 public:
  using value_type = std::int64_t;

  constexpr StrongId() = default;
  constexpr explicit StrongId(value_type value) : value_(value) {}

  constexpr value_type value() const { return value_; }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;

  friend std::ostream& operator<<(std::ostream& os, StrongId id) {
    return os << id.value_;
  }

 private:
  value_type value_ = 0;
};

struct UserTag {};
struct MovieTag {};

using UserId = StrongId<UserTag>;
using MovieId = StrongId<MovieTag>;

}  // namespace cinerank

template <class Tag>
struct std::hash<cinerank::StrongId<Tag>> {
  std::size_t operator()(cinerank::StrongId<Tag> id) const noexcept {
    return std::hash<std::int64_t>{}(id.value());
  }
};
