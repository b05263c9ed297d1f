#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ppcem {

/// A name is a human-readable base plus a freshness tag. User-written names
/// always carry tag 0; the engine renames by bumping tags, never by editing
/// the base.
struct Name {
  std::string base;
  std::uint32_t tag = 0;

  friend auto operator<=>(const Name&, const Name&) = default;
};

using NameList = std::vector<Name>;

inline Name name(std::string base, std::uint32_t tag = 0) {
  return Name{std::move(base), tag};
}

inline std::string to_string(const Name& n) {
  if (n.tag == 0) return n.base;
  return n.base + "_" + std::to_string(n.tag);
}

/// Fresh-name counter for one reduction session. No global state: every
/// operation that may rename binders takes the session explicitly, and a
/// session is seeded above every tag already present in its input terms.
class NameSession {
 public:
  explicit NameSession(std::uint32_t next = 1) : next_(next) {}

  Name fresh(const std::string& base) { return Name{base, next_++}; }

  void reserve_at_least(std::uint32_t tag) {
    if (tag >= next_) next_ = tag + 1;
  }

  std::uint32_t next_tag() const { return next_; }

 private:
  std::uint32_t next_;
};

}  // namespace ppcem

template <>
struct std::hash<ppcem::Name> {
  std::size_t operator()(const ppcem::Name& n) const noexcept {
    return std::hash<std::string>{}(n.base) ^ (std::size_t(n.tag) * 0x9e3779b97f4a7c15ull);
  }
};
