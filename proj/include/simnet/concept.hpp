#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace simnet {

/// Raised when a concept annotation is not a usable absolute IRI.
class ConceptError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// scheme ":" per RFC 3986
inline bool has_scheme(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0)
    return false;
  if (std::isalpha(static_cast<unsigned char>(s[0])) == 0)
    return false;
  return std::all_of(s.begin() + 1, s.begin() + static_cast<std::ptrdiff_t>(colon), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || c == '+' || c == '-' || c == '.';
  });
}

} // namespace detail

/// Normalized identifier of an ontological concept.
///
/// Normalization only trims surrounding whitespace; case and fragment are
/// kept, and two concepts match iff their normalized strings are equal.
class ConceptId {
public:
  /// Throws ConceptError on empty or relative IRIs.
  static ConceptId parse(std::string_view raw) {
    auto s = detail::trim(raw);
    if (s.empty())
      throw ConceptError("empty concept IRI");
    if (!detail::has_scheme(s))
      throw ConceptError("relative concept IRI '" + std::string(s) + "'");
    return ConceptId(std::string(s));
  }

  static std::string normalize(std::string_view raw) { return parse(raw).iri_; }

  const std::string &iri() const noexcept { return iri_; }

  /// Text after the last '#' (or '/' when there is no fragment).
  std::string_view local_name() const noexcept {
    std::string_view s = iri_;
    auto pos = s.rfind('#');
    if (pos == std::string_view::npos)
      pos = s.rfind('/');
    return pos == std::string_view::npos ? s : s.substr(pos + 1);
  }

  friend bool operator==(const ConceptId &, const ConceptId &) = default;
  friend auto operator<=>(const ConceptId &, const ConceptId &) = default;

private:
  explicit ConceptId(std::string iri) : iri_(std::move(iri)) {}
  std::string iri_;
};

/// Exact matching: same normalized concept, otherwise fail.
inline bool concepts_match(const ConceptId &a, const ConceptId &b) noexcept { return a == b; }

/// Sorted, duplicate-free set of concepts.
class ConceptSet {
public:
  using value_type = ConceptId;
  using const_iterator = std::vector<ConceptId>::const_iterator;

  ConceptSet() = default;
  ConceptSet(std::initializer_list<ConceptId> items) : ConceptSet(std::vector<ConceptId>(items)) {}

  /// Builds a set from a list; `duplicates` receives the number of dropped repeats.
  explicit ConceptSet(std::vector<ConceptId> items, std::size_t *duplicates = nullptr)
      : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    auto tail = std::unique(items_.begin(), items_.end());
    if (duplicates != nullptr)
      *duplicates = static_cast<std::size_t>(std::distance(tail, items_.end()));
    items_.erase(tail, items_.end());
  }

  static ConceptSet from_iris(std::initializer_list<std::string_view> iris) {
    std::vector<ConceptId> v;
    for (auto iri : iris)
      v.push_back(ConceptId::parse(iri));
    return ConceptSet(std::move(v));
  }

  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const std::vector<ConceptId> &items() const noexcept { return items_; }

  bool contains(const ConceptId &c) const {
    return std::binary_search(items_.begin(), items_.end(), c);
  }

  /// this ⊇ other
  bool includes(const ConceptSet &other) const {
    return std::includes(items_.begin(), items_.end(), other.items_.begin(), other.items_.end());
  }

  bool strictly_includes(const ConceptSet &other) const {
    return size() > other.size() && includes(other);
  }

  bool intersects(const ConceptSet &other) const {
    auto a = items_.begin();
    auto b = other.items_.begin();
    while (a != items_.end() && b != other.items_.end()) {
      if (*a < *b)
        ++a;
      else if (*b < *a)
        ++b;
      else
        return true;
    }
    return false;
  }

  ConceptSet set_union(const ConceptSet &other) const {
    ConceptSet out;
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out.items_));
    return out;
  }

  ConceptSet set_intersection(const ConceptSet &other) const {
    ConceptSet out;
    std::set_intersection(begin(), end(), other.begin(), other.end(),
                          std::back_inserter(out.items_));
    return out;
  }

  ConceptSet set_difference(const ConceptSet &other) const {
    ConceptSet out;
    std::set_difference(begin(), end(), other.begin(), other.end(),
                        std::back_inserter(out.items_));
    return out;
  }

  ConceptSet symmetric_difference(const ConceptSet &other) const {
    ConceptSet out;
    std::set_symmetric_difference(begin(), end(), other.begin(), other.end(),
                                  std::back_inserter(out.items_));
    return out;
  }

  std::vector<std::string> iris() const {
    std::vector<std::string> out;
    out.reserve(items_.size());
    for (const auto &c : items_)
      out.push_back(c.iri());
    return out;
  }

  friend bool operator==(const ConceptSet &, const ConceptSet &) = default;
  friend auto operator<=>(const ConceptSet &, const ConceptSet &) = default;

private:
  std::vector<ConceptId> items_;
};

} // namespace simnet

template <> struct std::hash<simnet::ConceptId> {
  std::size_t operator()(const simnet::ConceptId &c) const noexcept {
    return std::hash<std::string>{}(c.iri());
  }
};

template <> struct std::hash<simnet::ConceptSet> {
  std::size_t operator()(const simnet::ConceptSet &s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto &c : s)
      h = (h ^ std::hash<simnet::ConceptId>{}(c)) * 0x100000001b3ULL;
    return h;
  }
};
