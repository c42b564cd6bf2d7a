#ifndef HYPERTURAN_VERTEX_SET_HPP
#define HYPERTURAN_VERTEX_SET_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <type_traits>

#ifndef HYPERTURAN_MAX_VERTICES
#define HYPERTURAN_MAX_VERTICES 512
#endif

namespace hyperturan {

using Vertex = std::uint32_t;

inline constexpr std::size_t kMaxVertices = HYPERTURAN_MAX_VERTICES;

/**
 * Fixed-capacity bitset over vertex ids, sized at compile time. Intersections
 * and popcounts are word sweeps, which is what the pair-link queries and the
 * candidate filtering in the embedding search reduce to.
 */
template <std::size_t Capacity = kMaxVertices>
class BasicVertexSet {
  static_assert(Capacity % 64 == 0, "capacity must be a multiple of 64");

public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWords = Capacity / 64;
  static constexpr std::size_t kCapacity = Capacity;

  constexpr BasicVertexSet() = default;

  /// The set {0, ..., count-1}.
  static BasicVertexSet prefix(std::size_t count) {
    BasicVertexSet s;
    std::size_t full = count / 64;
    for (std::size_t w = 0; w < full; ++w) s.words_[w] = ~Word{0};
    if (count % 64 != 0) s.words_[full] = (Word{1} << (count % 64)) - 1;
    return s;
  }

  static BasicVertexSet singleton(Vertex v) {
    BasicVertexSet s;
    s.insert(v);
    return s;
  }

  void insert(Vertex v) { words_[v / 64] |= Word{1} << (v % 64); }
  void erase(Vertex v) { words_[v / 64] &= ~(Word{1} << (v % 64)); }
  [[nodiscard]] bool contains(Vertex v) const {
    return (words_[v / 64] >> (v % 64)) & 1U;
  }

  [[nodiscard]] std::size_t size() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  [[nodiscard]] bool empty() const {
    for (Word w : words_)
      if (w != 0) return false;
    return true;
  }

  BasicVertexSet& operator&=(const BasicVertexSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BasicVertexSet& operator|=(const BasicVertexSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Removes every element of `o`.
  BasicVertexSet& subtract(const BasicVertexSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend BasicVertexSet operator&(BasicVertexSet a, const BasicVertexSet& b) { return a &= b; }
  friend BasicVertexSet operator|(BasicVertexSet a, const BasicVertexSet& b) { return a |= b; }
  friend bool operator==(const BasicVertexSet&, const BasicVertexSet&) = default;

  /// Calls `fn(v)` for each element in ascending order. Stops early if `fn`
  /// returns false (when it returns bool).
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < kWords; ++i) {
      Word w = words_[i];
      while (w != 0) {
        auto v = static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
        if constexpr (std::is_same_v<decltype(fn(v)), bool>) {
          if (!fn(v)) return;
        } else {
          fn(v);
        }
      }
    }
  }

  [[nodiscard]] const std::array<Word, kWords>& words() const { return words_; }

private:
  std::array<Word, kWords> words_{};
};

using VertexSet = BasicVertexSet<>;

} // namespace hyperturan

#endif
