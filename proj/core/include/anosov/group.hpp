#pragma once

#include <array>
#include <cstdint>
#include <list>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "anosov/cartan.hpp"

namespace anosov::group {

using cartan::CoxeterRep;
using cartan::TriangleSignature;
using projlin::Mat3;

// Word in the generators; letters are 0, 1, 2 for s1, s2, s3 and serialize as
// a, b, c.
struct GroupWord {
  std::vector<std::uint8_t> letters;

  GroupWord() = default;
  explicit GroupWord(std::vector<std::uint8_t> l) : letters(std::move(l)) {}
  static GroupWord parse(std::string_view s);  // "abc"; "" or "e" is the identity

  std::string str() const;  // "e" for the identity
  size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  GroupWord inverse() const;

  friend GroupWord operator*(const GroupWord& x, const GroupWord& y);
  friend bool operator==(const GroupWord&, const GroupWord&) = default;
  friend auto operator<=>(const GroupWord& x, const GroupWord& y) { return x.letters <=> y.letters; }
};

// Free reduction plus dihedral shortening of two-letter alternating runs.
GroupWord reduce(const GroupWord& w, const TriangleSignature& sig);

// Letters mapped s1 -> s2 -> s3 -> s1, k times.
GroupWord cyclic_shift(const GroupWord& w, int k);

// Frames: 0 unprimed, 1 primed, 2 double-primed. In frame k the roles of
// (s1, s2, s3) are played by the k-fold cyclic shift of the generators.
struct Alphabets {
  std::array<std::vector<GroupWord>, 3> q;  // Q, Q', Q''
  std::vector<GroupWord> t;                 // T = Q Q'' Q'
  std::vector<std::array<int, 3>> t_index;  // (Q, Q'', Q') indices of each element of T
};

// Q^{(k)} = { x^d (x y)^j : d in {0,1}, 1 <= j <= (m-1)/2 } with (x, y) the
// frame's first two generators and m the order of x y. Ordered by (d, j).
std::vector<GroupWord> frame_alphabet(const TriangleSignature& sig, int frame);

Alphabets alphabets(const TriangleSignature& sig);

// (s1 s2)(s3 s1)(s2 s3), shifted to the frame.
GroupWord tbar(int frame = 0);

// Thread-safe LRU cache of word images keyed by (representation id, word).
class EvalCache {
 public:
  explicit EvalCache(size_t capacity = size_t{1} << 20) : capacity_(capacity) {}

  bool lookup(std::uint64_t rep, const std::string& word, Mat3& out);
  void insert(std::uint64_t rep, const std::string& word, const Mat3& m);
  size_t size() const;
  size_t capacity() const { return capacity_; }
  void set_capacity(size_t c);
  void clear();
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

 private:
  using Key = std::pair<std::uint64_t, std::string>;
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return std::hash<std::string>{}(k.second) ^ (std::hash<std::uint64_t>{}(k.first) * 0x9e3779b97f4a7c15ULL);
    }
  };
  void evict_locked();

  size_t capacity_;
  mutable std::mutex mu_;
  std::list<std::pair<Key, Mat3>> order_;  // most recent first
  std::unordered_map<Key, std::list<std::pair<Key, Mat3>>::iterator, KeyHash> index_;
  std::uint64_t hits_ = 0, misses_ = 0;
};

EvalCache& default_cache();

// Product of generator images, left to right.
Mat3 evaluate(const GroupWord& w, const CoxeterRep& rep, EvalCache* cache = &default_cache());
Mat3 evaluate_uncached(const GroupWord& w, const std::array<Mat3, 3>& gens);

struct ElementWord {
  GroupWord word;
  int length = 0;
};

// Every group element of word length <= max_len exactly once, in order of
// length, each with a geodesic word. Lengths are exact: descents are read off
// the reflection representation.
std::vector<ElementWord> enumerate_elements(const TriangleSignature& sig, int max_len);

}  // namespace anosov::group
