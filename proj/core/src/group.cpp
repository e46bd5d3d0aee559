#include "anosov/group.hpp"

#include <algorithm>

#include "anosov/error.hpp"

namespace anosov::group {

GroupWord GroupWord::parse(std::string_view s) {
  GroupWord w;
  if (s == "e" || s == "1") return w;
  for (char ch : s) {
    if (ch < 'a' || ch > 'c') throw Error(ErrorCode::InvalidWord, "letters must be a, b or c");
    w.letters.push_back(static_cast<std::uint8_t>(ch - 'a'));
  }
  return w;
}

std::string GroupWord::str() const {
  if (letters.empty()) return "e";
  std::string s;
  for (auto l : letters) s.push_back(static_cast<char>('a' + l));
  return s;
}

GroupWord GroupWord::inverse() const {
  GroupWord w = *this;
  std::reverse(w.letters.begin(), w.letters.end());
  return w;
}

GroupWord operator*(const GroupWord& x, const GroupWord& y) {
  GroupWord w = x;
  w.letters.insert(w.letters.end(), y.letters.begin(), y.letters.end());
  return w;
}

GroupWord reduce(const GroupWord& word, const TriangleSignature& sig) {
  std::vector<std::uint8_t> w = word.letters;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == w[i + 1]) {
        w.erase(w.begin() + i, w.begin() + i + 2);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    size_t i = 0;
    while (i + 1 < w.size()) {
      const auto x = w[i], y = w[i + 1];
      size_t j = i + 2;
      while (j < w.size() && w[j] == w[j - 2]) ++j;
      const int len = static_cast<int>(j - i);
      const int m = sig.p(3 - x - y);
      if (len > m) {
        // (xy)^m = e: drop whole periods, then take the shorter spelling
        const int rest = len % (2 * m);
        std::vector<std::uint8_t> alt;
        if (rest <= m)
          for (int k = 0; k < rest; ++k) alt.push_back(k % 2 == 0 ? x : y);
        else
          for (int k = 0; k < 2 * m - rest; ++k) alt.push_back(k % 2 == 0 ? y : x);
        w.erase(w.begin() + i, w.begin() + j);
        w.insert(w.begin() + i, alt.begin(), alt.end());
        changed = true;
        break;
      }
      i = j - 1;
    }
  }
  return GroupWord(std::move(w));
}

GroupWord cyclic_shift(const GroupWord& w, int k) {
  k = ((k % 3) + 3) % 3;
  GroupWord out = w;
  for (auto& l : out.letters) l = static_cast<std::uint8_t>((l + k) % 3);
  return out;
}

std::vector<GroupWord> frame_alphabet(const TriangleSignature& sig, int frame) {
  const int m = sig.p((2 + frame) % 3);
  if (m % 2 == 0) throw Error(ErrorCode::EvenSignature, "alphabets need odd orders: " + sig.str());
  std::vector<GroupWord> q;
  for (int d = 0; d < 2; ++d)
    for (int j = 1; j <= (m - 1) / 2; ++j) {
      GroupWord w;
      if (d == 1) w.letters.push_back(0);
      for (int r = 0; r < j; ++r) {
        w.letters.push_back(0);
        w.letters.push_back(1);
      }
      q.push_back(reduce(cyclic_shift(w, frame), sig));
    }
  return q;
}

Alphabets alphabets(const TriangleSignature& sig) {
  if (!sig.all_odd()) throw Error(ErrorCode::EvenSignature, "alphabets need odd orders: " + sig.str());
  Alphabets a;
  for (int f = 0; f < 3; ++f) a.q[f] = frame_alphabet(sig, f);
  for (size_t i = 0; i < a.q[0].size(); ++i)
    for (size_t j = 0; j < a.q[2].size(); ++j)
      for (size_t k = 0; k < a.q[1].size(); ++k) {
        a.t.push_back(reduce(a.q[0][i] * a.q[2][j] * a.q[1][k], sig));
        a.t_index.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)});
      }
  return a;
}

GroupWord tbar(int frame) { return cyclic_shift(GroupWord::parse("abcabc"), frame); }

bool EvalCache::lookup(std::uint64_t rep, const std::string& word, Mat3& out) {
  std::lock_guard lock(mu_);
  auto it = index_.find(Key{rep, word});
  if (it == index_.end()) {
    ++misses_;
    return false;
  }
  order_.splice(order_.begin(), order_, it->second);
  out = it->second->second;
  ++hits_;
  return true;
}

void EvalCache::insert(std::uint64_t rep, const std::string& word, const Mat3& m) {
  std::lock_guard lock(mu_);
  Key key{rep, word};
  auto it = index_.find(key);
  if (it != index_.end()) {
    order_.splice(order_.begin(), order_, it->second);
    return;
  }
  order_.emplace_front(key, m);
  index_.emplace(std::move(key), order_.begin());
  evict_locked();
}

void EvalCache::evict_locked() {
  while (index_.size() > capacity_ && !order_.empty()) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
}

size_t EvalCache::size() const {
  std::lock_guard lock(mu_);
  return index_.size();
}

void EvalCache::set_capacity(size_t c) {
  std::lock_guard lock(mu_);
  capacity_ = c;
  evict_locked();
}

void EvalCache::clear() {
  std::lock_guard lock(mu_);
  index_.clear();
  order_.clear();
}

EvalCache& default_cache() {
  static EvalCache cache;
  return cache;
}

Mat3 evaluate_uncached(const GroupWord& w, const std::array<Mat3, 3>& gens) {
  Mat3 m = Mat3::identity();
  for (auto l : w.letters) m = m * gens[l];
  return m;
}

Mat3 evaluate(const GroupWord& w, const CoxeterRep& rep, EvalCache* cache) {
  if (w.empty()) return Mat3::identity();
  if (cache == nullptr) return evaluate_uncached(w, rep.s);
  const std::string key = w.str();
  Mat3 m;
  if (cache->lookup(rep.id, key, m)) return m;
  m = evaluate_uncached(w, rep.s);
  cache->insert(rep.id, key, m);
  return m;
}

std::vector<ElementWord> enumerate_elements(const TriangleSignature& sig, int max_len) {
  // Reflection representation on root coordinates; ws is longer than w
  // exactly when w maps the simple root of s to a positive root.
  const auto c = cartan::normal_form(sig, cartan::hitchin_type(), 1.0);
  std::array<Mat3, 3> refl;
  for (int i = 0; i < 3; ++i) {
    refl[i] = Mat3::identity();
    for (int j = 0; j < 3; ++j) refl[i](i, j) -= c.a(i, j);
  }
  auto negative = [](const Mat3& m, int col) {
    double best = 0;
    for (int r = 0; r < 3; ++r)
      if (std::abs(m(r, col)) > std::abs(best)) best = m(r, col);
    return best < 0;
  };

  struct Node {
    GroupWord word;
    Mat3 m;
  };
  std::vector<ElementWord> out{{GroupWord{}, 0}};
  std::vector<Node> level{{GroupWord{}, Mat3::identity()}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Node> next;
    for (const auto& node : level)
      for (int s = 0; s < 3; ++s) {
        if (negative(node.m, s)) continue;  // s is a descent of w
        const Mat3 ms = node.m * refl[s];
        bool canonical = true;
        for (int s2 = 0; s2 < s && canonical; ++s2)
          if (negative(ms, s2)) canonical = false;
        if (!canonical) continue;
        GroupWord w = node.word;
        w.letters.push_back(static_cast<std::uint8_t>(s));
        out.push_back({w, len});
        next.push_back({std::move(w), ms});
      }
    level = std::move(next);
  }
  return out;
}

}  // namespace anosov::group
