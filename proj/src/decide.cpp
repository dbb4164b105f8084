#include <algorithm>
#include <array>
#include <cstring>
#include <span>

#include "eqtree/error.hpp"
#include "eqtree/isomorphism.hpp"

// iso_decide works on the breadth-first layout of each tree: every array
// below is indexed by BFS position, not by vertex id, so that parent
// accesses stream. The only scattered accesses left are independent gathers
// and the orbit walk, which is interleaved over several lanes.

namespace eqtree {

namespace {

constexpr std::uint32_t kNone = kNoVertex;
constexpr std::size_t kAhead = 16;

inline void prefetch(const void* p) { __builtin_prefetch(p); }

enum class Shape : std::uint32_t { Central = 1, Bicentral = 2, Swapped = 3 };

struct Centers {
  std::uint32_t c1 = 0;
  std::uint32_t c2 = kNone;  // second center, or kNone
};

// Minimum-eccentricity positions from down and up heights.
Centers find_centers(const ColoredTree& t) {
  const std::uint32_t n = t.n();
  if (n == 1) return {};
  const auto parent = t.bfs_parent();

  struct Top2 {
    std::uint32_t a = 0, b = 0;
  };
  std::vector<Top2> down(n);
  for (std::uint32_t i = n - 1; i >= 1; --i) {
    Top2& p = down[parent[i]];
    const std::uint32_t h = down[i].a + 1;
    p.b = std::max(p.b, std::min(p.a, h));
    p.a = std::max(p.a, h);
  }

  std::vector<std::uint32_t> up(n);
  up[0] = 0;
  std::uint32_t best = down[0].a;
  Centers c;
  for (std::uint32_t i = 1; i < n; ++i) {
    const Top2& p = down[parent[i]];
    const std::uint32_t h = down[i].a + 1;
    const std::uint32_t sibling = h == p.a ? p.b : p.a;
    up[i] = 1 + std::max(up[parent[i]], sibling);
    const std::uint32_t ecc = std::max(down[i].a, up[i]);
    if (ecc < best) {
      best = ecc;
      c = {i, kNone};
    } else if (ecc == best) {
      c.c2 = i;
    }
  }
  if (c.c2 != kNone && c.c2 < c.c1) std::swap(c.c1, c.c2);
  return c;
}

// Orbit representative of every position: the start of the walk that
// covered it. K walks run interleaved; a walk that meets a smaller start is
// a duplicate of that walk's orbit and stops, and the smaller start later
// overwrites anything it labeled.
std::vector<std::uint32_t> orbit_labels(std::span<const std::uint32_t> P) {
  const auto n = static_cast<std::uint32_t>(P.size());
  std::vector<std::uint32_t> label(n, kNone);
  constexpr int K = 16;
  std::array<std::uint32_t, K> start{}, cur{};
  std::uint32_t scan = 0;
  auto next_start = [&]() {
    while (scan < n && label[scan] != kNone) ++scan;
    return scan < n ? scan++ : kNone;
  };
  int live = 0;
  for (int k = 0; k < K; ++k) {
    start[k] = cur[k] = next_start();
    live += start[k] != kNone;
  }
  while (live > 0) {
    for (int k = 0; k < K; ++k) {
      const std::uint32_t s = start[k];
      if (s == kNone) continue;
      const std::uint32_t x = cur[k];
      bool done = label[x] < s;
      if (!done) {
        label[x] = s;
        const std::uint32_t nx = P[x];
        done = nx == s;
        cur[k] = nx;
        prefetch(&label[nx]);
        prefetch(&P[nx]);
      }
      if (done) {
        start[k] = cur[k] = next_start();
        if (start[k] == kNone) --live;
      }
    }
  }
  return label;
}

// Quotient rooted at the central orbit(s), renumbered breadth-first so that
// each level is a contiguous range and the children of a vertex are
// contiguous in the next level.
struct LevelForest {
  std::vector<Weight> weight;
  std::vector<Color> color;              // color of the edge to the parent
  std::vector<std::uint32_t> first;      // first child position
  std::vector<std::uint32_t> count;      // number of children
  std::vector<std::uint32_t> level_end;  // end position of each level
  std::uint32_t roots = 1;
  Shape shape = Shape::Central;
  Color root_color = 0;

  std::uint32_t size() const { return static_cast<std::uint32_t>(weight.size()); }
};

LevelForest rooted_quotient(const EquippedColoredTree& et) {
  const ColoredTree& t = et.tree();
  const std::uint32_t n = t.n();
  const auto order = t.bfs_order();
  const auto pos = t.bfs_position();
  const auto image = et.perm().image();

  std::vector<std::uint32_t> P(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i + kAhead < n) prefetch(&image[order[i + kAhead]]);
    P[i] = pos[image[order[i]]];
  }

  const Centers c = find_centers(t);
  LevelForest f;
  if (c.c2 == kNone) {
    f.shape = Shape::Central;
  } else {
    const bool fixed = P[c.c1] == c.c1;
    f.shape = fixed ? Shape::Bicentral : Shape::Swapped;
    const auto parent = t.bfs_parent();
    const std::uint32_t lower = parent[c.c2] == c.c1 ? c.c2 : c.c1;  // the center whose parent is the other one
    f.root_color = t.bfs_parent_color()[lower];
    f.roots = fixed ? 2 : 1;
  }

  // Parent towards the nearest center: the BFS parent, except along the
  // path from the centers up to position 0, which is reversed.
  std::vector<std::uint32_t> tp(t.bfs_parent().begin(), t.bfs_parent().end());
  std::vector<Color> tc(t.bfs_parent_color().begin(), t.bfs_parent_color().end());
  for (const std::uint32_t center : {c.c1, c.c2}) {
    if (center == kNone) continue;
    std::uint32_t x = center;
    while (x != 0) {
      const std::uint32_t y = t.bfs_parent()[x];
      if (y == c.c1 || y == c.c2) break;
      tp[y] = x;
      tc[y] = t.bfs_parent_color()[x];
      x = y;
    }
  }
  tp[c.c1] = kNone;
  if (c.c2 != kNone) tp[c.c2] = kNone;

  const std::vector<std::uint32_t> label = orbit_labels(P);
  std::vector<std::uint32_t> qid(n, kNone);
  std::uint32_t m = 0;
  for (std::uint32_t i = 0; i < n; ++i)
    if (label[i] == i) qid[i] = m++;
  std::vector<Weight> weight(m, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i + kAhead < n) prefetch(&qid[label[i + kAhead]]);
    ++weight[qid[label[i]]];
  }

  std::vector<std::uint32_t> qparent(m, kNone);
  std::vector<Color> qcolor(m, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (label[i] != i || tp[i] == kNone) continue;
    qparent[qid[i]] = qid[label[tp[i]]];
    qcolor[qid[i]] = tc[i];
  }

  // Children lists, then breadth-first renumbering from the roots.
  std::vector<std::uint32_t> first(static_cast<std::size_t>(m) + 1, 0);
  for (std::uint32_t v = 0; v < m; ++v)
    if (qparent[v] != kNone) ++first[qparent[v] + 1];
  for (std::uint32_t v = 0; v < m; ++v) first[v + 1] += first[v];
  std::vector<std::uint32_t> child(first[m]);
  {
    std::vector<std::uint32_t> fill(first.begin(), first.end() - 1);
    for (std::uint32_t v = 0; v < m; ++v)
      if (qparent[v] != kNone) child[fill[qparent[v]]++] = v;
  }

  std::vector<std::uint32_t> queue;
  queue.reserve(m);
  queue.push_back(qid[label[c.c1]]);
  if (f.shape == Shape::Bicentral) queue.push_back(qid[label[c.c2]]);
  f.weight.resize(m);
  f.color.resize(m);
  f.first.resize(m);
  f.count.resize(m);
  std::size_t level_stop = queue.size();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    if (head + kAhead < queue.size()) prefetch(&first[queue[head + kAhead]]);
    if (head == level_stop) {
      f.level_end.push_back(static_cast<std::uint32_t>(level_stop));
      level_stop = queue.size();
    }
    const std::uint32_t v = queue[head];
    f.weight[head] = weight[v];
    f.color[head] = qcolor[v];
    f.first[head] = static_cast<std::uint32_t>(queue.size());
    f.count[head] = first[v + 1] - first[v];
    queue.insert(queue.end(), child.begin() + first[v], child.begin() + first[v + 1]);
  }
  f.level_end.push_back(static_cast<std::uint32_t>(queue.size()));
  ensure(queue.size() == m, "rooted quotient must reach every orbit");
  return f;
}

// Open-addressing table from encoding tuples to dense ids, shared by both
// trees of one decision. Tuples are stored back to back in an arena as
// (length, entries...).
class Interner {
 public:
  explicit Interner(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    slots_.assign(cap, Slot{});
  }

  static std::uint64_t hash(std::span<const std::uint32_t> t) noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ t.size();
    for (auto x : t) {
      h = (h ^ x) * 0xff51afd7ed558ccdULL;
      h ^= h >> 32;
    }
    return h | 1;  // 0 marks an empty slot
  }

  void prefetch_slot(std::uint64_t h) const { prefetch(&slots_[h & (slots_.size() - 1)]); }

  std::uint32_t intern(std::span<const std::uint32_t> t, std::uint64_t h) {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      Slot& s = slots_[i];
      if (s.hash == 0) {
        s = {h, next_id_, static_cast<std::uint32_t>(arena_.size())};
        arena_.push_back(static_cast<std::uint32_t>(t.size()));
        arena_.insert(arena_.end(), t.begin(), t.end());
        return next_id_++;
      }
      if (s.hash == h && arena_[s.offset] == t.size() &&
          std::equal(t.begin(), t.end(), arena_.begin() + s.offset + 1))
        return s.id;
    }
  }

 private:
  struct Slot {
    std::uint64_t hash = 0;
    std::uint32_t id = 0;
    std::uint32_t offset = 0;
  };
  std::vector<Slot> slots_;
  std::vector<std::uint32_t> arena_;
  std::uint32_t next_id_ = 0;
};

// Class ids bottom-up, level by level; returns [shape, root color, sorted root ids].
std::vector<std::uint32_t> root_signature(const LevelForest& f, Interner& table) {
  const std::uint32_t m = f.size();
  std::vector<std::uint32_t> cls(m, 0);
  std::vector<std::uint32_t> buf;      // tuples of one level, back to back
  std::vector<std::uint32_t> offset;   // tuple boundaries within buf
  std::vector<std::uint64_t> hashes;
  std::vector<std::uint64_t> pairs;
  for (std::size_t l = f.level_end.size(); l-- > 0;) {
    const std::uint32_t lo = l == 0 ? 0 : f.level_end[l - 1];
    const std::uint32_t hi = f.level_end[l];
    buf.clear();
    offset.clear();
    hashes.clear();
    for (std::uint32_t v = lo; v < hi; ++v) {
      offset.push_back(static_cast<std::uint32_t>(buf.size()));
      buf.push_back(f.weight[v]);
      pairs.clear();
      for (std::uint32_t c = f.first[v]; c < f.first[v] + f.count[v]; ++c)
        pairs.push_back(static_cast<std::uint64_t>(f.color[c]) << 32 | cls[c]);
      std::sort(pairs.begin(), pairs.end());
      for (auto p : pairs) {
        buf.push_back(static_cast<std::uint32_t>(p >> 32));
        buf.push_back(static_cast<std::uint32_t>(p));
      }
      const std::span<const std::uint32_t> tuple(buf.data() + offset.back(), buf.size() - offset.back());
      hashes.push_back(Interner::hash(tuple));
    }
    offset.push_back(static_cast<std::uint32_t>(buf.size()));
    const std::uint32_t count = hi - lo;
    for (std::uint32_t j = 0; j < count; ++j) {
      if (j + kAhead < count) table.prefetch_slot(hashes[j + kAhead]);
      const std::span<const std::uint32_t> tuple(buf.data() + offset[j], offset[j + 1] - offset[j]);
      cls[lo + j] = table.intern(tuple, hashes[j]);
    }
  }
  std::vector<std::uint32_t> sig{static_cast<std::uint32_t>(f.shape), f.root_color};
  for (std::uint32_t r = 0; r < f.roots; ++r) sig.push_back(cls[r]);
  std::sort(sig.begin() + 2, sig.end());
  return sig;
}

bool same_color_multiset(const ColoredTree& a, const ColoredTree& b) {
  const Color k = std::max(a.k(), b.k());
  std::vector<std::int64_t> count(static_cast<std::size_t>(k) + 1, 0);
  for (const Edge& e : a.edges()) ++count[e.color];
  for (const Edge& e : b.edges()) --count[e.color];
  return std::all_of(count.begin(), count.end(), [](std::int64_t c) { return c == 0; });
}

}  // namespace

bool iso_decide(const EquippedColoredTree& a, const EquippedColoredTree& b) {
  if (a.n() != b.n()) return false;
  if (!same_color_multiset(a.tree(), b.tree())) return false;

  const LevelForest fa = rooted_quotient(a);
  const LevelForest fb = rooted_quotient(b);
  if (fa.shape != fb.shape || fa.root_color != fb.root_color || fa.size() != fb.size() ||
      fa.level_end != fb.level_end)
    return false;

  Interner table(fa.size() + fb.size());
  return root_signature(fa, table) == root_signature(fb, table);
}

}  // namespace eqtree
