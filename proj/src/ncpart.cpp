#include "nckit/ncpart.hpp"

#include <algorithm>
#include <numeric>

#include "nckit/errors.hpp"

namespace nckit {

std::string element_label(int x) {
  if (x >= 1 && x <= 9)
    return std::string(1, static_cast<char>('0' + x));
  if (x >= 10 && x <= 35)
    return std::string(1, static_cast<char>('A' + x - 10));
  throw Error("element " + std::to_string(x) + " has no single-character label");
}

namespace {

int parse_label(char c) {
  if (c >= '1' && c <= '9')
    return c - '0';
  if (c >= 'A' && c <= 'Z')
    return c - 'A' + 10;
  throw ParseError(std::string("invalid partition element '") + c + "'");
}

void canonicalize(std::vector<Block> &blocks) {
  for (auto &b : blocks)
    std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const Block &x, const Block &y) { return x.front() < y.front(); });
}

// Validates that blocks form a set partition of `ground` (sorted) and
// returns the labelling element -> block index.
std::vector<int> label_elements(const std::vector<Block> &blocks,
                                const std::vector<int> &ground) {
  int max_element = ground.empty() ? 0 : ground.back();
  std::vector<int> index(max_element + 1, -1);
  std::size_t seen = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty())
      throw NotAPartition("empty block");
    for (int x : blocks[b]) {
      if (x < 1 || x > max_element ||
          !std::binary_search(ground.begin(), ground.end(), x))
        throw NotAPartition("element " + std::to_string(x) +
                            " is not in the ground set");
      if (index[x] != -1)
        throw NotAPartition("element " + std::to_string(x) +
                            " appears in two blocks");
      index[x] = static_cast<int>(b);
      ++seen;
    }
  }
  if (seen != ground.size())
    throw NotAPartition("blocks do not cover the ground set");
  return index;
}

// Scans the ground in order keeping a stack of open blocks; an element whose
// block is open but not on top witnesses i < j < k < l with i~k, j~l.
bool scan_noncrossing(const std::vector<Block> &blocks,
                      const std::vector<int> &ground,
                      const std::vector<int> &index) {
  std::vector<std::size_t> seen(blocks.size(), 0);
  std::vector<int> open;
  for (int x : ground) {
    int b = index[x];
    const std::size_t size = blocks[b].size();
    if (seen[b] == 0) {
      if (size > 1)
        open.push_back(b);
    } else {
      if (open.empty() || open.back() != b)
        return false;
      if (seen[b] + 1 == size)
        open.pop_back();
    }
    ++seen[b];
  }
  return true;
}

std::vector<int> union_of(const std::vector<Block> &blocks) {
  std::vector<int> g;
  for (const auto &b : blocks)
    g.insert(g.end(), b.begin(), b.end());
  std::sort(g.begin(), g.end());
  return g;
}

} // namespace

NoncrossingPartition::NoncrossingPartition(std::vector<Block> blocks)
    : blocks_(std::move(blocks)) {
  for (const auto &b : blocks_)
    if (b.empty())
      throw NotAPartition("empty block");
  canonicalize(blocks_);
  ground_ = union_of(blocks_);
  if (std::adjacent_find(ground_.begin(), ground_.end()) != ground_.end())
    throw NotAPartition("blocks overlap");
  index_of_ = label_elements(blocks_, ground_);
  if (!scan_noncrossing(blocks_, ground_, index_of_))
    throw CrossingPartition(to_string());
}

NoncrossingPartition NoncrossingPartition::singletons(int n) {
  std::vector<Block> blocks;
  for (int i = 1; i <= n; ++i)
    blocks.push_back({i});
  return NoncrossingPartition(std::move(blocks));
}

NoncrossingPartition NoncrossingPartition::single_block(int n) {
  Block b(n);
  std::iota(b.begin(), b.end(), 1);
  return NoncrossingPartition({b});
}

NoncrossingPartition NoncrossingPartition::from_json(const nlohmann::json &j) {
  return NoncrossingPartition(j.get<std::vector<Block>>());
}

NoncrossingPartition NoncrossingPartition::parse(std::string_view text) {
  std::vector<Block> blocks(1);
  for (char c : text) {
    if (c == '|')
      blocks.emplace_back();
    else
      blocks.back().push_back(parse_label(c));
  }
  return NoncrossingPartition(std::move(blocks));
}

bool NoncrossingPartition::is_standard() const {
  for (std::size_t i = 0; i < ground_.size(); ++i)
    if (ground_[i] != static_cast<int>(i) + 1)
      return false;
  return true;
}

bool NoncrossingPartition::contains(int x) const {
  return x >= 0 && x < static_cast<int>(index_of_.size()) && index_of_[x] != -1;
}

int NoncrossingPartition::block_index(int x) const {
  if (!contains(x))
    throw GroundMismatch(std::to_string(x) + " is not in the ground set of " +
                         to_string());
  return index_of_[x];
}

bool NoncrossingPartition::same_block(int x, int y) const {
  return block_index(x) == block_index(y);
}

std::string NoncrossingPartition::to_string() const {
  std::string out;
  for (const auto &b : blocks_) {
    if (!out.empty())
      out += '|';
    for (int x : b)
      out += element_label(x);
  }
  return out;
}

nlohmann::json NoncrossingPartition::to_json() const { return blocks_; }

bool is_noncrossing(const std::vector<Block> &blocks,
                    const std::vector<int> &ground) {
  std::vector<int> g = ground;
  std::sort(g.begin(), g.end());
  if (std::adjacent_find(g.begin(), g.end()) != g.end())
    throw NotAPartition("ground set has repeated elements");
  auto index = label_elements(blocks, g);
  return scan_noncrossing(blocks, g, index);
}

bool is_noncrossing(const std::vector<Block> &blocks) {
  return is_noncrossing(blocks, union_of(blocks));
}

namespace {

// Noncrossing partitions of the interval [a, b]: either a is a singleton, or
// its block continues at some c, enclosing an independent partition of
// (a, c) and sharing c's block in the partition of [c, b].
std::vector<std::vector<Block>> nc_of_interval(int a, int b) {
  if (a > b)
    return {{}};
  std::vector<std::vector<Block>> out;
  for (auto rest : nc_of_interval(a + 1, b)) {
    rest.insert(rest.begin(), Block{a});
    out.push_back(std::move(rest));
  }
  for (int c = a + 1; c <= b; ++c) {
    auto inner = nc_of_interval(a + 1, c - 1);
    auto outer = nc_of_interval(c, b);
    for (const auto &in : inner) {
      for (auto out_part : outer) {
        // out_part's first block starts with c
        out_part.front().insert(out_part.front().begin(), a);
        out_part.insert(out_part.end(), in.begin(), in.end());
        out.push_back(std::move(out_part));
      }
    }
  }
  return out;
}

} // namespace

std::vector<NoncrossingPartition> enumerate_nc(int n) {
  if (n < 1)
    throw Error("enumerate_nc needs n >= 1");
  std::vector<NoncrossingPartition> out;
  for (auto &blocks : nc_of_interval(1, n))
    out.emplace_back(std::move(blocks));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NoncrossingPartition> enumerate_interval(int n) {
  if (n < 1)
    throw Error("enumerate_interval needs n >= 1");
  std::vector<NoncrossingPartition> out;
  // bit i of mask set <=> a cut between i+1 and i+2
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<Block> blocks(1);
    for (int i = 1; i <= n; ++i) {
      blocks.back().push_back(i);
      if (i < n && (mask >> (i - 1) & 1u))
        blocks.emplace_back();
    }
    out.emplace_back(std::move(blocks));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_interval(const NoncrossingPartition &p) {
  const auto &g = p.ground();
  for (auto [i, j] : arcs(p)) {
    auto pi = std::lower_bound(g.begin(), g.end(), i);
    auto pj = std::lower_bound(g.begin(), g.end(), j);
    if (pj - pi >= 2)
      return false;
  }
  return true;
}

std::vector<Arc> arcs(const NoncrossingPartition &p) {
  std::vector<Arc> out;
  for (const auto &b : p.blocks())
    for (std::size_t k = 1; k < b.size(); ++k)
      out.emplace_back(b[k - 1], b[k]);
  std::sort(out.begin(), out.end());
  return out;
}

Polynomial weight(const NoncrossingPartition &p) {
  if (!p.is_standard())
    return weight(standardize(p));
  Polynomial w(1);
  for (auto [i, j] : arcs(p))
    if (j - i - 1 > 0)
      w *= delta(j - i - 1);
  return w;
}

Polynomial gap_weight(const NoncrossingPartition &p) {
  const auto &g = p.ground();
  Polynomial w(1);
  for (auto [i, j] : arcs(p)) {
    auto between = std::lower_bound(g.begin(), g.end(), j) -
                   std::upper_bound(g.begin(), g.end(), i);
    if (between > 0)
      w *= delta(static_cast<int>(between));
  }
  return w;
}

bool leq(const NoncrossingPartition &p, const NoncrossingPartition &q) {
  if (p.ground() != q.ground())
    throw GroundMismatch(p.to_string() + " vs " + q.to_string());
  for (const auto &b : p.blocks()) {
    int target = q.block_index(b.front());
    for (int x : b)
      if (q.block_index(x) != target)
        return false;
  }
  return true;
}

NoncrossingPartition restrict_to(const NoncrossingPartition &p,
                                 const std::vector<int> &subset) {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<bool> taken(p.block_count(), false);
  for (int x : s) {
    if (!p.contains(x))
      throw NotBlockUnion(std::to_string(x) + " is not in the ground set");
    taken[p.block_index(x)] = true;
  }
  std::vector<Block> blocks;
  std::size_t covered = 0;
  for (int b = 0; b < p.block_count(); ++b) {
    if (!taken[b])
      continue;
    blocks.push_back(p.blocks()[b]);
    covered += p.blocks()[b].size();
  }
  if (covered != s.size())
    throw NotBlockUnion("subset is not a union of blocks of " + p.to_string());
  return NoncrossingPartition(std::move(blocks));
}

NoncrossingPartition standardize(const NoncrossingPartition &p) {
  const auto &g = p.ground();
  std::vector<Block> blocks = p.blocks();
  for (auto &b : blocks)
    for (int &x : b)
      x = static_cast<int>(std::lower_bound(g.begin(), g.end(), x) - g.begin()) + 1;
  return NoncrossingPartition(std::move(blocks));
}

namespace {

void require_standard(const NoncrossingPartition &p, const char *what) {
  if (!p.is_standard())
    throw GroundMismatch(std::string(what) + " needs ground {1..n}, got " +
                         p.to_string());
}

NoncrossingPartition from_arcs(int n, const std::vector<Arc> &arc_list) {
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [i, j] : arc_list)
    parent[find(i)] = find(j);
  std::vector<Block> blocks;
  std::vector<int> slot(n + 1, -1);
  for (int x = 1; x <= n; ++x) {
    int r = find(x);
    if (slot[r] == -1) {
      slot[r] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(x);
  }
  return NoncrossingPartition(std::move(blocks));
}

} // namespace

// (i, j) is an arc of the complement iff some block has min i+1 and max j.
NoncrossingPartition kreweras(const NoncrossingPartition &p) {
  require_standard(p, "kreweras");
  std::vector<Arc> arc_list;
  for (const auto &b : p.blocks())
    if (b.front() >= 2)
      arc_list.emplace_back(b.front() - 1, b.back());
  return from_arcs(p.ground_size(), arc_list);
}

// Applying the complement twice rotates labels down by one, so the inverse
// is the complement of the partition rotated up by one.
NoncrossingPartition kreweras_inv(const NoncrossingPartition &p) {
  require_standard(p, "kreweras_inv");
  const int n = p.ground_size();
  std::vector<Block> rotated = p.blocks();
  for (auto &b : rotated)
    for (int &x : b)
      x = x == n ? 1 : x + 1;
  return kreweras(NoncrossingPartition(std::move(rotated)));
}

NoncrossingPartition smallest_interval_above(const NoncrossingPartition &p) {
  const auto &g = p.ground();
  std::vector<Block> blocks;
  std::size_t start = 0;
  while (start < g.size()) {
    int last = p.block_of(g[start]).back();
    auto stop = std::upper_bound(g.begin(), g.end(), last);
    blocks.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(start), stop);
    start = static_cast<std::size_t>(stop - g.begin());
  }
  return NoncrossingPartition(std::move(blocks));
}

int iota(const NoncrossingPartition &p) {
  return smallest_interval_above(p).block_count();
}

Polynomial zeta(const NoncrossingPartition &p, const NoncrossingPartition &q) {
  if (!leq(p, q))
    return {};
  Polynomial z(1);
  for (const auto &b : q.blocks())
    z *= weight(restrict_to(p, b));
  return z;
}

Polynomial zeta_by_arcs(const NoncrossingPartition &p,
                        const NoncrossingPartition &q) {
  if (!leq(p, q))
    return {};
  Polynomial z(1);
  for (auto [i, j] : arcs(p)) {
    int count = 0;
    for (int k : q.block_of(i))
      if (i < k && k < j)
        ++count;
    if (count > 0)
      z *= delta(count);
  }
  return z;
}

Polynomial zeta_c(const NoncrossingPartition &a, const NoncrossingPartition &b) {
  return zeta(kreweras(b), kreweras(a));
}

Polynomial zeta_c_by_blocks(const NoncrossingPartition &a,
                            const NoncrossingPartition &b) {
  require_standard(b, "zeta_c_by_blocks");
  if (!leq(a, b))
    return {};
  Polynomial z(1);
  for (const auto &block : b.blocks()) {
    const int lo = block.front(), hi = block.back();
    if (lo == 1 || a.same_block(lo, hi))
      continue;
    std::vector<int> hull(hi - lo + 1);
    std::iota(hull.begin(), hull.end(), lo);
    const int k = iota(restrict_to(a, hull)) - 1;
    if (k > 0)
      z *= delta(k);
  }
  return z;
}

} // namespace nckit
