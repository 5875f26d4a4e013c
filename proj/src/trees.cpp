#include "nckit/trees.hpp"

#include <algorithm>
#include <functional>

#include "nckit/errors.hpp"

namespace nckit {

// PlaneTree

PlaneTree PlaneTree::node(std::vector<PlaneTree> children) {
  PlaneTree t;
  t.children = std::move(children);
  return t;
}

int PlaneTree::leaf_count() const {
  if (is_leaf())
    return 1;
  int total = 0;
  for (const auto &c : children)
    total += c.leaf_count();
  return total;
}

int PlaneTree::internal_count() const {
  if (is_leaf())
    return 0;
  int total = 1;
  for (const auto &c : children)
    total += c.internal_count();
  return total;
}

nlohmann::json PlaneTree::to_json() const {
  if (is_leaf())
    return 0;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &c : children)
    arr.push_back(c.to_json());
  return arr;
}

PlaneTree PlaneTree::from_json(const nlohmann::json &j) {
  if (j.is_number_integer() && j.get<int>() == 0)
    return leaf();
  if (!j.is_array() || j.empty())
    throw ParseError("tree node must be 0 or a nonempty array: " + j.dump());
  std::vector<PlaneTree> children;
  for (const auto &c : j)
    children.push_back(from_json(c));
  return node(std::move(children));
}

std::string PlaneTree::to_string() const { return to_json().dump(); }

bool operator==(const PlaneTree &a, const PlaneTree &b) {
  return a.children == b.children;
}

std::strong_ordering operator<=>(const PlaneTree &a, const PlaneTree &b) {
  return std::lexicographical_compare_three_way(
      a.children.begin(), a.children.end(), b.children.begin(),
      b.children.end());
}

// SchroderTree

namespace {

bool all_branching(const PlaneTree &t) {
  if (t.is_leaf())
    return true;
  if (t.children.size() < 2)
    return false;
  return std::all_of(t.children.begin(), t.children.end(), all_branching);
}

bool full_binary(const PlaneTree &t) {
  if (t.is_leaf())
    return true;
  return t.children.size() == 2 && full_binary(t.children[0]) &&
         full_binary(t.children[1]);
}

} // namespace

SchroderTree::SchroderTree(PlaneTree tree) : tree_(std::move(tree)) {
  if (tree_.is_leaf())
    throw NotSchroder("a single leaf has no internal vertex");
  if (!all_branching(tree_))
    throw NotSchroder("internal vertex with fewer than two children: " +
                      tree_.to_string());
}

SchroderTree SchroderTree::from_json(const nlohmann::json &j) {
  return SchroderTree(PlaneTree::from_json(j));
}

bool SchroderTree::is_prime() const { return tree_.children.back().is_leaf(); }

namespace {

// All Schröder-shaped plane trees with `leaves` leaves (a bare leaf for 1).
class SchroderGenerator {
public:
  const std::vector<PlaneTree> &trees(int leaves) {
    if (static_cast<int>(memo_.size()) <= leaves)
      memo_.resize(leaves + 1);
    auto &slot = memo_[leaves];
    if (!slot.empty())
      return slot;
    std::vector<PlaneTree> out;
    if (leaves == 1) {
      out.push_back(PlaneTree::leaf());
    } else {
      std::vector<PlaneTree> prefix;
      extend(leaves, prefix, out);
    }
    std::sort(out.begin(), out.end());
    memo_[leaves] = std::move(out);
    return memo_[leaves];
  }

private:
  // Appends children to `prefix` until `remaining` leaves are used up.
  void extend(int remaining, std::vector<PlaneTree> &prefix,
              std::vector<PlaneTree> &out) {
    if (remaining == 0) {
      if (prefix.size() >= 2)
        out.push_back(PlaneTree::node(prefix));
      return;
    }
    for (int part = 1; part <= remaining; ++part) {
      // a single child holding everything would be a unary root
      if (prefix.empty() && part == remaining)
        continue;
      const auto &options = trees(part);
      for (const auto &child : options) {
        prefix.push_back(child);
        extend(remaining - part, prefix, out);
        prefix.pop_back();
      }
    }
  }

  std::vector<std::vector<PlaneTree>> memo_;
};

void require_prime(const SchroderTree &t) {
  if (!t.is_prime())
    throw NotPrime(t.tree().to_string());
}

} // namespace

std::vector<SchroderTree> enumerate_schroder(int n) {
  if (n < 1)
    throw Error("enumerate_schroder needs n >= 1");
  SchroderGenerator gen;
  std::vector<SchroderTree> out;
  for (const auto &t : gen.trees(n + 1))
    out.emplace_back(t);
  return out;
}

std::vector<SchroderTree> enumerate_prime(int n) {
  auto all = enumerate_schroder(n);
  std::vector<SchroderTree> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out),
               [](const SchroderTree &t) { return t.is_prime(); });
  return out;
}

NoncrossingPartition eta(const SchroderTree &t) {
  require_prime(t);
  std::vector<Block> blocks;
  int leaves_seen = 0;
  std::function<void(const PlaneTree &)> visit = [&](const PlaneTree &v) {
    if (v.is_leaf()) {
      ++leaves_seen;
      return;
    }
    Block gaps;
    for (std::size_t k = 0; k < v.children.size(); ++k) {
      visit(v.children[k]);
      if (k + 1 < v.children.size())
        gaps.push_back(leaves_seen);
    }
    blocks.push_back(std::move(gaps));
  };
  visit(t.tree());
  return NoncrossingPartition(std::move(blocks));
}

Polynomial weight_tree(const SchroderTree &t) {
  require_prime(t);
  Polynomial w(1);
  std::function<void(const PlaneTree &, bool)> visit =
      [&](const PlaneTree &v, bool on_left_branch) {
        if (v.is_leaf())
          return;
        if (!on_left_branch)
          w *= delta(static_cast<int>(v.children.size()) - 1);
        for (std::size_t k = 0; k < v.children.size(); ++k)
          visit(v.children[k], on_left_branch && k == 0);
      };
  visit(t.tree(), true);
  return w;
}

// Arrangement

Arrangement::Arrangement(int n, std::vector<ArrangedTree> trees)
    : n_(n), trees_(std::move(trees)) {
  if (n_ < 1)
    throw InvalidArrangement("needs at least one dot");
  std::vector<bool> seen(n_ + 1, false);
  for (const auto &t : trees_) {
    if (!full_binary(t.shape))
      throw InvalidArrangement("tree is not full binary: " + t.shape.to_string());
    if (static_cast<int>(t.positions.size()) != t.shape.leaf_count())
      throw InvalidArrangement("leaf count does not match positions");
    for (std::size_t k = 0; k < t.positions.size(); ++k) {
      int x = t.positions[k];
      if (x < 1 || x > n_)
        throw InvalidArrangement("dot " + std::to_string(x) + " out of range");
      if (k > 0 && t.positions[k - 1] >= x)
        throw InvalidArrangement("positions must increase within a tree");
      if (seen[x])
        throw InvalidArrangement("dot " + std::to_string(x) + " used twice");
      seen[x] = true;
    }
  }
  if (std::count(seen.begin() + 1, seen.end(), true) != n_)
    throw InvalidArrangement("not every dot is a leaf");
  std::sort(trees_.begin(), trees_.end(),
            [](const ArrangedTree &a, const ArrangedTree &b) {
              return a.positions.front() < b.positions.front();
            });
  std::vector<Block> blocks;
  for (const auto &t : trees_)
    blocks.push_back(t.positions);
  if (!is_noncrossing(blocks))
    throw InvalidArrangement("trees cross");
}

int Arrangement::tree_of(int x) const {
  for (std::size_t i = 0; i < trees_.size(); ++i)
    if (std::binary_search(trees_[i].positions.begin(),
                           trees_[i].positions.end(), x))
      return static_cast<int>(i);
  throw InvalidArrangement("dot " + std::to_string(x) + " not present");
}

nlohmann::json Arrangement::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &t : trees_)
    arr.push_back({{"positions", t.positions}, {"tree", t.shape.to_json()}});
  return arr;
}

Arrangement Arrangement::from_json(int n, const nlohmann::json &j) {
  std::vector<ArrangedTree> trees;
  for (const auto &item : j)
    trees.push_back({PlaneTree::from_json(item.at("tree")),
                     item.at("positions").get<std::vector<int>>()});
  return Arrangement(n, std::move(trees));
}

std::string Arrangement::to_string() const { return to_json().dump(); }

namespace {

struct PhiBuilder {
  int next_dot = 0;
  std::vector<ArrangedTree> out;

  // v becomes the root of its own arrangement tree.
  void emit(const PlaneTree &v) {
    ArrangedTree at;
    at.shape = binarize(v, at.positions);
    out.push_back(std::move(at));
  }

  PlaneTree binarize(const PlaneTree &v, std::vector<int> &positions) {
    if (v.is_leaf()) {
      positions.push_back(++next_dot);
      return PlaneTree::leaf();
    }
    PlaneTree left = binarize(v.children.front(), positions);
    for (std::size_t k = 1; k + 1 < v.children.size(); ++k)
      emit(v.children[k]);
    PlaneTree right = binarize(v.children.back(), positions);
    return PlaneTree::node({std::move(left), std::move(right)});
  }
};

// Walks arrangement trees recovering the middle children of each vertex.
class ArrangementWalker {
public:
  explicit ArrangementWalker(const Arrangement &a)
      : a_(a), starts_at_(a.n() + 2, -1), used_(a.trees().size(), false) {
    for (std::size_t i = 0; i < a.trees().size(); ++i)
      starts_at_[a.trees()[i].positions.front()] = static_cast<int>(i);
  }

  // Trees tiling the dots lo..hi in order, each starting right after the
  // previous one ends.
  std::vector<int> chain(int lo, int hi) {
    std::vector<int> out;
    for (int cur = lo; cur <= hi;) {
      int t = starts_at_[cur];
      if (t < 0 || used_[t])
        throw InvalidArrangement("no tree starts at dot " + std::to_string(cur));
      int last = a_.trees()[t].positions.back();
      if (last > hi)
        throw InvalidArrangement("tree at dot " + std::to_string(cur) +
                                 " overflows its gap");
      used_[t] = true;
      out.push_back(t);
      cur = last + 1;
    }
    return out;
  }

  bool all_used() const {
    return std::all_of(used_.begin(), used_.end(), [](bool b) { return b; });
  }

  const Arrangement &arrangement() const { return a_; }

private:
  const Arrangement &a_;
  std::vector<int> starts_at_;
  std::vector<bool> used_;
};

struct Span {
  int first;
  int last;
};

// Visits the binary vertices of one arrangement tree. `on_vertex` receives the
// vertex id, whether it lies on the leftmost path, and the dots strictly
// between its left and right subtrees.
template <typename OnVertex>
Span walk_binary(const PlaneTree &v, const std::vector<int> &positions,
                 std::size_t &cursor, bool leftmost, OnVertex &&on_vertex) {
  if (v.is_leaf()) {
    int x = positions[cursor++];
    return {x, x};
  }
  Span l = walk_binary(v.children[0], positions, cursor, leftmost, on_vertex);
  Span r = walk_binary(v.children[1], positions, cursor, false, on_vertex);
  on_vertex(VertexId{l.first, r.last}, leftmost, l.last + 1, r.first - 1);
  return {l.first, r.last};
}

} // namespace

Arrangement phi(const SchroderTree &t) {
  require_prime(t);
  PhiBuilder b;
  const auto &root = t.tree().children;
  for (std::size_t k = 0; k + 1 < root.size(); ++k)
    b.emit(root[k]);
  return Arrangement(t.n(), std::move(b.out));
}

SchroderTree phi_inv(const Arrangement &a) {
  ArrangementWalker walker(a);
  std::function<PlaneTree(int)> rebuild;

  std::function<PlaneTree(const PlaneTree &, const std::vector<int> &,
                          std::size_t &, Span &)>
      rebuild_vertex = [&](const PlaneTree &v, const std::vector<int> &pos,
                           std::size_t &cursor, Span &span) -> PlaneTree {
    if (v.is_leaf()) {
      span = {pos[cursor], pos[cursor]};
      ++cursor;
      return PlaneTree::leaf();
    }
    Span ls{}, rs{};
    PlaneTree left = rebuild_vertex(v.children[0], pos, cursor, ls);
    PlaneTree right = rebuild_vertex(v.children[1], pos, cursor, rs);
    std::vector<PlaneTree> children{std::move(left)};
    for (int m : walker.chain(ls.last + 1, rs.first - 1))
      children.push_back(rebuild(m));
    children.push_back(std::move(right));
    span = {ls.first, rs.last};
    return PlaneTree::node(std::move(children));
  };

  rebuild = [&](int index) {
    const auto &at = a.trees()[index];
    std::size_t cursor = 0;
    Span span{};
    return rebuild_vertex(at.shape, at.positions, cursor, span);
  };

  std::vector<PlaneTree> root;
  for (int t : walker.chain(1, a.n()))
    root.push_back(rebuild(t));
  root.push_back(PlaneTree::leaf());
  if (!walker.all_used())
    throw InvalidArrangement("some trees are not reachable from the root");
  return SchroderTree(PlaneTree::node(std::move(root)));
}

std::vector<Arrangement> enumerate_arrangements(int n) {
  std::vector<Arrangement> out;
  for (const auto &t : enumerate_prime(n))
    out.push_back(phi(t));
  return out;
}

NoncrossingPartition partition_of(const Arrangement &a) {
  std::vector<Block> blocks;
  for (const auto &t : a.trees())
    blocks.push_back(t.positions);
  return NoncrossingPartition(std::move(blocks));
}

std::map<VertexId, int> cover_counts(const Arrangement &a) {
  ArrangementWalker walker(a);
  std::map<VertexId, int> out;
  for (std::size_t i = 0; i < a.trees().size(); ++i) {
    const auto &at = a.trees()[i];
    std::size_t cursor = 0;
    // trees are sorted by first dot, so tree 0 holds dot 1 and its leftmost
    // path is the left branch of the preimage
    walk_binary(at.shape, at.positions, cursor, i == 0,
                [&](VertexId id, bool on_left_branch, int lo, int hi) {
                  int covered = static_cast<int>(walker.chain(lo, hi).size());
                  if (!on_left_branch)
                    out[id] = covered;
                });
  }
  return out;
}

Polynomial weight_arrangement(const Arrangement &a) {
  Polynomial w(1);
  for (const auto &[v, cov] : cover_counts(a))
    w *= delta(cov + 1);
  return w;
}

} // namespace nckit
