#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "rph/heap.hpp"

namespace rph {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownStructure: return "unknown structure";
    case Errc::DuplicateId: return "duplicate id";
    case Errc::KindMismatch: return "kind mismatch";
    case Errc::IdCollision: return "id collision";
    case Errc::PoolMismatch: return "pool mismatch";
    case Errc::DeadHandle: return "dead handle";
    case Errc::ForeignHandle: return "foreign handle";
    case Errc::NonPositiveDelta: return "nonpositive delta";
    case Errc::Unsupported: return "unsupported";
    case Errc::EmptyHeap: return "empty heap";
    case Errc::BadArgument: return "bad argument";
    case Errc::NodeBudget: return "node budget exceeded";
    case Errc::Parse: return "parse error";
    case Errc::Audit: return "audit failure";
    case Errc::Io: return "io error";
  }
  return "error";
}

// ---------------------------------------------------------------------------
// NodePool

NodeId NodePool::allocate(const Key& key) {
  NodeId id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
  } else {
    if (nodes_.size() >= kNil) throw HeapError(Errc::NodeBudget, "node pool exhausted");
    id = static_cast<NodeId>(nodes_.size());
    nodes_.emplace_back();
  }
  Node& n = nodes_[id];
  const std::uint32_t gen = n.generation;
  n = Node{};
  n.key = key;
  n.generation = gen;
  n.live = true;
  ++live_;
  return id;
}

void NodePool::release(NodeId id) {
  Node& n = nodes_[id];
  n.live = false;
  ++n.generation;
  n.ord = n.unord = n.parent = n.next = kNil;
  free_.push_back(id);
  --live_;
}

// ---------------------------------------------------------------------------
// HeapConfig

namespace {

bool parse_int_suffix(std::string_view s, int& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

// "name:<n>" or "name(<n>)"
bool parse_parameterized(std::string_view text, std::string_view stem, int& value) {
  if (text.substr(0, stem.size()) != stem) return false;
  std::string_view rest = text.substr(stem.size());
  if (rest.size() >= 2 && rest.front() == ':') return parse_int_suffix(rest.substr(1), value);
  if (rest.size() >= 3 && rest.front() == '(' && rest.back() == ')')
    return parse_int_suffix(rest.substr(1, rest.size() - 2), value);
  return false;
}

}  // namespace

HeapConfig HeapConfig::of(HeapKind kind) {
  HeapConfig c;
  c.kind = kind;
  c.policy = (kind == HeapKind::RankPairing1 || kind == HeapKind::Capped)
                 ? MatchPolicy::DisassemblyFirst
                 : MatchPolicy::Unrestricted;
  c.bound = kind == HeapKind::Capped ? 0 : 1;
  return c;
}

HeapConfig HeapConfig::parse(std::string_view name) {
  if (name == "tournament") return of(HeapKind::Tournament);
  if (name == "bq-onepass") return of(HeapKind::BinomialOnePass);
  if (name == "bq-eager") return of(HeapKind::BinomialEager);
  if (name == "rp1") return of(HeapKind::RankPairing1);
  if (name == "rp2") return of(HeapKind::RankPairing2);
  if (name == "pairing") return of(HeapKind::Pairing);
  int value = 0;
  if (parse_parameterized(name, "variantA", value)) {
    if (value < 1) throw HeapError(Errc::BadArgument, "variantA needs b >= 1");
    HeapConfig c = of(HeapKind::VariantA);
    c.bound = value;
    return c;
  }
  if (parse_parameterized(name, "capped", value)) {
    if (value < 0) throw HeapError(Errc::BadArgument, "capped needs d >= 0");
    HeapConfig c = of(HeapKind::Capped);
    c.bound = value;
    return c;
  }
  throw HeapError(Errc::UnknownStructure, "unknown structure '" + std::string(name) + "'");
}

std::string_view kind_name(HeapKind kind) noexcept {
  switch (kind) {
    case HeapKind::Tournament: return "tournament";
    case HeapKind::BinomialOnePass: return "bq-onepass";
    case HeapKind::BinomialEager: return "bq-eager";
    case HeapKind::RankPairing1: return "rp1";
    case HeapKind::RankPairing2: return "rp2";
    case HeapKind::VariantA: return "variantA";
    case HeapKind::Capped: return "capped";
    case HeapKind::Pairing: return "pairing";
  }
  return "?";
}

std::string HeapConfig::name() const {
  std::string out(kind_name(kind));
  if (kind == HeapKind::VariantA || kind == HeapKind::Capped) out += ":" + std::to_string(bound);
  return out;
}

std::string HeapConfig::label() const {
  std::string out = name();
  if (uses_rank_pairing() && kind != HeapKind::BinomialOnePass && policy != of(kind).policy) {
    out += "/";
    out += to_string(policy);
  }
  return out;
}

bool HeapConfig::supports_decrease_key() const noexcept {
  switch (kind) {
    case HeapKind::RankPairing1:
    case HeapKind::RankPairing2:
    case HeapKind::VariantA:
    case HeapKind::Capped:
    case HeapKind::Pairing:
      return true;
    default:
      return false;
  }
}

bool HeapConfig::uses_rank_pairing() const noexcept {
  switch (kind) {
    case HeapKind::BinomialOnePass:
    case HeapKind::RankPairing1:
    case HeapKind::RankPairing2:
    case HeapKind::VariantA:
    case HeapKind::Capped:
      return true;
    default:
      return false;
  }
}

MatchPolicy parse_policy(std::string_view name) {
  if (name == "unrestricted") return MatchPolicy::Unrestricted;
  if (name == "red-first") return MatchPolicy::RedFirst;
  if (name == "disassembly-first") return MatchPolicy::DisassemblyFirst;
  throw HeapError(Errc::BadArgument, "unknown match policy '" + std::string(name) + "'");
}

std::string_view to_string(MatchPolicy policy) noexcept {
  switch (policy) {
    case MatchPolicy::Unrestricted: return "unrestricted";
    case MatchPolicy::RedFirst: return "red-first";
    case MatchPolicy::DisassemblyFirst: return "disassembly-first";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Heap: lifetime

Heap::Heap(HeapConfig config, std::shared_ptr<NodePool> pool)
    : config_(config), pool_(pool ? std::move(pool) : std::make_shared<NodePool>()) {
  if (config_.kind == HeapKind::VariantA && config_.bound < 1)
    throw HeapError(Errc::BadArgument, "variantA needs b >= 1");
  if (config_.kind == HeapKind::Capped && config_.bound < 0)
    throw HeapError(Errc::BadArgument, "capped needs d >= 0");
  if (!config_.uses_rank_pairing() || config_.kind == HeapKind::BinomialOnePass)
    config_.policy = MatchPolicy::Unrestricted;
}

Heap::~Heap() { release_all(); }

Heap::Heap(Heap&& other) noexcept
    : config_(other.config_),
      pool_(std::move(other.pool_)),
      min_(other.min_),
      size_(other.size_),
      unfair_edges_(other.unfair_edges_),
      last_halftrees_(other.last_halftrees_),
      root_total_(other.root_total_),
      max_rank_(other.max_rank_),
      max_rank_dirty_(other.max_rank_dirty_),
      counters_(other.counters_),
      observer_(other.observer_),
      ids_(std::move(other.ids_)),
      working_(other.working_),
      work_(std::move(other.work_)) {
  other.reset();
}

Heap& Heap::operator=(Heap&& other) noexcept {
  if (this == &other) return *this;
  release_all();
  config_ = other.config_;
  pool_ = std::move(other.pool_);
  min_ = other.min_;
  size_ = other.size_;
  unfair_edges_ = other.unfair_edges_;
  last_halftrees_ = other.last_halftrees_;
  root_total_ = other.root_total_;
  max_rank_ = other.max_rank_;
  max_rank_dirty_ = other.max_rank_dirty_;
  counters_ = other.counters_;
  observer_ = other.observer_;
  ids_ = std::move(other.ids_);
  working_ = other.working_;
  work_ = std::move(other.work_);
  other.reset();
  return *this;
}

void Heap::reset() noexcept {
  min_ = kNil;
  size_ = 0;
  unfair_edges_ = 0;
  root_total_ = 0;
  max_rank_ = -1;
  max_rank_dirty_ = false;
  ids_.clear();
  working_ = false;
  work_.clear();
}

void Heap::release_all() {
  if (!pool_) return;
  std::vector<NodeId> stack;
  for_each_root([&](NodeId r) { stack.push_back(r); });
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (node(n).ord != kNil) stack.push_back(node(n).ord);
    if (node(n).unord != kNil) stack.push_back(node(n).unord);
    pool_->release(n);
  }
  reset();
}

Heap Heap::clone() const {
  Heap copy(config_, std::make_shared<NodePool>(*pool_));
  copy.min_ = min_;
  copy.size_ = size_;
  copy.unfair_edges_ = unfair_edges_;
  copy.last_halftrees_ = last_halftrees_;
  copy.root_total_ = root_total_;
  copy.max_rank_ = max_rank_;
  copy.max_rank_dirty_ = max_rank_dirty_;
  copy.counters_ = counters_;
  copy.ids_ = ids_;
  copy.working_ = working_;
  copy.work_ = work_;
  return copy;
}

Heap make_heap(const HeapConfig& config, std::shared_ptr<NodePool> pool) {
  return Heap(config, std::move(pool));
}

Heap make_heap(std::string_view kind, std::shared_ptr<NodePool> pool) {
  return Heap(HeapConfig::parse(kind), std::move(pool));
}

Heap meld(Heap a, Heap b) {
  a.meld(b);
  return a;
}

// ---------------------------------------------------------------------------
// Heap: helpers

bool Heap::less(NodeId a, NodeId b) {
  ++counters_.comparisons;
  return key_less(node(a).key, node(b).key);
}

NodeId Heap::check_handle(Handle x) const {
  if (!pool_->alive(x)) throw HeapError(Errc::DeadHandle, "dead handle");
  return x.index;
}

void Heap::require_decrease_key() const {
  if (!config_.supports_decrease_key())
    throw HeapError(Errc::Unsupported,
                    "decrease_key is not supported by " + config_.name());
}

void Heap::verify_owner(NodeId x) const {
  NodeId r = x;
  while (node(r).parent != kNil) r = node(r).parent;
  bool found = false;
  for_each_root([&](NodeId root) { found = found || root == r; });
  if (!found) throw HeapError(Errc::ForeignHandle, "handle does not belong to this heap");
}

void Heap::notify_before(Mutation m, std::span<const NodeId> touched) const {
  if (observer_) observer_->before(*this, m, touched);
}

void Heap::notify_after(Mutation m, std::span<const NodeId> touched) const {
  if (observer_) observer_->after(*this, m, touched);
}

const Key& Heap::key(Handle x) const { return node(check_handle(x)).key; }

int Heap::rank(Handle x) const { return node(check_handle(x)).rank; }

std::vector<NodeId> Heap::roots() const {
  std::vector<NodeId> out;
  for_each_root([&](NodeId r) { out.push_back(r); });
  return out;
}

std::size_t Heap::root_count() const {
  if (!working_) return root_total_;
  std::size_t count = 0;
  for_each_root([&](NodeId) { ++count; });
  return count;
}

int Heap::max_root_rank() const {
  if (!max_rank_dirty_ && !working_) return max_rank_;
  int best = -1;
  for_each_root([&](NodeId r) { best = std::max(best, node(r).rank); });
  if (!working_) {
    max_rank_ = best;
    max_rank_dirty_ = false;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Root ring

void Heap::push_root(NodeId x) {
  ++root_total_;
  max_rank_ = std::max(max_rank_, node(x).rank);
  if (min_ == kNil) {
    node(x).next = x;
    min_ = x;
    return;
  }
  node(x).next = node(min_).next;
  node(min_).next = x;
  if (less(x, min_)) min_ = x;
}

void Heap::splice_ring(NodeId other_min) {
  std::swap(node(min_).next, node(other_min).next);
  if (less(other_min, min_)) min_ = other_min;
}

void Heap::relink_ring(std::span<const NodeId> roots) {
  const std::size_t n = roots.size();
  for (std::size_t i = 0; i < n; ++i) node(roots[i]).next = roots[(i + 1) % n];
  if (n == 0) min_ = kNil;
  root_total_ = n;
  max_rank_ = -1;
  for (NodeId r : roots) max_rank_ = std::max(max_rank_, node(r).rank);
  max_rank_dirty_ = false;
  working_ = false;
  work_.clear();
}

std::vector<NodeId> Heap::ring_after_min() const {
  std::vector<NodeId> out;
  if (min_ == kNil) return out;
  for (NodeId r = node(min_).next; r != min_; r = node(r).next) out.push_back(r);
  return out;
}

std::vector<NodeId> Heap::take_roots() {
  std::vector<NodeId> out = roots();
  working_ = true;
  work_ = out;
  min_ = kNil;
  return out;
}

void Heap::adopt_roots(std::span<const NodeId> roots) {
  for (NodeId r : roots)
    if (!node(r).live || node(r).parent != kNil)
      throw HeapError(Errc::BadArgument, "adopt_roots needs detached live roots");
  std::vector<NodeId> copy(roots.begin(), roots.end());
  relink_ring(copy);
  if (copy.empty()) return;
  NodeId best = copy.front();
  for (std::size_t i = 1; i < copy.size(); ++i)
    if (less(copy[i], best)) best = copy[i];
  min_ = best;
}

// ---------------------------------------------------------------------------
// Matching

NodeId Heap::link(NodeId a, NodeId b) {
  ++counters_.links;
  max_rank_dirty_ = true;
  const bool a_wins = less(a, b);
  const NodeId w = a_wins ? a : b;
  const NodeId l = a_wins ? b : a;
  const int rw = node(w).rank;
  const int rl = node(l).rank;
  const bool fair = rw == rl;

  touched_.assign({w, l});
  if (node(w).ord != kNil) touched_.push_back(node(w).ord);
  notify_before(Mutation::Link, touched_);

  Node& wn = node(w);
  Node& ln = node(l);
  ln.unord = wn.ord;
  if (wn.ord != kNil) node(wn.ord).parent = l;
  wn.ord = l;
  ln.parent = w;
  ln.next = kNil;
  wn.fresh = false;
  ln.fresh = false;

  switch (config_.kind) {
    case HeapKind::Pairing:
      break;
    case HeapKind::Tournament: {
      const int after = fair ? rw + 1 : std::max(rw, rl);
      wn.rank = after;
      ln.rank = after - 1;
      ln.unfair = !fair;
      if (!fair) {
        ++unfair_edges_;
        ++counters_.unfair_links;
      }
      break;
    }
    default:
      if (!fair) ++counters_.unfair_links;
      ln.rank = rl;
      wn.rank = std::max(rw, rl) + 1;
      break;
  }
  notify_after(Mutation::Link, touched_);
  return w;
}

NodeId Heap::match_roots(NodeId a, NodeId b) {
  if (a == b) throw HeapError(Errc::BadArgument, "cannot match a half tree with itself");
  if (!node(a).live || !node(b).live || node(a).parent != kNil || node(b).parent != kNil)
    throw HeapError(Errc::BadArgument, "match_roots needs two live roots");
  return link(a, b);
}

// ---------------------------------------------------------------------------
// Heap operations

Handle Heap::insert(double value, ItemId id) {
  if (!std::isfinite(value)) throw HeapError(Errc::BadArgument, "key value must be finite");
  if (config_.verify && ids_.count(id))
    throw HeapError(Errc::DuplicateId, "duplicate id " + std::to_string(id));

  notify_before(Mutation::Insert, {});
  const NodeId x = pool_->allocate(Key{value, id, false});
  ++size_;
  if (config_.verify) ids_.insert(id);
  const NodeId touched[] = {x};
  notify_after(Mutation::Insert, touched);

  switch (config_.kind) {
    case HeapKind::Tournament:
    case HeapKind::Pairing:
      if (min_ == kNil) {
        push_root(x);
      } else {
        const NodeId w = link(min_, x);
        node(w).next = w;
        min_ = w;
        root_total_ = 1;
      }
      break;
    case HeapKind::BinomialEager: {
      push_root(x);
      const NodeId keep = min_;
      std::vector<NodeId> trees = take_roots();
      std::vector<NodeId> out = eager_links(trees);
      relink_ring(out);
      min_ = keep;
      break;
    }
    default:
      push_root(x);
      break;
  }
  return pool_->handle(x);
}

std::optional<Handle> Heap::find_min() const {
  if (min_ == kNil) return std::nullopt;
  return pool_->handle(min_);
}

void Heap::meld(Heap& other) {
  if (&other == this) throw HeapError(Errc::BadArgument, "cannot meld a heap with itself");
  if (other.config_.kind != config_.kind || other.config_.bound != config_.bound)
    throw HeapError(Errc::KindMismatch,
                    "cannot meld " + config_.name() + " with " + other.config_.name());
  if (other.pool_ != pool_)
    throw HeapError(Errc::PoolMismatch, "melded heaps must share a node pool");
  if (config_.verify && other.config_.verify) {
    for (ItemId id : other.ids_)
      if (ids_.count(id))
        throw HeapError(Errc::IdCollision, "id " + std::to_string(id) + " is in both heaps");
  }
  if (other.empty()) {
    other.reset();
    return;
  }
  if (empty()) {
    min_ = other.min_;
    root_total_ = other.root_total_;
    max_rank_ = other.max_rank_;
    max_rank_dirty_ = other.max_rank_dirty_;
  } else {
    switch (config_.kind) {
      case HeapKind::Tournament:
      case HeapKind::Pairing: {
        const NodeId w = link(min_, other.min_);
        node(w).next = w;
        min_ = w;
        root_total_ = 1;
        break;
      }
      case HeapKind::BinomialEager: {
        splice_ring(other.min_);
        const NodeId keep = min_;
        std::vector<NodeId> trees = take_roots();
        std::vector<NodeId> out = eager_links(trees);
        relink_ring(out);
        min_ = keep;
        break;
      }
      default:
        splice_ring(other.min_);
        root_total_ += other.root_total_;
        max_rank_dirty_ = true;
        break;
    }
  }
  size_ += other.size_;
  unfair_edges_ += other.unfair_edges_;
  if (config_.verify) ids_.insert(other.ids_.begin(), other.ids_.end());
  other.reset();
}

void Heap::decrease_key(Handle h, double delta) {
  require_decrease_key();
  const NodeId x = check_handle(h);
  if (std::isnan(delta) || delta <= 0.0)
    throw HeapError(Errc::NonPositiveDelta, "decrease_key needs delta > 0");
  if (config_.verify) verify_owner(x);

  Key& k = node(x).key;
  if (std::isinf(delta))
    k.tombstone = true;
  else
    k.value -= delta;

  if (node(x).parent == kNil) {
    if (x != min_ && less(x, min_)) min_ = x;
    return;
  }
  detach(x);
}

void Heap::erase(Handle h) {
  require_decrease_key();
  const NodeId x = check_handle(h);
  if (config_.verify) verify_owner(x);
  decrease_key(h, std::numeric_limits<double>::infinity());
  if (min_ != x) throw HeapError(Errc::Audit, "tombstoned item did not become the minimum");
  delete_min();
}

std::optional<Item> Heap::delete_min() {
  if (min_ == kNil) return std::nullopt;
  const Item out{node(min_).key, pool_->handle(min_)};
  switch (config_.kind) {
    case HeapKind::Tournament: delete_min_one_tree(); break;
    case HeapKind::BinomialEager: delete_min_eager(); break;
    case HeapKind::Pairing: delete_min_pairing(); break;
    default: delete_min_rank_pairing(); break;
  }
  return out;
}

}  // namespace rph
