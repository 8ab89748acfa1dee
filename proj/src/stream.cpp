#include "semimatch/stream.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

namespace semimatch {
namespace {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps the result identical across standard libraries.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Edge> permuted(const std::vector<Edge>& edges, std::uint64_t seed) {
  std::vector<Edge> out = edges;
  std::mt19937_64 rng(seed);
  for (std::size_t i = out.size(); i > 1; --i) {
    std::swap(out[i - 1], out[uniform_below(rng, i)]);
  }
  return out;
}

bool parse_number(std::string_view token, std::uint64_t& out) {
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

EdgeList open_edge_list(std::istream& in) {
  EdgeList g;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t expected = 0;
  std::unordered_set<std::uint64_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens.size() != 2) throw ParseError(line_no, "expected two integers");
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_number(tokens[0], a) || !parse_number(tokens[1], b)) {
      throw ParseError(line_no, "malformed integer");
    }
    if (!have_header) {
      if (a >= kNoVertex) throw ParseError(line_no, "vertex count too large");
      g.n = a;
      expected = b;
      have_header = true;
      g.edges.reserve(std::min<std::uint64_t>(expected, 1u << 24));
      continue;
    }
    if (g.edges.size() == expected) throw ParseError(line_no, "more edges than declared");
    if (a >= g.n || b >= g.n) throw ParseError(line_no, "vertex out of range");
    if (a == b) throw ParseError(line_no, "self-loop");
    auto u = static_cast<Vertex>(a);
    auto v = static_cast<Vertex>(b);
    if (!seen.insert(edge_key(u, v)).second) throw ParseError(line_no, "duplicate edge");
    g.edges.push_back({u, v});
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header \"n m\"");
  if (g.edges.size() != expected) {
    throw ParseError(line_no + 1, "expected " + std::to_string(expected) + " edges, found " +
                                      std::to_string(g.edges.size()));
  }
  return g;
}

EdgeList open_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return open_edge_list(in);
}

EdgeList open_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return open_edge_list(in);
}

void check_simple(const EdgeList& g) {
  std::unordered_set<std::uint64_t> seen;
  for (const Edge& e : g.edges) {
    if (e.u >= g.n || e.v >= g.n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (!seen.insert(edge_key(e.u, e.v)).second) throw std::invalid_argument("duplicate edge");
  }
}

std::string_view to_string(OrderPolicy policy) {
  switch (policy) {
    case OrderPolicy::kFileOrder: return "file";
    case OrderPolicy::kSeededPermutation: return "perm";
    case OrderPolicy::kPerPassReseed: return "reseed";
  }
  return "?";
}

OrderPolicy parse_order_policy(std::string_view text) {
  if (text == "file") return OrderPolicy::kFileOrder;
  if (text == "perm") return OrderPolicy::kSeededPermutation;
  if (text == "reseed") return OrderPolicy::kPerPassReseed;
  throw std::invalid_argument("unknown order policy: " + std::string(text));
}

EdgeStream::EdgeStream(EdgeList base, OrderPolicy policy, std::uint64_t seed)
    : base_(std::move(base)), policy_(policy), seed_(seed) {
  check_simple(base_);
  if (policy_ == OrderPolicy::kFileOrder) {
    fixed_order_ = base_.edges;
  } else if (policy_ == OrderPolicy::kSeededPermutation) {
    fixed_order_ = permuted(base_.edges, splitmix64(seed_));
  }
}

std::vector<Edge> EdgeStream::pass_order(std::size_t pass_index) const {
  if (policy_ == OrderPolicy::kPerPassReseed) {
    return permuted(base_.edges, splitmix64(seed_ ^ splitmix64(pass_index)));
  }
  return fixed_order_;
}

const std::vector<Edge>& EdgeStream::next_pass() {
  ++passes_taken_;
  if (policy_ == OrderPolicy::kPerPassReseed) {
    current_ = pass_order(passes_taken_);
    return current_;
  }
  return fixed_order_;
}

EdgeList generate(GraphKind kind, std::size_t n, std::uint64_t seed, std::size_t m) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  EdgeList g;
  g.n = n;
  switch (kind) {
    case GraphKind::kPath:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        g.edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
      }
      break;
    case GraphKind::kCycle:
      if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
      for (std::size_t i = 0; i < n; ++i) {
        g.edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
      }
      break;
    case GraphKind::kRandom: {
      const std::uint64_t total = std::uint64_t{n} * (n - 1) / 2;
      if (m > total) throw std::invalid_argument("random graph: m exceeds n(n-1)/2");
      std::mt19937_64 rng(splitmix64(seed));
      if (2 * m <= total) {
        std::unordered_set<std::uint64_t> seen;
        while (g.edges.size() < m) {
          auto u = static_cast<Vertex>(uniform_below(rng, n));
          auto v = static_cast<Vertex>(uniform_below(rng, n));
          if (u == v || !seen.insert(edge_key(u, v)).second) continue;
          g.edges.push_back({std::min(u, v), std::max(u, v)});
        }
      } else {
        std::vector<Edge> all;
        all.reserve(total);
        for (Vertex u = 0; u < n; ++u) {
          for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
        }
        for (std::size_t i = 0; i < m; ++i) {
          std::swap(all[i], all[i + uniform_below(rng, all.size() - i)]);
        }
        all.resize(m);
        g.edges = std::move(all);
      }
      break;
    }
    case GraphKind::kTwoGreedyTrap:
      if (n != 7) throw std::invalid_argument("two-greedy-trap has exactly 7 vertices");
      // a..g = 0..6; greedy over this order keeps bc and ef only.
      g.edges = {{1, 2}, {4, 5}, {0, 1}, {2, 3}, {3, 4}, {5, 6}};
      break;
  }
  return g;
}

EdgeList generate_from_spec(std::string_view spec, std::uint64_t seed) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  auto number = [&](std::size_t i) {
    std::uint64_t value = 0;
    if (i >= parts.size() || !parse_number(parts[i], value)) {
      throw std::invalid_argument("bad generator: " + std::string(spec));
    }
    return static_cast<std::size_t>(value);
  };
  const std::string_view kind = parts[0];
  if (kind == "path" && parts.size() == 2) return generate(GraphKind::kPath, number(1), seed);
  if (kind == "cycle" && parts.size() == 2) return generate(GraphKind::kCycle, number(1), seed);
  if (kind == "random" && parts.size() == 3) {
    return generate(GraphKind::kRandom, number(1), seed, number(2));
  }
  if (kind == "two-greedy-trap" && parts.size() == 1) {
    return generate(GraphKind::kTwoGreedyTrap, 7, seed);
  }
  throw std::invalid_argument("bad generator: " + std::string(spec));
}

}  // namespace semimatch
