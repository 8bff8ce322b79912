#include "mqg/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "mqg/errors.hpp"

namespace mqg {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::int64_t parse_int(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed integer literal '" + t + "'");
  }
  if (pos != t.size()) throw std::invalid_argument("malformed integer literal '" + t + "'");
  return v;
}

// Greedy generating set: walk the elements in order and keep each one not
// already in the span of the kept ones.
std::vector<GroupElement> greedy_generators(const GroupBackend& g) {
  std::vector<GroupElement> gens;
  ElementSet span{g.identity()};
  for (const auto& x : *g.elements()) {
    if (span.count(x)) continue;
    gens.push_back(x);
    ElementSet seeds(gens.begin(), gens.end());
    span = subgroup_closure(g, seeds, g.order() + 1);
  }
  return gens;
}

}  // namespace

std::size_t GroupBackend::order() const {
  const auto* els = elements();
  if (els == nullptr) throw Unsupported("group " + name() + " is infinite");
  return els->size();
}

// ---- TableGroup ------------------------------------------------------------

TableGroup::TableGroup(std::string name, std::vector<std::string> names, std::vector<std::vector<int>> table)
    : name_(std::move(name)), names_(std::move(names)), table_(std::move(table)) {
  const int n = static_cast<int>(names_.size());
  if (n == 0) throw ValidationError("group table is empty");
  if (static_cast<int>(table_.size()) != n) throw ValidationError("group table must have one row per element");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("group table rows must have one entry per element");
    for (int v : row) {
      if (v < 0 || v >= n) throw ValidationError("group table entry out of range");
    }
  }
  {
    auto sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("group element names must be distinct");
    }
  }
  identity_ = 0;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) {
      identity_ = e;
      break;
    }
  }
  inverse_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (table_[x][y] == identity_ && table_[y][x] == identity_) {
        inverse_[x] = y;
        break;
      }
    }
  }
  for (int i = 0; i < n; ++i) elements_.push_back({i, 0});
  bool has_all_inverses = std::none_of(inverse_.begin(), inverse_.end(), [](int v) { return v < 0; });
  if (has_all_inverses) {
    generators_ = greedy_generators(*this);
  } else {
    generators_ = elements_;
  }
}

GroupElement TableGroup::mul(const GroupElement& x, const GroupElement& y) const {
  return {table_[static_cast<std::size_t>(x.a)][static_cast<std::size_t>(y.a)], 0};
}

GroupElement TableGroup::inv(const GroupElement& x) const {
  const int v = inverse_[static_cast<std::size_t>(x.a)];
  if (v < 0) throw std::domain_error("element " + format(x) + " has no inverse in table " + name_);
  return {v, 0};
}

bool TableGroup::valid(const GroupElement& x) const {
  return x.b == 0 && x.a >= 0 && x.a < static_cast<std::int64_t>(names_.size());
}

std::string TableGroup::format(const GroupElement& x) const {
  return names_.at(static_cast<std::size_t>(x.a));
}

GroupElement TableGroup::parse(std::string_view text) const {
  const std::string t = trim(text);
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == t) return {static_cast<std::int64_t>(i), 0};
  }
  if (t == "e") return identity();
  if (degree_ > 0 && !t.empty() && t.front() == '(') {
    const auto perm = parse_cycles(t, degree_);
    for (std::size_t i = 0; i < perms_.size(); ++i) {
      if (perms_[i] == perm) return {static_cast<std::int64_t>(i), 0};
    }
    throw std::invalid_argument("permutation " + t + " is not an element of " + name_);
  }
  throw std::invalid_argument("unknown element '" + t + "' of group " + name_);
}

// ---- Z and D-infinity --------------------------------------------------------

GroupElement IntegerGroup::mul(const GroupElement& x, const GroupElement& y) const { return {x.a + y.a, 0}; }
GroupElement IntegerGroup::inv(const GroupElement& x) const { return {-x.a, 0}; }
std::string IntegerGroup::format(const GroupElement& x) const { return std::to_string(x.a); }
GroupElement IntegerGroup::parse(std::string_view text) const {
  const std::string t = trim(text);
  if (t == "e") return identity();
  return {parse_int(t), 0};
}

GroupElement InfiniteDihedralGroup::mul(const GroupElement& x, const GroupElement& y) const {
  return {x.b == 0 ? x.a + y.a : x.a - y.a, x.b ^ y.b};
}

GroupElement InfiniteDihedralGroup::inv(const GroupElement& x) const {
  if (x.b == 1) return x;  // reflections are involutions
  return {-x.a, 0};
}

std::string InfiniteDihedralGroup::format(const GroupElement& x) const {
  return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + ")";
}

GroupElement InfiniteDihedralGroup::parse(std::string_view text) const {
  const std::string t = trim(text);
  if (t == "e") return identity();
  if (t.size() < 5 || t.front() != '(' || t.back() != ')') {
    throw std::invalid_argument("Dinf element must look like (n,s): '" + t + "'");
  }
  const auto comma = t.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("Dinf element must look like (n,s): '" + t + "'");
  GroupElement g{parse_int(t.substr(1, comma - 1)), parse_int(t.substr(comma + 1, t.size() - comma - 2))};
  if (!valid(g)) throw std::invalid_argument("Dinf reflection bit must be 0 or 1: '" + t + "'");
  return g;
}

// ---- permutations --------------------------------------------------------------

std::vector<int> compose_permutations(const std::vector<int>& p, const std::vector<int>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("permutations of different degree");
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if constexpr (kPermutationComposition == Composition::RightToLeft) {
      r[i] = p[static_cast<std::size_t>(q[i] - 1)];
    } else {
      r[i] = q[static_cast<std::size_t>(p[i] - 1)];
    }
  }
  return r;
}

std::vector<int> parse_cycles(std::string_view text, int degree) {
  std::vector<int> perm(static_cast<std::size_t>(degree));
  std::iota(perm.begin(), perm.end(), 1);
  std::string t = trim(text);
  if (t == "e" || t == "()") return perm;
  std::size_t i = 0;
  std::vector<bool> seen(static_cast<std::size_t>(degree) + 1, false);
  while (i < t.size()) {
    if (std::isspace(static_cast<unsigned char>(t[i]))) {
      ++i;
      continue;
    }
    if (t[i] != '(') throw std::invalid_argument("cycle notation expects '(' in '" + t + "'");
    const auto close = t.find(')', i);
    if (close == std::string::npos) throw std::invalid_argument("unclosed cycle in '" + t + "'");
    std::vector<int> cycle;
    for (const auto& w : split_ws(std::string_view(t).substr(i + 1, close - i - 1))) {
      std::string tok = w;
      tok.erase(std::remove(tok.begin(), tok.end(), ','), tok.end());
      if (tok.empty()) continue;
      const auto v = parse_int(tok);
      if (v < 1 || v > degree) throw std::invalid_argument("point " + tok + " outside 1.." + std::to_string(degree));
      if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("point " + tok + " repeated in '" + t + "'");
      seen[static_cast<std::size_t>(v)] = true;
      cycle.push_back(static_cast<int>(v));
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      perm[static_cast<std::size_t>(cycle[k] - 1)] = cycle[(k + 1) % cycle.size()];
    }
    i = close + 1;
  }
  return perm;
}

std::string format_cycles(const std::vector<int>& perm) {
  std::string out;
  std::vector<bool> done(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (done[i] || perm[i] == static_cast<int>(i) + 1) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(perm[j] - 1);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

// ---- factories -------------------------------------------------------------------

Backend make_table_group(std::string name, std::vector<std::string> names, std::vector<std::vector<int>> table) {
  return std::make_shared<TableGroup>(std::move(name), std::move(names), std::move(table));
}

Backend make_permutation_group(const std::string& name, const std::vector<std::vector<int>>& generators) {
  int degree = 0;
  for (const auto& g : generators) degree = std::max(degree, static_cast<int>(g.size()));
  if (degree == 0) degree = 1;
  std::vector<int> id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 1);
  std::vector<std::vector<int>> gens;
  for (auto g : generators) {
    while (static_cast<int>(g.size()) < degree) g.push_back(static_cast<int>(g.size()) + 1);
    auto sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != id) throw ValidationError("generator is not a permutation of 1.." + std::to_string(degree));
    gens.push_back(std::move(g));
  }
  std::set<std::vector<int>> seen{id};
  std::deque<std::vector<int>> queue{id};
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      auto q = compose_permutations(p, g);
      if (seen.insert(q).second) queue.push_back(std::move(q));
    }
  }
  std::vector<std::vector<int>> perms(seen.begin(), seen.end());  // lexicographic; identity first
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  const std::size_t n = perms.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(format_cycles(perms[i]));
    for (std::size_t j = 0; j < n; ++j) table[i][j] = index.at(compose_permutations(perms[i], perms[j]));
  }
  auto group = std::make_shared<TableGroup>(name, std::move(names), std::move(table));
  group->degree_ = degree;
  group->perms_ = std::move(perms);
  return group;
}

Backend make_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("C<n> needs n >= 1");
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
  }
  return make_table_group("C" + std::to_string(n), std::move(names), std::move(table));
}

Backend make_symmetric(int n) {
  if (n < 1) throw std::invalid_argument("S<n> needs n >= 1");
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> transposition(static_cast<std::size_t>(n));
    std::iota(transposition.begin(), transposition.end(), 1);
    std::swap(transposition[0], transposition[1]);
    std::vector<int> cycle(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % n + 1;
    gens = {transposition, cycle};
  } else {
    gens = {{1}};
  }
  return make_permutation_group("S" + std::to_string(n), gens);
}

// r_i = r^i, s_i = r^i s, with s r = r^{-1} s.
Backend make_dihedral(int n) {
  if (n < 1) throw std::invalid_argument("D<n> needs n >= 1");
  const auto idx = [n](int k, bool refl) { return (refl ? n : 0) + ((k % n) + n) % n; };
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("r" + std::to_string(i));
  for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  const auto size = static_cast<std::size_t>(2 * n);
  std::vector<std::vector<int>> table(size, std::vector<int>(size));
  for (int x = 0; x < 2 * n; ++x) {
    for (int y = 0; y < 2 * n; ++y) {
      const bool xr = x >= n;
      const bool yr = y >= n;
      const int i = x % n;
      const int j = y % n;
      table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = xr ? idx(i - j, !yr) : idx(i + j, yr);
    }
  }
  return make_table_group("D" + std::to_string(n), std::move(names), std::move(table));
}

Backend make_integers() { return std::make_shared<IntegerGroup>(); }
Backend make_infinite_dihedral() { return std::make_shared<InfiniteDihedralGroup>(); }

Backend make_builtin(std::string_view spec) {
  const std::string s = trim(spec);
  if (s == "Z") return make_integers();
  if (s == "Dinf") return make_infinite_dihedral();
  if (s.size() >= 2 && (s[0] == 'C' || s[0] == 'S' || s[0] == 'D')) {
    const auto n = parse_int(s.substr(1));
    if (n < 1 || n > 64) throw std::invalid_argument("builtin group order parameter out of range: " + s);
    if (s[0] == 'C') return make_cyclic(static_cast<int>(n));
    if (s[0] == 'S') {
      if (n > 5) throw std::invalid_argument("S<n> is only shipped for n <= 5");
      return make_symmetric(static_cast<int>(n));
    }
    return make_dihedral(static_cast<int>(n));
  }
  throw std::invalid_argument("unknown builtin group '" + s + "' (expected Z, Dinf, C<n>, S<n>, D<n>)");
}

Backend parse_group_definition(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
      ++no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto t = trim(line);
      if (!t.empty()) lines.emplace_back(no, std::move(t));
    }
  }
  if (lines.empty()) throw ParseError(1, "empty group definition");
  const auto header = split_ws(lines[0].second);
  if (header.size() < 3 || header[0] != "group") {
    throw ParseError(lines[0].first, "expected 'group table <name>', 'group perm <name>' or 'group builtin <spec>'");
  }
  const std::string& kind = header[1];
  if (kind == "builtin") {
    if (lines.size() > 1) throw ParseError(lines[1].first, "unexpected content after builtin group");
    try {
      return make_builtin(header[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lines[0].first, e.what());
    }
  }
  const std::string& name = header[2];
  if (kind == "table") {
    if (lines.size() < 2) throw ParseError(lines[0].first, "table group needs an element-name line");
    const auto names = split_ws(lines[1].second);
    const std::size_t n = names.size();
    if (lines.size() != n + 2) {
      throw ParseError(lines.back().first, "expected " + std::to_string(n) + " table rows, found " +
                                               std::to_string(lines.size() - 2));
    }
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < n; ++i) index[names[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> table;
    for (std::size_t r = 0; r < n; ++r) {
      const auto& [no, line] = lines[r + 2];
      auto cells = split_ws(line);
      // Rows may optionally repeat the row label: "a : a b c".
      if (cells.size() == n + 2 && cells[1] == ":") cells.erase(cells.begin(), cells.begin() + 2);
      if (cells.size() == n + 1 && cells[0].size() > 1 && cells[0].back() == ':') cells.erase(cells.begin());
      if (cells.size() != n) throw ParseError(no, "row has " + std::to_string(cells.size()) + " entries, expected " + std::to_string(n));
      std::vector<int> row;
      for (const auto& c : cells) {
        const auto it = index.find(c);
        if (it == index.end()) throw ParseError(no, "unknown element '" + c + "'");
        row.push_back(it->second);
      }
      table.push_back(std::move(row));
    }
    try {
      return make_table_group(name, names, std::move(table));
    } catch (const ValidationError& e) {
      throw ParseError(lines[1].first, e.what());
    }
  }
  if (kind == "perm") {
    std::vector<std::string> cycle_lines;
    int degree = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto& line = lines[i].second;
      if (line.rfind("degree", 0) == 0) {
        degree = static_cast<int>(parse_int(line.substr(6)));
        continue;
      }
      cycle_lines.push_back(line);
      for (const auto& tok : split_ws(line)) {
        std::string digits;
        for (char c : tok) {
          if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
          } else if (!digits.empty()) {
            degree = std::max(degree, static_cast<int>(parse_int(digits)));
            digits.clear();
          }
        }
        if (!digits.empty()) degree = std::max(degree, static_cast<int>(parse_int(digits)));
      }
    }
    std::vector<std::vector<int>> gens;
    for (std::size_t i = 1, k = 0; i < lines.size(); ++i) {
      if (lines[i].second.rfind("degree", 0) == 0) continue;
      try {
        gens.push_back(parse_cycles(cycle_lines[k++], std::max(degree, 1)));
      } catch (const std::invalid_argument& e) {
        throw ParseError(lines[i].first, e.what());
      }
    }
    return make_permutation_group(name, gens);
  }
  throw ParseError(lines[0].first, "unknown group kind '" + kind + "'");
}

Backend load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open group file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group_definition(buf.str());
}

Backend resolve_group(const std::vector<std::string>& words) {
  if (words.empty()) throw std::invalid_argument("no group given");
  if (words[0] == "builtin") {
    if (words.size() != 2) throw std::invalid_argument("usage: builtin <Z|Dinf|C<n>|S<n>|D<n>>");
    return make_builtin(words[1]);
  }
  if (words.size() != 1) throw std::invalid_argument("expected a single group file path");
  return load_group_file(words[0]);
}

// ---- free functions ------------------------------------------------------------

void require_valid(const GroupBackend& backend, const GroupElement& x) {
  if (!backend.valid(x)) {
    throw std::invalid_argument("element (" + std::to_string(x.a) + "," + std::to_string(x.b) +
                                ") is not valid for group " + backend.name());
  }
}

GroupElement group_mul(const GroupBackend& backend, const GroupElement& a, const GroupElement& b) {
  require_valid(backend, a);
  require_valid(backend, b);
  return backend.mul(a, b);
}

GroupElement conjugate(const GroupBackend& backend, const GroupElement& g, const GroupElement& h) {
  require_valid(backend, g);
  require_valid(backend, h);
  return backend.mul(backend.mul(backend.inv(g), h), g);
}

GroupElement group_pow(const GroupBackend& backend, const GroupElement& g, long exponent) {
  GroupElement base = exponent < 0 ? backend.inv(g) : g;
  long n = exponent < 0 ? -exponent : exponent;
  GroupElement result = backend.identity();
  while (n > 0) {
    if (n & 1) result = backend.mul(result, base);
    base = backend.mul(base, base);
    n >>= 1;
  }
  return result;
}

ElementSet subgroup_closure(const GroupBackend& backend, const ElementSet& generators, std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("subgroup_closure: cap must be >= 1");
  std::vector<GroupElement> steps;
  for (const auto& g : generators) {
    require_valid(backend, g);
    steps.push_back(g);
    steps.push_back(backend.inv(g));
  }
  ElementSet seen{backend.identity()};
  std::deque<GroupElement> queue{backend.identity()};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (const auto& s : steps) {
      const auto y = backend.mul(x, s);
      if (seen.insert(y).second) {
        if (seen.size() > cap) {
          throw ClosureExceedsCap("generated subgroup of " + backend.name() + " exceeds " + std::to_string(cap) +
                                  " elements");
        }
        queue.push_back(y);
      }
    }
  }
  return seen;
}

bool is_subgroup(const GroupBackend& backend, const ElementSet& set) {
  if (!set.count(backend.identity())) return false;
  for (const auto& x : set) {
    if (!set.count(backend.inv(x))) return false;
    for (const auto& y : set) {
      if (!set.count(backend.mul(x, y))) return false;
    }
  }
  return true;
}

bool normalizes(const GroupBackend& backend, const ElementSet& H, const ElementSet& K) {
  if (!is_subgroup(backend, H) || !is_subgroup(backend, K)) {
    throw std::invalid_argument("normalizes: inputs must be subgroups");
  }
  for (const auto& h : H) {
    ElementSet conj;
    for (const auto& k : K) conj.insert(conjugate(backend, h, k));
    if (conj != K) return false;
  }
  return true;
}

std::vector<GroupElement> sweep_elements(const GroupBackend& backend, int radius) {
  if (const auto* els = backend.elements()) return *els;
  std::vector<GroupElement> steps;
  for (const auto& g : backend.generators()) {
    steps.push_back(g);
    steps.push_back(backend.inv(g));
  }
  ElementSet seen{backend.identity()};
  std::vector<GroupElement> frontier{backend.identity()};
  for (int r = 0; r < radius; ++r) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier) {
      for (const auto& s : steps) {
        const auto y = backend.mul(x, s);
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

AxiomReport check_group_axioms(const GroupBackend& backend, const std::vector<GroupElement>& sample) {
  const auto e = backend.identity();
  for (const auto& a : sample) {
    if (!(backend.mul(e, a) == a && backend.mul(a, e) == a)) return {false, "identity", {a}};
    GroupElement ainv;
    try {
      ainv = backend.inv(a);
    } catch (const std::domain_error&) {
      return {false, "inverse", {a}};
    }
    if (!(backend.mul(a, ainv) == e && backend.mul(ainv, a) == e)) return {false, "inverse", {a}};
  }
  for (const auto& a : sample) {
    for (const auto& b : sample) {
      const auto ab = backend.mul(a, b);
      for (const auto& c : sample) {
        if (!(backend.mul(ab, c) == backend.mul(a, backend.mul(b, c)))) return {false, "associativity", {a, b, c}};
      }
    }
  }
  return {};
}

}  // namespace mqg
