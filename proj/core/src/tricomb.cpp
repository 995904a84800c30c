#include "hypcensus/tricomb.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "hypcensus/errors.hpp"
#include "hypcensus/specfun.hpp"

namespace hypcensus {

namespace perm4 {
namespace {

struct Tables {
  std::array<std::array<int, 4>, 24> perms;
  std::array<int, 24> inv;
  std::array<std::array<int, 24>, 24> comp;
  std::array<int, 24> par;
  std::map<std::array<int, 4>, int> index;

  Tables() {
    std::array<int, 4> p{0, 1, 2, 3};
    for (int i = 0; i < 24; ++i) {
      perms[i] = p;
      index[p] = i;
      std::next_permutation(p.begin(), p.end());
    }
    for (int i = 0; i < 24; ++i) {
      std::array<int, 4> q{};
      int s = 0;
      for (int a = 0; a < 4; ++a) {
        q[perms[i][a]] = a;
        for (int b = a + 1; b < 4; ++b)
          if (perms[i][a] > perms[i][b]) ++s;
      }
      inv[i] = index.at(q);
      par[i] = s % 2;
    }
    for (int a = 0; a < 24; ++a)
      for (int b = 0; b < 24; ++b) {
        std::array<int, 4> q{};
        for (int x = 0; x < 4; ++x) q[x] = perms[a][perms[b][x]];
        comp[a][b] = index.at(q);
      }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

int index_of(const std::array<int, 4>& p) { return tables().index.at(p); }
const std::array<int, 4>& get(int idx) { return tables().perms[idx]; }
int inverse(int idx) { return tables().inv[idx]; }
int compose(int a, int b) { return tables().comp[a][b]; }
int parity(int idx) { return tables().par[idx]; }
const int kIdentity = 0;
}  // namespace perm4

const std::array<std::array<int, 2>, 6> kEdgeSlots = {
    {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {1, 3}, {1, 2}}};

int edge_slot_index(int v1, int v2) {
  for (int e = 0; e < 6; ++e) {
    if ((kEdgeSlots[e][0] == v1 && kEdgeSlots[e][1] == v2) ||
        (kEdgeSlots[e][0] == v2 && kEdgeSlots[e][1] == v1))
      return e;
  }
  throw Error("edge_slot_index: bad vertex pair");
}

void Pairing::set(int t, int f, int t2, int f2, int perm_idx) {
  if (perm4::get(perm_idx)[f] != f2)
    throw BadPairingFormat("gluing permutation does not map face to face");
  glue[t][f] = {t2, perm_idx};
  glue[t2][f2] = {t, perm4::inverse(perm_idx)};
}

bool Pairing::complete() const {
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f)
      if (glue[t][f].tet < 0) return false;
  return true;
}

bool Pairing::involutive() const {
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = glue[t][f];
      if (g.tet < 0) return false;
      if (g.tet == t && perm4::get(g.perm)[f] == f) return false;
      const Gluing& back = glue[g.tet][perm4::get(g.perm)[f]];
      if (back.tet != t || back.perm != perm4::inverse(g.perm)) return false;
    }
  return true;
}

bool Pairing::all_reversing() const {
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f)
      if (perm4::parity(glue[t][f].perm) != 1) return false;
  return true;
}

namespace {

/// Union-find with sign (relative orientation) on m elements.
struct SignedUf {
  std::vector<int> parent, sign;
  bool consistent = true;

  explicit SignedUf(int m) : parent(m), sign(m, 0) {
    for (int i = 0; i < m; ++i) parent[i] = i;
  }
  std::pair<int, int> find(int x) {
    int s = 0;
    int r = x;
    while (parent[r] != r) {
      s ^= sign[r];
      r = parent[r];
    }
    // path compression with sign accumulation
    int cur = x, acc = s;
    while (parent[cur] != cur) {
      const int next = parent[cur];
      const int ns = acc ^ sign[cur];
      parent[cur] = r;
      sign[cur] = acc;
      cur = next;
      acc = ns;
    }
    return {r, s};
  }
  /// rel = 0 same orientation, 1 opposite.
  void unite(int a, int b, int rel) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) {
      if ((sa ^ sb) != rel) consistent = false;
      return;
    }
    parent[ra] = rb;
    sign[ra] = sa ^ sb ^ rel;
  }
};

struct PlainUf {
  std::vector<int> parent;
  explicit PlainUf(int m) : parent(m) {
    for (int i = 0; i < m; ++i) parent[i] = i;
  }
  int find(int x) {
    int r = x;
    while (parent[r] != r) r = parent[r];
    while (parent[x] != x) {
      const int next = parent[x];
      parent[x] = r;
      x = next;
    }
    return r;
  }
  void unite(int a, int b) {
    const int ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb;
  }
};

}  // namespace

bool Pairing::orientable() const {
  // a gluing with odd vertex permutation is orientation-coherent
  SignedUf uf(n);
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = glue[t][f];
      uf.unite(t, g.tet, perm4::parity(g.perm) == 1 ? 0 : 1);
    }
  return uf.consistent;
}

std::vector<EdgeClass> edge_classes(const Pairing& p) {
  std::vector<EdgeClass> out;
  std::set<std::array<int, 3>> seen;
  for (int t = 0; t < p.n; ++t) {
    for (int e = 0; e < 6; ++e) {
      const int i = kEdgeSlots[e][0], j = kEdgeSlots[e][1];
      if (seen.count({t, i, j})) continue;
      EdgeClass ec;
      ec.id = static_cast<int>(out.size());
      // cross the lower-indexed complementary face first
      int comp0 = -1;
      for (int x = 0; x < 4; ++x)
        if (x != i && x != j) {
          comp0 = x;
          break;
        }
      int ct = t, ca = i, cb = j, cf = comp0;
      while (true) {
        const int lo = std::min(ca, cb), hi = std::max(ca, cb);
        ec.slots.push_back({ct, lo, hi});
        seen.insert({ct, lo, hi});
        const Gluing& g = p.at(ct, cf);
        const auto& pm = perm4::get(g.perm);
        const int na = pm[ca], nb = pm[cb], nf2 = pm[cf];
        // continue through the other face of the target containing the edge
        int nf = -1;
        for (int x = 0; x < 4; ++x)
          if (x != na && x != nb && x != nf2) nf = x;
        ct = g.tet;
        ca = na;
        cb = nb;
        cf = nf;
        if (ct == t && std::min(ca, cb) == i && std::max(ca, cb) == j &&
            cf == comp0) {
          if (ca != i) ec.reversing_return = true;
          break;
        }
        if (ec.slots.size() > 12u * p.n + 12u)
          throw Error("edge_classes: traversal did not close");
      }
      out.push_back(std::move(ec));
    }
  }
  return out;
}

std::vector<std::array<int, 6>> edge_class_of_slot(
    const Pairing& p, const std::vector<EdgeClass>& classes) {
  std::vector<std::array<int, 6>> out(p.n, {-1, -1, -1, -1, -1, -1});
  for (const EdgeClass& ec : classes)
    for (const auto& s : ec.slots)
      out[s[0]][edge_slot_index(s[1], s[2])] = ec.id;
  return out;
}

ManifoldReport is_manifold(const Pairing& p) {
  if (p.n == 0) return {false, "empty pairing"};
  if (!p.complete()) return {false, "incomplete pairing"};
  if (!p.involutive()) return {false, "pairing is not an involution"};
  const auto ecs = edge_classes(p);
  for (const EdgeClass& ec : ecs) {
    if (ec.reversing_return) {
      char buf[96];
      std::snprintf(buf, sizeof buf,
                    "edge class %d: midpoint link is a projective plane",
                    ec.id);
      return {false, buf};
    }
  }
  return {true, ""};
}

namespace {

std::vector<std::vector<std::array<int, 2>>> vertex_classes(const Pairing& p) {
  PlainUf uf(4 * p.n);
  for (int t = 0; t < p.n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = p.at(t, f);
      const auto& pm = perm4::get(g.perm);
      for (int v = 0; v < 4; ++v)
        if (v != f) uf.unite(4 * t + v, 4 * g.tet + pm[v]);
    }
  std::map<int, std::vector<std::array<int, 2>>> groups;
  for (int t = 0; t < p.n; ++t)
    for (int v = 0; v < 4; ++v)
      groups[uf.find(4 * t + v)].push_back({t, v});
  std::vector<std::vector<std::array<int, 2>>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

// Cyclic corner order of the link triangle at vertex v, oriented so that
// (v, order) is an even permutation of (0,1,2,3).
const int kLinkCycle[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};

// Directed edge of the link triangle at v lying in face f: the ordered
// corner pair of kLinkCycle[v] omitting f.
std::array<int, 2> link_edge_dir(int v, int f) {
  const int* c = kLinkCycle[v];
  for (int s = 0; s < 3; ++s) {
    const int a = c[s], b = c[(s + 1) % 3];
    if (a != f && b != f) return {a, b};
  }
  throw Error("link_edge_dir: unreachable");
}

struct LinkInfo {
  int chi = 0;
  bool orientable = true;
};

// chi and orientability of the boundary surface traced by one vertex class.
LinkInfo link_info(const Pairing& p,
                   const std::vector<std::array<int, 2>>& cls) {
  // corners (t, v, w): vertices of the link triangulation
  PlainUf corner_uf(16 * p.n);
  SignedUf tri_uf(4 * p.n);
  for (int t = 0; t < p.n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = p.at(t, f);
      const auto& pm = perm4::get(g.perm);
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        for (int w = 0; w < 4; ++w)
          if (w != v && w != f)
            corner_uf.unite(16 * t + 4 * v + w, 16 * g.tet + 4 * pm[v] + pm[w]);
        // orientation relation across the shared link edge
        const auto d1 = link_edge_dir(v, f);
        const auto d2 = link_edge_dir(pm[v], pm[f]);
        const bool same = (pm[d1[0]] == d2[0] && pm[d1[1]] == d2[1]);
        // coherent surfaces induce opposite directions on a shared edge
        tri_uf.unite(4 * t + v, 4 * g.tet + pm[v], same ? 1 : 0);
      }
    }
  LinkInfo info;
  const int faces = static_cast<int>(cls.size());
  std::set<int> verts;
  for (const auto& [t, v] : cls)
    for (int w = 0; w < 4; ++w)
      if (w != v) verts.insert(corner_uf.find(16 * t + 4 * v + w));
  info.chi = static_cast<int>(verts.size()) - (3 * faces) / 2 + faces;
  info.orientable = tri_uf.consistent;
  if (!tri_uf.consistent) {
    // the global relation check conflates components; redo locally
    SignedUf local(4 * p.n);
    bool ok = true;
    for (const auto& [t, v] : cls)
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        const Gluing& g = p.at(t, f);
        const auto& pm = perm4::get(g.perm);
        const auto d1 = link_edge_dir(v, f);
        const auto d2 = link_edge_dir(pm[v], pm[f]);
        const bool same = (pm[d1[0]] == d2[0] && pm[d1[1]] == d2[1]);
        local.unite(4 * t + v, 4 * g.tet + pm[v], same ? 1 : 0);
        ok = ok && local.consistent;
      }
    info.orientable = ok;
  }
  return info;
}

}  // namespace

BoundaryPattern boundary_pattern(const Pairing& p) {
  const ManifoldReport rep = is_manifold(p);
  if (!rep.ok) throw NonManifold("boundary_pattern: " + rep.diagnosis);
  BoundaryPattern out;
  for (auto& cls : vertex_classes(p)) {
    const LinkInfo info = link_info(p, cls);
    BoundaryComponent comp;
    comp.chi = info.chi;
    comp.orientable_link = info.orientable;
    comp.genus = info.orientable ? (2 - info.chi) / 2 : (2 - info.chi);
    comp.vertices = cls;
    if (info.orientable && info.chi == 0) ++out.toric_count;
    out.components.push_back(std::move(comp));
  }
  return out;
}

YDescription build_relative_handlebody(const Pairing& p) {
  YDescription y;
  y.genus = p.n + 1;
  y.complexity = 10 * p.n;
  y.volume = p.n * 8.0 * lobachevsky(std::numbers::pi / 4.0);
  y.orientable = p.orientable();
  const auto ecs = edge_classes(p);
  y.loops = static_cast<int>(ecs.size());
  for (const EdgeClass& ec : ecs) y.edge_valences.push_back(ec.valence());
  std::sort(y.edge_valences.begin(), y.edge_valences.end());
  return y;
}

bool min_exceptional_valence_check(const Pairing& p) {
  for (const EdgeClass& ec : edge_classes(p))
    if (ec.valence() < 7) return false;
  return true;
}

namespace {

using Sig = std::vector<std::array<int, 3>>;  // (target tet, perm, mark)

// Ordered BFS relabeling from a fixed start; returns nullopt when the
// pairing is disconnected from the start tetrahedron.
std::optional<Sig> traversal_sig(
    const Pairing& p, int t0, int lab0,
    const std::vector<std::array<bool, 4>>* mark = nullptr) {
  std::vector<int> index(p.n, -1);
  std::vector<std::array<int, 2>> order;  // (old tet, label perm old->new)
  index[t0] = 0;
  order.push_back({t0, lab0});
  Sig sig;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    const int told = order[qi][0], lab = order[qi][1];
    const int labinv = perm4::inverse(lab);
    for (int fnew = 0; fnew < 4; ++fnew) {
      const int fold = perm4::get(labinv)[fnew];
      const Gluing& g = p.at(told, fold);
      if (index[g.tet] < 0) {
        index[g.tet] = static_cast<int>(order.size());
        // force the gluing to read as the identity at first visit
        order.push_back({g.tet, perm4::compose(lab, perm4::inverse(g.perm))});
      }
      const int lab2 = order[index[g.tet]][1];
      const int pm = perm4::compose(lab2, perm4::compose(g.perm, labinv));
      const int flag = mark && (*mark)[told][fold] ? 1 : 0;
      sig.push_back({index[g.tet], pm, flag});
    }
  }
  if (static_cast<int>(order.size()) < p.n) return std::nullopt;
  return sig;
}

}  // namespace

namespace {

std::string best_signature(const Pairing& p,
                           const std::vector<std::array<bool, 4>>* mark) {
  std::optional<Sig> best;
  for (int t0 = 0; t0 < p.n; ++t0)
    for (int lab0 = 0; lab0 < 24; ++lab0) {
      auto s = traversal_sig(p, t0, lab0, mark);
      if (!s) continue;
      if (!best || *s < *best) best = std::move(s);
    }
  if (!best) throw Error("canonical_signature: disconnected pairing");
  std::string out;
  out.reserve(best->size() * 7);
  char buf[16];
  for (const auto& [t, pm, flag] : *best) {
    std::snprintf(buf, sizeof buf, flag ? "%d.%d* " : "%d.%d ", t, pm);
    out += buf;
  }
  if (!out.empty()) out.pop_back();
  return out;
}

}  // namespace

std::string canonical_signature(const Pairing& p) {
  return best_signature(p, nullptr);
}

std::string canonical_signature_flagged(
    const Pairing& p, const std::vector<std::array<bool, 4>>& mark) {
  return best_signature(p, &mark);
}

std::string Pairing::to_text() const {
  std::ostringstream os;
  os << "# sig " << canonical_signature(*this) << "\n";
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      if (f) os << ' ';
      os << glue[t][f].tet << ':' << glue[t][f].perm;
    }
    os << '\n';
  }
  return os.str();
}

Pairing Pairing::from_text(const std::string& text) {
  std::vector<std::array<Gluing, 4>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    std::array<Gluing, 4> row;
    for (int f = 0; f < 4; ++f) {
      std::string tok;
      if (!(ls >> tok))
        throw BadPairingFormat("expected four face tokens per line");
      int t2 = -1, pm = -1;
      if (std::sscanf(tok.c_str(), "%d:%d", &t2, &pm) != 2 || t2 < 0 ||
          pm < 0 || pm > 23)
        throw BadPairingFormat("bad face token: " + tok);
      row[f] = {t2, pm};
    }
    std::string extra;
    if (ls >> extra) throw BadPairingFormat("trailing tokens: " + extra);
    rows.push_back(row);
  }
  Pairing p(static_cast<int>(rows.size()));
  if (p.n == 0) throw BadPairingFormat("no tetrahedra");
  p.glue = std::move(rows);
  for (int t = 0; t < p.n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = p.glue[t][f];
      if (g.tet >= p.n) throw BadPairingFormat("tetrahedron index out of range");
      if (perm4::get(g.perm)[f] == f && g.tet == t)
        throw BadPairingFormat("face glued to itself");
    }
  if (!p.involutive()) throw BadPairingFormat("pairing not involutive");
  return p;
}

namespace {

bool connected(const Pairing& p) {
  PlainUf uf(p.n);
  for (int t = 0; t < p.n; ++t)
    for (int f = 0; f < 4; ++f) uf.unite(t, p.at(t, f).tet);
  for (int t = 1; t < p.n; ++t)
    if (uf.find(t) != uf.find(0)) return false;
  return true;
}

// Walks the edge orbit of {v1,v2} in tetrahedron t on a partial pairing.
// Returns true when the orbit is already closed, filling valence/reversing.
bool closed_orbit(const Pairing& p, int t, int v1, int v2, int* valence,
                  bool* reversing) {
  int comp0 = -1;
  for (int x = 0; x < 4; ++x)
    if (x != v1 && x != v2) {
      comp0 = x;
      break;
    }
  int ct = t, ca = v1, cb = v2, cf = comp0;
  int count = 0;
  while (true) {
    ++count;
    const Gluing& g = p.at(ct, cf);
    if (g.tet < 0) return false;
    const auto& pm = perm4::get(g.perm);
    const int na = pm[ca], nb = pm[cb], nf2 = pm[cf];
    int nf = -1;
    for (int x = 0; x < 4; ++x)
      if (x != na && x != nb && x != nf2) nf = x;
    ct = g.tet;
    ca = na;
    cb = nb;
    cf = nf;
    if (ct == t && std::min(ca, cb) == std::min(v1, v2) &&
        std::max(ca, cb) == std::max(v1, v2) && cf == comp0) {
      *valence = count;
      *reversing = ca != v1;
      return true;
    }
    if (count > 12 * p.n + 12) throw Error("closed_orbit: runaway traversal");
  }
}

// Rejects a partial pairing as soon as an edge orbit closes in a way the
// filters forbid; only the three edges of the face just glued can close.
bool partial_ok(const Pairing& p, int t, int f, const FilterSet& filters) {
  if (!filters.manifold_only && !filters.drop_valence_one &&
      !filters.drop_valence_two)
    return true;
  int fv[3];
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) fv[k++] = v;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      int valence = 0;
      bool reversing = false;
      if (!closed_orbit(p, t, fv[i], fv[j], &valence, &reversing)) continue;
      if (filters.manifold_only && reversing) return false;
      if (filters.drop_valence_one && valence == 1) return false;
      if (filters.drop_valence_two && valence == 2) return false;
    }
  return true;
}

bool passes_filters(const Pairing& p, const FilterSet& filters) {
  if (!connected(p)) return false;
  if (filters.manifold_only && !is_manifold(p).ok) return false;
  if (filters.drop_valence_one || filters.drop_valence_two) {
    for (const EdgeClass& ec : edge_classes(p)) {
      if (filters.drop_valence_one && ec.valence() == 1) return false;
      if (filters.drop_valence_two && ec.valence() == 2) return false;
    }
  }
  return true;
}

}  // namespace

void enumerate_pairings(int n, const FilterSet& filters,
                        const std::function<void(const Pairing&)>& sink,
                        int max_size) {
  if (n < 1) throw UnsupportedSize("enumerate_pairings: n must be positive");
  if (n > max_size)
    throw UnsupportedSize("enumerate_pairings: n exceeds configured maximum");
  std::set<std::string> seen;
  Pairing p(n);
  // backtracking over the first unmatched face slot; tetrahedra enter in
  // order of first use, which prunes pure tetrahedron relabelings
  std::function<void(int)> rec = [&](int slot) {
    while (slot < 4 * n && p.glue[slot / 4][slot % 4].tet >= 0) ++slot;
    if (slot == 4 * n) {
      if (!passes_filters(p, filters)) return;
      if (seen.insert(canonical_signature(p)).second) sink(p);
      return;
    }
    const int t = slot / 4, f = slot % 4;
    int max_tet = 0;
    for (int s = 0; s < 4 * n; ++s)
      if (p.glue[s / 4][s % 4].tet >= 0) max_tet = std::max(max_tet, s / 4 + 1);
    max_tet = std::max(max_tet, t + 1);
    for (int t2 = t; t2 < std::min(n, max_tet + 1); ++t2) {
      for (int f2 = (t2 == t ? f + 1 : 0); f2 < 4; ++f2) {
        if (p.glue[t2][f2].tet >= 0) continue;
        for (int pm = 0; pm < 24; ++pm) {
          if (perm4::get(pm)[f] != f2) continue;
          if (filters.orientation_reversing_only && perm4::parity(pm) != 1)
            continue;
          p.set(t, f, t2, f2, pm);
          if (partial_ok(p, t, f, filters)) rec(slot + 1);
          p.glue[t][f] = {};
          p.glue[t2][f2] = {};
        }
      }
    }
  };
  rec(0);
}

std::vector<Pairing> enumerate_pairings(int n, const FilterSet& filters,
                                        int max_size) {
  std::vector<Pairing> out;
  enumerate_pairings(
      n, filters, [&](const Pairing& p) { out.push_back(p); }, max_size);
  return out;
}

Pairing pachner_23(const Pairing& p, int t, int f) {
  const Gluing& g = p.at(t, f);
  const int t2 = g.tet, f2 = perm4::get(g.perm)[f];
  if (t2 == t) throw Error("pachner_23: face glued within one tetrahedron");
  const auto& sigma = perm4::get(g.perm);
  std::array<int, 3> u{};  // face vertices of t, ascending
  {
    int k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != f) u[k++] = v;
  }
  // old tets except t, t2 keep order; new tets occupy n-2 .. n
  const int nn = p.n + 1;
  std::vector<int> remap(p.n, -1);
  {
    int k = 0;
    for (int s = 0; s < p.n; ++s)
      if (s != t && s != t2) remap[s] = k++;
  }
  const int base = p.n - 2;  // first new tetrahedron index
  // local labels inside new tet N_i: 0 = apex of t (vertex f), 1 = apex of
  // t2 (vertex f2), 2/3 = the two face vertices other than u[i], ascending
  auto lam1 = [&](int i) {  // t labels -> N_i labels
    std::array<int, 4> m{};
    m[f] = 0;
    m[u[i]] = 1;
    int pos = 2;
    for (int k = 0; k < 3; ++k)
      if (k != i) m[u[k]] = pos++;
    return perm4::index_of(m);
  };
  auto lam2 = [&](int i) {  // t2 labels -> N_i labels
    std::array<int, 4> m{};
    m[f2] = 1;
    m[sigma[u[i]]] = 0;
    int pos = 2;
    for (int k = 0; k < 3; ++k)
      if (k != i) m[sigma[u[k]]] = pos++;
    return perm4::index_of(m);
  };
  // where an old face slot lives in the new pairing
  auto slot_map = [&](int s, int sf) -> std::pair<int, int> {
    if (s == t) {
      for (int i = 0; i < 3; ++i)
        if (sf == u[i]) return {base + i, lam1(i)};
      throw Error("pachner_23: removed face referenced");
    }
    if (s == t2) {
      for (int i = 0; i < 3; ++i)
        if (sf == sigma[u[i]]) return {base + i, lam2(i)};
      throw Error("pachner_23: removed face referenced");
    }
    return {remap[s], perm4::kIdentity};
  };
  Pairing q(nn);
  for (int s = 0; s < p.n; ++s) {
    for (int sf = 0; sf < 4; ++sf) {
      if ((s == t && sf == f) || (s == t2 && sf == f2)) continue;
      const Gluing& og = p.at(s, sf);
      const int of2 = perm4::get(og.perm)[sf];
      auto [ns, l1] = slot_map(s, sf);
      auto [ns2, l2] = slot_map(og.tet, of2);
      const int npm =
          perm4::compose(l2, perm4::compose(og.perm, perm4::inverse(l1)));
      const int nf = perm4::get(l1)[sf];
      if (q.glue[ns][nf].tet >= 0) continue;  // already set from the other side
      q.set(ns, nf, ns2, perm4::get(npm)[nf], npm);
    }
  }
  // internal gluings: N_i's face opposite the slot holding u[j] meets N_j
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const int k = 3 - i - j;  // remaining index
      const auto& m1 = perm4::get(lam1(i));
      const auto& m2 = perm4::get(lam1(j));
      std::array<int, 4> pm{};
      pm[0] = 0;
      pm[1] = 1;
      pm[m1[u[k]]] = m2[u[k]];  // shared third vertex
      pm[m1[u[j]]] = m2[u[i]];  // glued face slots
      q.set(base + i, m1[u[j]], base + j, m2[u[i]], perm4::index_of(pm));
    }
  }
  return q;
}

std::optional<Pairing> pachner_32(const Pairing& p, const EdgeClass& edge) {
  if (edge.valence() != 3 || edge.reversing_return) return std::nullopt;
  // walk the edge orbit recording (tet, a, b, forward face, backward face)
  struct Step {
    int tet, a, b, fwd, bwd;
  };
  std::array<Step, 3> steps{};
  {
    const auto& s0 = edge.slots[0];
    int comp0 = -1;
    for (int x = 0; x < 4; ++x)
      if (x != s0[1] && x != s0[2]) {
        comp0 = x;
        break;
      }
    int ct = s0[0], ca = s0[1], cb = s0[2], cf = comp0;
    for (int i = 0; i < 3; ++i) {
      int bwd = -1;
      for (int x = 0; x < 4; ++x)
        if (x != ca && x != cb && x != cf) bwd = x;
      steps[i] = {ct, ca, cb, cf, bwd};
      const Gluing& g = p.at(ct, cf);
      const auto& pm = perm4::get(g.perm);
      const int na = pm[ca], nb = pm[cb], nf2 = pm[cf];
      int nf = -1;
      for (int x = 0; x < 4; ++x)
        if (x != na && x != nb && x != nf2) nf = x;
      ct = g.tet;
      ca = na;
      cb = nb;
      cf = nf;
    }
    if (ct != steps[0].tet || ca != steps[0].a || cb != steps[0].b)
      return std::nullopt;
  }
  if (steps[0].tet == steps[1].tet || steps[0].tet == steps[2].tet ||
      steps[1].tet == steps[2].tet)
    return std::nullopt;
  // step i misses outer vertex i; its forward/backward faces hold the
  // outer vertices of the next/previous steps
  auto mu = [&](int i, bool top) {  // steps[i].tet labels -> new tet labels
    std::array<int, 4> m{};
    m[top ? steps[i].b : steps[i].a] = 3;          // kept apex
    m[top ? steps[i].a : steps[i].b] = i;          // completes the bijection
    m[steps[i].fwd] = (i + 1) % 3;
    m[steps[i].bwd] = (i + 2) % 3;
    return perm4::index_of(m);
  };
  const int nn = p.n - 1;
  std::vector<int> remap(p.n, -1);
  {
    int k = 0;
    for (int s = 0; s < p.n; ++s)
      if (s != steps[0].tet && s != steps[1].tet && s != steps[2].tet)
        remap[s] = k++;
  }
  const int b1 = nn - 2, b2 = nn - 1;  // new bottom/top tetrahedra
  auto slot_map = [&](int s, int sf) -> std::pair<int, int> {
    for (int i = 0; i < 3; ++i) {
      if (s != steps[i].tet) continue;
      if (sf == steps[i].b) return {b1, mu(i, false)};  // bottom face
      if (sf == steps[i].a) return {b2, mu(i, true)};   // top face
      throw Error("pachner_32: interior face referenced");
    }
    return {remap[s], perm4::kIdentity};
  };
  Pairing q(nn);
  for (int s = 0; s < p.n; ++s) {
    const bool inner = s == steps[0].tet || s == steps[1].tet ||
                       s == steps[2].tet;
    for (int sf = 0; sf < 4; ++sf) {
      if (inner) {
        // skip the faces around the collapsing edge
        int i = 0;
        while (steps[i].tet != s) ++i;
        if (sf == steps[i].fwd || sf == steps[i].bwd) continue;
      }
      const Gluing& og = p.at(s, sf);
      const int of2 = perm4::get(og.perm)[sf];
      auto [ns, l1] = slot_map(s, sf);
      auto [ns2, l2] = slot_map(og.tet, of2);
      const int npm =
          perm4::compose(l2, perm4::compose(og.perm, perm4::inverse(l1)));
      const int nf = perm4::get(l1)[sf];
      if (q.glue[ns][nf].tet >= 0) continue;
      if (ns == ns2 && perm4::get(npm)[nf] == nf)
        return std::nullopt;  // would glue a face to itself
      q.set(ns, nf, ns2, perm4::get(npm)[nf], npm);
    }
  }
  // the two new tetrahedra share the face opposite the apex (vertex 3)
  q.set(b1, 3, b2, 3, perm4::kIdentity);
  return q;
}

}  // namespace hypcensus
