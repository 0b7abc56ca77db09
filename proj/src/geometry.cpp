#include "mpgcore/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

namespace mpgcore {

namespace {

Rat int_gcd(const Rat& a, const Rat& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  return Rat(g);
}

// Scales (coeffs, rhs) by a positive rational so all entries become coprime
// integers. Returns false if all coefficients are zero.
bool canonical_scale(RatVec& coeffs, Rat& rhs) {
  mpz_class l = 1;
  for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rhs.get_den().get_mpz_t());
  Rat scale{l};
  for (auto& c : coeffs) c *= scale;
  rhs *= scale;
  Rat g = 0;
  for (const auto& c : coeffs) g = int_gcd(g, c);
  if (g == 0) return false;
  g = abs(int_gcd(g, rhs));
  for (auto& c : coeffs) c /= g;
  rhs /= g;
  return true;
}

int cmp(const Rat& a, const Rat& b) { return mpq_cmp(a.get_mpq_t(), b.get_mpq_t()); }

bool lex_less(const RatVec& a, const Rat& ab, const RatVec& b, const Rat& bb) {
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c) return c < 0;
  }
  return cmp(ab, bb) < 0;
}

}  // namespace

void HalfSpace::normalize() { canonical_scale(normal, bound); }

bool Polyhedron::contains(const RatVec& x) const {
  for (const auto& h : ineqs)
    if (!h.contains(x)) return false;
  for (const auto& e : eqs)
    if (dot(e.coeffs, x) != e.rhs) return false;
  return true;
}

void Polyhedron::normalize() {
  std::vector<HalfSpace> keep;
  bool contradiction = false;
  for (auto h : ineqs) {
    if (!canonical_scale(h.normal, h.bound)) {
      if (h.bound < 0) contradiction = true;
      continue;  // 0 <= b with b >= 0 is vacuous
    }
    keep.push_back(std::move(h));
  }
  std::vector<LinEq> ekeep;
  for (auto e : eqs) {
    RatVec c = e.coeffs;
    Rat r = e.rhs;
    if (!canonical_scale(c, r)) {
      if (r != 0) contradiction = true;
      continue;
    }
    // sign convention: first nonzero coefficient positive
    for (const auto& ci : c) {
      if (ci != 0) {
        if (ci < 0) {
          for (auto& cj : c) cj = -cj;
          r = -r;
        }
        break;
      }
    }
    ekeep.push_back({std::move(c), std::move(r)});
  }
  if (contradiction) {
    // canonical empty polyhedron
    RatVec a(dim, Rat(0));
    if (dim > 0) a[0] = 1;
    keep.clear();
    ekeep.clear();
    keep.push_back({a, Rat(0)});
    RatVec na(dim, Rat(0));
    if (dim > 0) na[0] = -1;
    keep.push_back({na, Rat(-1)});
  }
  std::sort(keep.begin(), keep.end(), [](const HalfSpace& a, const HalfSpace& b) {
    return lex_less(a.normal, a.bound, b.normal, b.bound);
  });
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::sort(ekeep.begin(), ekeep.end(), [](const LinEq& a, const LinEq& b) {
    return lex_less(a.coeffs, a.rhs, b.coeffs, b.rhs);
  });
  ekeep.erase(std::unique(ekeep.begin(), ekeep.end()), ekeep.end());
  ineqs = std::move(keep);
  eqs = std::move(ekeep);
}

std::string Polyhedron::canonical_str() const {
  std::ostringstream os;
  for (const auto& h : ineqs) {
    for (const auto& c : h.normal) os << c.get_str() << " ";
    os << "<= " << h.bound.get_str() << ";";
  }
  for (const auto& e : eqs) {
    for (const auto& c : e.coeffs) os << c.get_str() << " ";
    os << "== " << e.rhs.get_str() << ";";
  }
  return os.str();
}

bool PolyUnion::contains(const RatVec& x) const {
  for (const auto& p : parts)
    if (p.contains(x)) return true;
  return false;
}

std::string PolyUnion::canonical_str() const {
  std::string s;
  for (const auto& p : parts) s += p.canonical_str() + "|";
  return s;
}

// ---------------------------------------------------------------------------
// Exact simplex
// ---------------------------------------------------------------------------

namespace {

// Dense tableau simplex over mpq. Columns: structural vars, then slacks,
// then artificials. Bland's lowest-index rule guarantees termination.
class Simplex {
 public:
  // rows: coeffs over structural vars; is_eq marks equality rows.
  Simplex(int nstruct, const std::vector<RatVec>& rows, const RatVec& rhs,
          const std::vector<bool>& is_eq)
      : ns_(nstruct), m_(static_cast<int>(rows.size())) {
    int nslack = 0;
    for (bool e : is_eq)
      if (!e) ++nslack;
    // provisional layout; artificial columns appended below
    int cols = ns_ + nslack;
    T_.assign(m_, RatVec(cols, Rat(0)));
    rhs_.resize(m_);
    basis_.assign(m_, -1);
    int si = 0;
    std::vector<int> needs_art;
    for (int i = 0; i < m_; ++i) {
      RatVec row = rows[i];
      Rat b = rhs[i];
      bool flip = b < 0;
      if (flip) {
        for (auto& c : row) c = -c;
        b = -b;
      }
      for (int j = 0; j < ns_; ++j) T_[i][j] = row[j];
      rhs_[i] = b;
      if (!is_eq[i]) {
        int sc = ns_ + si++;
        T_[i][sc] = flip ? Rat(-1) : Rat(1);
        if (!flip)
          basis_[i] = sc;
        else
          needs_art.push_back(i);
      } else {
        needs_art.push_back(i);
      }
    }
    nart_ = static_cast<int>(needs_art.size());
    first_art_ = cols;
    if (nart_ > 0) {
      for (auto& row : T_) row.resize(cols + nart_, Rat(0));
      for (int k = 0; k < nart_; ++k) {
        T_[needs_art[k]][first_art_ + k] = 1;
        basis_[needs_art[k]] = first_art_ + k;
      }
    }
    ncols_ = first_art_ + nart_;
  }

  // Returns false on infeasible.
  bool phase1() {
    if (nart_ == 0) return true;
    RatVec c(ncols_, Rat(0));
    for (int j = first_art_; j < ncols_; ++j) c[j] = -1;
    set_objective(c);
    optimize(/*allow_art=*/true);
    if (objv_ != 0) return false;
    // drive remaining artificials out of the basis
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      int piv = -1;
      for (int j = 0; j < first_art_; ++j)
        if (T_[i][j] != 0) {
          piv = j;
          break;
        }
      if (piv >= 0) pivot(i, piv);
    }
    return true;
  }

  // Returns false on unbounded.
  bool phase2(const RatVec& cstruct) {
    RatVec c(ncols_, Rat(0));
    for (int j = 0; j < ns_; ++j) c[j] = cstruct[j];
    set_objective(c);
    return optimize(/*allow_art=*/false);
  }

  Rat objective_value() const { return objv_; }

  RatVec structural_solution() const {
    RatVec y(ns_, Rat(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && basis_[i] < ns_) y[basis_[i]] = rhs_[i];
    return y;
  }

 private:
  void set_objective(const RatVec& c) {
    c_ = c;
    obj_.assign(ncols_, Rat(0));
    objv_ = 0;
    for (int j = 0; j < ncols_; ++j) obj_[j] = c[j];
    for (int i = 0; i < m_; ++i) {
      int bj = basis_[i];
      if (bj < 0 || c[bj] == 0) continue;
      for (int j = 0; j < ncols_; ++j) obj_[j] -= c[bj] * T_[i][j];
      objv_ += c[bj] * rhs_[i];
    }
  }

  void pivot(int r, int jc) {
    Rat piv = T_[r][jc];
    for (auto& v : T_[r]) v /= piv;
    rhs_[r] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || T_[i][jc] == 0) continue;
      Rat f = T_[i][jc];
      for (int j = 0; j < ncols_; ++j) T_[i][j] -= f * T_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    if (obj_[jc] != 0) {
      Rat f = obj_[jc];
      for (int j = 0; j < ncols_; ++j) obj_[j] -= f * T_[r][j];
      objv_ += f * rhs_[r];
    }
    basis_[r] = jc;
  }

  bool optimize(bool allow_art) {
    int limit = allow_art ? ncols_ : first_art_;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j)
        if (obj_[j] > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m_; ++i) {
        if (T_[i][enter] <= 0) continue;
        Rat ratio = rhs_[i] / T_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  int ns_, m_, nart_ = 0, first_art_ = 0, ncols_ = 0;
  std::vector<RatVec> T_;
  RatVec rhs_;
  std::vector<int> basis_;
  RatVec obj_, c_;
  Rat objv_;
};

}  // namespace

long lp_call_count = 0;

LpResult lp_solve(const std::optional<RatVec>& objective,
                  const Polyhedron& constraints) {
  ++lp_call_count;
  int n = constraints.dim;
  int ns = 2 * n;  // free var split x = u - v
  std::vector<RatVec> rows;
  RatVec rhs;
  std::vector<bool> is_eq;
  auto add = [&](const RatVec& a, const Rat& b, bool eq) {
    RatVec r(ns, Rat(0));
    for (int j = 0; j < n; ++j) {
      r[j] = a[j];
      r[n + j] = -a[j];
    }
    rows.push_back(std::move(r));
    rhs.push_back(b);
    is_eq.push_back(eq);
  };
  for (const auto& h : constraints.ineqs) add(h.normal, h.bound, false);
  for (const auto& e : constraints.eqs) add(e.coeffs, e.rhs, true);

  Simplex sx(ns, rows, rhs, is_eq);
  LpResult res;
  if (!sx.phase1()) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  RatVec c(ns, Rat(0));
  if (objective) {
    for (int j = 0; j < n; ++j) {
      c[j] = (*objective)[j];
      c[n + j] = -(*objective)[j];
    }
  }
  if (!sx.phase2(c)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimum;
  res.value = sx.objective_value();
  RatVec y = sx.structural_solution();
  res.point.resize(n);
  for (int j = 0; j < n; ++j) res.point[j] = y[j] - y[n + j];
  return res;
}

bool is_empty(const Polyhedron& p) {
  return lp_solve(std::nullopt, p).status == LpStatus::Infeasible;
}

bool poly_contains_poly(const Polyhedron& outer, const Polyhedron& inner) {
  if (is_empty(inner)) return true;
  for (const auto& h : outer.ineqs) {
    LpResult r = lp_solve(h.normal, inner);
    if (r.status != LpStatus::Optimum || r.value > h.bound) return false;
  }
  for (const auto& e : outer.eqs) {
    LpResult hi = lp_solve(e.coeffs, inner);
    if (hi.status != LpStatus::Optimum || hi.value > e.rhs) return false;
    RatVec neg(e.coeffs.size());
    for (size_t j = 0; j < neg.size(); ++j) neg[j] = -e.coeffs[j];
    LpResult lo = lp_solve(neg, inner);
    if (lo.status != LpStatus::Optimum || lo.value > -e.rhs) return false;
  }
  return true;
}

void remove_redundant(Polyhedron& p) {
  if (is_empty(p)) return;
  for (size_t k = p.ineqs.size(); k-- > 0;) {
    Polyhedron rest = p;
    rest.ineqs.erase(rest.ineqs.begin() + static_cast<long>(k));
    LpResult r = lp_solve(p.ineqs[k].normal, rest);
    if (r.status == LpStatus::Optimum && r.value <= p.ineqs[k].bound)
      p.ineqs.erase(p.ineqs.begin() + static_cast<long>(k));
  }
}

void PolyUnion::normalize() {
  std::vector<Polyhedron> keep;
  for (auto part : parts) {
    part.normalize();
    if (is_empty(part)) continue;
    remove_redundant(part);
    part.normalize();
    keep.push_back(std::move(part));
  }
  std::sort(keep.begin(), keep.end(), [](const Polyhedron& a, const Polyhedron& b) {
    return a.canonical_str() < b.canonical_str();
  });
  keep.erase(std::unique(keep.begin(), keep.end(),
                         [](const Polyhedron& a, const Polyhedron& b) {
                           return a.canonical_str() == b.canonical_str();
                         }),
             keep.end());
  // drop parts included in some other part
  std::vector<bool> drop(keep.size(), false);
  for (size_t i = 0; i < keep.size(); ++i) {
    if (drop[i]) continue;
    for (size_t j = 0; j < keep.size(); ++j) {
      if (i == j || drop[j]) continue;
      if (poly_contains_poly(keep[j], keep[i])) {
        drop[i] = true;
        break;
      }
    }
  }
  parts.clear();
  for (size_t i = 0; i < keep.size(); ++i)
    if (!drop[i]) parts.push_back(std::move(keep[i]));
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin
// ---------------------------------------------------------------------------

namespace {

// Eliminates variable `v` in place; the variable remains as a zero column.
void fm_eliminate(Polyhedron& p, int v) {
  // substitute via an equality if one mentions v
  for (size_t e = 0; e < p.eqs.size(); ++e) {
    if (p.eqs[e].coeffs[v] == 0) continue;
    LinEq eq = p.eqs[e];
    p.eqs.erase(p.eqs.begin() + static_cast<long>(e));
    Rat cv = eq.coeffs[v];
    auto subst = [&](RatVec& a, Rat& b) {
      if (a[v] == 0) return;
      Rat f = a[v] / cv;
      for (size_t j = 0; j < a.size(); ++j) a[j] -= f * eq.coeffs[j];
      b -= f * eq.rhs;
    };
    for (auto& h : p.ineqs) subst(h.normal, h.bound);
    for (auto& e2 : p.eqs) subst(e2.coeffs, e2.rhs);
    return;
  }
  std::vector<HalfSpace> zero, pos, neg;
  for (auto& h : p.ineqs) {
    if (h.normal[v] == 0)
      zero.push_back(std::move(h));
    else if (h.normal[v] > 0)
      pos.push_back(std::move(h));
    else
      neg.push_back(std::move(h));
  }
  for (const auto& hp : pos) {
    for (const auto& hn : neg) {
      Rat cp = hp.normal[v], cn = -hn.normal[v];
      HalfSpace h;
      h.normal.resize(hp.normal.size());
      for (size_t j = 0; j < h.normal.size(); ++j)
        h.normal[j] = cn * hp.normal[j] + cp * hn.normal[j];
      h.bound = cn * hp.bound + cp * hn.bound;
      h.normal[v] = 0;
      zero.push_back(std::move(h));
    }
  }
  p.ineqs = std::move(zero);
  p.normalize();
  remove_redundant(p);
}

}  // namespace

Polyhedron project(const Polyhedron& p, const std::vector<int>& coords) {
  Polyhedron work = p;
  std::vector<bool> keep(p.dim, false);
  for (int c : coords) keep[c] = true;
  for (int v = p.dim - 1; v >= 0; --v)
    if (!keep[v]) fm_eliminate(work, v);
  Polyhedron out(static_cast<int>(coords.size()));
  for (const auto& h : work.ineqs) {
    HalfSpace nh;
    nh.normal.resize(coords.size());
    for (size_t j = 0; j < coords.size(); ++j) nh.normal[j] = h.normal[coords[j]];
    nh.bound = h.bound;
    out.ineqs.push_back(std::move(nh));
  }
  for (const auto& e : work.eqs) {
    LinEq ne;
    ne.coeffs.resize(coords.size());
    for (size_t j = 0; j < coords.size(); ++j) ne.coeffs[j] = e.coeffs[coords[j]];
    ne.rhs = e.rhs;
    out.eqs.push_back(std::move(ne));
  }
  out.normalize();
  return out;
}

bool down_conv_membership(const std::vector<RatVec>& points, const RatVec& x) {
  if (points.empty()) throw std::invalid_argument("empty point list");
  size_t d = x.size();
  for (const auto& p : points)
    if (p.size() != d) throw std::invalid_argument("dimension mismatch");
  size_t k = points.size();
  // vars: coefficients a_0..a_{k-1}
  Polyhedron lp(static_cast<int>(k));
  for (size_t p = 0; p < k; ++p) {
    RatVec a(k, Rat(0));
    a[p] = -1;
    lp.ineqs.push_back({a, Rat(0)});
  }
  lp.eqs.push_back({RatVec(k, Rat(1)), Rat(1)});
  for (size_t i = 0; i < d; ++i) {
    RatVec a(k);
    for (size_t p = 0; p < k; ++p) a[p] = -points[p][i];
    lp.ineqs.push_back({a, -x[i]});
  }
  return lp_solve(std::nullopt, lp).status != LpStatus::Infeasible;
}

Polyhedron hrep_down_conv(const std::vector<RatVec>& points) {
  if (points.empty()) throw std::invalid_argument("empty point list");
  int d = static_cast<int>(points[0].size());
  // keep only extreme generators
  std::vector<RatVec> pts;
  for (const auto& p : points) {
    bool covered = false;
    for (const auto& q : pts)
      if (leq_componentwise(p, q)) {
        covered = true;
        break;
      }
    if (covered) continue;
    // a later point may dominate earlier ones
    std::erase_if(pts, [&](const RatVec& q) { return leq_componentwise(q, p); });
    pts.push_back(p);
  }
  if (pts.size() > 2) {
    for (size_t i = pts.size(); i-- > 0;) {
      std::vector<RatVec> rest;
      for (size_t j = 0; j < pts.size(); ++j)
        if (j != i) rest.push_back(pts[j]);
      if (down_conv_membership(rest, pts[i])) pts.erase(pts.begin() + static_cast<long>(i));
    }
  }
  size_t k = pts.size();
  if (k == 1) {
    Polyhedron out(d);
    for (int i = 0; i < d; ++i) {
      RatVec a(d, Rat(0));
      a[i] = 1;
      out.ineqs.push_back({a, pts[0][i]});
    }
    out.normalize();
    return out;
  }
  // vars: x_0..x_{d-1}, a_0..a_{k-2}; a_{k-1} = 1 - sum of the rest
  int total = d + static_cast<int>(k) - 1;
  Polyhedron sys(total);
  const RatVec& last = pts[k - 1];
  for (int i = 0; i < d; ++i) {
    RatVec a(total, Rat(0));
    a[i] = 1;
    for (size_t p = 0; p + 1 < k; ++p) a[d + p] = last[i] - pts[p][i];
    sys.ineqs.push_back({a, last[i]});
  }
  for (size_t p = 0; p + 1 < k; ++p) {
    RatVec a(total, Rat(0));
    a[d + p] = -1;
    sys.ineqs.push_back({a, Rat(0)});
  }
  {
    RatVec a(total, Rat(0));
    for (size_t p = 0; p + 1 < k; ++p) a[d + p] = 1;
    sys.ineqs.push_back({a, Rat(1)});
  }
  std::vector<int> coords(d);
  for (int i = 0; i < d; ++i) coords[i] = i;
  Polyhedron out = project(sys, coords);
  remove_redundant(out);
  out.normalize();
  return out;
}

HalfSpace complement_halfspace(const HalfSpace& h) {
  HalfSpace c;
  c.normal.resize(h.normal.size());
  for (size_t j = 0; j < h.normal.size(); ++j) c.normal[j] = -h.normal[j];
  c.bound = -h.bound;
  return c;
}

HalfSpace inclusion_map(const HalfSpace& h, const std::vector<int>& coords,
                        int ambient_dim) {
  HalfSpace out;
  out.normal.assign(ambient_dim, Rat(0));
  for (size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] < 0 || coords[j] >= ambient_dim)
      throw std::out_of_range("inclusion_map: coordinate index out of range");
    out.normal[coords[j]] = h.normal[j];
  }
  out.bound = h.bound;
  return out;
}

Polyhedron inclusion_map(const Polyhedron& p, const std::vector<int>& coords,
                         int ambient_dim) {
  Polyhedron out(ambient_dim);
  for (const auto& h : p.ineqs) out.ineqs.push_back(inclusion_map(h, coords, ambient_dim));
  for (const auto& e : p.eqs) {
    LinEq ne;
    ne.coeffs.assign(ambient_dim, Rat(0));
    for (size_t j = 0; j < coords.size(); ++j) {
      if (coords[j] < 0 || coords[j] >= ambient_dim)
        throw std::out_of_range("inclusion_map: coordinate index out of range");
      ne.coeffs[coords[j]] = e.coeffs[j];
    }
    ne.rhs = e.rhs;
    out.eqs.push_back(std::move(ne));
  }
  return out;
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
  Polyhedron out = a;
  out.ineqs.insert(out.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
  out.eqs.insert(out.eqs.end(), b.eqs.begin(), b.eqs.end());
  return out;
}

PolyUnion distribute(const std::vector<PolyUnion>& unions) {
  if (unions.empty()) throw std::invalid_argument("distribute: no operands");
  int d = unions[0].dim;
  for (const auto& u : unions)
    if (u.dim != d) throw std::invalid_argument("distribute: dimension mismatch");
  PolyUnion acc = unions[0];
  acc.normalize();
  for (size_t k = 1; k < unions.size(); ++k) {
    PolyUnion u = unions[k];
    u.normalize();
    // skip operands that already cover the accumulator
    bool covered = true;
    for (const auto& part : acc.parts) {
      bool inside = false;
      for (const auto& q : u.parts)
        if (poly_contains_poly(q, part)) {
          inside = true;
          break;
        }
      if (!inside) {
        covered = false;
        break;
      }
    }
    if (covered) continue;
    PolyUnion next(d);
    for (const auto& p : acc.parts)
      for (const auto& q : u.parts) {
        Polyhedron pq = intersect(p, q);
        pq.normalize();
        if (is_empty(pq)) continue;
        next.parts.push_back(std::move(pq));
      }
    next.normalize();
    acc = std::move(next);
    if (acc.parts.empty()) break;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Vertex enumeration (test support)
// ---------------------------------------------------------------------------

namespace {

std::optional<RatVec> solve_square(std::vector<RatVec> A, RatVec b, int n) {
  int m = static_cast<int>(A.size());
  int row = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < n && row < m; ++col) {
    int pr = -1;
    for (int i = row; i < m; ++i)
      if (A[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) return std::nullopt;  // rank-deficient
    std::swap(A[row], A[pr]);
    std::swap(b[row], b[pr]);
    Rat pv = A[row][col];
    for (int j = 0; j < n; ++j) A[row][j] /= pv;
    b[row] /= pv;
    for (int i = 0; i < m; ++i) {
      if (i == row || A[i][col] == 0) continue;
      Rat f = A[i][col];
      for (int j = 0; j < n; ++j) A[i][j] -= f * A[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (row < n) return std::nullopt;
  for (int i = row; i < m; ++i)
    if (b[i] != 0) return std::nullopt;  // inconsistent
  RatVec x(n);
  for (int i = 0; i < n; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace

std::vector<RatVec> enumerate_vertices(const Polyhedron& p) {
  int n = p.dim;
  std::vector<std::pair<RatVec, Rat>> rows;
  for (const auto& e : p.eqs) rows.push_back({e.coeffs, e.rhs});
  size_t fixed = rows.size();
  std::vector<RatVec> verts;
  std::set<std::string> seen;
  size_t ni = p.ineqs.size();
  std::vector<int> idx;
  // choose up to n tight inequalities on top of the equalities
  auto try_basis = [&](const std::vector<int>& chosen) {
    std::vector<RatVec> A;
    RatVec b;
    for (size_t i = 0; i < fixed; ++i) {
      A.push_back(rows[i].first);
      b.push_back(rows[i].second);
    }
    for (int c : chosen) {
      A.push_back(p.ineqs[c].normal);
      b.push_back(p.ineqs[c].bound);
    }
    if (static_cast<int>(A.size()) < n) return;
    auto x = solve_square(A, b, n);
    if (!x || !p.contains(*x)) return;
    std::string key = vec_str(*x);
    if (seen.insert(key).second) verts.push_back(*x);
  };
  std::vector<int> chosen;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (static_cast<int>(chosen.size() + fixed) >= n) {
      try_basis(chosen);
      return;
    }
    for (size_t i = start; i < ni; ++i) {
      chosen.push_back(static_cast<int>(i));
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return verts;
}

}  // namespace mpgcore
