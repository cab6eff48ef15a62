#include "box_quadrature.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace jetmorse::detail {

namespace {

// Binomial table up to row n.
std::vector<std::vector<Rational>> binomials(std::uint32_t n) {
  std::vector<std::vector<Rational>> b(n + 1);
  for (std::uint32_t i = 0; i <= n; ++i) {
    b[i].assign(i + 1, Rational(1));
    for (std::uint32_t j = 1; j < i; ++j) b[i][j] = b[i - 1][j - 1] + b[i - 1][j];
  }
  return b;
}

}  // namespace

DensePoly::DensePoly(const MultiPoly& p, std::size_t m) : degree_(m, 0), stride_(m, 1) {
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = m; i < e.size(); ++i)
      if (e[i] != 0) throw std::invalid_argument("DensePoly: polynomial depends on variables beyond the box dimensions");
    for (std::size_t i = 0; i < m; ++i) degree_[i] = std::max(degree_[i], e[i]);
  }
  std::size_t n = 1;
  for (std::size_t i = 0; i < m; ++i) {
    stride_[i] = n;
    n *= degree_[i] + 1;
  }
  coeff_.assign(n, Rational(0));
  for (const auto& [e, c] : p.terms()) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m; ++i) idx += e[i] * stride_[i];
    coeff_[idx] = c;
  }
  zero_ = p.is_zero();
}

std::vector<Rational> DensePoly::centered(std::span<const Rational> lo, std::span<const Rational> hi) const {
  std::vector<Rational> c = coeff_;
  const std::size_t m = dims();
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint32_t d = degree_[i];
    if (d == 0) continue;
    const Rational mid = (lo[i] + hi[i]) / Rational(2);
    const Rational rad = (hi[i] - lo[i]) / Rational(2);
    const auto binom = binomials(d);
    std::vector<Rational> mp(d + 1, Rational(1)), rp(d + 1, Rational(1));
    for (std::uint32_t j = 1; j <= d; ++j) {
      mp[j] = mp[j - 1] * mid;
      rp[j] = rp[j - 1] * rad;
    }
    const std::size_t s = stride_[i];
    const std::size_t block = s * (d + 1);
    std::vector<Rational> fiber(d + 1);
    for (std::size_t base = 0; base < c.size(); base += block) {
      for (std::size_t off = 0; off < s; ++off) {
        bool any = false;
        for (std::uint32_t e = 0; e <= d; ++e) {
          fiber[e] = c[base + off + e * s];
          any = any || !fiber[e].is_zero();
        }
        if (!any) continue;
        // (mid + rad t)^e = sum_j C(e, j) mid^{e-j} rad^j t^j
        for (std::uint32_t j = 0; j <= d; ++j) {
          Rational acc(0);
          for (std::uint32_t e = j; e <= d; ++e)
            if (!fiber[e].is_zero()) acc += fiber[e] * binom[e][j] * mp[e - j];
          c[base + off + j * s] = acc * rp[j];
        }
      }
    }
  }
  return c;
}

DensePoly::Bounds DensePoly::bound_centered(const std::vector<Rational>& c) const {
  Bounds b{c.empty() ? Rational(0) : c[0], c.empty() ? Rational(0) : c[0]};
  const std::size_t m = dims();
  for (std::size_t idx = 1; idx < c.size(); ++idx) {
    if (c[idx].is_zero()) continue;
    bool even = true;
    for (std::size_t i = 0; i < m && even; ++i) even = ((idx / stride_[i]) % (degree_[i] + 1)) % 2 == 0;
    if (even) {
      // t^e ranges over [0, 1]
      (c[idx].sign() > 0 ? b.hi : b.lo) += c[idx];
    } else {
      const Rational a = c[idx].abs();
      b.lo -= a;
      b.hi += a;
    }
  }
  return b;
}

DensePoly::Bounds DensePoly::bound(std::span<const Rational> lo, std::span<const Rational> hi) const {
  if (zero_) return {Rational(0), Rational(0)};
  return bound_centered(centered(lo, hi));
}

Rational DensePoly::integral(std::span<const Rational> lo, std::span<const Rational> hi) const {
  if (zero_) return Rational(0);
  const auto c = centered(lo, hi);
  const std::size_t m = dims();
  Rational sum(0);
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    if (c[idx].is_zero()) continue;
    Rational w(1);
    bool even = true;
    for (std::size_t i = 0; i < m && even; ++i) {
      const std::size_t e = (idx / stride_[i]) % (degree_[i] + 1);
      even = e % 2 == 0;
      w *= Rational(1, static_cast<long>(e) + 1);
    }
    if (even) sum += c[idx] * w;
  }
  Rational vol(1);
  for (std::size_t i = 0; i < m; ++i) vol *= hi[i] - lo[i];
  return sum * vol;
}

namespace {

int sign_on(const DensePoly& p, std::span<const Rational> lo, std::span<const Rational> hi) {
  if (p.is_zero()) return 0;
  const auto b = p.bound(lo, hi);
  if (b.lo.sign() > 0) return 1;
  if (b.hi.sign() < 0) return -1;
  return 0;
}

struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
  // Signs of vertical[0..n), then det, then trace; 0 = undecided.
  std::vector<int> signs;
  Rational flo;
  Rational fhi;
  bool has_f = false;
  Rational clo;
  Rational chi;
  Rational vol;
};

struct Classified {
  enum Kind { kInclude, kExclude, kUndecided } kind;
};

Classified::Kind classify(const std::vector<int>& signs, std::size_t nvert, int fixed, int qmax) {
  int vmin = fixed, unknown = 0;
  for (std::size_t i = 0; i < nvert; ++i) {
    if (signs[i] < 0) ++vmin;
    if (signs[i] == 0) ++unknown;
  }
  const int det = signs[nvert];
  const int tr = signs[nvert + 1];
  int hmin = 3, hmax = -1;
  auto add = [&](int h) {
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
  };
  if (det <= 0) add(1);
  if (det >= 0) {
    if (tr >= 0) add(0);
    if (tr <= 0) add(2);
  }
  const int cmin = vmin + hmin;
  const int cmax = vmin + unknown + hmax;
  if (cmax <= qmax) return Classified::kInclude;
  if (cmin > qmax) return Classified::kExclude;
  return Classified::kUndecided;
}

}  // namespace

RegionIntegral integrate_region(const RegionProblem& pb, const Rational& tol, std::size_t max_boxes) {
  const std::size_t m = pb.dims;
  const std::size_t nv = pb.vertical.size();
  std::vector<const DensePoly*> sign_fns;
  for (const auto& v : pb.vertical) sign_fns.push_back(&v);
  sign_fns.push_back(&pb.det);
  sign_fns.push_back(&pb.trace);

  RegionIntegral out;
  out.lo = out.hi = out.volume_lo = out.volume_hi = Rational(0);

  std::vector<Box> store;
  // Largest enclosure width first; ties by smaller lower corner, so the
  // refinement order (and every reported bound) is deterministic.
  auto worse = [&store](std::size_t a, std::size_t b) {
    const Rational wa = store[a].chi - store[a].clo;
    const Rational wb = store[b].chi - store[b].clo;
    if (wa != wb) return wa < wb;
    if (store[a].lo != store[b].lo) return store[b].lo < store[a].lo;
    return b < a;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);

  auto process = [&](Box box) {
    ++out.boxes;
    box.vol = Rational(1);
    for (std::size_t i = 0; i < m; ++i) box.vol *= box.hi[i] - box.lo[i];
    for (std::size_t f = 0; f < sign_fns.size(); ++f)
      if (box.signs[f] == 0) box.signs[f] = sign_on(*sign_fns[f], box.lo, box.hi);
    switch (classify(box.signs, nv, pb.fixed_negatives, pb.qmax)) {
      case Classified::kExclude:
        return;
      case Classified::kInclude: {
        const Rational v = pb.integrand.integral(box.lo, box.hi);
        out.lo += v;
        out.hi += v;
        out.volume_lo += box.vol;
        out.volume_hi += box.vol;
        return;
      }
      case Classified::kUndecided:
        break;
    }
    auto fb = pb.integrand.bound(box.lo, box.hi);
    if (box.has_f) {
      fb.lo = max(fb.lo, box.flo);
      fb.hi = min(fb.hi, box.fhi);
    }
    box.flo = fb.lo;
    box.fhi = fb.hi;
    box.has_f = true;
    // The box may or may not belong to the region: the contribution lies
    // between min(0, f) and max(0, f) integrated over the box.
    box.clo = min(Rational(0), box.flo) * box.vol;
    box.chi = max(Rational(0), box.fhi) * box.vol;
    out.lo += box.clo;
    out.hi += box.chi;
    out.volume_hi += box.vol;
    if (box.chi == box.clo) return;
    store.push_back(std::move(box));
    heap.push(store.size() - 1);
  };

  Box root;
  root.lo.assign(m, Rational(0));
  root.hi.assign(m, Rational(1));
  root.signs.assign(sign_fns.size(), 0);
  process(std::move(root));

  const Rational target = tol * Rational(2);
  while (!heap.empty() && out.hi - out.lo > target) {
    if (out.boxes + (std::size_t{1} << m) > max_boxes) {
      out.converged = false;
      break;
    }
    const std::size_t idx = heap.top();
    heap.pop();
    Box parent = std::move(store[idx]);
    out.lo -= parent.clo;
    out.hi -= parent.chi;
    out.volume_hi -= parent.vol;
    for (std::size_t corner = 0; corner < (std::size_t{1} << m); ++corner) {
      Box child;
      child.lo = parent.lo;
      child.hi = parent.hi;
      for (std::size_t i = 0; i < m; ++i) {
        const Rational mid = (parent.lo[i] + parent.hi[i]) / Rational(2);
        if (corner >> i & 1U)
          child.lo[i] = mid;
        else
          child.hi[i] = mid;
      }
      child.signs = parent.signs;
      child.flo = parent.flo;
      child.fhi = parent.fhi;
      child.has_f = true;
      process(std::move(child));
    }
  }
  if (out.hi - out.lo > target) out.converged = false;
  return out;
}

}  // namespace jetmorse::detail
