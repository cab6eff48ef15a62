#include "jetmorse/cone.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <thread>

#include "jetmorse/chern_ring.hpp"

namespace jetmorse {

std::string_view to_string(ConeMembership m) {
  switch (m) {
    case ConeMembership::kInterior:
      return "interior";
    case ConeMembership::kBoundary:
      return "boundary";
    case ConeMembership::kOutside:
      return "outside";
  }
  return "outside";
}

ConeMembership cone_contains(const WeightVector& a) {
  const int k = a.order();
  if (k == 0) throw std::invalid_argument("cone_contains: empty weight");
  bool strict = a.at(k).sign() > 0;
  if (a.at(k).sign() < 0) return ConeMembership::kOutside;
  Rational tail = a.at(k);
  for (int j = k - 1; j >= 1; --j) {
    const Rational need = Rational(2) * tail;
    if (a.at(j) < need) return ConeMembership::kOutside;
    if (a.at(j) == need) strict = false;
    tail += a.at(j);
  }
  return strict ? ConeMembership::kInterior : ConeMembership::kBoundary;
}

ThetaCertificate theta_positivity_certificate(const WeightVector& a) {
  const int k = a.order();
  const JetRecursion rec(k);
  ThetaCertificate best;
  best.s = k;
  best.value = a.at(k);
  std::vector<Rational> values(rec.context()->size(), Rational(0));
  for (int j = 1; j <= k; ++j) values[rec.a_index(j)] = a.at(j);
  for (int s = 1; s <= k - 1; ++s) {
    const MultiPoly th = rec.theta(s, a);
    const int free = k - s;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free); ++mask) {
      std::vector<Rational> vertex;
      for (int i = 0; i < free; ++i) {
        const Rational xi((mask >> i) & 1U);
        values[rec.x_index(s + i)] = xi;
        vertex.push_back(xi);
      }
      const Rational v = th.evaluate(values);
      if (v < best.value) {
        best.value = v;
        best.s = s;
        best.vertex = std::move(vertex);
      }
    }
  }
  best.positive = best.value.sign() > 0;
  return best;
}

WeightVector canonical_seed(int k) {
  if (k < 1) throw std::invalid_argument("canonical_seed: k must be >= 1");
  std::vector<Rational> a(static_cast<std::size_t>(k));
  a.back() = Rational(1);
  Rational tail(1);
  for (int j = k - 2; j >= 0; --j) {
    a[static_cast<std::size_t>(j)] = Rational(2) * tail;
    tail += a[static_cast<std::size_t>(j)];
  }
  return WeightVector(std::move(a));
}

namespace {

// Slack coordinates t_j >= 0 (j < k): a_k = 1, a_j = 2 (a_{j+1} + ... + a_k) + t_j.
std::vector<Rational> weight_from_slack(const std::vector<Rational>& t) {
  const std::size_t k = t.size() + 1;
  std::vector<Rational> a(k);
  a[k - 1] = Rational(1);
  Rational tail(1);
  for (std::size_t j = k - 1; j-- > 0;) {
    a[j] = Rational(2) * tail + t[j];
    tail += a[j];
  }
  return a;
}

struct Candidate {
  bool valid = false;
  Rational ratio;
  WeightVector a;
};

// Strictly better ratio, or equal ratio and lexicographically smaller weight.
bool better(const Candidate& c, const Candidate& best) {
  if (!c.valid) return false;
  if (!best.valid) return true;
  if (c.ratio != best.ratio) return c.ratio > best.ratio;
  return c.a < best.a;
}

class RatioSearch {
 public:
  RatioSearch(const IntersectionForm& fg, int max_iters) : fg_(fg), max_iters_(max_iters) {}

  [[nodiscard]] Candidate probe(const std::vector<Rational>& t) const {
    std::vector<Rational> a = weight_from_slack(t);
    const Rational g = fg_.G.evaluate(a);
    Candidate c;
    if (g.sign() <= 0) return c;
    c.valid = true;
    c.ratio = fg_.F.evaluate(a) / g;
    c.a = WeightVector(std::move(a));
    return c;
  }

  [[nodiscard]] Candidate climb(std::vector<Rational> t) const {
    Candidate best = probe(t);
    Rational step(1);
    const Rational min_step(1, 1 << 20);
    for (int it = 0; it < max_iters_ && step >= min_step; ++it) {
      bool moved = false;
      for (std::size_t j = 0; j < t.size(); ++j) {
        for (int dir : {1, -1}) {
          std::vector<Rational> trial = t;
          trial[j] += Rational(dir) * step;
          if (trial[j].sign() < 0) trial[j] = Rational(0);
          if (trial[j] == t[j]) continue;
          Candidate c = probe(trial);
          if (better(c, best)) {
            best = std::move(c);
            t = std::move(trial);
            moved = true;
            break;
          }
        }
      }
      if (!moved) step /= Rational(2);
    }
    return best;
  }

 private:
  const IntersectionForm& fg_;
  int max_iters_;
};

std::vector<Rational> random_slack(std::size_t n, std::mt19937_64& rng) {
  // Dyadic slack, scaled like the canonical seed's entries.
  std::vector<Rational> t(n);
  Rational scale(2);
  for (std::size_t j = n; j-- > 0;) {
    std::uniform_int_distribution<long> d(0, 64);
    t[j] = scale * Rational(d(rng), 16);
    scale *= Rational(3);
  }
  return t;
}

}  // namespace

std::optional<MkRecord> maximize_ratio(const IntersectionForm& fg, const OptimizerConfig& config) {
  const int k = fg.k;
  if (k < 1) throw std::invalid_argument("maximize_ratio: k must be >= 1");
  const RatioSearch search(fg, config.max_iters);
  const auto n = static_cast<std::size_t>(k - 1);
  const int restarts = std::max(0, config.restarts);

  // Start 0 is the canonical seed (zero slack); the others come from
  // independent generators so the result does not depend on scheduling.
  std::vector<std::vector<Rational>> starts;
  starts.emplace_back(n, Rational(0));
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(config.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1));
    starts.push_back(random_slack(n, rng));
  }
  if (n == 0) starts.resize(1);

  std::vector<Candidate> found(starts.size());
  unsigned threads = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(starts.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < starts.size(); i += threads) found[i] = search.climb(starts[i]);
    });
  }
  for (auto& th : pool) th.join();

  Candidate best;
  for (const auto& c : found)
    if (better(c, best)) best = c;
  if (!best.valid) return std::nullopt;
  MkRecord rec;
  rec.k = k;
  rec.best_ratio = best.ratio;
  rec.argmax = best.a;
  rec.certified_lower_bound = best.ratio;
  rec.seeds_used = static_cast<int>(starts.size());
  return rec;
}

std::optional<MkRecord> maximize_ratio(int k, const OptimizerConfig& config) {
  return maximize_ratio(intersection_polynomials(k), config);
}

std::vector<MkRecord> mk_table(int kmax, const OptimizerConfig& config) {
  std::vector<MkRecord> out;
  for (int k = 1; k <= kmax; ++k) {
    auto r = maximize_ratio(k, config);
    if (!r) throw std::runtime_error("mk_table: no weight with G > 0 found at k = " + std::to_string(k));
    if (!out.empty() && out.back().certified_lower_bound > r->certified_lower_bound) {
      r->certified_lower_bound = out.back().certified_lower_bound;
      r->lifted = true;
    }
    out.push_back(std::move(*r));
  }
  return out;
}

SurfaceInvariants SurfaceInvariants::from_hypersurface_degree(int d) {
  if (d < 5) throw std::domain_error("hypersurface degree must be >= 5 for general type");
  const Rational rd(d);
  return {rd * (rd - Rational(4)) * (rd - Rational(4)), rd * (rd * rd - Rational(4) * rd + Rational(6))};
}

JetOrderReport jet_order_for_surface(const SurfaceInvariants& s, const std::vector<MkRecord>& table) {
  if (s.c1sq.sign() <= 0) throw std::domain_error("jet_order_for_surface: c1^2 must be positive");
  JetOrderReport rep;
  rep.ratio = s.c2 / s.c1sq;
  rep.table = table;
  for (const auto& r : table) {
    if (r.certified_lower_bound > rep.ratio) {
      rep.order = r.k;
      rep.witness = r.argmax;
      rep.bound = r.certified_lower_bound;
      break;
    }
  }
  return rep;
}

JetOrderReport jet_order_for_surface(const SurfaceInvariants& s, int kmax, const OptimizerConfig& config) {
  if (s.c1sq.sign() <= 0) throw std::domain_error("jet_order_for_surface: c1^2 must be positive");
  return jet_order_for_surface(s, mk_table(kmax, config));
}

}  // namespace jetmorse
