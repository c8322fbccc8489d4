#include "ovm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

namespace ovm::verify {

double u01(Rng& rng) {
  // 53-bit mantissa mapping; fully specified, unlike the std distributions.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(Rng& rng, double a, double b) { return a + (b - a) * u01(rng); }

std::size_t pick(Rng& rng, std::size_t n) {
  const auto i = static_cast<std::size_t>(u01(rng) * static_cast<double>(n));
  return std::min(i, n - 1);
}

std::complex<double> random_phase(Rng& rng) {
  const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return {std::cos(theta), std::sin(theta)};
}

void VerificationReport::record(const std::string& check, std::uint64_t seed, double violation,
                                double tolerance) {
  for (CheckRecord& r : records) {
    if (r.check == check && r.seed == seed) {
      r.max_violation = std::max(r.max_violation, violation);
      r.pass = r.max_violation <= r.tolerance;
      return;
    }
  }
  records.push_back({check, seed, violation, tolerance, violation <= tolerance});
}

void VerificationReport::note(const std::string& check, std::uint64_t seed, double value) {
  for (CheckRecord& r : records) {
    if (r.check == check && r.seed == seed) {
      r.max_violation += value;
      return;
    }
  }
  records.push_back({check, seed, value, std::numeric_limits<double>::infinity(), true});
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const CheckRecord& r : other.records) {
    if (std::isinf(r.tolerance)) {
      note(r.check, r.seed, r.max_violation);
    } else {
      record(r.check, r.seed, r.max_violation, r.tolerance);
    }
  }
}

bool VerificationReport::all_pass() const {
  return std::all_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.pass; });
}

double VerificationReport::worst(const std::string& check) const {
  double w = 0.0;
  for (const CheckRecord& r : records) {
    if (r.check == check) w = std::max(w, r.max_violation);
  }
  return w;
}

// --- generators ---------------------------------------------------------------

Direction random_direction(const SpacePtr& space, std::size_t index, Rng& rng) {
  ScalarField x(space);
  std::vector<std::complex<double>> v(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) {
    x[i] = uniform(rng, 0.05, 0.95);
    v[i] = random_phase(rng);
  }
  return Direction(index, std::move(x), UnimodularField(space, std::move(v)));
}

namespace {

// Mutable canonical-form accumulator.
struct ProjectionBuilder {
  explicit ProjectionBuilder(const SpacePtr& space)
      : space(space),
        pi1(space->size(), false),
        pi2(space->size(), false),
        supp(space->size(), false),
        x(space->size(), 0.0),
        v(space->size(), std::complex<double>(1.0, 0.0)) {}

  void add(std::size_t atom, const AtomBlock& b) {
    if (b.d1) pi1[atom] = true;
    if (b.d2) pi2[atom] = true;
    if (b.off) {
      supp[atom] = true;
      x[atom] = b.x;
      v[atom] = b.v;
    }
  }

  CanonicalProjection build() const {
    return make_projection(BaseProjection(space, pi1), BaseProjection(space, pi2),
                           BaseProjection(space, supp), ScalarField(space, x),
                           UnimodularField(space, v));
  }

  SpacePtr space;
  std::vector<bool> pi1, pi2, supp;
  std::vector<double> x;
  std::vector<std::complex<double>> v;
};

AtomBlock diag_block(bool d1, bool d2) {
  AtomBlock b;
  b.d1 = d1;
  b.d2 = d2;
  return b;
}

AtomBlock off_block(double x, std::complex<double> v) {
  AtomBlock b;
  b.off = true;
  b.x = x;
  b.v = v;
  return b;
}

// (x, v) supplier: fresh random pairs, or verbatim registry entries.
struct OffSource {
  const DirectionRegistry* registry = nullptr;

  // Returns the direct block and its in-subalgebra complement at the atom.
  std::pair<AtomBlock, AtomBlock> draw(std::size_t atom, Rng& rng) const {
    double x;
    std::complex<double> v;
    if (registry != nullptr && registry->count() > 0) {
      const Direction& d = registry->at(pick(rng, registry->count()) + 1);
      x = d.x()[atom];
      v = d.v()[atom];
    } else {
      x = uniform(rng, 0.05, 0.95);
      v = random_phase(rng);
    }
    return {off_block(x, v), off_block(1.0 - x, -v)};
  }
};

CanonicalProjection random_projection_impl(const SpacePtr& space, const OffSource& src, Rng& rng) {
  ProjectionBuilder b(space);
  for (std::size_t atom = 0; atom < space->size(); ++atom) {
    switch (pick(rng, 5)) {
      case 0: break;                                   // zero block
      case 1: b.add(atom, diag_block(true, false)); break;
      case 2: b.add(atom, diag_block(false, true)); break;
      case 3: b.add(atom, diag_block(true, true)); break;
      default: {
        auto [direct, swapped] = src.draw(atom, rng);
        b.add(atom, u01(rng) < 0.5 ? direct : swapped);
        break;
      }
    }
  }
  return b.build();
}

std::pair<CanonicalProjection, CanonicalProjection> random_orthogonal_pair_impl(
    const SpacePtr& space, const OffSource& src, Rng& rng) {
  ProjectionBuilder pb(space), qb(space);
  for (std::size_t atom = 0; atom < space->size(); ++atom) {
    const AtomBlock zero{};
    const AtomBlock e11 = diag_block(true, false);
    const AtomBlock e22 = diag_block(false, true);
    const AtomBlock one = diag_block(true, true);
    auto [direct, swapped] = src.draw(atom, rng);
    // Every orthogonal combination of per-atom blocks.
    const std::pair<AtomBlock, AtomBlock> combos[] = {
        {zero, zero},   {e11, e22},      {e22, e11},      {one, zero},    {zero, one},
        {direct, swapped}, {swapped, direct}, {e11, zero},  {zero, e22},
        {direct, zero}, {zero, swapped},
    };
    const auto& c = combos[pick(rng, std::size(combos))];
    pb.add(atom, c.first);
    qb.add(atom, c.second);
  }
  return {pb.build(), qb.build()};
}

std::vector<CanonicalProjection> random_decomposition_impl(const SpacePtr& space,
                                                           const OffSource& src,
                                                           std::size_t pieces, Rng& rng) {
  const std::size_t n = space->size();
  if (pieces < 2 || pieces > 2 * n) {
    throw PreconditionError("random_decomposition: piece count out of range for this space");
  }
  // Resolve each atom's identity block into one or two parts; force enough
  // splits that every requested piece can be nonempty.
  std::vector<std::pair<std::size_t, AtomBlock>> parts;
  const std::size_t forced_splits = pieces > n ? pieces - n : 0;
  for (std::size_t atom = 0; atom < n; ++atom) {
    const std::size_t kind = atom < forced_splits ? 1 + pick(rng, 2) : pick(rng, 3);
    if (kind == 0) {
      parts.emplace_back(atom, diag_block(true, true));
    } else if (kind == 1) {
      parts.emplace_back(atom, diag_block(true, false));
      parts.emplace_back(atom, diag_block(false, true));
    } else {
      auto [direct, swapped] = src.draw(atom, rng);
      parts.emplace_back(atom, direct);
      parts.emplace_back(atom, swapped);
    }
  }
  // Fisher-Yates, then deal the first `pieces` parts to distinct buckets.
  for (std::size_t i = parts.size(); i > 1; --i) {
    std::swap(parts[i - 1], parts[pick(rng, i)]);
  }
  std::vector<ProjectionBuilder> buckets(pieces, ProjectionBuilder(space));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::size_t j = i < pieces ? i : pick(rng, pieces);
    buckets[j].add(parts[i].first, parts[i].second);
  }
  std::vector<CanonicalProjection> out;
  out.reserve(pieces);
  for (const ProjectionBuilder& b : buckets) out.push_back(b.build());
  return out;
}

}  // namespace

CanonicalProjection random_projection(const SpacePtr& space, Rng& rng) {
  return random_projection_impl(space, OffSource{}, rng);
}

CanonicalProjection random_registry_projection(const SpacePtr& space,
                                               const DirectionRegistry& registry, Rng& rng) {
  return random_projection_impl(space, OffSource{&registry}, rng);
}

std::pair<CanonicalProjection, CanonicalProjection> random_orthogonal_pair(const SpacePtr& space,
                                                                           Rng& rng) {
  return random_orthogonal_pair_impl(space, OffSource{}, rng);
}

std::pair<CanonicalProjection, CanonicalProjection> random_orthogonal_pair(
    const SpacePtr& space, const DirectionRegistry& registry, Rng& rng) {
  return random_orthogonal_pair_impl(space, OffSource{&registry}, rng);
}

std::vector<CanonicalProjection> random_decomposition(const SpacePtr& space,
                                                      const DirectionRegistry& registry,
                                                      std::size_t pieces, Rng& rng) {
  return random_decomposition_impl(space, OffSource{&registry}, pieces, rng);
}

// --- Lemma 4 oracle -------------------------------------------------------------

Lemma4Input random_lemma4_input(Rng& rng) {
  Lemma4Input in;
  double s = 0.0;
  do {
    in.lambda0 = uniform(rng, 0.0, 2.0);
    in.mu0 = uniform(rng, 0.0, 2.0);
    s = in.lambda0 * in.lambda0 + in.mu0 * in.mu0;
  } while (s < 0.01);
  const double r = std::sqrt(s);
  const double t = uniform(rng, 0.05, std::numbers::pi / 2.0 - 0.05);
  in.lambda = r * std::cos(t);
  in.mu = r * std::sin(t);
  return in;
}

bool Lemma4OracleResult::contains(double l1, double l2, double tolerance) const {
  for (const auto& p : points) {
    if (std::hypot(p[0] - l1, p[1] - l2) <= tolerance) return true;
  }
  return false;
}

namespace {

constexpr std::size_t kGridPoints = 1000000;
constexpr double kOracleResidual = 1e-10;

struct TrigTables {
  std::vector<double> cos_v, sin_v;
};

const TrigTables& trig_tables() {
  static const TrigTables tables = [] {
    TrigTables t;
    t.cos_v.resize(kGridPoints);
    t.sin_v.resize(kGridPoints);
    for (std::size_t i = 0; i < kGridPoints; ++i) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) /
                           static_cast<double>(kGridPoints);
      t.cos_v[i] = std::cos(theta);
      t.sin_v[i] = std::sin(theta);
    }
    return t;
  }();
  return tables;
}

double grid_theta(std::size_t i) {
  return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(kGridPoints);
}

}  // namespace

Lemma4OracleResult lemma4_oracle(double lambda0, double mu0, double lambda, double mu) {
  Lemma4OracleResult out;
  const double s = lambda0 * lambda0 + mu0 * mu0;
  if (s <= 1e-30) {
    out.points.push_back({0.0, 0.0});
    return out;
  }
  // Distance from V0 = (lambda0, mu0) to the point at angle theta on the
  // circle of radius lambda; a solution is a zero of g.
  auto g = [&](double theta) {
    const double dx = lambda0 - lambda * std::cos(theta);
    const double dy = mu0 - lambda * std::sin(theta);
    return std::sqrt(dx * dx + dy * dy) - mu;
  };
  auto push_point = [&](double theta) {
    const double l1 = lambda * std::cos(theta);
    const double l2 = lambda * std::sin(theta);
    for (const auto& p : out.points) {
      if (std::hypot(p[0] - l1, p[1] - l2) <= 1e-9) return;
    }
    out.points.push_back({l1, l2});
  };

  if (lambda <= 1e-15) {  // the circle degenerates to the origin
    if (std::abs(std::sqrt(s) - mu) <= kOracleResidual) out.points.push_back({0.0, 0.0});
    return out;
  }

  // F(theta) = |V0 - P(theta)|^2 - mu^2 has the same sign as g and costs no
  // square root on the grid sweep.
  const TrigTables& t = trig_tables();
  const double c_term = s + lambda * lambda - mu * mu;
  const double a_term = 2.0 * lambda * lambda0;
  const double b_term = 2.0 * lambda * mu0;

  const double step = 2.0 * std::numbers::pi / static_cast<double>(kGridPoints);
  double prev = c_term - a_term * t.cos_v[0] - b_term * t.sin_v[0];
  double min_abs = std::abs(prev);
  std::size_t min_idx = 0;
  bool found_bracket = false;

  for (std::size_t i = 1; i <= kGridPoints; ++i) {
    const std::size_t j = i == kGridPoints ? 0 : i;
    const double cur = c_term - a_term * t.cos_v[j] - b_term * t.sin_v[j];
    if (prev == 0.0) {
      found_bracket = true;
      push_point(grid_theta(i - 1));
    } else if (prev * cur < 0.0) {
      found_bracket = true;
      // Bisect the bracket on the true residual g.
      double lo = grid_theta(i - 1);
      double hi = lo + step;
      double glo = g(lo);
      double mid = lo;
      for (int iter = 0; iter < 200; ++iter) {
        mid = (lo + hi) / 2.0;
        const double gm = g(mid);
        if (std::abs(gm) < kOracleResidual) break;
        if ((glo < 0.0) == (gm < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      push_point(mid);
    }
    if (std::abs(cur) < min_abs) {
      min_abs = std::abs(cur);
      min_idx = j;
    }
    prev = cur;
  }

  if (!found_bracket) {
    // Possible tangency: golden-section search for the minimum of |g| around
    // the grid minimum of |F|.
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = grid_theta(min_idx) - step;
    double hi = grid_theta(min_idx) + step;
    double c1 = hi - golden * (hi - lo);
    double c2 = lo + golden * (hi - lo);
    double f1 = std::abs(g(c1));
    double f2 = std::abs(g(c2));
    for (int iter = 0; iter < 300 && hi - lo > 1e-15; ++iter) {
      if (f1 < f2) {
        hi = c2;
        c2 = c1;
        f2 = f1;
        c1 = hi - golden * (hi - lo);
        f1 = std::abs(g(c1));
      } else {
        lo = c1;
        c1 = c2;
        f1 = f2;
        c2 = lo + golden * (hi - lo);
        f2 = std::abs(g(c2));
      }
    }
    const double best = (lo + hi) / 2.0;
    if (std::abs(g(best)) <= kOracleResidual) push_point(best);
  }
  return out;
}

VerificationReport lemma4_spot_checks(std::uint64_t seed, std::size_t trials) {
  std::vector<Lemma4Input> inputs(trials);
  Rng rng(seed);
  for (Lemma4Input& in : inputs) in = random_lemma4_input(rng);

  auto worst_of = [](const Lemma4Input& in) {
    std::pair<double, double> worst{0.0, 0.0};  // membership distance, equation defect
    const Lemma4OracleResult oracle = lemma4_oracle(in.lambda0, in.mu0, in.lambda, in.mu);
    for (int sign : {+1, -1}) {
      const Lemma4Solution q = solve_lemma4(in.lambda0, in.mu0, in.lambda, in.mu, sign);
      double membership = std::numeric_limits<double>::infinity();
      for (const auto& p : oracle.points) {
        membership = std::min(membership, std::hypot(p[0] - q.lambda1, p[1] - q.lambda2));
      }
      worst.first = std::max(worst.first, membership);
      const double defects[5] = {
          std::abs(q.lambda1 + q.mu1 - in.lambda0),
          std::abs(q.lambda2 + q.mu2 - in.mu0),
          std::abs(q.lambda1 * q.lambda1 + q.lambda2 * q.lambda2 - in.lambda * in.lambda),
          std::abs(q.mu1 * q.mu1 + q.mu2 * q.mu2 - in.mu * in.mu),
          std::abs(q.lambda1 * q.mu1 + q.lambda2 * q.mu2),
      };
      for (double d : defects) worst.second = std::max(worst.second, d);
    }
    return worst;
  };

  const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::vector<std::future<std::pair<double, double>>> futures;
  const std::size_t chunk = (trials + workers - 1) / std::max<std::size_t>(workers, 1);
  for (std::size_t begin = 0; begin < trials; begin += chunk) {
    const std::size_t end = std::min(trials, begin + chunk);
    futures.push_back(std::async(std::launch::async, [&inputs, begin, end, &worst_of] {
      std::pair<double, double> worst{0.0, 0.0};
      for (std::size_t i = begin; i < end; ++i) {
        const auto w = worst_of(inputs[i]);
        worst.first = std::max(worst.first, w.first);
        worst.second = std::max(worst.second, w.second);
      }
      return worst;
    }));
  }
  std::pair<double, double> worst{0.0, 0.0};
  for (auto& f : futures) {
    const auto w = f.get();
    worst.first = std::max(worst.first, w.first);
    worst.second = std::max(worst.second, w.second);
  }

  VerificationReport report;
  report.record("lemma4_oracle_membership", seed, worst.first, 1e-8);
  report.record("lemma4_equations", seed, worst.second, tol::kDensity);
  return report;
}

// --- matrix oracle suite ---------------------------------------------------------

VerificationReport matrix_oracle_suite(const SpacePtr& space, std::uint64_t seed,
                                       std::size_t trials) {
  VerificationReport report;
  Rng rng(seed);
  std::size_t boundary = 0;
  report.note("lemma2_boundary_excluded", seed, 0.0);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const CanonicalProjection p = random_projection(space, rng);
    const CanonicalProjection q = random_projection(space, rng);
    const MatrixRealization P = realize(p);
    const MatrixRealization Q = realize(q);

    report.record("realize_idempotent", seed, P.idempotency_defect(), tol::kMatrix);
    report.record("realize_hermitian", seed, P.hermiticity_defect(), tol::kMatrix);
    report.record("complement_matrix", seed,
                  realize(complement(p)).max_abs_diff(P.complement_in_identity()), tol::kMatrix);

    // Lemma-2 test against the product oracle, boundary band excluded.
    const double prod = P.max_abs_product(Q);
    if (prod > tol::kOrtho && prod < 1e-6) {
      ++boundary;
    } else {
      const bool sym = is_orthogonal(p, q);
      const bool mat = prod <= tol::kOrtho;
      report.record("lemma2_oracle_equivalence", seed, sym == mat ? 0.0 : 1.0, 0.5);
    }

    // Constructed orthogonal pair: the symbolic test, the product, and the
    // sum formula must all agree with the matrices.
    const auto [po, qo] = random_orthogonal_pair(space, rng);
    const MatrixRealization Po = realize(po);
    const MatrixRealization Qo = realize(qo);
    report.record("lemma2_product_zero", seed, Po.max_abs_product(Qo), tol::kOrtho);
    report.record("lemma2_oracle_equivalence", seed, is_orthogonal(po, qo) ? 0.0 : 1.0, 0.5);
    report.record("lemma2_sum_matrix", seed,
                  realize(add_orthogonal(po, qo)).max_abs_diff(Po.plus(Qo)), tol::kMatrix);
  }
  report.note("lemma2_boundary_excluded", seed, static_cast<double>(boundary));
  return report;
}

// --- Theorem 5 / Definition 2 -----------------------------------------------------

namespace {

DirectionRegistry registry_of(const VectorMeasure& mu) {
  std::vector<Direction> dirs;
  dirs.reserve(mu.direction_count());
  for (std::size_t i = 1; i <= mu.direction_count(); ++i) dirs.push_back(mu.direction(i));
  return DirectionRegistry(mu.space(), std::move(dirs));
}

}  // namespace

VerificationReport theorem5_suite(const ProjectionMeasure& m, const VectorMeasure& mu,
                                  std::uint64_t seed, std::size_t trials,
                                  double norm_tolerance) {
  require_same_space(m.space(), mu.space(), "theorem5_suite");
  VerificationReport report;
  const DirectionRegistry registry = registry_of(mu);
  const SpacePtr& space = mu.space();
  Rng rng(seed);
  const double scale = std::max(1.0, m.total());

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const CanonicalProjection p = random_registry_projection(space, registry, rng);
    const double lhs = norm2(evaluate(mu, p));
    const double rhs = m.eval(p);
    report.record("theorem5_norm_law", seed, std::abs(lhs - rhs) / scale, norm_tolerance);

    const auto [a, b] = random_orthogonal_pair(space, registry, rng);
    const HVector va = evaluate(mu, a);
    const HVector vb = evaluate(mu, b);
    report.record("definition2_orthogonality", seed, std::abs(inner(va, vb)), tol::kOrtho);
    const HVector sum_defect = evaluate(mu, add_orthogonal(a, b)) - (va + vb);
    report.record("definition2_additivity", seed, std::sqrt(norm2(sum_defect)), tol::kMatrix);
  }

  // Complete decompositions of 1 into >= 3 mutually orthogonal projections.
  const HVector mu_one = evaluate(mu, CanonicalProjection::identity(space));
  const std::size_t n_decomp = std::min<std::size_t>(std::max<std::size_t>(trials / 32, 4), 64);
  for (std::size_t k = 0; k < n_decomp; ++k) {
    const std::size_t pieces = 3 + pick(rng, std::min<std::size_t>(2 * space->size(), 8) - 2);
    const auto decomposition = random_decomposition(space, registry, pieces, rng);
    HVector total = hvec_zero(space);
    std::vector<HVector> values;
    for (const CanonicalProjection& p : decomposition) {
      values.push_back(evaluate(mu, p));
      total = total + values.back();
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        report.record("decomposition_pairwise_orthogonal", seed,
                      std::abs(inner(values[i], values[j])), tol::kOrtho);
      }
    }
    report.record("decomposition_sum", seed, std::sqrt(norm2(total - mu_one)), tol::kMatrix);
  }
  return report;
}

VerificationReport lemma3_truncation_check(const ProjectionMeasure& m, const VectorMeasure& mu,
                                           const std::vector<CanonicalProjection>& decomposition) {
  require_same_space(m.space(), mu.space(), "lemma3_truncation_check");
  const SpacePtr& space = mu.space();
  // Precondition: mutually orthogonal with sum 1.
  CanonicalProjection sum = CanonicalProjection::zero(space);
  for (const CanonicalProjection& p : decomposition) {
    if (!is_orthogonal(sum, p)) {
      throw PreconditionError("lemma3_truncation_check: family is not mutually orthogonal");
    }
    sum = add_orthogonal(sum, p);
  }
  if (!sum.is_identity()) {
    throw PreconditionError("lemma3_truncation_check: family does not sum to 1");
  }

  VerificationReport report;
  const double m_total = m.total();
  const double scale = std::max(1.0, m_total);
  const HVector mu_one = evaluate(mu, CanonicalProjection::identity(space));

  HVector partial = hvec_zero(space);
  double m_partial = 0.0;
  double previous = norm2(mu_one - partial);
  // sigma ranges over the prefixes, the empty one included.
  for (std::size_t j = 0; j <= decomposition.size(); ++j) {
    const double deficit = norm2(mu_one - partial);
    report.record("lemma3_prefix_identity", 0, std::abs(deficit - (m_total - m_partial)) / scale,
                  tol::kDensity);
    report.record("lemma3_deficit_monotone", 0, deficit - previous, 1e-12 * scale);
    previous = deficit;
    if (j == decomposition.size()) {
      report.record("lemma3_final_deficit", 0, deficit, tol::kDensity * m_total);
      break;
    }
    partial = partial + evaluate(mu, decomposition[j]);
    m_partial += m.eval(decomposition[j]);
  }
  return report;
}

// --- non-Gleason witness ------------------------------------------------------------

double gleason_fit_residual(const ProjectionMeasure& m,
                            const std::vector<Direction>& directions) {
  const SpacePtr& space = m.space();
  double ssr = 0.0, ss_total = 0.0;
  for (std::size_t atom = 0; atom < space->size(); ++atom) {
    const std::size_t rows = 2 * directions.size() + 2;
    Eigen::MatrixXd design(rows, 4);
    Eigen::VectorXd y(rows);
    std::size_t r = 0;
    auto add_row = [&](const AtomBlock& b) {
      // Tr(D P) for Hermitian D = [[alpha, a+ib],[a-ib, beta]] is linear in
      // (alpha, beta, a, b) with coefficients (P00, P11, 2 Re P01, 2 Im P01).
      const Eigen::Matrix2cd P = block_matrix(b);
      design(r, 0) = P(0, 0).real();
      design(r, 1) = P(1, 1).real();
      design(r, 2) = 2.0 * P(0, 1).real();
      design(r, 3) = 2.0 * P(0, 1).imag();
      y(r) = m.atom_value(atom, b) / space->weight(atom);
      ++r;
    };
    add_row(diag_block(true, false));
    add_row(diag_block(false, true));
    for (const Direction& d : directions) {
      add_row(off_block(d.x()[atom], d.v()[atom]));
      add_row(off_block(1.0 - d.x()[atom], -d.v()[atom]));
    }
    const Eigen::VectorXd beta = design.colPivHouseholderQr().solve(y);
    const double w = space->weight(atom);
    ssr += w * (design * beta - y).squaredNorm();
    ss_total += w * y.squaredNorm();
  }
  return ss_total > 0.0 ? std::sqrt(ssr / ss_total) : 0.0;
}

}  // namespace ovm::verify
