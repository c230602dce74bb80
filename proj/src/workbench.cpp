#include "capsweep/workbench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "capsweep/capacity.hpp"
#include "capsweep/gauss.hpp"
#include "capsweep/pointsets.hpp"
#include "capsweep/principles.hpp"
#include "capsweep/random.hpp"
#include "capsweep/sweep.hpp"

namespace capsweep {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::vector<CheckResult> run_verification(const KernelMatrix& k, int trials, std::uint64_t seed,
                                          double tol) {
  k.require_strictly_pd();
  if (trials < 1) throw PreconditionViolated("verification needs at least one trial");
  const int n = k.size();
  Rng rng(seed);

  std::vector<CheckResult> out;

  {
    CheckResult r{"duality_gap", true, ""};
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const PotentialField f = random_field(n, rng);
      const double c = capacity(k, f, tol);
      const double gamma = dual_capacity(k, f, tol);
      worst = std::max(worst, std::abs(c - gamma) / std::max(c, 1.0));
    }
    r.pass = worst <= 1e-7;
    r.detail = "worst relative gap " + fmt(worst);
    out.push_back(r);
  }

  {
    CheckResult r{"capacitary_kkt", true, ""};
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const PotentialField f = random_field(n, rng);
      const Measure mu = capacitary_measure(k, f, tol);
      const KKTReport kkt = verify_kkt(k, f, mu, IndexSet::all(n), tol);
      const double scale = std::max(f.max_value(), 1.0);
      worst = std::max({worst, kkt.max_under_shoot / scale, kkt.max_support_gap / scale,
                        kkt.complementarity_gap / scale});
    }
    r.pass = worst <= 1e-8;
    r.detail = "worst scaled residual " + fmt(worst);
    out.push_back(r);
  }

  {
    CheckResult r{"homogeneity", true, ""};
    double worst = 0.0;
    std::uniform_real_distribution<double> scale_dist(0.1, 10.0);
    for (int t = 0; t < trials; ++t) {
      const PotentialField f = random_field(n, rng);
      const double s = scale_dist(rng);
      const double base = capacity(k, f, tol);
      const double scaled = capacity(k, PotentialField(s * f.values()), tol);
      worst = std::max(worst, std::abs(scaled - s * base) / std::max(s * base, 1.0));
    }
    r.pass = worst <= 1e-7;
    r.detail = "worst relative defect " + fmt(worst);
    out.push_back(r);
  }

  {
    CheckResult r{"covering_bounds", true, ""};
    const bool small = n <= 12;
    double dilation_k = 0.0;
    if (small) {
      dilation_k = dilation_constant(k, SearchMethod::Exhaustive).k;
    }
    double worst_lower = 0.0;
    double worst_upper = 0.0;
    for (int t = 0; t < trials; ++t) {
      const IndexSet a = random_subset(n, rng);
      const double c2 = std::pow(set_capacity(k, a, tol), 2);
      const double g = g_capacity(k, a);
      worst_lower = std::max(worst_lower, g - c2);
      if (small) worst_upper = std::max(worst_upper, c2 - 2.0 * dilation_k * g);
    }
    r.pass = worst_lower <= 1e-9 * std::max(k.max_entry(), 1.0) &&
             worst_upper <= 1e-9 * std::max(k.max_entry(), 1.0);
    r.detail = "worst lower excess " + fmt(worst_lower) +
               (small ? ", worst upper excess " + fmt(worst_upper) : ", upper bound skipped");
    out.push_back(r);
  }

  return out;
}

std::vector<StudyRow> run_sphere_study(const StudyParams& params) {
  if (params.point_counts.empty()) throw PreconditionViolated("study needs point counts");
  if (!(params.exterior_distance > params.radius)) {
    throw PreconditionViolated("exterior site must lie outside the sphere");
  }

  std::vector<StudyRow> rows;
  for (const int count : params.point_counts) {
    if (count < 1) throw PreconditionViolated("study needs at least one sphere point");
    const auto start = std::chrono::steady_clock::now();

    Eigen::MatrixXd pts(count + 1, 3);
    pts.topRows(count) = fibonacci_sphere(count, params.radius);
    pts.row(count) << 0.0, 0.0, params.exterior_distance;

    const Space space = Space::from_points(std::move(pts));
    // Cell size = radius of the disc with the area of one lattice cell. The
    // mean nearest-neighbor spacing is too coarse here: it leaves the matrix
    // indefinite at every tested point count.
    const double cell = 2.0 * params.radius / std::sqrt(static_cast<double>(count));
    const KernelMatrix kernel =
        KernelMatrix::riesz(space, params.alpha, DiagRule::cell_self_energy(cell));

    std::vector<int> sphere_sites(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) sphere_sites[static_cast<std::size_t>(i)] = i;
    const IndexSet a{std::move(sphere_sites)};

    const SweepReport eq = equilibrium(kernel, a);
    const Measure source = Measure::unit_at(count + 1, count);
    const SweepReport sw = balayage(kernel, source, a);

    StudyRow row;
    row.n = count;
    row.capacity_sq = eq.c_value * eq.c_value;
    row.swept_mass = sw.swept.total_mass();
    row.residual_a = sw.residual_a;
    row.residual_b = sw.residual_b;
    row.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace capsweep
