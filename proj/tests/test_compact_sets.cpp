#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fracsim/crack_set.hpp"
#include "fracsim/hausdorff.hpp"

using namespace fracsim;

namespace {

const Rect kOmega{0.0, 1.0, -1.0, 1.0};  // the reference domain

// Independent oracle: directed Hausdorff by dense point sampling. Lower
// bound of the true value, tight to within the sampling resolution.
double sampled_directed(const std::vector<Segment>& a, const std::vector<Segment>& b,
                        int samples_per_seg = 400) {
  double best = 0.0;
  for (const Segment& s : a) {
    for (int i = 0; i <= samples_per_seg; ++i) {
      const double t = static_cast<double>(i) / samples_per_seg;
      best = std::max(best, point_set_distance(s.a + t * (s.b - s.a), b));
    }
  }
  return best;
}

double sampled_hausdorff(const std::vector<Segment>& a, const std::vector<Segment>& b) {
  return std::max(sampled_directed(a, b), sampled_directed(b, a));
}

CrackSet random_crack(std::mt19937& rng, const LatticeSpec& lat, int max_edges) {
  CrackSet k(lat);
  std::uniform_int_distribution<int> di(0, lat.nx), dj(0, lat.ny);
  std::uniform_int_distribution<int> step(-1, 1);
  std::uniform_int_distribution<int> n_edges(1, max_edges);
  const int target = n_edges(rng);
  int guard = 0;
  while (static_cast<int>(k.size()) < target && ++guard < 200) {
    const int i = di(rng), j = dj(rng);
    const int oi = i + step(rng), oj = j + step(rng);
    if (!lat.in_range(oi, oj) || (oi == i && oj == j)) continue;
    k.add_edge(lat.node_id(i, j), lat.node_id(oi, oj));
  }
  return k;
}

}  // namespace

TEST_CASE("hausdorff distance conventions and basic cases") {
  const LatticeSpec lat = make_lattice(kOmega, 0.125);
  const CrackSet empty(lat);
  CrackSet k(lat);
  k.add_edge(lat.node_id(0, 8), lat.node_id(1, 8));

  const double diam = kOmega.diameter();
  CHECK(diam == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(hausdorff_distance(empty, empty, diam) == 0.0);
  CHECK(hausdorff_distance(empty, k, diam) == diam);
  CHECK(hausdorff_distance(k, empty, diam) == diam);
  CHECK(hausdorff_distance(k, k, diam) == 0.0);

  // Two singletons at distance 1.
  const std::vector<Segment> p0{{{0.0, 0.0}, {0.0, 0.0}}};
  const std::vector<Segment> p1{{{1.0, 0.0}, {1.0, 0.0}}};
  CHECK(hausdorff_distance(p0, p1, diam) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hausdorff of the oscillating family against the full midline") {
  // d_H(K_n, [0,1]x{0}) = 1/(2n): the farthest uncovered point is x=1.
  const std::vector<Segment> full{{{0.0, 0.0}, {1.0, 0.0}}};
  for (int n : {2, 4, 8}) {
    const LatticeSpec lat = make_lattice(kOmega, 1.0 / (2.0 * n));
    const CrackSet kn = oscillating_crack(n, lat, 1e-12);
    const double d = hausdorff_distance(kn.segments(), full, kOmega.diameter());
    CHECK(d == doctest::Approx(1.0 / (2.0 * n)).epsilon(1e-12));
    CHECK(d <= 1.0 / (2.0 * n) + 1e-12);
    // Sampling oracle agrees from below.
    const double s = sampled_hausdorff(kn.segments(), full);
    CHECK(s <= d + 1e-12);
    CHECK(d - s <= 2e-3);
  }
}

TEST_CASE("hausdorff matches sampling oracle on random sets") {
  std::mt19937 rng(1234);
  const LatticeSpec lat = make_lattice(kOmega, 0.25);
  for (int iter = 0; iter < 25; ++iter) {
    const CrackSet a = random_crack(rng, lat, 6);
    const CrackSet b = random_crack(rng, lat, 6);
    const double exact = hausdorff_distance(a, b, kOmega.diameter());
    const double approx = sampled_hausdorff(a.segments(), b.segments());
    CHECK(approx <= exact + 1e-12);
    CHECK(exact - approx <= 5e-3);
  }
}

TEST_CASE("hausdorff metric properties on the representable family") {
  std::mt19937 rng(99);
  const LatticeSpec lat = make_lattice(kOmega, 0.25);
  const double diam = kOmega.diameter();
  for (int iter = 0; iter < 20; ++iter) {
    const CrackSet a = random_crack(rng, lat, 5);
    const CrackSet b = random_crack(rng, lat, 5);
    const CrackSet c = random_crack(rng, lat, 5);
    const double dab = hausdorff_distance(a, b, diam);
    const double dba = hausdorff_distance(b, a, diam);
    CHECK(dab == dba);  // symmetry exact
    const double dac = hausdorff_distance(a, c, diam);
    const double dcb = hausdorff_distance(c, b, diam);
    CHECK(dab <= dac + dcb + 1e-12);  // triangle inequality
    CHECK(hausdorff_distance(a, a, diam) <= 1e-12);  // identity of indiscernibles
  }
}

TEST_CASE("crack length: families and monotonicity") {
  CHECK(crack_length(CrackSet{}) == 0.0);

  for (int n : {1, 2, 4, 8, 16}) {
    const LatticeSpec lat = make_lattice(kOmega, 1.0 / (2.0 * n));
    CHECK(crack_length(oscillating_crack(n, lat, 1e-12)) == doctest::Approx(0.5).epsilon(1e-13));
  }
  const LatticeSpec lat = make_lattice(kOmega, 0.0625);
  CHECK(crack_length(horizontal_crack(lat, 0.0, 1.0, 0.0, 1e-12)) ==
        doctest::Approx(1.0).epsilon(1e-13));

  // Monotone under edge-set inclusion.
  std::mt19937 rng(7);
  for (int iter = 0; iter < 10; ++iter) {
    const CrackSet k1 = random_crack(rng, lat, 6);
    CrackSet k2 = k1;
    const CrackSet extra = random_crack(rng, lat, 4);
    for (const auto& e : extra.edges()) k2.add_edge(e);
    CHECK(k2.contains(k1));
    CHECK(crack_length(k1) <= crack_length(k2) + 1e-15);
  }
}

TEST_CASE("connected components") {
  CHECK(component_count(CrackSet{}) == 0);

  for (int n : {1, 3, 5, 8}) {
    const LatticeSpec lat = make_lattice(kOmega, 1.0 / (2.0 * n));
    CHECK(component_count(oscillating_crack(n, lat, 1e-12)) == n);
  }

  const LatticeSpec lat = make_lattice(kOmega, 0.25);
  CrackSet k(lat);
  k.add_edge(lat.node_id(0, 4), lat.node_id(1, 4));
  k.add_edge(lat.node_id(1, 4), lat.node_id(2, 5));  // shares node (1,4)
  CHECK(component_count(k) == 1);

  // Crossing diagonals of one cell touch at the center.
  CrackSet x(lat);
  x.add_edge(lat.node_id(0, 0), lat.node_id(1, 1));
  x.add_edge(lat.node_id(0, 1), lat.node_id(1, 0));
  CHECK(component_count(x) == 1);

  // Count invariant under edge insertion order.
  std::mt19937 rng(21);
  for (int iter = 0; iter < 10; ++iter) {
    const CrackSet a = random_crack(rng, lat, 8);
    auto edges = a.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    CrackSet b(lat);
    for (const auto& e : edges) b.add_edge(e);
    CHECK(component_count(a) == component_count(b));
    CHECK(a == b);
  }
}

TEST_CASE("dilate membership and monotonicity") {
  const LatticeSpec lat = make_lattice(kOmega, 0.25);
  CrackSet point(lat);
  point.add_edge(lat.node_id(0, 4), lat.node_id(1, 4));

  // eps=0 keeps exactly the set.
  const auto d0 = dilate(point, 0.0);
  CHECK(d0.contains({0.125, 0.0}));
  CHECK_FALSE(d0.contains({0.125, 1e-9}));

  CrackSet origin(lat);
  origin.add_edge(lat.node_id(0, 4), lat.node_id(0, 5));  // contains (0,0)
  CHECK(dilate(origin, 1.0).contains({0.5, 0.5}));  // dist sqrt(0.5) < 1

  const LatticeSpec lat2 = make_lattice(kOmega, 0.0625);
  const CrackSet seg = horizontal_crack(lat2, 0.0, 1.0, 0.0, 1e-12);
  CHECK_FALSE(dilate(seg, 0.1).contains({0.5, 0.2}));  // exact point-segment distance 0.2
  CHECK(dilate(seg, 0.1).contains({0.5, 0.1}));

  // eps1 <= eps2 implies inclusion, checked on a sample grid.
  std::mt19937 rng(3);
  const CrackSet k = random_crack(rng, lat, 6);
  const auto d1 = dilate(k, 0.15);
  const auto d2 = dilate(k, 0.35);
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 40; ++j) {
      const Vec2 p{i / 20.0, -1.0 + j / 20.0};
      if (d1.contains(p)) CHECK(d2.contains(p));
    }
}

TEST_CASE("golab report: dichotomy between bounded and unbounded components") {
  const Rect all{-10.0, 10.0, -10.0, 10.0};

  // Oscillating family: lengths 1/2, limit length 1, flag false.
  std::vector<CrackSet> seq;
  for (int n : {2, 4, 8, 16}) {
    const LatticeSpec lat = make_lattice(kOmega, 1.0 / (2.0 * n));
    seq.push_back(oscillating_crack(n, lat, 1e-12));
  }
  const LatticeSpec lat = make_lattice(kOmega, 0.0625);
  const CrackSet limit = horizontal_crack(lat, 0.0, 1.0, 0.0, 1e-12);
  const GolabReport bad = golab_report(seq, limit, all);
  for (double len : bad.sequence_lengths) CHECK(len == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(bad.limit_length == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_FALSE(bad.semicontinuous);

  // Connected growing segments [0, 1-1/n] x {0}: flag true.
  std::vector<CrackSet> grow;
  std::vector<double> expect;
  for (int n : {2, 4, 8, 16}) {
    const LatticeSpec ln = make_lattice(kOmega, 1.0 / (2.0 * n));
    grow.push_back(horizontal_crack(ln, 0.0, 1.0 - 1.0 / n, 0.0, 1e-12));
    expect.push_back(1.0 - 1.0 / n);
  }
  const GolabReport good = golab_report(grow, limit, all);
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(good.sequence_lengths[i] == doctest::Approx(expect[i]).epsilon(1e-13));
  CHECK(good.semicontinuous);

  // Identical sequence: equality and flag true.
  const GolabReport same = golab_report({limit, limit, limit}, limit, all);
  CHECK(same.semicontinuous);
  CHECK(same.limit_length == same.tail_min);

  // Restriction to a window clips lengths.
  const GolabReport windowed = golab_report({limit}, limit, Rect{0.25, 0.75, -0.5, 0.5});
  CHECK(windowed.limit_length == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("crack families: endpoints and snapping") {
  // oscillating_crack(1) is the single segment [0,1/2] x {0}.
  const LatticeSpec lat = make_lattice(kOmega, 0.25);
  const CrackSet k1 = oscillating_crack(1, lat, 1e-12);
  CHECK(crack_length(k1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(component_count(k1) == 1);
  CHECK(k1.snap_error() <= 1e-12);
  for (const Segment& s : k1.segments()) {
    CHECK(s.a.y == 0.0);
    CHECK(s.b.y == 0.0);
    CHECK(s.a.x >= -1e-12);
    CHECK(s.b.x <= 0.5 + 1e-12);
  }

  // packed_crack(2): [0, 1/2-e^-2] and [1/2, 1-e^-2], snapped.
  const LatticeSpec fine = make_lattice(kOmega, 1.0 / 1024.0);
  const CrackSet p2 = packed_crack(2, fine, 1e-3);
  CHECK(component_count(p2) == 2);
  const double want = 2.0 * (0.5 - std::exp(-2.0));
  CHECK(crack_length(p2) == doctest::Approx(want).epsilon(2e-3));
  CHECK(p2.snap_error() <= 0.5 / 1024.0 + 1e-15);

  // A lattice too coarse for the gap is rejected, not silently merged.
  const LatticeSpec coarse = make_lattice(kOmega, 0.25);
  CHECK_THROWS_AS(packed_crack(4, coarse, 1.0), CrackOffLattice);
}

TEST_CASE("crack set json round trip is deterministic") {
  std::mt19937 rng(5);
  const LatticeSpec lat = make_lattice(kOmega, 0.125);
  for (int iter = 0; iter < 5; ++iter) {
    const CrackSet k = random_crack(rng, lat, 10);
    const std::string j = k.to_json();
    const CrackSet back = CrackSet::from_json(j);
    CHECK(back == k);
    CHECK(back.to_json() == j);
  }
}
