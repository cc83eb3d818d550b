#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cubesect/analysis.hpp"
#include "cubesect/errors.hpp"
#include "cubesect/geometry.hpp"
#include "cubesect/rng.hpp"

namespace geometry = cubesect::geometry;
using cubesect::DegenerateGeometryError;
using cubesect::RngStream;
using geometry::CubeFace;
using geometry::HitOutcome;
using geometry::SubspaceBasis;

namespace {

SubspaceBasis basis_from(std::initializer_list<std::initializer_list<double>> rows) {
  SubspaceBasis b;
  const auto nrows = static_cast<Eigen::Index>(rows.size());
  const auto ncols = static_cast<Eigen::Index>(rows.begin()->size());
  b.columns.resize(nrows, ncols);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) b.columns(i, j++) = v;
    ++i;
  }
  return b;
}

}  // namespace

TEST_CASE("canonical face pins the trailing coordinates") {
  const CubeFace f = geometry::canonical_face(1, 2, 3);
  CHECK(f.n == 3);
  REQUIRE(f.fixed.size() == 1);
  CHECK(f.fixed[0] == std::pair<int, int>{2, 1});

  const CubeFace v = geometry::canonical_face(0, 3, 4);
  REQUIRE(v.fixed.size() == 3);
  CHECK(v.fixed[0] == std::pair<int, int>{1, 1});
  CHECK(v.fixed[1] == std::pair<int, int>{2, 1});
  CHECK(v.fixed[2] == std::pair<int, int>{3, 1});

  CHECK_THROWS_AS(geometry::canonical_face(2, 2, 3), std::domain_error);
}

TEST_CASE("haar sampler emits orthonormal bases deterministically") {
  geometry::SubspaceSampler sample(7, 3);
  RngStream rng(42, 0);
  for (int i = 0; i < 200; ++i) {
    const SubspaceBasis& b = sample(rng);
    REQUIRE(b.n() == 7);
    REQUIRE(b.k() == 3);
    const Eigen::MatrixXd gram =
        b.columns.transpose() * b.columns - Eigen::MatrixXd::Identity(3, 3);
    CHECK(gram.cwiseAbs().maxCoeff() <= 1e-12);
  }

  RngStream r1(7, 11), r2(7, 11);
  const SubspaceBasis a = geometry::sample_subspace(5, 2, r1);
  const SubspaceBasis c = geometry::sample_subspace(5, 2, r2);
  CHECK((a.columns - c.columns).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(geometry::sample_subspace(3, 3, r1), std::domain_error);
  CHECK_THROWS_AS(geometry::sample_subspace(3, 0, r1), std::domain_error);
}

TEST_CASE("haar sampler projects isotropically") {
  // ||B^T e1||^2 has mean k/n; with k=2, n=6 its variance is
  // 2 k (n-k) / (n^2 (n+2)) = 1/18
  const int trials = 30'000;
  geometry::SubspaceSampler sample(6, 2);
  RngStream rng(3, 0);
  double sum = 0.0;
  for (int i = 0; i < trials; ++i) {
    const SubspaceBasis& b = sample(rng);
    sum += b.columns.row(0).squaredNorm();
  }
  const double mean = sum / trials;
  const double sigma = std::sqrt((1.0 / 18.0) / trials);
  CHECK(std::abs(mean - 2.0 / 6.0) <= 3.0 * sigma);
}

TEST_CASE("face hit fixtures in three dimensions") {
  const CubeFace top{3, {{2, 1}}};  // the face x3 = +1

  SUBCASE("coordinate plane that misses") {
    // span{e1, e2} is the plane x3 = 0; it never reaches x3 = 1, and its
    // fixed-coordinate block is identically zero, which the tester reports
    // as a degenerate (discarded) draw rather than a definite answer
    const SubspaceBasis b = basis_from({{1, 0}, {0, 1}, {0, 0}});
    CHECK(geometry::face_hit_outcome(b, top) == HitOutcome::degenerate);
    CHECK_FALSE(geometry::face_hit(b, top));
  }

  SUBCASE("coordinate plane that hits") {
    const SubspaceBasis b = basis_from({{1, 0}, {0, 0}, {0, 1}});
    CHECK(geometry::face_hit_outcome(b, top) == HitOutcome::hit);
    CHECK(geometry::face_hit(b, top));
  }

  SUBCASE("tilted plane that reaches the slab but not the square") {
    // plane orthogonal to (1,1,4)/sqrt(18); the affine line x3 = 1 inside it
    // stays at Chebyshev distance 2 from the unit square
    const double s = 1.0 / std::sqrt(2.0);
    const SubspaceBasis b =
        basis_from({{s, 2.0 / 3}, {-s, 2.0 / 3}, {0, -1.0 / 3}});
    CHECK(geometry::face_hit_outcome(b, top) == HitOutcome::miss);
  }

  SUBCASE("tilted plane that hits") {
    const double r = 1.0 / std::sqrt(5.0);
    const SubspaceBasis b = basis_from({{1, 0}, {0, r}, {0, 2 * r}});
    CHECK(geometry::face_hit_outcome(b, top) == HitOutcome::hit);
  }

  SUBCASE("vertex query with a singular fixed block") {
    const CubeFace edge{3, {{1, 1}, {2, 1}}};
    const SubspaceBasis b = basis_from({{0, 1}, {1, 0}, {0, 0}});
    CHECK(geometry::face_hit_outcome(b, edge) == HitOutcome::degenerate);
  }
}

TEST_CASE("hit regions are monotone under face inclusion") {
  // if the section reaches a face it also reaches every face containing it:
  // fixing fewer coordinates can only enlarge the target
  const CubeFace small{4, {{1, 1}, {2, 1}, {3, 1}}};
  const CubeFace mid{4, {{2, 1}, {3, 1}}};
  const CubeFace large{4, {{3, 1}}};
  geometry::SubspaceSampler sample(4, 3);
  RngStream rng(99, 0);
  int hits_small = 0;
  for (int i = 0; i < 300; ++i) {
    const SubspaceBasis& b = sample(rng);
    const HitOutcome s = geometry::face_hit_outcome(b, small);
    const HitOutcome m = geometry::face_hit_outcome(b, mid);
    const HitOutcome l = geometry::face_hit_outcome(b, large);
    if (s == HitOutcome::degenerate || m == HitOutcome::degenerate ||
        l == HitOutcome::degenerate)
      continue;
    if (s == HitOutcome::hit) {
      ++hits_small;
      CHECK(m == HitOutcome::hit);
    }
    if (m == HitOutcome::hit) CHECK(l == HitOutcome::hit);
  }
  CHECK(hits_small > 0);  // the chain premise fired, the test has teeth
}

TEST_CASE("face hit tester rejects malformed faces") {
  CHECK_THROWS_AS(geometry::FaceHitTester(3, 2, CubeFace{4, {{2, 1}}}),
                  std::domain_error);
  CHECK_THROWS_AS(geometry::FaceHitTester(3, 2, CubeFace{3, {}}),
                  std::domain_error);
  CHECK_THROWS_AS(
      geometry::FaceHitTester(3, 2, CubeFace{3, {{0, 1}, {1, 1}, {2, 1}}}),
      std::domain_error);
  CHECK_THROWS_AS(geometry::FaceHitTester(3, 2, CubeFace{3, {{3, 1}}}),
                  std::domain_error);
  CHECK_THROWS_AS(geometry::FaceHitTester(3, 2, CubeFace{3, {{0, 1}, {0, 1}}}),
                  std::domain_error);
  CHECK_THROWS_AS(geometry::FaceHitTester(3, 2, CubeFace{3, {{2, 2}}}),
                  std::domain_error);
  CHECK_THROWS_AS(
      geometry::FaceHitTester(3, 2, CubeFace{3, {{2, 1}}}, -1.0),
      std::domain_error);
  // basis shape must match the tester's dimensions
  geometry::FaceHitTester tester(3, 2, CubeFace{3, {{2, 1}}});
  const SubspaceBasis wrong = basis_from({{1, 0}, {0, 1}});
  CHECK_THROWS_AS(tester(wrong), std::domain_error);
}

TEST_CASE("section polygon fixtures") {
  SUBCASE("identity basis gives the square itself") {
    const SubspaceBasis b = basis_from({{1, 0}, {0, 1}});
    const geometry::Polygon2D poly = geometry::section_polygon(b);
    CHECK(poly.vertices.size() == 4);
    for (const auto& v : poly.vertices) {
      CHECK(std::abs(std::abs(v.x) - 1.0) <= 1e-12);
      CHECK(std::abs(std::abs(v.y) - 1.0) <= 1e-12);
    }
  }

  SUBCASE("coordinate plane in three dimensions") {
    const SubspaceBasis b = basis_from({{1, 0}, {0, 1}, {0, 0}});
    CHECK_THROWS_AS(geometry::section_polygon(b), DegenerateGeometryError);
  }

  SUBCASE("slab tangent at two corners is deduplicated") {
    // the third slab |(y1+y2)/2| <= 1 touches the square exactly at
    // (1,1) and (-1,-1); those concurrent intersections must not create
    // spurious extra vertices
    const SubspaceBasis b = basis_from({{1, 0}, {0, 1}, {0.5, 0.5}});
    const geometry::Polygon2D poly = geometry::section_polygon(b);
    CHECK(poly.vertices.size() == 4);
  }

  SUBCASE("random sections are symmetric feasible even-gons") {
    geometry::SubspaceSampler sample(5, 2);
    RngStream rng(17, 0);
    for (int trial = 0; trial < 300; ++trial) {
      const SubspaceBasis& b = sample(rng);
      const geometry::Polygon2D poly = geometry::section_polygon(b);
      const std::size_t count = poly.vertices.size();
      CHECK(count >= 4);
      CHECK(count % 2 == 0);
      for (const auto& v : poly.vertices) {
        // feasibility: every vertex satisfies all slab constraints
        const Eigen::Vector2d y(v.x, v.y);
        CHECK((b.columns * y).cwiseAbs().maxCoeff() <= 1.0 + 1e-7);
        // central symmetry: -v is also a vertex
        bool found = false;
        for (const auto& w : poly.vertices)
          if (std::abs(w.x + v.x) <= 1e-7 && std::abs(w.y + v.y) <= 1e-7)
            found = true;
        CHECK(found);
      }
      // counterclockwise order around the origin
      for (std::size_t i = 0; i + 1 < count; ++i) {
        const auto& p = poly.vertices[i];
        const auto& q = poly.vertices[i + 1];
        CHECK(std::atan2(p.y, p.x) < std::atan2(q.y, q.x));
      }
    }
  }

  SUBCASE("single-column basis is rejected") {
    const SubspaceBasis b = basis_from({{1}, {0}});
    CHECK_THROWS_AS(geometry::section_polygon(b), std::domain_error);
  }
}

TEST_CASE("symmetrized gaussian hull counts") {
  RngStream rng(23, 0);
  // with two generators the hull of {g1, g2, -g1, -g2} is always a
  // parallelogram
  for (int i = 0; i < 50; ++i)
    CHECK(geometry::gaussian_hull_vertex_count(2, rng) == 4);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t c = geometry::gaussian_hull_vertex_count(6, rng);
    CHECK(c >= 4);
    CHECK(c <= 12);
    CHECK(c % 2 == 0);
  }
  CHECK_THROWS_AS(geometry::gaussian_hull_vertex_count(1, rng),
                  std::domain_error);
}

TEST_CASE("affine slab measure comparison") {
  SUBCASE("axis configuration sits well under the dominating form") {
    SubspaceBasis b = basis_from({{1}, {0}});
    Eigen::VectorXd offset = Eigen::VectorXd::Zero(2);
    RngStream rng(5, 0);
    const auto r =
        geometry::affine_section_measure_case(b, offset, 1.0, rng, 40'000);
    // lhs is P(|g| <= 1), rhs is P(|g| <= sqrt 2)
    CHECK(std::abs(r.lhs_estimate - 0.68268949213708589717) <=
          4.0 * r.lhs_std_error);
    CHECK(r.rhs == doctest::Approx(0.84270079294971486934).epsilon(1e-14));
    CHECK(r.lhs_estimate <= r.rhs);
  }

  SUBCASE("diagonal configuration attains equality") {
    const double s = 1.0 / std::sqrt(2.0);
    SubspaceBasis b = basis_from({{s}, {s}});
    Eigen::VectorXd offset = Eigen::VectorXd::Zero(2);
    RngStream rng(6, 0);
    const auto r =
        geometry::affine_section_measure_case(b, offset, 1.0, rng, 40'000);
    CHECK(std::abs(r.lhs_estimate - r.rhs) <= 4.0 * r.lhs_std_error);
  }

  SUBCASE("randomized configurations respect the bound") {
    RngStream rng(8, 0);
    for (int i = 0; i < 5; ++i) {
      const auto r =
          geometry::affine_section_measure_check(4, 2, 1.0, rng, 20'000);
      CHECK(r.rhs ==
            doctest::Approx(cubesect::analysis::gaussian_cube_measure(
                                2, std::sqrt(2.0)))
                .epsilon(1e-14));
      CHECK(r.lhs_estimate <= r.rhs + 4.0 * r.lhs_std_error + 1e-12);
    }
  }

  SUBCASE("preconditions") {
    RngStream rng(9, 0);
    CHECK_THROWS_AS(geometry::affine_section_measure_check(4, 2, 0.0, rng, 100),
                    std::domain_error);
    CHECK_THROWS_AS(geometry::affine_section_measure_check(4, 2, 1.0, rng, 0),
                    std::domain_error);
    CHECK_THROWS_AS(geometry::affine_section_measure_check(4, 3, 1.0, rng, 100),
                    std::domain_error);
  }
}
