#include "expl/centroid.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace explainer;
using namespace explainer::centroid;
using testsupport::uniform;

namespace {

Vec v(std::initializer_list<int> xs) {
  Vec out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

// Plain loops over the points, label by label.
std::map<std::string, Rational> oracle_means(const LabeledDataset& d, const Vec& q) {
  std::map<std::string, std::pair<Rational, int>> acc;
  for (const auto& [p, label] : d.points) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
    acc[label].first += s;
    acc[label].second += 1;
  }
  std::map<std::string, Rational> out;
  for (const auto& [label, sv] : acc) out[label] = sv.first / sv.second;
  return out;
}

// Empty when the minimum is shared.
std::string oracle_label(const LabeledDataset& d, const Vec& q) {
  std::string best;
  Rational best_v;
  bool tied = false;
  for (const auto& [label, m] : oracle_means(d, q)) {
    if (best.empty() || m < best_v) {
      best = label, best_v = m, tied = false;
    } else if (m == best_v) {
      tied = true;
    }
  }
  return tied ? "" : best;
}

LabeledDataset random_dataset(std::mt19937_64& rng, int per_class) {
  LabeledDataset d;
  for (int i = 0; i < per_class; ++i) {
    d.points.push_back({v({uniform(rng, -7, 7), uniform(rng, -7, 7)}), "cat"});
    d.points.push_back({v({10 + uniform(rng, -7, 7), 10 + uniform(rng, -7, 7)}), "dog"});
  }
  return d;
}

}  // namespace

TEST_SUITE("centroid") {
  TEST_CASE("two clusters") {
    LabeledDataset d;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        d.points.push_back({v({dx, dy}), "cat"});
        d.points.push_back({v({10 + dx, 10 + dy}), "dog"});
      }
    CentroidResult r = centroid_classify(d, v({9, 9}));
    CHECK(r.label == "dog");
    // by hand: mean over a 3x3 grid of (dx^2 + dy^2) is 4/3
    CHECK(r.mean_sq.at("dog") == Rational(2) + Rational(4, 3));
    CHECK(r.mean_sq.at("cat") == Rational(162) + Rational(4, 3));
    CHECK(r.report.target == "point (9, 9) is labeled dog");
    CHECK(r.report.program_bytes == std::string("(nearest-mean)").size());
  }

  TEST_CASE("shipped dataset") {
    LabeledDataset d = LabeledDataset::load_csv(testsupport::source_path("data/centroid_200.csv"));
    CHECK(d.points.size() == 200);
    CHECK(d.dim() == 2);
    CentroidResult r = centroid_classify(d, v({9, 9}));
    CHECK(r.label == "dog");
    CHECK(r.label == oracle_label(d, v({9, 9})));
    CHECK_FALSE(r.report.passes_threshold);
    CHECK(r.report.input_bytes > 10 * r.report.statement_bytes);
    CHECK(r.report.run_steps == 400);
  }

  TEST_CASE("degenerate datasets") {
    LabeledDataset d;
    d.points = {{v({0, 0}), "cat"}, {v({10, 10}), "dog"}};
    CHECK(centroid_classify(d, v({0, 0})).label == "cat");
    CHECK(centroid_classify(d, v({10, 10})).label == "dog");
    CHECK_THROWS_AS(centroid_classify(d, v({5, 5})), Tie);
    CHECK_THROWS_AS(centroid_classify(d, v({1, 2, 3})), DomainError);
    CHECK_THROWS_AS(centroid_classify(LabeledDataset{}, v({1, 2})), DomainError);
    LabeledDataset bad;
    bad.points = {{v({0, 0}), "cat"}, {v({1}), "dog"}};
    CHECK_THROWS_AS(centroid_classify(bad, v({0, 0})), DomainError);
  }

  TEST_CASE("csv format") {
    LabeledDataset d = LabeledDataset::parse_csv("# comment\n1,2,cat\n1/2,-3,dog\n");
    REQUIRE(d.points.size() == 2);
    CHECK(d.points[1].first[0] == Rational(1, 2));
    CHECK(d.points[1].second == "dog");
    LabeledDataset again = LabeledDataset::parse_csv(d.to_csv());
    CHECK(again.points == d.points);
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK_THROWS(parse_rational("x"));
    CHECK_THROWS(LabeledDataset::parse_csv("a,b,cat\n"));
    CHECK_THROWS(LabeledDataset::parse_csv("cat\n"));
    CHECK(format_point(v({9, 9})) == "(9, 9)");
  }

  TEST_CASE("labels agree with the oracle") {
    std::mt19937_64 rng(8001);
    for (int i = 0; i < 300; ++i) {
      LabeledDataset d = random_dataset(rng, uniform(rng, 1, 8));
      Vec q = v({uniform(rng, -5, 15), uniform(rng, -5, 15)});
      std::string expect = oracle_label(d, q);
      if (expect.empty()) {
        CHECK_THROWS_AS(centroid_classify(d, q), Tie);
      } else {
        CentroidResult r = centroid_classify(d, q);
        CHECK(r.label == expect);
        CHECK(r.mean_sq == oracle_means(d, q));
      }
    }
  }

  TEST_CASE("scaling leaves the label unchanged") {
    std::mt19937_64 rng(8002);
    for (int i = 0; i < 1000; ++i) {
      LabeledDataset d = random_dataset(rng, uniform(rng, 1, 5));
      Vec q = v({uniform(rng, -5, 15), uniform(rng, -5, 15)});
      int k = uniform(rng, 2, 50);
      LabeledDataset s = d;
      for (auto& [p, label] : s.points)
        for (auto& c : p) c *= k;
      Vec sq = q;
      for (auto& c : sq) c *= k;
      std::string a, b;
      try {
        a = centroid_classify(d, q).label;
      } catch (const Tie&) {
        a = "tie";
      }
      try {
        b = centroid_classify(s, sq).label;
      } catch (const Tie&) {
        b = "tie";
      }
      CHECK(a == b);
    }
  }
}
