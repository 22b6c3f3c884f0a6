#include "doctest.h"
#include "dpgraph/io.hpp"
#include "dpgraph/search.hpp"
#include "dpgraph/structure.hpp"
#include "fixtures.hpp"

using namespace dpgraph;

TEST_CASE("single edge") {
  const SearchResult r = lstdp_search(unit_multiset({1}));
  CHECK(r.max_ts() == Rational(0));
  CHECK(r.witnesses.size() == 2);
  CHECK(verify_theorem(unit_multiset({1})).verdict);
}

TEST_CASE("pendant and double edge") {
  const SearchResult r = lstdp_search(unit_multiset({1, 1, 2}));
  CHECK(r.max_ts() == Rational(4));
  bool eight = false;
  for (const Witness& w : r.witnesses) {
    CHECK(w.t_s == 4);
    eight = eight || w.n_stable == 8;
  }
  CHECK(eight);
  CHECK(verify_theorem(unit_multiset({1, 1, 2})).verdict);
}

TEST_CASE("four unit edges") {
  const SearchResult r = lstdp_search(unit_multiset({1, 1, 1, 1}));
  CHECK(r.max_ts_scaled == 4);
  CHECK(r.tree_max_ts == 3);
  for (const Witness& w : r.witnesses) CHECK_FALSE(w.is_tree);
}

TEST_CASE("workers do not change the result") {
  const EdgeMultiset e = unit_multiset({1, 1, 2, 2});
  SearchOptions one, many;
  many.jobs = 4;
  CHECK(search_to_json(lstdp_search(e, one)).dump() == search_to_json(lstdp_search(e, many)).dump());
}

TEST_CASE("scaling the lengths scales the answer") {
  const SearchResult base = lstdp_search(unit_multiset({1, 1, 2}));
  const SearchResult half = lstdp_search(scale_to_integer(parse_length_list("1/2,1/2,1")));
  const SearchResult triple = lstdp_search(scale_to_integer(parse_length_list("3,3,6")));
  CHECK(half.max_ts() == base.max_ts() * Rational(1, 2));
  CHECK(triple.max_ts() == base.max_ts() * Rational(3));
  CHECK(half.witnesses.size() == base.witnesses.size());
  for (std::size_t i = 0; i < base.witnesses.size(); ++i)
    CHECK(half.witnesses[i].canonical == base.witnesses[i].canonical);
}

TEST_CASE("several initial points never beat one") {
  for (const auto& lengths : std::vector<std::vector<Length>>{{1}, {1, 2}, {1, 1, 2}, {1, 2, 3}, {2, 2, 3}}) {
    SearchOptions o;
    o.multi_point = true;
    const SearchResult r = lstdp_search(unit_multiset(lengths), o);
    REQUIRE(r.multi_point_max.has_value());
    CHECK(*r.multi_point_max <= r.max_ts_scaled);
  }
  SearchOptions o;
  o.multi_point = true;
  CHECK_THROWS_AS(lstdp_search(unit_multiset({1, 1, 1, 1}), o), std::invalid_argument);
}

TEST_CASE("theorem over short multisets") {
  for (const EdgeMultiset& e : multisets_over({1, 2}, 3)) CHECK(verify_theorem(e).verdict);
  CHECK(multisets_over({1, 2}, 4).size() == 14);
}

TEST_CASE("theorem verdict comes from the witnesses") {
  SearchResult r = lstdp_search(unit_multiset({1, 1, 1}));
  CHECK(theorem_from(r).verdict);
  for (Witness& w : r.witnesses) w.point_at_terminal = false;
  CHECK_FALSE(theorem_from(r).verdict);
}

TEST_CASE("a path dominates") {
  const CorollaryReport self = verify_corollary(DPSystem(fixture::unit_path(3), {0}));
  REQUIRE(self.found);
  CHECK(self.candidates == 1);
  CHECK(self.placement == "terminal");
  const CorollaryReport fig = verify_corollary(fixture::pendant_double_edge());
  REQUIRE(fig.found);
  CHECK(fig.linear_timeline->n_stable <= 8);
  CHECK(is_linear(fig.linear->graph));
}

TEST_CASE("conjecture ratios") {
  const auto rows = conjecture_scan({unit_multiset({1, 1, 1, 1}), unit_multiset({1})});
  CHECK(rows[0].ratio == Rational(4, 3));
  CHECK_FALSE(rows[0].flagged);
  CHECK(rows[1].ratio == Rational(1));
  CHECK(best_linear_ts(unit_multiset({1, 1, 1, 1})) == 3);
}
