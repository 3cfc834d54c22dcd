#include <doctest.h>

#include <random>

#include "dynmatch/dynamic_maximal.hpp"
#include "dynmatch/generators.hpp"

using namespace dynmatch;

namespace {

void ins(Graph& g, DynamicMaximalMatching& s, VertexId u, VertexId v) {
  s.apply(g, {EventKind::kInsert, make_edge(u, v)});
}
void del(Graph& g, DynamicMaximalMatching& s, VertexId u, VertexId v) {
  s.apply(g, {EventKind::kDelete, make_edge(u, v)});
}

}  // namespace

TEST_SUITE("dynamic_maximal") {

TEST_CASE("insert cases") {
  Graph g(4);
  DynamicMaximalMatching s(4);
  ins(g, s, 0, 1);
  CHECK(s.matching().contains(0, 1));
  ins(g, s, 1, 2);  // 1 matched, 2 free
  CHECK(s.matching().size() == 1);
  ins(g, s, 2, 3);
  ins(g, s, 0, 3);  // both matched
  CHECK(s.matching().size() == 2);
  CHECK_FALSE(s.matching().contains(0, 3));
}

TEST_CASE("deleting the middle of a path rematches both ends") {
  Graph g(4);
  DynamicMaximalMatching s(4);
  ins(g, s, 1, 2);
  ins(g, s, 0, 1);
  ins(g, s, 2, 3);
  REQUIRE(s.matching().edges() == std::vector<Edge>{{1, 2}});
  del(g, s, 1, 2);
  CHECK(s.matching().edges() == std::vector<Edge>{{0, 1}, {2, 3}});
}

TEST_CASE("deleting unmatched and isolated matched edges") {
  Graph g(5);
  DynamicMaximalMatching s(5);
  ins(g, s, 0, 1);
  ins(g, s, 1, 2);
  del(g, s, 1, 2);
  CHECK(s.matching().edges() == std::vector<Edge>{{0, 1}});
  ins(g, s, 3, 4);
  del(g, s, 3, 4);
  CHECK(s.matching().size() == 1);
  CHECK_FALSE(s.matching().is_matched(3));
  CHECK(s.free_vertices() == std::vector<VertexId>{2, 3, 4});
}

TEST_CASE("stays maximal under random updates") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const UpdateStream st = generate(GenSpec::parse(
        "gen:update_mix:n=60,p=0.05,steps=2000,delete_ratio=0.45,seed=" + std::to_string(seed)));
    Graph g(st.n);
    DynamicMaximalMatching s(st.n);
    for (const auto& ev : st.events) {
      s.apply(g, ev);
      REQUIRE(s.matching().is_valid_in(g));
      REQUIRE(s.is_maximal_in(g));
    }
  }
}

}  // TEST_SUITE
