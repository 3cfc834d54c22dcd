#include "dynmatch/dynamic_maximal.hpp"

namespace dynmatch {

void DynamicMaximalMatching::on_insert(const Graph&, VertexId u, VertexId v) {
  if (!m_.is_matched(u) && !m_.is_matched(v)) m_.add(u, v);
}

void DynamicMaximalMatching::on_delete(const Graph& g, VertexId u, VertexId v) {
  if (!m_.contains(u, v)) return;
  m_.remove(u, v);
  rematch(g, u);
  rematch(g, v);
}

void DynamicMaximalMatching::rematch(const Graph& g, VertexId x) {
  if (m_.is_matched(x)) return;
  for (VertexId w : g.neighbors(x)) {
    if (!m_.is_matched(w)) {
      m_.add(x, w);
      return;
    }
  }
}

void DynamicMaximalMatching::apply(Graph& g, const UpdateEvent& ev) {
  switch (ev.kind) {
    case EventKind::kInsert:
      g.insert_edge(ev.edge.u, ev.edge.v);
      on_insert(g, ev.edge.u, ev.edge.v);
      break;
    case EventKind::kDelete:
      g.delete_edge(ev.edge.u, ev.edge.v);
      on_delete(g, ev.edge.u, ev.edge.v);
      break;
    case EventKind::kQuery:
      break;
  }
}

std::vector<VertexId> DynamicMaximalMatching::free_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < m_.num_vertices(); ++v) {
    if (!m_.is_matched(v)) out.push_back(v);
  }
  return out;
}

bool DynamicMaximalMatching::is_maximal_in(const Graph& g) const {
  if (!m_.is_valid_in(g)) return false;
  for (const Edge& e : g.edges()) {
    if (!m_.is_matched(e.u) && !m_.is_matched(e.v)) return false;
  }
  return true;
}

}  // namespace dynmatch
