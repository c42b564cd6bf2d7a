#ifndef HYPERTURAN_REPORT_JSON_HPP
#define HYPERTURAN_REPORT_JSON_HPP

#include <json.hpp>

#include "hyperturan/copy_counter.hpp"
#include "hyperturan/edge_list_io.hpp"
#include "hyperturan/turan_search.hpp"

namespace hyperturan {

// Keys are emitted in insertion order; no floating-point values anywhere.
using Json = nlohmann::ordered_json;

inline Json to_json(const Count& c) {
  if (c.fits_u64()) return Json(c.to_u64());
  return Json(c.to_string());
}

inline Json to_json(const Triple& t) { return Json::array({t.a, t.b, t.c}); }

inline Json to_json(const CountReport& r, bool with_millis = false) {
  Json j;
  j["pattern"] = r.pattern;
  j["n"] = r.n;
  j["m"] = r.m;
  j["aut"] = r.aut_count;
  j["total_copies"] = to_json(r.total_copies);
  j["embeddings"] = to_json(r.raw_embeddings);
  if (r.per_edge) {
    Json pe = Json::array();
    for (const auto& [e, c] : *r.per_edge) pe.push_back(Json{{"edge", to_json(e)}, {"copies", to_json(c)}});
    j["per_edge"] = std::move(pe);
  }
  if (r.per_vertex) {
    Json pv = Json::array();
    for (const Count& c : *r.per_vertex) pv.push_back(to_json(c));
    j["per_vertex"] = std::move(pv);
  }
  j["nodes"] = r.nodes;
  if (with_millis) j["millis"] = r.elapsed.count();
  return j;
}

inline Json to_json(const SearchResult& r, bool with_millis = false) {
  Json j;
  j["n"] = r.n;
  j["forbidden"] = r.forbidden;
  j["best_size"] = r.best_size;
  j["proved_optimal"] = r.proved_optimal;
  j["nodes"] = r.nodes;
  Json w = Json::array();
  for (const TripleSystem& s : r.witnesses) w.push_back(serialize_edge_list(s));
  j["witnesses"] = std::move(w);
  if (with_millis) j["millis"] = r.elapsed.count();
  return j;
}

inline Json to_json(const CopyBound& b) {
  Json j;
  j["pattern"] = b.pattern;
  j["n"] = b.n;
  if (b.r) j["r"] = *b.r;
  j["c_exact"] = to_json(b.value);
  j["witness"] = to_json(b.witness);
  j["provenance"] = b.provenance;
  if (b.closed_form) j["closed_form"] = *b.closed_form;
  j["candidates"] = b.candidates_evaluated;
  return j;
}

inline Json margin_json(__int128 m) {
  if (m >= INT64_MIN && m <= INT64_MAX) return Json(static_cast<std::int64_t>(m));
  return Json(margin_string(m));
}

inline Json to_json(const AuditReport& a) {
  Json j;
  j["spec"] = a.spec;
  j["pattern"] = a.pattern;
  j["n"] = a.n;
  j["q"] = a.q;
  j["total_copies"] = to_json(a.total_copies);
  j["exactly_one_marked"] = to_json(a.exactly_one_marked);
  j["c_exact"] = to_json(a.c_exact);
  j["bound"] = to_json(a.bound);
  j["margin"] = margin_json(a.margin);
  Json pe = Json::array();
  for (const auto& [e, c] : a.per_added_edge) pe.push_back(Json{{"edge", to_json(e)}, {"copies", to_json(c)}});
  j["per_added_edge"] = std::move(pe);
  return j;
}

inline Json to_json(const PerturbedAudit& p) {
  Json j;
  j["trials"] = p.trials.size();
  j["min_total"] = to_json(p.min_total);
  j["min_margin"] = margin_json(p.min_margin);
  Json t = Json::array();
  for (const auto& a : p.trials) t.push_back(to_json(a));
  j["reports"] = std::move(t);
  return j;
}

} // namespace hyperturan

#endif
